"""Partial summation structures: instances, Kleene-equal results, homomorphisms.

An instance couples a carrier with a zero element and a partial summation rule
from families to carrier elements. Undefined is a first-class result so that
both sides of an equation can be compared under Kleene equality; an element
outside the carrier is a caller error, never Undefined.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable

from .family import (
    Family,
    Caps,
    canonicalize,
    canonical_key,
    families_within,
    map_family,
)


class CarrierError(ValueError):
    """An element of the input family is not in the instance's carrier."""


class ConstructionError(ValueError):
    """An instance or morphism could not be constructed from the given data."""


class HomVerificationError(ConstructionError):
    """A claimed homomorphism failed verification; carries the witness family."""

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


@dataclass(frozen=True)
class SumResult:
    """Defined(value) or Undefined; equality is Kleene equality."""

    defined: bool
    value: Any = None

    def __repr__(self):
        return f"Defined({self.value!r})" if self.defined else "Undefined"


def Defined(value) -> SumResult:
    return SumResult(True, value)


UNDEFINED = SumResult(False)


def kleene_equal(a: SumResult, b: SumResult) -> bool:
    """Both undefined, or both defined with equal values."""
    return a == b


class FiniteCarrier:
    is_finite = True

    def __init__(self, elements):
        self.elements = tuple(sorted(dict.fromkeys(elements), key=canonical_key))
        self._set = frozenset(self.elements)

    def __contains__(self, e):
        return e in self._set

    def __len__(self):
        return len(self.elements)

    def sample(self):
        return self.elements


class SymbolicCarrier:
    """Membership predicate plus a fixed, deterministic sample pool."""

    is_finite = False

    def __init__(self, contains: Callable[[Any], bool], samples, description=""):
        self._contains = contains
        self.samples = tuple(samples)
        self.description = description

    def __contains__(self, e):
        return self._contains(e)

    def sample(self):
        return self.samples


class SigmaInstance:
    """A carrier, a zero element, and a partial summation rule over families.

    The rule is a pure function of the canonical family; results are cached.
    Instances are immutable after construction.
    """

    def __init__(self, name, carrier, zero, rule, flavor="weak",
                 inversion=None, codec=None):
        self.name = name
        self.carrier = carrier
        self.zero = zero
        self._rule = rule
        self.flavor = flavor
        self.inversion = inversion
        self.codec = codec
        self._cache: dict = {}

    def sum(self, fam: Family) -> SumResult:
        cached = self._cache.get(fam)
        if cached is not None:
            return cached
        for e in fam.support():
            if e not in self.carrier:
                raise CarrierError(f"{e!r} is not in the carrier of {self.name}")
        result = self._rule(fam)
        if not isinstance(result, SumResult):
            raise TypeError(f"rule of {self.name} returned {result!r}")
        self._cache[fam] = result
        return result

    def samples(self) -> tuple:
        return self.carrier.sample()

    def __repr__(self):
        return f"<SigmaInstance {self.name} ({self.flavor})>"


def sum_family(inst: SigmaInstance, fam: Family) -> SumResult:
    return inst.sum(fam)


@dataclass(frozen=True)
class ClassElement:
    """Element of a quotient carrier, identified by its canonical representative."""

    rep: Any

    def sort_key(self):
        return canonical_key(self.rep)

    def __repr__(self):
        return f"[{self.rep!r}]"


class QuotientInstance(SigmaInstance):
    """Instance whose carrier elements are equivalence classes with a
    representative store and a class-level summation rule."""

    def __init__(self, name, carrier, zero, rule, class_of, classes,
                 flavor="weak", codec=None):
        super().__init__(name, carrier, zero, rule, flavor=flavor, codec=codec)
        self.class_of = class_of
        self.classes = tuple(classes)


@dataclass(frozen=True)
class Budget:
    """Bounds for every law/hom check; identical budget + seed means identical
    verdicts. ``trials`` adds seeded random families beyond the exhaustive part."""

    max_finite_size: int = 4
    max_omega_elems: int = 1
    block_count: int = 4
    block_size: int = 4
    omega_splits: int = 2
    trials: int = 50
    seed: int = 7

    def __post_init__(self):
        for name in ("max_finite_size", "max_omega_elems", "block_count",
                     "block_size", "omega_splits", "trials"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")

    @property
    def caps(self) -> Caps:
        return Caps(self.block_count, self.block_size, self.omega_splits)

    def meet(self, other: "Budget") -> "Budget":
        """Componentwise minimum (intersection of budgets); keeps this seed."""
        return Budget(
            min(self.max_finite_size, other.max_finite_size),
            min(self.max_omega_elems, other.max_omega_elems),
            min(self.block_count, other.block_count),
            min(self.block_size, other.block_size),
            min(self.omega_splits, other.omega_splits),
            min(self.trials, other.trials),
            self.seed,
        )

    def to_dict(self) -> dict:
        return {
            "max_finite_size": self.max_finite_size,
            "max_omega_elems": self.max_omega_elems,
            "block_count": self.block_count,
            "block_size": self.block_size,
            "omega_splits": self.omega_splits,
            "trials": self.trials,
            "seed": self.seed,
        }


def budget_families(inst: SigmaInstance, budget: Budget) -> list:
    """Deterministic family pool for an instance: exhaustive enumeration over
    the carrier samples up to the budget, then seeded random larger families."""
    pool = inst.samples()
    if not pool:
        raise ConstructionError(f"{inst.name}: symbolic carrier without samples")
    fams = families_within(pool, budget.max_finite_size, budget.max_omega_elems)
    if budget.trials:
        rng = random.Random(budget.seed)
        seen = set(fams)
        extras = []
        ordered = sorted(pool, key=canonical_key)
        for _ in range(budget.trials):
            size = rng.randint(budget.max_finite_size + 1, budget.max_finite_size + 2)
            pairs = [(rng.choice(ordered), 1) for _ in range(size)]
            omega = []
            if budget.max_omega_elems and rng.random() < 0.5:
                omega = rng.sample(ordered, min(budget.max_omega_elems, len(ordered)))
            fam = Family.from_counts(pairs, omega)
            if fam not in seen:
                seen.add(fam)
                extras.append(fam)
        extras.sort(key=Family.sort_key)
        fams += extras
    return fams


@dataclass(frozen=True)
class HomVerdict:
    ok: bool
    counterexample: Family | None = None
    checked: int = 0


@dataclass(frozen=True)
class Hom:
    """Verified structure-preserving map; ``verified_budget`` records the
    family bounds within which preservation was checked."""

    source: SigmaInstance
    target: SigmaInstance
    fn: Callable
    name: str = ""
    verified_budget: Budget | None = None
    inverse: Callable | None = None

    def __call__(self, x):
        return self.fn(x)

    def __repr__(self):
        label = self.name or "hom"
        return f"<Hom {label}: {self.source.name} -> {self.target.name}>"


def check_hom(f, source: SigmaInstance, target: SigmaInstance,
              budget: Budget) -> HomVerdict:
    """Does f preserve every defined sum within the budget?

    Families are enumerated by total size then element order, so a reported
    counterexample is minimal under that order.
    """
    fn = f.fn if isinstance(f, Hom) else f
    checked = 0
    for fam in budget_families(source, budget):
        r = source.sum(fam)
        if not r.defined:
            continue
        checked += 1
        image = map_family(fn, fam)
        ri = target.sum(image)
        if ri != Defined(fn(r.value)):
            return HomVerdict(False, fam, checked)
    return HomVerdict(True, None, checked)


def verify_hom(f, source, target, budget, name="", inverse=None) -> Hom:
    """check_hom, packaged: returns a Hom on success, raises with the witness
    otherwise."""
    fn = f.fn if isinstance(f, Hom) else f
    verdict = check_hom(fn, source, target, budget)
    if not verdict.ok:
        raise HomVerificationError(
            f"{name or 'map'}: {source.name} -> {target.name} fails preservation "
            f"on {verdict.counterexample!r}",
            counterexample=verdict.counterexample,
        )
    return Hom(source, target, fn, name=name, verified_budget=budget,
               inverse=inverse)


def compose_homs(g: Hom, f: Hom, name="") -> Hom:
    """g after f; verified budget is the meet of the two budgets."""
    if f.target is not g.source:
        raise ConstructionError("homs are not composable")
    vb = None
    if f.verified_budget and g.verified_budget:
        vb = f.verified_budget.meet(g.verified_budget)
    inv = None
    if f.inverse and g.inverse:
        f_inv, g_inv = f.inverse, g.inverse
        def inv(y):
            mid = g_inv(y)
            return None if mid is None else f_inv(mid)
    return Hom(f.source, g.target, lambda x: g.fn(f.fn(x)),
               name=name or f"{g.name}.{f.name}", verified_budget=vb, inverse=inv)


def partition_sums(inst: SigmaInstance, partition) -> Family | None:
    """Family of block sums (with block multiplicities), or None when some
    block has no defined sum."""
    pairs = []
    for block, mult in partition.blocks:
        r = inst.sum(block)
        if not r.defined:
            return None
        pairs.append((r.value, mult))
    return canonicalize(pairs)
