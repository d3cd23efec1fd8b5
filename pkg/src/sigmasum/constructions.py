"""Products, equalisers, chain colimits, internal homs, the unit instance,
and bilinearity checking, each with its explicit summation rule."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .family import Family, canonical_key, canonicalize, map_family
from .core import (
    Budget,
    ClassElement,
    ConstructionError,
    Defined,
    FiniteCarrier,
    Hom,
    QuotientInstance,
    SigmaInstance,
    SumResult,
    SymbolicCarrier,
    UNDEFINED,
    check_hom,
)


def _fst(p):
    return p[0]


def _snd(p):
    return p[1]


def product(x: SigmaInstance, y: SigmaInstance, *, samples=None,
            name=None) -> SigmaInstance:
    """Pairs of carriers; a pair family is summable exactly when both
    projections are, the value being the pair of projection sums."""

    def rule(fam: Family) -> SumResult:
        rx = x.sum(map_family(_fst, fam))
        if not rx.defined:
            return UNDEFINED
        ry = y.sum(map_family(_snd, fam))
        if not ry.defined:
            return UNDEFINED
        return Defined((rx.value, ry.value))

    if x.carrier.is_finite and y.carrier.is_finite and samples is None:
        carrier = FiniteCarrier(itertools.product(x.carrier.elements,
                                                  y.carrier.elements))
    else:
        pool = samples
        if pool is None:
            pool = [(a, b) for a in x.samples() for b in y.samples()]
        carrier = SymbolicCarrier(
            lambda p: isinstance(p, tuple) and len(p) == 2
            and p[0] in x.carrier and p[1] in y.carrier,
            samples=pool,
            description=f"{x.name} x {y.name}",
        )
    flavor = x.flavor if x.flavor == y.flavor else "weak"
    inst = SigmaInstance(name or f"{x.name}x{y.name}", carrier,
                         (x.zero, y.zero), rule, flavor=flavor)
    inst.factors = (x, y)
    return inst


def projections(prod: SigmaInstance, budget: Budget) -> tuple:
    """The two projection maps of a product instance, verified as homs."""
    x, y = prod.factors
    left = check_hom(_fst, prod, x, budget)
    right = check_hom(_snd, prod, y, budget)
    if not (left.ok and right.ok):
        raise ConstructionError("projection failed hom verification")
    return (Hom(prod, x, _fst, "proj_left", budget),
            Hom(prod, y, _snd, "proj_right", budget))


def pairing(f, g):
    """The map a -> (f(a), g(a)) induced by a pair of maps on a common source."""
    fn_f = f.fn if isinstance(f, Hom) else f
    fn_g = g.fn if isinstance(g, Hom) else g
    return lambda a: (fn_f(a), fn_g(a))


def equaliser(f: Hom, g: Hom, *, name=None) -> SigmaInstance:
    """Restriction of the common source to the agreement set of two homs.

    A family over the agreement set is summable exactly when it is summable
    upstairs with the sum landing back in the agreement set; this is the
    largest summation rule making the inclusion structure preserving.
    """
    if not isinstance(f, Hom) or not isinstance(g, Hom):
        raise ConstructionError("equaliser needs verified homs")
    if f.source is not g.source or f.target is not g.target:
        raise ConstructionError("homs must be parallel (same source and target)")
    x = f.source

    if x.carrier.is_finite:
        agreed = [e for e in x.carrier.elements if f(e) == g(e)]
        carrier = FiniteCarrier(agreed)
    else:
        carrier = SymbolicCarrier(
            lambda e: e in x.carrier and f(e) == g(e),
            samples=tuple(e for e in x.samples() if f(e) == g(e)),
            description=f"equaliser in {x.name}",
        )
    if x.zero not in carrier:
        raise ConstructionError("the zero element must be in the agreement set")

    def rule(fam: Family) -> SumResult:
        r = x.sum(fam)
        if r.defined and r.value in carrier:
            return r
        return UNDEFINED

    inst = SigmaInstance(name or f"eq({x.name})", carrier, x.zero, rule,
                         flavor=x.flavor, codec=x.codec)
    inst.ambient = x
    return inst


def chain_colimit(stages, homs, *, name=None) -> QuotientInstance:
    """Colimit of a finite chain of instances along verified homs.

    Two stage elements are identified when they agree after pushing forward;
    with a finite chain that means agreeing at the last stage. A class family
    sums by pushing representatives to the last stage and summing there.
    """
    stages = list(stages)
    homs = list(homs)
    if len(homs) != len(stages) - 1 or not stages:
        raise ConstructionError("need n stages and n-1 connecting homs")
    for i, h in enumerate(homs):
        if not isinstance(h, Hom):
            raise ConstructionError("connecting maps must be verified homs")
        if h.source is not stages[i] or h.target is not stages[i + 1]:
            raise ConstructionError(f"hom {i} does not connect stage {i} to {i + 1}")
    last = len(stages) - 1

    def push(i, e):
        for h in homs[i:]:
            e = h(e)
        return e

    def min_rep(value):
        # earliest (stage, element) pushing to this final value
        stage, elem = last, value
        while stage > 0:
            hom = homs[stage - 1]
            if hom.inverse is not None:
                prev = hom.inverse(elem)
                if prev is None or hom(prev) != elem:
                    break
            elif stages[stage - 1].carrier.is_finite:
                candidates = sorted(
                    (e for e in stages[stage - 1].carrier.elements
                     if hom(e) == elem),
                    key=canonical_key)
                if not candidates:
                    break
                prev = candidates[0]
            else:
                break
            elem = prev
            stage -= 1
        return (stage, elem)

    classes: dict = {}

    def class_of(pair):
        i, e = pair
        if e not in stages[i].carrier:
            raise ConstructionError(f"{e!r} not in stage {i} carrier")
        value = push(i, e)
        cls = classes.get(value)
        if cls is None:
            cls = ClassElement(min_rep(value))
            classes[value] = cls
        return cls

    def rule(fam: Family) -> SumResult:
        pushed = fam.map(lambda cls: push(*cls.rep))
        r = stages[last].sum(pushed)
        if not r.defined:
            return UNDEFINED
        return Defined(class_of((last, r.value)))

    if all(s.carrier.is_finite for s in stages):
        for i, s in enumerate(stages):
            for e in s.carrier.elements:
                class_of((i, e))
        carrier = FiniteCarrier(classes.values())
    else:
        pool = [class_of((i, e)) for i, s in enumerate(stages)
                for e in s.samples()]
        carrier = SymbolicCarrier(
            lambda c: isinstance(c, ClassElement),
            samples=tuple(dict.fromkeys(pool)),
            description="chain colimit classes",
        )

    inst = QuotientInstance(
        name or "colim(" + "->".join(s.name for s in stages) + ")",
        carrier, class_of((0, stages[0].zero)), rule,
        class_of=class_of, classes=tuple(classes.values()),
        flavor=stages[0].flavor if len({s.flavor for s in stages}) == 1 else "weak",
    )
    inst.stages = tuple(stages)
    inst.stage_map = lambda i: (lambda e: class_of((i, e)))
    return inst


@dataclass(frozen=True)
class HomElement:
    """Element of an internal-hom carrier: a function table between finite
    carriers, certified structure preserving at some budget."""

    table: tuple  # ((x, y), ...) sorted by source element

    def __call__(self, x):
        for a, b in self.table:
            if a == x:
                return b
        raise KeyError(x)

    def sort_key(self):
        return tuple((canonical_key(a), canonical_key(b)) for a, b in self.table)

    def __repr__(self):
        inner = ", ".join(f"{a!r}->{b!r}" for a, b in self.table)
        return f"hom{{{inner}}}"


def internal_hom(x: SigmaInstance, y: SigmaInstance, budget: Budget, *,
                 name=None) -> SigmaInstance:
    """Instance on the budget-certified homs x -> y; a family of homs sums to
    its pointwise sum when that is defined everywhere and the resulting
    function is itself in the carrier."""
    if not (x.carrier.is_finite and y.carrier.is_finite):
        raise ConstructionError("internal hom needs finite carriers")
    xs = x.carrier.elements
    members = []
    for image in itertools.product(y.carrier.elements, repeat=len(xs)):
        table = dict(zip(xs, image))
        if check_hom(table.__getitem__, x, y, budget).ok:
            members.append(HomElement(tuple(sorted(
                table.items(), key=lambda p: canonical_key(p[0])))))
    if not members:
        raise ConstructionError(
            "budget too small to certify any hom (empty carrier)")

    carrier = FiniteCarrier(members)
    member_set = frozenset(members)
    zero = HomElement(tuple(sorted(((a, y.zero) for a in xs),
                                   key=lambda p: canonical_key(p[0]))))
    if zero not in member_set:
        raise ConstructionError("constant-zero map failed certification")

    def rule(fam: Family) -> SumResult:
        rows = []
        for a in xs:
            r = y.sum(canonicalize((h(a), c) for h, c in fam.items()))
            if not r.defined:
                return UNDEFINED
            rows.append((a, r.value))
        s = HomElement(tuple(sorted(rows, key=lambda p: canonical_key(p[0]))))
        if s not in member_set:
            return UNDEFINED
        return Defined(s)

    inst = SigmaInstance(name or f"[{x.name},{y.name}]", carrier, zero, rule,
                         flavor="weak")
    inst.certified_budget = budget
    inst.hom_source = x
    inst.hom_target = y
    return inst


def unit_instance() -> SigmaInstance:
    """Two-element instance {0, 1}: a family sums to 1 when it contains
    exactly one 1, to 0 when it contains none, and is undefined otherwise."""

    def rule(fam: Family) -> SumResult:
        ones = fam.count(1)
        if ones == 0:
            return Defined(0)
        if ones == 1:
            return Defined(1)
        return UNDEFINED

    from .instances import ElementCodec
    codec = ElementCodec(lambda s: int(s.strip()), str)
    return SigmaInstance("unit", FiniteCarrier((0, 1)), 0, rule,
                         flavor="weak", codec=codec)


def left_unitor(x: SigmaInstance):
    """(n, a) -> a when n = 1, zero when n = 0; bilinear from unit x X to X."""
    return lambda n, a: a if n == 1 else x.zero


def right_unitor(x: SigmaInstance):
    return lambda a, n: a if n == 1 else x.zero


def evaluation():
    """(h, a) -> h(a); bilinear from [X,Y] x X to Y."""
    return lambda h, a: h(a)


@dataclass(frozen=True)
class BilinearVerdict:
    ok: bool
    slot: str | None = None          # which argument was being varied
    fixed: object = None             # the coordinate held fixed
    counterexample: Family | None = None
    checked: int = 0


def check_bilinear(h, x: SigmaInstance, y: SigmaInstance, z: SigmaInstance,
                   budget: Budget) -> BilinearVerdict:
    """Is h : X x Y -> Z structure preserving in each slot separately?

    Every partial application over the carrier samples is run through
    check_hom; the counterexample names the fixed coordinate and the family
    in the varying slot.
    """
    checked = 0
    for a in x.samples():
        verdict = check_hom(lambda b: h(a, b), y, z, budget)
        checked += verdict.checked
        if not verdict.ok:
            return BilinearVerdict(False, "second", a,
                                   verdict.counterexample, checked)
    for b in y.samples():
        verdict = check_hom(lambda a: h(a, b), x, z, budget)
        checked += verdict.checked
        if not verdict.ok:
            return BilinearVerdict(False, "first", b,
                                   verdict.counterexample, checked)
    return BilinearVerdict(True, checked=checked)
