"""Summation as the limit of the net of finite partial sums.

For certified real generator families the engine folds the prefix in order of
decreasing bound with compensated summation until the certified tail drops
below the tolerance. Without a certificate it can only report divergence
evidence (two nested finite subfamilies whose partial sums stay apart) or an
honest Inconclusive. For finite commutative monoids with the discrete
topology the net is eventually constant exactly when all but finitely many
terms are the identity, so the extended sum is a direct fold.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from .family import Family
from .core import (
    CarrierError,
    ConstructionError,
    Defined,
    FiniteCarrier,
    SigmaInstance,
    SumResult,
    UNDEFINED,
)


class CertificateError(ValueError):
    """A certificate bound was violated by the generated terms."""


@dataclass(frozen=True)
class AbsoluteBound:
    """Per-index bound b(i) >= |gen(i)| with a tail function: sorted_tail(n)
    bounds the total of all bounds outside the n+1 largest."""

    bound: Callable[[int], float]
    sorted_tail: Callable[[int], float]


@dataclass(frozen=True)
class GeneratorFamily:
    """Indexed real terms with an optional absolute-convergence certificate."""

    gen: Callable[[int], float]
    certificate: AbsoluteBound | None = None
    description: str = ""


@dataclass(frozen=True)
class SubfamilySummary:
    """A finite subfamily of the net's domain, described by the index set it
    was drawn from, with its partial sum."""

    description: str
    count: int
    partial_sum: float


@dataclass(frozen=True)
class NetVerdict:
    kind: str  # "converged" | "diverged" | "inconclusive"
    value: float | None = None
    error_bound: float | None = None
    evidence: tuple | None = None  # (SubfamilySummary, SubfamilySummary)
    terms_used: int = 0

    @property
    def converged(self):
        return self.kind == "converged"


class KahanSum:
    """Compensated accumulator; keeps the running carry of rounding error."""

    def __init__(self):
        self.total = 0.0
        self.carry = 0.0

    def add(self, value):
        value += self.carry
        previous = self.total
        self.total += value
        self.carry = value - (self.total - previous)


def extended_sum_real(gf: GeneratorFamily, eps: float = 1e-9,
                      max_terms: int = 200_000, *,
                      divergence_factor: float = 1e6,
                      cauchy_tolerance: float | None = None) -> NetVerdict:
    """Evaluate the net of finite partial sums of a real generator family.

    With a certificate, terms are consumed in order of decreasing bound until
    the certified tail is below ``eps``; the verdict carries that tail as the
    error bound. Without one, the engine probes for divergence: either a
    one-signed partial sum beyond ``divergence_factor * (1 + largest term)``,
    or a one-signed partial sum still growing by more than the Cauchy
    tolerance between the half-budget and full-budget prefixes. Anything else
    is Inconclusive.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if gf.certificate is not None:
        return _certified(gf, eps, max_terms)
    return _probe(gf, eps, max_terms, divergence_factor,
                  cauchy_tolerance if cauchy_tolerance is not None
                  else max(1e-3, 1000 * eps))


def _certified(gf, eps, max_terms):
    cert = gf.certificate
    order = sorted(range(max_terms), key=lambda i: (-cert.bound(i), i))
    acc = KahanSum()
    for n, i in enumerate(order):
        term = gf.gen(i)
        if abs(term) > cert.bound(i) + 1e-12:
            raise CertificateError(
                f"|gen({i})| = {abs(term)} exceeds bound {cert.bound(i)}")
        acc.add(term)
        tail = cert.sorted_tail(n)
        if tail < eps:
            return NetVerdict("converged", acc.total, tail, terms_used=n + 1)
    return NetVerdict("inconclusive", terms_used=max_terms)


def _probe(gf, eps, max_terms, divergence_factor, cauchy_tol):
    half = max_terms // 2
    pos, neg = KahanSum(), KahanSum()
    pos_half = neg_half = 0.0
    pos_n_half = neg_n_half = 0
    pos_n = neg_n = 0
    largest = 0.0
    for i in range(max_terms):
        try:
            term = gf.gen(i)
        except OverflowError:
            first = SubfamilySummary(f"positive terms among indices 0..{half - 1}",
                                     pos_n_half, pos_half)
            second = SubfamilySummary(
                f"one-signed terms among indices 0..{i} (term overflow)",
                max(pos_n, neg_n), max(pos.total, neg.total))
            return NetVerdict("diverged", evidence=(first, second),
                              terms_used=i + 1)
        largest = max(largest, abs(term))
        if term > 0:
            pos.add(term)
            pos_n += 1
        elif term < 0:
            neg.add(-term)
            neg_n += 1
        if i + 1 == half:
            pos_half, neg_half = pos.total, neg.total
            pos_n_half, neg_n_half = pos_n, neg_n
        threshold = divergence_factor * (1 + largest)
        if pos.total > threshold or neg.total > threshold:
            sign, acc, n = (("positive", pos, pos_n) if pos.total > threshold
                            else ("negative", neg, neg_n))
            first = SubfamilySummary(f"{sign} terms among indices 0..{half - 1}",
                                     pos_n_half if sign == "positive" else neg_n_half,
                                     pos_half if sign == "positive" else neg_half)
            second = SubfamilySummary(f"{sign} terms among indices 0..{i}",
                                      n, acc.total)
            return NetVerdict("diverged", evidence=(first, second),
                              terms_used=i + 1)
    for sign, total, half_total, n, n_half in (
            ("positive", pos.total, pos_half, pos_n, pos_n_half),
            ("negative", neg.total, neg_half, neg_n, neg_n_half)):
        if total - half_total > cauchy_tol:
            first = SubfamilySummary(
                f"{sign} terms among indices 0..{half - 1}", n_half, half_total)
            second = SubfamilySummary(
                f"{sign} terms among indices 0..{max_terms - 1}", n, total)
            return NetVerdict("diverged", evidence=(first, second),
                              terms_used=max_terms)
    return NetVerdict("inconclusive", terms_used=max_terms)


def reordered(gf: GeneratorFamily, perm) -> GeneratorFamily:
    """The same family with indices permuted by ``perm`` (identity beyond its
    length). The certificate's per-index bounds move with the permutation;
    the sorted tail is permutation invariant."""
    perm = list(perm)
    if sorted(perm) != list(range(len(perm))):
        raise ValueError("perm must be a permutation of 0..n-1")

    def gen(i):
        return gf.gen(perm[i]) if i < len(perm) else gf.gen(i)

    cert = gf.certificate
    if cert is not None:
        old_bound = cert.bound

        def bound(i):
            return old_bound(perm[i]) if i < len(perm) else old_bound(i)

        cert = AbsoluteBound(bound, cert.sorted_tail)
    return GeneratorFamily(gen, cert, gf.description + " (reordered)")


# -- stock generator families ------------------------------------------------


def geometric(a: float, r: float) -> GeneratorFamily:
    """Terms a * r^i; certified when |r| < 1 with tail |a| |r|^(n+1) / (1-|r|)."""
    def gen(i):
        return a * r ** i

    cert = None
    if abs(r) < 1:
        cert = AbsoluteBound(
            bound=lambda i: abs(a) * abs(r) ** i,
            sorted_tail=lambda n: abs(a) * abs(r) ** (n + 1) / (1 - abs(r)),
        )
    return GeneratorFamily(gen, cert, f"geometric({a},{r})")


def power_terms(p: float) -> GeneratorFamily:
    """Terms (i+1)^-p; certified for p > 1 by the integral tail bound."""
    def gen(i):
        return (i + 1.0) ** -p

    cert = None
    if p > 1:
        cert = AbsoluteBound(
            bound=lambda i: (i + 1.0) ** -p,
            sorted_tail=lambda n: (n + 1.0) ** (1 - p) / (p - 1),
        )
    return GeneratorFamily(gen, cert, f"power({p})")


def finite_terms(*values: float) -> GeneratorFamily:
    """Finitely many terms then zeros; the certificate tail is exact."""
    values = tuple(float(v) for v in values)
    bounds = sorted((abs(v) for v in values), reverse=True)
    suffix = [0.0]
    for b in reversed(bounds):
        suffix.append(suffix[-1] + b)
    suffix.reverse()  # suffix[n] = sum of bounds from sorted index n on

    def gen(i):
        return values[i] if i < len(values) else 0.0

    cert = AbsoluteBound(
        bound=lambda i: abs(values[i]) if i < len(values) else 0.0,
        sorted_tail=lambda n: suffix[n + 1] if n + 1 < len(suffix) else 0.0,
    )
    return GeneratorFamily(gen, cert, f"finite{values}")


def alternating_harmonic() -> GeneratorFamily:
    """Terms (-1)^i / (i+1); conditionally convergent in order, hence with no
    unordered limit and no certificate."""
    return GeneratorFamily(lambda i: (-1.0) ** i / (i + 1),
                           None, "alternating_harmonic")


_SPEC_RE = re.compile(r"^\s*([a-z_]+)\s*(?:\(([^)]*)\))?\s*$")


def parse_generator_spec(text: str) -> GeneratorFamily:
    """Config syntax: geometric(a, r) | power(p) | finite(v, ...) |
    alternating_harmonic."""
    m = _SPEC_RE.match(text)
    if not m:
        raise ValueError(f"bad generator spec {text!r}")
    kind, args = m.group(1), m.group(2)
    values = [float(v) for v in args.split(",")] if args else []
    if kind == "geometric":
        if len(values) != 2:
            raise ValueError("geometric takes (a, r)")
        return geometric(*values)
    if kind == "power":
        if len(values) != 1:
            raise ValueError("power takes (p)")
        return power_terms(values[0])
    if kind == "finite":
        return finite_terms(*values)
    if kind == "alternating_harmonic":
        if values:
            raise ValueError("alternating_harmonic takes no arguments")
        return alternating_harmonic()
    raise ValueError(f"unknown generator kind {kind!r}")


# -- discrete monoids ----------------------------------------------------------


class FiniteMonoid:
    """Commutative monoid table; validated for identity, commutativity and
    associativity at construction."""

    def __init__(self, elements, op, identity, name=""):
        self.elements = tuple(elements)
        self.op = op
        self.identity = identity
        self.name = name or "monoid"
        for a in self.elements:
            if op(a, identity) != a or op(identity, a) != a:
                raise ConstructionError(f"{a!r}: identity law fails")
            for b in self.elements:
                if op(a, b) != op(b, a):
                    raise ConstructionError(f"({a!r},{b!r}): not commutative")
                for c in self.elements:
                    if op(op(a, b), c) != op(a, op(b, c)):
                        raise ConstructionError(
                            f"({a!r},{b!r},{c!r}): not associative")


def cyclic_monoid(n: int) -> FiniteMonoid:
    return FiniteMonoid(range(n), lambda a, b: (a + b) % n, 0, name=f"Z{n}")


def extended_sum_discrete(monoid: FiniteMonoid, fam: Family) -> SumResult:
    """Extended sum in the discrete topology: the net of finite partial sums
    is eventually constant exactly when all but finitely many occurrences are
    the identity; then it stabilizes at the fold of the nonzero part."""
    for e in fam.support():
        if e not in monoid.elements:
            raise CarrierError(f"{e!r} not in {monoid.name}")
    for e in fam.omega:
        if e != monoid.identity:
            return UNDEFINED
    acc = monoid.identity
    for e, c in fam.finite:
        for _ in range(c):
            acc = monoid.op(acc, e)
    return Defined(acc)


def discrete_instance(monoid: FiniteMonoid, name=None) -> SigmaInstance:
    """The summation instance a discrete Hausdorff monoid induces."""
    from .instances import INT_CODEC
    return SigmaInstance(
        name or f"discrete({monoid.name})",
        FiniteCarrier(monoid.elements), monoid.identity,
        lambda fam: extended_sum_discrete(monoid, fam),
        flavor="finitely_total",
        codec=INT_CODEC if all(isinstance(e, int) for e in monoid.elements) else None,
    )


def check_hausdorff_axioms(inst: SigmaInstance, budget=None):
    """Weak plus finitely-total law suites for an instance induced by a
    topological monoid (discrete table or certified families)."""
    from .core import Budget
    from .checker import check_ft_and_group, check_weak

    if budget is None:
        budget = Budget()
    return check_weak(inst, budget).merged(check_ft_and_group(inst, budget))
