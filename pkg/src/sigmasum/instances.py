"""Concrete summation instances used as fixtures and oracles.

Law testing over the real-flavored instances uses exact rationals; floating
point lives only in the net-summation engine.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .family import Family, is_omega, map_family
from .core import (
    Defined,
    UNDEFINED,
    ConstructionError,
    FiniteCarrier,
    SigmaInstance,
    SymbolicCarrier,
)

INFINITY = math.inf


@dataclass(frozen=True)
class ElementCodec:
    """Element syntax owned by an instance: text -> element and back."""

    parse: Callable[[str], object]
    format: Callable[[object], str]


def _pm_parse(text):
    text = text.strip()
    if text not in ("0", "+", "-"):
        raise ValueError(f"bad element {text!r}, expected 0, + or -")
    return text


PM_CODEC = ElementCodec(_pm_parse, str)


def pm_instance() -> SigmaInstance:
    """Three-element instance {0, +, -}: a family sums to the sign of its
    finite surplus when + and - occurrences are finite and differ by at most
    one; everything else is undefined."""

    def rule(fam: Family):
        n_plus = fam.count("+")
        n_minus = fam.count("-")
        if is_omega(n_plus) or is_omega(n_minus):
            return UNDEFINED
        if n_plus == n_minus:
            return Defined("0")
        if n_plus == n_minus + 1:
            return Defined("+")
        if n_plus == n_minus - 1:
            return Defined("-")
        return UNDEFINED

    return SigmaInstance("pm", FiniteCarrier(("0", "+", "-")), "0", rule,
                         flavor="weak", codec=PM_CODEC)


def _subset_codec(universe) -> ElementCodec:
    members = {str(u): u for u in universe}

    def parse(text):
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise ValueError(f"bad subset literal {text!r}")
        body = text[1:-1].strip()
        if not body:
            return frozenset()
        out = set()
        for part in body.split(","):
            part = part.strip()
            if part not in members:
                raise ValueError(f"{part!r} is not in the universe")
            out.add(members[part])
        return frozenset(out)

    def fmt(subset):
        return "[" + ",".join(sorted(str(x) for x in subset)) + "]"

    return ElementCodec(parse, fmt)


def powerset_parity_instance(universe) -> SigmaInstance:
    """Subsets of a finite universe; a family sums to the set of points that
    occur in an odd number of members, provided every point occurs finitely
    often. On finite families this is iterated symmetric difference."""
    universe = tuple(sorted(dict.fromkeys(universe)))
    uset = frozenset(universe)
    subsets = []
    for mask in range(1 << len(universe)):
        subsets.append(frozenset(u for i, u in enumerate(universe) if mask >> i & 1))

    def rule(fam: Family):
        for subset in fam.omega:
            if subset:
                return UNDEFINED
        odd = set()
        for x in uset:
            n = sum(c for subset, c in fam.finite if x in subset)
            if n % 2 == 1:
                odd.add(x)
        return Defined(frozenset(odd))

    name = "parity(" + ",".join(str(u) for u in universe) + ")"
    return SigmaInstance(name, FiniteCarrier(subsets), frozenset(), rule,
                         flavor="weak", codec=_subset_codec(universe))


def _rational_parse(text):
    return Fraction(text.strip())


def _rational_format(value):
    return str(value)


RATIONAL_CODEC = ElementCodec(_rational_parse, _rational_format)


def _is_rational(e) -> bool:
    return isinstance(e, (int, Fraction)) and not isinstance(e, bool)


def real_abs_instance() -> SigmaInstance:
    """Exact rationals under unordered absolute-convergence summation.

    Within this representation a family is summable iff its omega part is
    contained in {0} (a nonzero value repeated infinitely often has unbounded
    partial sums); the value is the exact finite sum.
    """

    def rule(fam: Family):
        for e in fam.omega:
            if e != 0:
                return UNDEFINED
        return Defined(sum((Fraction(e) * c for e, c in fam.finite), Fraction(0)))

    carrier = SymbolicCarrier(
        _is_rational,
        samples=(Fraction(0), Fraction(-1, 4), Fraction(1, 2), Fraction(3, 4),
                 Fraction(1)),
        description="exact rationals",
    )
    return SigmaInstance("real", carrier, Fraction(0), rule,
                         flavor="sigma_group", inversion=lambda x: -x,
                         codec=RATIONAL_CODEC)


INT_CODEC = ElementCodec(lambda s: int(s.strip()), str)


def int_group_instance() -> SigmaInstance:
    """Integers with the same summability rule as the rationals; inversion is
    negation, making this the stock group-flavored fixture."""

    def rule(fam: Family):
        for e in fam.omega:
            if e != 0:
                return UNDEFINED
        return Defined(sum(e * c for e, c in fam.finite))

    carrier = SymbolicCarrier(
        lambda e: isinstance(e, int) and not isinstance(e, bool),
        samples=(0, 1, 5, -5),
        description="integers",
    )
    return SigmaInstance("int", carrier, 0, rule, flavor="sigma_group",
                         inversion=lambda x: -x, codec=INT_CODEC)


def _extnat_parse(text):
    text = text.strip()
    if text in ("inf", "oo"):
        return INFINITY
    value = int(text)
    if value < 0:
        raise ValueError("extnat elements are nonnegative")
    return value


def _extnat_format(value):
    return "inf" if value == INFINITY else str(value)


EXTNAT_CODEC = ElementCodec(_extnat_parse, _extnat_format)


def ext_nat_instance() -> SigmaInstance:
    """Naturals with a top element: every family is summable (the supremum of
    the finite partial sums), so this is the stock strong fixture."""

    def rule(fam: Family):
        total = 0
        for e in fam.omega:
            if e != 0:
                return Defined(INFINITY)
        for e, c in fam.finite:
            if e == INFINITY:
                return Defined(INFINITY)
            total += e * c
        return Defined(total)

    carrier = SymbolicCarrier(
        lambda e: e == INFINITY or (isinstance(e, int) and not isinstance(e, bool) and e >= 0),
        samples=(0, 1, 2, INFINITY),
        description="naturals with infinity",
    )
    return SigmaInstance("extnat", carrier, 0, rule, flavor="strong",
                         codec=EXTNAT_CODEC)


def cyclic_instance(n: int) -> SigmaInstance:
    """Integers mod n with direct modular summation: summable iff all but
    finitely many occurrences are zero."""
    if n < 1:
        raise ConstructionError("modulus must be >= 1")

    def rule(fam: Family):
        for e in fam.omega:
            if e != 0:
                return UNDEFINED
        return Defined(sum(e * c for e, c in fam.finite) % n)

    return SigmaInstance(f"zmod{n}", FiniteCarrier(range(n)), 0, rule,
                         flavor="sigma_group", inversion=lambda x: (n - x) % n,
                         codec=INT_CODEC)


def restrict_instance(parent: SigmaInstance, carrier, embed=None, *,
                      inverse=None, name=None, flavor="weak",
                      codec=None) -> SigmaInstance:
    """Pull the parent's summation back along an injective embedding.

    A family is summable exactly when its image is summable in the parent with
    the value inside the embedded carrier; the embedding is then structure
    preserving by construction.
    """
    identity_embed = embed is None
    fn = (lambda x: x) if identity_embed else embed

    if isinstance(carrier, (list, tuple)):
        carrier = FiniteCarrier(carrier)

    if carrier.is_finite:
        table = {e: fn(e) for e in carrier.elements}
        if len(set(table.values())) != len(table):
            raise ConstructionError("embedding is not injective on the carrier")
        reverse = {v: k for k, v in table.items()}
        inv = reverse.get
    elif inverse is not None:
        inv = inverse
    elif identity_embed:
        inv = lambda y: y if y in carrier else None
    else:
        raise ConstructionError(
            "symbolic restriction with a nontrivial embedding needs an inverse")

    zero = inv(parent.zero)
    if zero is None or fn(zero) != parent.zero:
        raise ConstructionError("the parent zero has no preimage in the carrier")

    def rule(fam: Family):
        r = parent.sum(map_family(fn, fam))
        if not r.defined:
            return UNDEFINED
        x = inv(r.value)
        if x is None:
            return UNDEFINED
        return Defined(x)

    inst = SigmaInstance(
        name or f"{parent.name}|restricted",
        carrier, zero, rule, flavor=flavor,
        codec=codec if codec is not None else (parent.codec if identity_embed else None),
    )
    inst.parent = parent
    inst.embed = fn
    inst.embed_inverse = inv
    return inst


def unit_interval_instance() -> SigmaInstance:
    """Rationals restricted to [-1, 1]: summable only when the unrestricted
    sum lands back inside the interval. A summable family can have unsummable
    subfamilies, e.g. {3/4, 1/2, -1/4} versus {3/4, 1/2}."""
    carrier = SymbolicCarrier(
        lambda e: _is_rational(e) and -1 <= e <= 1,
        samples=(Fraction(0), Fraction(-1, 4), Fraction(1, 2), Fraction(3, 4)),
        description="rationals in [-1, 1]",
    )
    return restrict_instance(real_abs_instance(), carrier, name="interval",
                             flavor="weak")
