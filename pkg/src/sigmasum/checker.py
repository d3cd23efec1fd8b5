"""Budgeted law suites: which axiom flavor does an instance satisfy?

Every verdict is relative to an explicit budget. Failures carry replayable,
shrunk witnesses; searches clipped by the partition caps are reported as
``truncated`` rather than silently passed.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .family import (
    BRACKETING,
    FLATTENING,
    UNCONSTRAINED,
    EMPTY,
    Family,
    disjoint_union,
    map_family,
    enumerate_partitions,
    subfamilies,
)
from .core import (
    Budget,
    Defined,
    SigmaInstance,
    budget_families,
    check_hom,
    partition_sums,
)

PASS, FAIL, TRUNCATED = "pass", "fail", "truncated"

WEAK_LAWS = ("singleton", "neutral_element", "bracketing", "flattening")
STRONG_LAWS = ("subsummability", "strong_bracketing", "strong_flattening",
               "zero_sum_all_zero")
FT_LAWS = ("finite_totality",)
GROUP_LAWS = ("inverses_exist", "inversion_hom", "inverse_cancellation")


@dataclass
class LawVerdict:
    law: str
    status: str
    witness: dict | None = None
    checked: int = 0

    @property
    def failed(self) -> bool:
        return self.status == FAIL


@dataclass
class LawReport:
    instance: str
    budget: Budget
    laws: list = field(default_factory=list)
    flavor: str | None = None

    @property
    def ok(self) -> bool:
        return not any(v.failed for v in self.laws)

    def verdict(self, law: str) -> LawVerdict:
        for v in self.laws:
            if v.law == law:
                return v
        raise KeyError(law)

    def merged(self, other: "LawReport") -> "LawReport":
        return LawReport(self.instance, self.budget, self.laws + other.laws,
                         self.flavor)


def _format_family(inst, fam: Family) -> str:
    codec = inst.codec
    fmt = codec.format if codec else repr
    fin = ", ".join(fmt(e) for e, c in fam.finite for _ in range(c))
    om = ", ".join(fmt(e) for e in fam.omega)
    return "{finite: [" + fin + "], omega: [" + om + "]}"


def _format_partition(inst, part) -> list:
    out = []
    for block, mult in part.blocks:
        out.append({"block": _format_family(inst, block),
                    "multiplicity": "omega" if mult == float("inf") else mult})
    return out


def _shrink_candidates(fam: Family):
    for e, c in fam.finite:
        yield Family.from_counts(
            [(x, cc - 1 if x == e else cc) for x, cc in fam.finite],
            fam.omega)
    for e in fam.omega:
        rest = tuple(x for x in fam.omega if x != e)
        yield Family(fam.finite, rest)
        for demoted in (2, 1):
            yield Family.from_counts(list(fam.finite) + [(e, demoted)], rest)


def shrink_family(fam: Family, violates) -> Family:
    """Greedy minimization: drop occurrences / demote omega parts while the
    violation persists."""
    improved = True
    while improved:
        improved = False
        for cand in sorted(_shrink_candidates(fam), key=Family.sort_key):
            if cand != fam and violates(cand):
                fam = cand
                improved = True
                break
    return fam


# -- individual laws --------------------------------------------------------


def _law_singleton(inst, budget, fams):
    for i, x in enumerate(inst.samples()):
        if inst.sum(Family.of(x)) != Defined(x):
            return LawVerdict("singleton", FAIL,
                              {"family": _format_family(inst, Family.of(x))},
                              checked=i + 1)
    return LawVerdict("singleton", PASS, checked=len(inst.samples()))


def _law_neutral(inst, budget, fams):
    checked = 1
    if inst.sum(EMPTY) != Defined(inst.zero):
        return LawVerdict("neutral_element", FAIL,
                          {"family": _format_family(inst, EMPTY)}, checked)

    def violates(fam):
        return (inst.sum(fam).defined
                and not inst.sum(fam.without(inst.zero)).defined)

    for fam in fams:
        if not inst.sum(fam).defined:
            continue
        checked += 1
        if violates(fam):
            fam = shrink_family(fam, violates)
            return LawVerdict(
                "neutral_element", FAIL,
                {"family": _format_family(inst, fam),
                 "stripped": _format_family(inst, fam.without(inst.zero))},
                checked)
    return LawVerdict("neutral_element", PASS, checked=checked)


def _law_regroup(inst, budget, fams, law, shape, direction):
    """direction 'bracketing': defined whole must regroup to the same value;
    'flattening': defined regrouping forces the whole."""
    checked = 0
    truncated = False

    def summable_block(b):
        return inst.sum(b).defined

    def find(fam):
        stream = enumerate_partitions(fam, shape, budget.caps,
                                      block_filter=summable_block)
        r = inst.sum(fam)
        hit = None
        for part in stream:
            sums = partition_sums(inst, part)
            if sums is None:
                continue
            rs = inst.sum(sums)
            if direction == "bracketing":
                if r.defined and rs != r:
                    hit = (part, sums)
                    break
            else:
                if rs.defined and r != rs:
                    hit = (part, sums)
                    break
        return hit, stream.truncated

    for fam in fams:
        if direction == "bracketing" and not inst.sum(fam).defined:
            continue
        checked += 1
        hit, trunc = find(fam)
        truncated |= trunc
        if hit:
            def violates(cand):
                return find(cand)[0] is not None
            fam = shrink_family(fam, violates)
            part, sums = find(fam)[0]
            return LawVerdict(law, FAIL, {
                "family": _format_family(inst, fam),
                "partition": _format_partition(inst, part),
                "block_sums": _format_family(inst, sums),
            }, checked)
    return LawVerdict(law, TRUNCATED if truncated else PASS, checked=checked)


def _law_subsummability(inst, budget, fams):
    checked = 0
    omega_cap = budget.caps.block_size

    def bad_sub(fam):
        if not inst.sum(fam).defined:
            return None
        for sub in subfamilies(fam, omega_finite_cap=omega_cap):
            if not inst.sum(sub).defined:
                return sub
        return None

    for fam in fams:
        if not inst.sum(fam).defined:
            continue
        checked += 1
        sub = bad_sub(fam)
        if sub is not None:
            fam = shrink_family(fam, lambda cand: bad_sub(cand) is not None)
            sub = bad_sub(fam)
            return LawVerdict("subsummability", FAIL, {
                "family": _format_family(inst, fam),
                "subfamily": _format_family(inst, sub),
            }, checked)
    return LawVerdict("subsummability", PASS, checked=checked)


def _law_zero_sum(inst, budget, fams):
    checked = 0

    def violates(fam):
        return (inst.sum(fam) == Defined(inst.zero)
                and any(e != inst.zero for e in fam.support()))

    for fam in fams:
        checked += 1
        if violates(fam):
            fam = shrink_family(fam, violates)
            return LawVerdict("zero_sum_all_zero", FAIL,
                              {"family": _format_family(inst, fam)}, checked)
    return LawVerdict("zero_sum_all_zero", PASS, checked=checked)


def _law_finite_totality(inst, budget, fams):
    checked = 0

    def violates(fam):
        return fam.is_finite and not inst.sum(fam).defined

    for fam in fams:
        if not fam.is_finite:
            continue
        checked += 1
        if violates(fam):
            fam = shrink_family(fam, violates)
            return LawVerdict("finite_totality", FAIL,
                              {"family": _format_family(inst, fam)}, checked)
    return LawVerdict("finite_totality", PASS, checked=checked)


def _law_inverses(inst, budget, fams):
    if inst.inversion is None:
        return LawVerdict("inverses_exist", FAIL,
                          {"reason": "no inversion map installed"})
    for i, x in enumerate(inst.samples()):
        pair = Family.of(x, inst.inversion(x))
        if inst.sum(pair) != Defined(inst.zero):
            return LawVerdict("inverses_exist", FAIL,
                              {"family": _format_family(inst, pair)},
                              checked=i + 1)
    return LawVerdict("inverses_exist", PASS, checked=len(inst.samples()))


def _law_inversion_hom(inst, budget, fams):
    if inst.inversion is None:
        return LawVerdict("inversion_hom", FAIL,
                          {"reason": "no inversion map installed"})
    verdict = check_hom(inst.inversion, inst, inst, budget)
    if not verdict.ok:
        return LawVerdict("inversion_hom", FAIL,
                          {"family": _format_family(inst, verdict.counterexample)},
                          checked=verdict.checked)
    return LawVerdict("inversion_hom", PASS, checked=verdict.checked)


def _law_inverse_cancellation(inst, budget, fams):
    if inst.inversion is None:
        return LawVerdict("inverse_cancellation", FAIL,
                          {"reason": "no inversion map installed"})
    checked = 0

    def violates(fam):
        if not inst.sum(fam).defined:
            return False
        both = disjoint_union(fam, map_family(inst.inversion, fam))
        return inst.sum(both) != Defined(inst.zero)

    for fam in fams:
        if not inst.sum(fam).defined:
            continue
        checked += 1
        if violates(fam):
            fam = shrink_family(fam, violates)
            return LawVerdict("inverse_cancellation", FAIL,
                              {"family": _format_family(inst, fam)}, checked)
    return LawVerdict("inverse_cancellation", PASS, checked=checked)


# -- suites ------------------------------------------------------------------


def check_weak(inst: SigmaInstance, budget: Budget = Budget()) -> LawReport:
    """Singleton, neutral element, bracketing and flattening, within budget."""
    fams = budget_families(inst, budget)
    report = LawReport(inst.name, budget)
    report.laws.append(_law_singleton(inst, budget, fams))
    report.laws.append(_law_neutral(inst, budget, fams))
    report.laws.append(_law_regroup(inst, budget, fams, "bracketing",
                                    BRACKETING, "bracketing"))
    report.laws.append(_law_regroup(inst, budget, fams, "flattening",
                                    FLATTENING, "flattening"))
    return report


def check_strong(inst: SigmaInstance, budget: Budget = Budget()) -> LawReport:
    """Subsummability plus unconstrained-shape regrouping, and the probe that
    families summing to zero contain only zeros."""
    fams = budget_families(inst, budget)
    report = LawReport(inst.name, budget)
    report.laws.append(_law_subsummability(inst, budget, fams))
    report.laws.append(_law_regroup(inst, budget, fams, "strong_bracketing",
                                    UNCONSTRAINED, "bracketing"))
    report.laws.append(_law_regroup(inst, budget, fams, "strong_flattening",
                                    UNCONSTRAINED, "flattening"))
    report.laws.append(_law_zero_sum(inst, budget, fams))
    return report


def check_ft_and_group(inst: SigmaInstance, budget: Budget = Budget(),
                       require_group: bool = False) -> LawReport:
    """Finite totality; when an inversion map is installed (or the group laws
    were explicitly requested), also the group laws (inverse pairs, inversion
    preservation, family cancellation)."""
    fams = budget_families(inst, budget)
    report = LawReport(inst.name, budget)
    report.laws.append(_law_finite_totality(inst, budget, fams))
    if inst.inversion is not None or require_group:
        report.laws.append(_law_inverses(inst, budget, fams))
        report.laws.append(_law_inversion_hom(inst, budget, fams))
        report.laws.append(_law_inverse_cancellation(inst, budget, fams))
    return report


def conclude_flavor(inst: SigmaInstance, budget: Budget = Budget()) -> LawReport:
    """Run everything and conclude the strongest flavor whose laws all hold
    (modulo caps: truncated counts as non-failing and is reported as such)."""
    weak = check_weak(inst, budget)
    strong = check_strong(inst, budget)
    ftg = check_ft_and_group(inst, budget)
    report = weak.merged(strong).merged(ftg)
    weak_ok = weak.ok
    strong_ok = weak_ok and strong.ok
    ft_ok = weak_ok and not ftg.verdict("finite_totality").failed
    group_ok = (ft_ok and inst.inversion is not None
                and not any(v.failed for v in ftg.laws))
    if group_ok:
        report.flavor = "sigma_group"
    elif strong_ok:
        report.flavor = "strong"
    elif ft_ok:
        report.flavor = "finitely_total"
    elif weak_ok:
        report.flavor = "weak"
    else:
        report.flavor = None
    return report


def suite_for(laws: str):
    """Suite selector used by the command line: weak | strong | ft | group | all."""
    def group(inst, budget):
        return check_ft_and_group(inst, budget, require_group=True)

    table = {
        "weak": check_weak,
        "strong": check_strong,
        "ft": check_ft_and_group,
        "group": group,
        "all": conclude_flavor,
    }
    if laws not in table:
        raise KeyError(laws)
    return table[laws]
