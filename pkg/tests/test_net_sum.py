import math
import random

import pytest

from sigmasum.core import Budget, CarrierError, ConstructionError, Defined, UNDEFINED
from sigmasum.family import Family, families_within, map_family
from sigmasum.instances import cyclic_instance
from sigmasum.net_sum import (
    AbsoluteBound,
    CertificateError,
    FiniteMonoid,
    GeneratorFamily,
    KahanSum,
    alternating_harmonic,
    check_hausdorff_axioms,
    cyclic_monoid,
    discrete_instance,
    extended_sum_discrete,
    extended_sum_real,
    finite_terms,
    geometric,
    parse_generator_spec,
    power_terms,
    reordered,
)

BUDGET = Budget(max_finite_size=4, max_omega_elems=1, trials=0, seed=7)


# -- certified convergence ------------------------------------------------------


def test_geometric_half_converges_to_closed_form():
    verdict = extended_sum_real(geometric(0.5, 0.5), eps=1e-9)
    assert verdict.converged
    assert abs(verdict.value - 1.0) <= 1e-9  # oracle: a / (1 - r) = 1
    assert verdict.error_bound <= 1e-9


def test_finite_support_exact():
    verdict = extended_sum_real(finite_terms(1, 2, 3), eps=1e-9)
    assert verdict.converged
    assert verdict.value == 6.0 and verdict.error_bound == 0.0


def test_power_terms_certified_tail():
    verdict = extended_sum_real(power_terms(2.0), eps=1e-4)
    assert verdict.converged
    assert abs(verdict.value - math.pi ** 2 / 6) <= 2e-4


def test_error_bound_monotone_in_prefix():
    cert = geometric(0.5, 0.5).certificate
    tails = [cert.sorted_tail(n) for n in range(40)]
    assert tails == sorted(tails, reverse=True)


def test_certificate_violation_detected():
    lying = GeneratorFamily(
        gen=lambda i: 1.0,
        certificate=AbsoluteBound(lambda i: 0.5 ** i,
                                  lambda n: 0.5 ** n),
        description="lying",
    )
    with pytest.raises(CertificateError):
        extended_sum_real(lying, eps=1e-9)


def test_eps_must_be_positive():
    with pytest.raises(ValueError):
        extended_sum_real(geometric(0.5, 0.5), eps=0)


# -- divergence and inconclusive ---------------------------------------------------


def test_alternating_harmonic_diverges_with_nested_witnesses():
    verdict = extended_sum_real(alternating_harmonic(), eps=1e-9)
    assert verdict.kind == "diverged"
    first, second = verdict.evidence
    assert first.count < second.count
    assert second.partial_sum - first.partial_sum > 0.1


def test_fast_divergence_hits_absolute_threshold():
    verdict = extended_sum_real(geometric(1.0, 2.0), eps=1e-9, max_terms=5000)
    assert verdict.kind == "diverged"


def test_uncertified_convergent_is_inconclusive():
    gf = GeneratorFamily(lambda i: (-1.0) ** i / (i + 1) ** 2, None, "no cert")
    verdict = extended_sum_real(gf, eps=1e-9, max_terms=20_000)
    assert verdict.kind == "inconclusive"


def test_certified_but_budget_too_small_is_inconclusive():
    verdict = extended_sum_real(geometric(0.5, 0.5), eps=1e-30, max_terms=10)
    assert verdict.kind == "inconclusive"


# -- permutation invariance ----------------------------------------------------------


def test_reorderings_agree_within_twice_eps():
    base = geometric(0.5, 0.5)
    rng = random.Random(7)
    values = []
    for _ in range(10):
        perm = list(range(64))
        rng.shuffle(perm)
        verdict = extended_sum_real(reordered(base, perm), eps=1e-9)
        assert verdict.converged and abs(verdict.value - 1.0) <= 1e-9
        values.append(verdict.value)
    assert max(values) - min(values) <= 2e-9


def test_reordered_requires_permutation():
    with pytest.raises(ValueError):
        reordered(geometric(0.5, 0.5), [0, 0, 1])


def test_subnet_prefix_consistency():
    # evaluating along coarser cofinal prefixes gives the same limit
    base = geometric(0.5, 0.5)
    v_fine = extended_sum_real(base, eps=1e-9)
    v_coarse = extended_sum_real(base, eps=1e-6)
    assert abs(v_fine.value - v_coarse.value) <= 1e-6 + 1e-9


def test_kahan_compensation_beats_naive_on_adversarial_terms():
    acc = KahanSum()
    terms = [1.0, 1e-16, -1e-16] * 1000
    naive = 0.0
    for t in terms:
        acc.add(t)
        naive += t
    assert acc.total == 1000.0


# -- discrete monoids --------------------------------------------------------------------


def test_discrete_fold_oracle_mod_two():
    z2 = cyclic_monoid(2)
    assert extended_sum_discrete(z2, Family.of(1, 1, 1)) == Defined(1)
    assert extended_sum_discrete(
        z2, Family.from_counts([], omega=[0])) == Defined(0)
    assert extended_sum_discrete(
        z2, Family.from_counts([], omega=[1])) == UNDEFINED


def test_discrete_rejects_foreign_elements():
    with pytest.raises(CarrierError):
        extended_sum_discrete(cyclic_monoid(2), Family.of(7))


def test_monoid_table_validated():
    with pytest.raises(ConstructionError):
        FiniteMonoid((0, 1), lambda a, b: 0, identity=0)  # identity law fails


def test_discrete_agrees_with_direct_instance():
    # net semantics versus the directly defined modular instance
    for n in (2, 4):
        monoid = cyclic_monoid(n)
        direct = cyclic_instance(n)
        for fam in families_within(range(n), 4, 1):
            assert extended_sum_discrete(monoid, fam) == direct.sum(fam)


def test_continuous_hom_preserves_extended_sums():
    z4, z2 = cyclic_monoid(4), cyclic_monoid(2)
    h = lambda x: x % 2
    for fam in families_within(range(4), 4, 1):
        r = extended_sum_discrete(z4, fam)
        if r.defined:
            assert extended_sum_discrete(z2, map_family(h, fam)) == \
                Defined(h(r.value))


def test_discrete_instance_passes_weak_and_ft_suites():
    inst = discrete_instance(cyclic_monoid(2))
    report = check_hausdorff_axioms(inst, BUDGET)
    assert report.ok
    laws = {v.law for v in report.laws}
    assert "finite_totality" in laws and "bracketing" in laws


def test_certified_real_flattening_spot_check():
    # splicing two geometric series: interleaved terms sum to the sum of sums
    eps = 1e-9
    a = extended_sum_real(geometric(0.5, 0.5), eps=eps)
    b = extended_sum_real(geometric(0.25, 0.25), eps=eps)
    spliced = GeneratorFamily(
        gen=lambda i: 0.5 * 0.5 ** (i // 2) if i % 2 == 0
        else 0.25 * 0.25 ** (i // 2),
        certificate=AbsoluteBound(
            bound=lambda i: 0.5 * 0.5 ** (i // 2) if i % 2 == 0
            else 0.25 * 0.25 ** (i // 2),
            # after the n+1 largest bounds, the leftovers are dominated by
            # the two tails of the halves
            sorted_tail=lambda n: (0.5 ** (n // 2) / 0.5
                                   + 0.25 ** (n // 2) / 0.75),
        ),
        description="spliced",
    )
    v = extended_sum_real(spliced, eps=eps)
    assert v.converged
    assert abs(v.value - (a.value + b.value)) <= 2 * eps


# -- generator spec parsing ------------------------------------------------------------


def test_parse_generator_specs():
    assert parse_generator_spec("geometric(0.5, 0.5)").certificate is not None
    assert parse_generator_spec("power(2)").certificate is not None
    assert parse_generator_spec("power(0.5)").certificate is None
    assert parse_generator_spec("finite(1,2,3)").gen(1) == 2.0
    assert parse_generator_spec("alternating_harmonic").certificate is None
    with pytest.raises(ValueError):
        parse_generator_spec("mystery(1)")
    with pytest.raises(ValueError):
        parse_generator_spec("geometric(1)")
