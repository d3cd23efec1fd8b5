# Summation as the limit of the net of finite partial sums. Certified real
# families converge with an explicit error bound; uncertified ones can only
# be refuted (divergence evidence) or left inconclusive. Finite discrete
# monoids make the net eventually constant exactly when all but finitely many
# terms are the identity.
import random

from sigmasum import (
    Family,
    alternating_harmonic,
    cyclic_instance,
    cyclic_monoid,
    extended_sum_discrete,
    extended_sum_real,
    finite_terms,
    geometric,
    map_family,
    reordered,
)

verdict = extended_sum_real(geometric(0.5, 0.5), eps=1e-9)
print(f"sum of 0.5^(i+1): {verdict.value} within {verdict.error_bound:.2e} "
      f"({verdict.terms_used} terms)")

verdict = extended_sum_real(finite_terms(1, 2, 3), eps=1e-9)
print("finite support is exact:", verdict.value, "error", verdict.error_bound)

rng = random.Random(7)
values = []
for _ in range(5):
    perm = list(range(64))
    rng.shuffle(perm)
    values.append(extended_sum_real(reordered(geometric(0.5, 0.5), perm),
                                    eps=1e-9).value)
print("reordering spread:", max(values) - min(values))

verdict = extended_sum_real(alternating_harmonic(), eps=1e-9)
first, second = verdict.evidence
print("\nalternating harmonic has no unordered sum:")
print("  ", first.description, "->", round(first.partial_sum, 4))
print("  ", second.description, "->", round(second.partial_sum, 4))

z2 = cyclic_monoid(2)
print("\ndiscrete Z/2:")
print("  {1,1,1}    ->", extended_sum_discrete(z2, Family.of(1, 1, 1)))
print("  {1:omega}  ->", extended_sum_discrete(z2, Family.from_counts([], omega=[1])))

z4 = cyclic_monoid(4)
fam = Family.of(1, 2, 3)
r = extended_sum_discrete(z4, fam)
image = map_family(lambda x: x % 2, fam)
print("\nreduction mod 2 preserves extended sums:",
      extended_sum_discrete(z2, image).value == r.value % 2)
print("net semantics agrees with the direct modular instance:",
      extended_sum_discrete(z4, fam) == cyclic_instance(4).sum(fam))
