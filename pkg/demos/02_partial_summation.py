# Each instance couples a carrier with a partial summation rule on families.
# Undefined is a value, not an error: Kleene equality treats "both undefined"
# as agreement. An element outside the carrier, by contrast, raises.
from fractions import Fraction

from sigmasum import (
    Family,
    CarrierError,
    ext_nat_instance,
    int_group_instance,
    pm_instance,
    powerset_parity_instance,
    real_abs_instance,
    unit_interval_instance,
)

pm = pm_instance()
print("signed surplus on {0,+,-}:")
print("  {+,+,-}  ->", pm.sum(Family.of("+", "+", "-")))
print("  {+,+}    ->", pm.sum(Family.of("+", "+")))   # no defined surplus
print("  {0:omega} ->", pm.sum(Family.from_counts([], omega=["0"])))

par = powerset_parity_instance(("a", "b"))
A, AB = frozenset({"a"}), frozenset({"a", "b"})
print("\nparity of occurrences over subsets of {a,b}:")
print("  {A,A}  ->", par.sum(Family.of(A, A)))
print("  {A,AB} ->", par.sum(Family.of(A, AB)))
print("  {A:omega} ->", par.sum(Family.from_counts([], omega=[A])))

real = real_abs_instance()
print("\nexact rationals, absolute-convergence style:")
print("  {1,2,3}          ->", real.sum(Family.of(Fraction(1), Fraction(2), Fraction(3))))
print("  {1} + 0:omega    ->", real.sum(Family.from_counts([(Fraction(1), 1)],
                                                           omega=[Fraction(0)])))
print("  {1:omega}        ->", real.sum(Family.from_counts([], omega=[Fraction(1)])))

interval = unit_interval_instance()
whole = Family.of(Fraction(3, 4), Fraction(1, 2), Fraction(-1, 4))
sub = Family.of(Fraction(3, 4), Fraction(1, 2))
print("\nrestriction to [-1,1]: a summable family with an unsummable subfamily")
print("  {3/4, 1/2, -1/4} ->", interval.sum(whole))
print("  {3/4, 1/2}       ->", interval.sum(sub))

ig = int_group_instance()
print("\nintegers carry inverses: {5,-5} ->", ig.sum(Family.of(5, -5)))

en = ext_nat_instance()
print("naturals-with-infinity sum everything: {1:omega} ->",
      en.sum(Family.from_counts([], omega=[1])))

try:
    pm.sum(Family.of("x"))
except CarrierError as exc:
    print("\ncarrier discipline:", exc)
