# The checker decides which axiom flavor an instance satisfies, within an
# explicit budget. Verdicts are pass / fail(witness) / truncated; truncated
# means no violation was found but the partition caps clipped the search.
from sigmasum import (
    Budget,
    conclude_flavor,
    check_strong,
    check_weak,
    ext_nat_instance,
    int_group_instance,
    pm_instance,
    powerset_parity_instance,
    real_abs_instance,
)

budget = Budget(max_finite_size=4, max_omega_elems=1, trials=10, seed=7)

print("weak suite on the signed-surplus instance:")
for verdict in check_weak(pm_instance(), budget).laws:
    print(f"  {verdict.law:16s} {verdict.status}")

print("\nstrong suite on the same instance finds the classic failure:")
for verdict in check_strong(pm_instance(), budget).laws:
    line = f"  {verdict.law:18s} {verdict.status}"
    if verdict.witness:
        line += f"  witness: {verdict.witness}"
    print(line)

print("\nthe integers fail the zero-sum probe exactly as a group should:")
report = check_strong(int_group_instance(), budget)
print("  ", report.verdict("zero_sum_all_zero").witness)

print("\nflavor conclusions (strongest flavor whose laws all hold):")
for make in (pm_instance,
             lambda: powerset_parity_instance(("a", "b")),
             real_abs_instance,
             int_group_instance,
             ext_nat_instance):
    inst = make()
    report = conclude_flavor(inst, budget)
    print(f"  {inst.name:12s} -> {report.flavor}")
