# Products, equalisers, chain colimits and internal homs each carry an
# explicit summation rule, and each preserves the flavor of its inputs.
from sigmasum import (
    Budget,
    EMPTY,
    Family,
    chain_colimit,
    check_bilinear,
    equaliser,
    internal_hom,
    left_unitor,
    pm_instance,
    powerset_parity_instance,
    product,
    unit_instance,
    verify_hom,
)

budget = Budget(max_finite_size=3, max_omega_elems=1, trials=0, seed=7)
pm = pm_instance()

P = product(pm, pm)
print("pair families sum componentwise, when both projections do:")
print("  {(+,-),(-,+)} ->", P.sum(Family.of(("+", "-"), ("-", "+"))))
print("  {(+,+),(-,+)} ->", P.sum(Family.of(("+", "+"), ("-", "+"))))

ident = verify_hom(lambda e: e, pm, pm, budget, name="id")
swap = verify_hom(lambda e: {"+": "-", "-": "+", "0": "0"}[e], pm, pm,
                  budget, name="swap")
E = equaliser(ident, swap)
print("\nequaliser of id and swap keeps the agreement set:", E.carrier.elements)
print("  {0,0} ->", E.sum(Family.of("0", "0")))

pa = powerset_parity_instance(("a",))
pab = powerset_parity_instance(("a", "b"))
inclusion = verify_hom(lambda s: s, pa, pab, budget, name="inc")
C = chain_colimit([pa, pab], [inclusion])
print("\ncolimit of the subset inclusion chain has", len(C.classes), "classes")
ca = C.class_of((0, frozenset({"a"})))
print("  {[{a}],[{a}]} ->", C.sum(Family.of(ca, ca)))

I = unit_instance()
H = internal_hom(I, I, budget)
print("\ninternal hom of the unit with itself:", H.carrier.elements)
print("  empty hom family sums to the constant-zero map:", H.sum(EMPTY))

verdict = check_bilinear(left_unitor(pm), I, pm, pm, budget)
print("\nleft unitor is bilinear:", verdict.ok)
verdict = check_bilinear(lambda a, b: a, pm, pm, pm, budget)
print("first projection as a two-argument map is not:",
      verdict.ok, "- fixed", verdict.fixed, "family", verdict.counterexample)
