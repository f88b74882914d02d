"""The two extremal families and their quadratic defects.

The defect of a pair at level t is sum_{i<=t} |A +_i B| - t|A| - t|B| + t^2.
Pollard's bound says it is >= 0 in Z_p; these families push it to
x^2 - x|H| (resp. x^2 - x|L|) in groups with proper subgroups.
"""

from addcomb.families import build_example1, build_example2, example2_parameters
from addcomb.group import make_group, stabilizer
from addcomb.sums import i_representable

print("family 1, |H| = 6, quotient Z_8")
for x in range(1, 6):
    inst = build_example1(6, 8, 1, 3, 2, x)
    print(f"  x={x} t={inst.t}: defect {inst.defect():>3}  closed form {inst.predicted_defect:>3}")

G = make_group([2, 16])
print("family 2 in Z_2 x Z_16")
for L, H, r, x in list(example2_parameters(G))[:8]:
    inst = build_example2(G, H, L, r, x)
    St = i_representable(inst.A, inst.B, inst.t)
    print(
        f"  |L|={L.order} |H|={H.order} r={r} x={x}: defect {inst.defect():>3}, "
        f"stabilizer of A +_t B has order {stabilizer(St).order}"
    )
