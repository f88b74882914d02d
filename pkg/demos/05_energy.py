"""Additive energy against the exceptional set T and the two-term lower bound."""

import numpy as np

from addcomb.energy import energy_report
from addcomb.group import GSet, make_group
from addcomb.sums import pollard_sum

# sparse random sets: most differences are rare, so T stays small
G = make_group([4096])
rng = np.random.default_rng(1)
A = GSet.from_array(G, rng.random(G.order) < 0.02)
B = GSet.from_array(G, rng.random(G.order) < 0.01)
if A.card < B.card:
    A, B = B, A

for k in (1, 2, 3, 4):
    rep = energy_report(A, B, k, t=3)
    if rep.lower_bound is None:
        # the bounds need |A| >= |T|
        print(f"k={k}: |T|={rep.T.card:>2}  E={rep.energy}  (T too large, no bound)")
        continue
    print(
        f"k={k}: |T|={rep.T.card:>2}  E={rep.energy}  E <= {float(rep.upper_bound_rhs):.1f}"
        f"  sum_3 >= {float(rep.lower_bound):.2f}"
    )
print("sum_{i<=3} |A +_i B| =", pollard_sum(A, B, 3))
