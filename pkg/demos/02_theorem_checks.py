"""Run the inequality checkers on a few hand-picked pairs and print their verdicts."""

from addcomb.group import make_group
from addcomb.theorems import (
    check_corollary,
    check_double_rep_remark,
    check_kneser,
    check_main_theorem,
    check_t2_theorem,
)


def show(v):
    print(f"{v.theorem:>10}  {v.branch.value:<11} {v.lhs} {v.relation} {v.rhs}")
    if v.witness is not None:
        w = v.witness
        print(f"{'':>10}  A'={w.A_prime.elements} B'={w.B_prime.elements} l={w.l} H={w.H.elements} rho={w.rho}")


Z5 = make_group([5])
ap = Z5.set([0, 1, 2])
show(check_kneser(ap, ap))
show(check_main_theorem(ap, ap, 2))  # weak bound holds
show(check_t2_theorem(ap, ap))  # equality: the t = 2 bound is sharp

# the full Klein group misses the weak bound, so a witness is needed
V = make_group([2, 2]).full()
show(check_main_theorem(V, V, 2))
show(check_corollary(V, V))
show(check_double_rep_remark(V, V, 2))
