"""Checkers for Kneser/Pollard-type inequalities on concrete pairs of sets.

Each checker returns a :class:`TheoremVerdict` saying whether the statement
held, which branch of its disjunction did the work, and the integer operands of
the decisive inequality.  A verdict with ``holds=False`` is a counterexample.
All arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

from sympy import isprime

from addcomb.group import (
    GSet,
    Subgroup,
    max_proper_subgroup_size,
    stabilizer,
    subgroup_lattice,
)
from addcomb.sums import dyson_transform, holes_rho, pollard_sum, rep_counts, sumset

MAX_WITNESS_T = 4


class Branch(str, enum.Enum):
    BOUND = "BOUND"
    WEAK_BOUND = "WEAK_BOUND"
    WITNESS = "WITNESS"
    COSET = "COSET"
    NOT_APPLICABLE = "NOT_APPLICABLE"
    FAILED = "FAILED"


@dataclass(frozen=True)
class WitnessData:
    A_prime: GSet
    B_prime: GSet
    l: int
    H: Subgroup
    rho: int


@dataclass(frozen=True)
class TheoremVerdict:
    theorem: str
    holds: bool
    branch: Branch
    lhs: int
    rhs: int
    witness: WitnessData | None = None
    relation: str = ">="
    # extra named inequalities: (name, lhs, relation, rhs)
    checks: tuple[tuple[str, int, str, int], ...] = field(default=(), compare=False)
    details: dict = field(default_factory=dict, compare=False)
    elapsed_ns: int = field(default=0, compare=False)


def _ge(name: str, lhs: int, rhs: int) -> tuple[str, int, str, int]:
    return (name, int(lhs), ">=", int(rhs))


def _require_t(A: GSet, B: GSet, t: int) -> None:
    if t < 1:
        raise ValueError("t must be a positive integer")
    if t > min(A.card, B.card):
        raise ValueError(f"t={t} exceeds min(|A|, |B|) = {min(A.card, B.card)}")


def _require_nonempty(A: GSet, B: GSet) -> None:
    if A.group != B.group:
        raise ValueError("A and B live in different groups")
    if not A or not B:
        raise ValueError("A and B must be nonempty")


def not_applicable(theorem: str, lhs: int = 0, rhs: int = 0) -> TheoremVerdict:
    return TheoremVerdict(theorem, True, Branch.NOT_APPLICABLE, lhs, rhs)


def check_kneser(A: GSet, B: GSet) -> TheoremVerdict:
    _require_nonempty(A, B)
    S = sumset(A, B)
    H = stabilizer(S)
    AH = sumset(A, H.carrier).card
    BH = sumset(B, H.carrier).card
    rho = AH - A.card + BH - B.card
    strong = AH + BH - H.order
    holes = A.card + B.card - H.order + rho
    checks = [_ge("kneser_strong", S.card, strong), _ge("kneser_holes", S.card, holes)]
    ok = S.card >= strong and S.card >= holes
    if S.card <= A.card + B.card - 1:
        checks.append(("kneser_equality", S.card, "==", strong))
        ok = ok and S.card == strong and S.card == holes
    return TheoremVerdict("kneser", ok, Branch.BOUND, S.card, strong, checks=tuple(checks))


def check_pollard_cyclic(A: GSet, B: GSet, t: int) -> TheoremVerdict:
    _require_nonempty(A, B)
    _require_t(A, B, t)
    p = A.group.order
    if not isprime(p):
        return not_applicable("pollard")
    lhs = pollard_sum(A, B, t)
    rhs = t * min(p, A.card + B.card - t)
    return TheoremVerdict("pollard", lhs >= rhs, Branch.BOUND, lhs, rhs)


def check_chowla_pollard(A: GSet, B: GSet, t: int) -> TheoremVerdict:
    _require_nonempty(A, B)
    G = A.group
    if not G.is_cyclic():
        raise ValueError(f"{G} is not cyclic")
    _require_t(A, B, t)
    n = G.order
    for x, y in combinations(B.elements, 2):
        if G.element_order(G.sub(x, y)) != n:
            return not_applicable("chowla")
    lhs = pollard_sum(A, B, t)
    rhs = t * min(n, A.card + B.card - t)
    return TheoremVerdict("chowla", lhs >= rhs, Branch.BOUND, lhs, rhs)


def check_green_ruzsa(A: GSet, B: GSet, t: int) -> TheoremVerdict:
    _require_nonempty(A, B)
    if t < 1:
        raise ValueError("t must be a positive integer")
    if t > min(A.card, B.card):
        return not_applicable("green-ruzsa")
    D = max_proper_subgroup_size(A.group)
    lhs = pollard_sum(A, B, t)
    rhs = t * min(A.group.order, A.card + B.card - D - t)
    return TheoremVerdict("green-ruzsa", lhs >= rhs, Branch.BOUND, lhs, rhs)


def iter_structural_pairs(
    A: GSet, B: GSet, t: int, max_l: int
) -> Iterator[tuple[GSet, GSet, int]]:
    """Yield (A', B', l) with l <= max_l deletions and A' +_t B' = A' + B' = A +_t B.

    Order: l ascending, then deletions from A ascending, then lexicographic
    element choice in A and in B.
    """
    target = rep_counts(A, B).at_least(t)
    if not target:
        return
    for l in range(max_l + 1):
        for da in range(l + 1):
            db = l - da
            if da >= A.card or db >= B.card:
                continue
            for drop_a in combinations(A.elements, da):
                Ap = A.without(drop_a)
                for drop_b in combinations(B.elements, db):
                    Bp = B.without(drop_b)
                    if sumset(Ap, Bp).mask != target.mask:
                        continue
                    if rep_counts(Ap, Bp).at_least(t).mask != target.mask:
                        continue
                    yield Ap, Bp, l


def find_witness(
    A: GSet, B: GSet, t: int, max_l: int, lhs: int | None = None
) -> tuple[WitnessData, int, int] | None:
    """First witness (A', B') certifying the stabilizer branch, with both bounds.

    Returns (witness, rhs, kneser_like_rhs) or None.  H is the stabilizer of
    A +_t B and must be nontrivial.
    """
    target = rep_counts(A, B).at_least(t)
    if not target:
        return None
    H = stabilizer(target)
    if H.is_trivial:
        return None
    if lhs is None:
        lhs = pollard_sum(A, B, t)
    base = t * A.card + t * B.card
    for Ap, Bp, l in iter_structural_pairs(A, B, t, max_l):
        rho = holes_rho(Ap, Bp, H)
        rhs = base - (t - l) * (H.order - rho) - t * l
        weak = base - t * H.order
        if lhs >= rhs >= weak:
            return WitnessData(Ap, Bp, l, H, rho), rhs, weak
    return None


def _pollard_kneser(
    name: str, A: GSet, B: GSet, t: int, weak_rhs: int, max_l: int, max_t: int
) -> TheoremVerdict:
    lhs = pollard_sum(A, B, t)
    if lhs >= weak_rhs:
        return TheoremVerdict(name, True, Branch.WEAK_BOUND, lhs, weak_rhs)
    if t > max_t:
        raise ValueError(f"witness search is limited to t <= {max_t}; got t={t}")
    found = find_witness(A, B, t, max_l, lhs)
    if found is None:
        checks = (_ge("weak_bound", lhs, weak_rhs),)
        return TheoremVerdict(name, False, Branch.FAILED, lhs, weak_rhs, checks=checks)
    w, rhs, weak = found
    checks = (
        _ge("weak_bound", lhs, weak_rhs),
        _ge("stabilizer_bound", lhs, rhs),
        _ge("stabilizer_chain", rhs, weak),
    )
    return TheoremVerdict(name, True, Branch.WITNESS, lhs, rhs, witness=w, checks=checks)


@lru_cache(maxsize=1024)
def check_main_theorem(A: GSet, B: GSet, t: int, max_t: int = MAX_WITNESS_T) -> TheoremVerdict:
    """Either the weak bound t|A|+t|B|-2t^2+1 holds, or a witness (A', B') exists."""
    _require_nonempty(A, B)
    _require_t(A, B, t)
    weak_rhs = t * A.card + t * B.card - 2 * t * t + 1
    return _pollard_kneser("main", A, B, t, weak_rhs, t - 1, max_t)


def check_t2_theorem(A: GSet, B: GSet) -> TheoremVerdict:
    _require_nonempty(A, B)
    if A.card < 2 or B.card < 2:
        raise ValueError("the t = 2 theorem needs |A|, |B| >= 2")
    weak_rhs = 2 * A.card + 2 * B.card - 4
    return _pollard_kneser("t2", A, B, 2, weak_rhs, 1, 2)


def check_corollary(A: GSet, B: GSet) -> TheoremVerdict:
    """Either |A+B| + |A +_2 B| >= 2|A|+2|B|-4 or A +_2 B contains a coset of |H| >= 3."""
    _require_nonempty(A, B)
    if A.card < 2 or B.card < 2:
        raise ValueError("the corollary needs |A|, |B| >= 2")
    lhs = pollard_sum(A, B, 2)
    rhs = 2 * A.card + 2 * B.card - 4
    if lhs >= rhs:
        return TheoremVerdict("corollary", True, Branch.BOUND, lhs, rhs)
    S2 = rep_counts(A, B).at_least(2)
    G = A.group
    for H in subgroup_lattice(G):
        if H.order < 3:
            continue
        for x in S2.elements:
            if G.translate_mask(H.carrier.mask, x) & ~S2.mask == 0:
                details = {"coset": x, "H": list(H.elements)}
                return TheoremVerdict(
                    "corollary", True, Branch.COSET, H.order, 3, details=details
                )
    return TheoremVerdict("corollary", False, Branch.FAILED, lhs, rhs)


def check_multiplicity_prop(A: GSet, B: GSet) -> TheoremVerdict:
    _require_nonempty(A, B)
    G = A.group
    S = sumset(A, B)
    counts = rep_counts(A, B).counts
    k = A.card + B.card - S.card
    min_count = int(counts[counts > 0].min())
    ok = k < 1 or min_count >= k
    checks = [_ge("min_representations", min_count, k)]
    if A.card + B.card >= G.order + 1:
        checks.append(("sumset_is_group", S.card, "==", G.order))
        ok = ok and S.card == G.order
    return TheoremVerdict("mult", ok, Branch.BOUND, min_count, k, checks=tuple(checks))


def check_critical_pair(A: GSet, B: GSet) -> TheoremVerdict:
    _require_nonempty(A, B)
    S = sumset(A, B)
    if S.card != A.card + B.card - 1 or not stabilizer(S).is_trivial:
        return not_applicable("critical", S.card, A.card + B.card - 1)
    G = A.group
    smallest = S.card + 1
    for b in B.complement().elements:
        grown = S.mask | G.translate_mask(A.mask, b)
        smallest = min(smallest, grown.bit_count())
    return TheoremVerdict("critical", smallest > S.card, Branch.BOUND, smallest, S.card + 1)


def check_double_rep_remark(
    A: GSet, B: GSet, t: int, max_t: int = MAX_WITNESS_T
) -> TheoremVerdict:
    """When the weak bound fails, A +_t B = A +_2t B and |H| >= 2t + rho."""
    _require_nonempty(A, B)
    _require_t(A, B, t)
    main = check_main_theorem(A, B, t, max_t)
    if main.branch is Branch.WEAK_BOUND:
        return not_applicable("remark")
    if not main.holds:
        return TheoremVerdict("remark", False, Branch.FAILED, main.lhs, main.rhs)
    w = main.witness
    prof = rep_counts(A, B)
    St, S2t = prof.at_least(t), prof.at_least(2 * t)
    sub = rep_counts(w.A_prime, w.B_prime)
    ok = (
        St.mask == S2t.mask
        and w.H.order >= 2 * t + w.rho
        and sub.at_least(2 * t).mask == sumset(w.A_prime, w.B_prime).mask
    )
    checks = (
        ("t_equals_2t", St.card, "==", S2t.card),
        _ge("stabilizer_size", w.H.order, 2 * t + w.rho),
    )
    return TheoremVerdict(
        "remark", ok, Branch.WITNESS, w.H.order, 2 * t + w.rho, witness=w, checks=checks
    )


def check_dyson_invariants(A: GSet, B: GSet, x: int) -> TheoremVerdict:
    """|A(x)| + |B(x)| = |A| + |B| and A(x) +_i B(x) lies in x + (A +_i B) for every i.

    The second part is checked for i up to min(|A|, |B|); an empty B(x) makes
    the containment vacuous.
    """
    _require_nonempty(A, B)
    Ax, Bx = dyson_transform(A, B, x)
    lhs, rhs = Ax.card + Bx.card, A.card + B.card
    ok = lhs == rhs
    bad = 0
    if Bx:
        before, after = rep_counts(A, B), rep_counts(Ax, Bx)
        G = A.group
        for i in range(1, min(A.card, B.card) + 1):
            if after.at_least(i).mask & ~G.translate_mask(before.at_least(i).mask, x):
                bad += 1
    checks = (("cardinality", lhs, "==", rhs), ("containment_failures", bad, "==", 0))
    return TheoremVerdict(
        "dyson", ok and bad == 0, Branch.BOUND, lhs, rhs, relation="==", checks=checks
    )


def recheck_witness(A: GSet, B: GSet, t: int, verdict: TheoremVerdict) -> bool:
    """Re-derive a WITNESS verdict element by element, without bitsets or kernels."""
    w = verdict.witness
    if verdict.branch is not Branch.WITNESS or w is None:
        return False
    G = A.group
    a_all, b_all = list(A.elements), list(B.elements)
    ap, bp = list(w.A_prime.elements), list(w.B_prime.elements)
    if not (set(ap) <= set(a_all) and set(bp) <= set(b_all)):
        return False
    l = len(a_all) - len(ap) + len(b_all) - len(bp)
    if l != w.l or l > t - 1:
        return False

    add = G.add

    def reps(X: list[int], Y: list[int]) -> dict[int, int]:
        out: dict[int, int] = {}
        for x in X:
            for y in Y:
                s = add(x, y)
                out[s] = out.get(s, 0) + 1
        return out

    r_full, r_sub = reps(a_all, b_all), reps(ap, bp)
    St = {g for g, c in r_full.items() if c >= t}
    if St != set(r_sub) or {g for g, c in r_sub.items() if c >= t} != St:
        return False
    H = {x for x in range(G.order) if {add(x, s) for s in St} == St}
    if H != set(w.H.elements) or len(H) <= 1:
        return False
    rho = sum(len({add(x, h) for x in X for h in H}) - len(X) for X in (ap, bp))
    if rho != w.rho:
        return False
    lhs = sum(min(c, t) for c in r_full.values())
    base = t * len(a_all) + t * len(b_all)
    rhs = base - (t - l) * (len(H) - rho) - t * l
    return lhs == verdict.lhs and lhs >= rhs >= base - t * len(H)
