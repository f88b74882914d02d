from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from addcomb.energy import (
    EnergyLowerBound,
    check_energy_bijection,
    check_energy_lemma,
    check_energy_upper_bound,
    derive_exceptional_set,
    energy_lower_bound,
    energy_report,
)
from addcomb.group import make_group
from addcomb.sums import rep_counts
from addcomb.theorems import Branch
from strategies import pairs

Z5 = make_group([5])
AP3 = Z5.set([0, 1, 2])

mpmath.mp.dps = 60


def reference(b: EnergyLowerBound) -> mpmath.mpf:
    t = mpmath.mpf(b.t)
    first = b.ab / (t + mpmath.sqrt(t * (t - 1)))
    return t * min(first, mpmath.mpf(b.cap_num) / b.cap_den)


def test_exceptional_set_examples():
    assert not derive_exceptional_set(AP3, AP3, 3)
    assert derive_exceptional_set(AP3, AP3, 2).elements == (0,)
    assert not derive_exceptional_set(AP3, Z5.set([1, 4]), 2)
    with pytest.raises(ValueError):
        derive_exceptional_set(AP3, AP3, 0)


def test_upper_bound_examples():
    v = check_energy_upper_bound(AP3, AP3, Z5.empty(), 3)
    assert v.holds and (v.lhs, v.rhs) == (10, 18) and v.relation == "<="
    v = check_energy_upper_bound(AP3, AP3, Z5.set([0]), 2)
    assert v.holds and (v.lhs, v.rhs) == (10, 12)
    v = check_energy_upper_bound(Z5.set([2]), Z5.set([4]), None, 1)
    assert v.holds and (v.lhs, v.rhs) == (0, 0)
    with pytest.raises(ValueError):
        check_energy_upper_bound(AP3, AP3, Z5.empty(), 2)


def test_lower_bound_example():
    b = energy_lower_bound(AP3, AP3, Z5.empty(), 3, 2)
    assert (b.ab, b.cap) == (9, Fraction(3))
    assert float(b) == pytest.approx(5.2721, abs=1e-4)
    assert b.ceil() == 6
    assert b.weaker() == Fraction(9, 2)
    assert b.weaker_ceil() == 5


def test_lower_bound_degenerate_forms():
    # t = 1 drops the square root; T empty and k = |B| leave cap = |A|
    b = energy_lower_bound(AP3, AP3, Z5.empty(), 3, 1)
    assert b.cap == 3 and b.ceil() == 3
    b = energy_lower_bound(Z5.set([0, 1, 2, 3]), Z5.set([0, 1]), Z5.empty(), 2, 1)
    assert b.cap == 4 and b.ceil() == 4
    b = energy_lower_bound(AP3, AP3, Z5.set([0]), 2, 1)
    assert b.cap == Fraction(27, 7) and b.ceil() == 4


def test_lemma_examples():
    v = check_energy_lemma(AP3, AP3, 3, 2)
    assert v.holds and (v.lhs, v.rhs) == (8, 6)
    assert v.checks[1] == ("weaker_bound", 8, ">=", 5)
    v = check_energy_lemma(AP3, AP3, 2, 2)
    assert v.holds and v.details["T"].elements == (0,)
    assert v.details["bound"].cap == Fraction(27, 7)
    assert check_energy_lemma(Z5.set([0]), AP3, 1, 1).branch is Branch.NOT_APPLICABLE


def test_report():
    r = energy_report(AP3, AP3, 2, 2)
    assert r.energy == 5 and r.T.elements == (0,) and r.upper_bound_rhs == 6
    assert r.lower_bound.ceil() == 6


def test_bijection_verdict():
    v = check_energy_bijection(AP3, Z5.set([0, 3, 4]))
    assert v.holds and v.lhs == v.rhs == 5


bounds = st.builds(
    EnergyLowerBound,
    t=st.integers(1, 40),
    ab=st.integers(1, 10**6),
    cap_num=st.integers(1, 10**9),
    cap_den=st.integers(1, 10**4),
)


@given(bounds)
def test_exact_comparisons_match_high_precision(b):
    ref = reference(b)
    c = b.ceil()
    assert c - 1 < ref <= c
    assert b.is_at_most(c) and not b.is_at_most(c - 1)
    assert mpmath.mpf(float(b)) <= ref
    assert ref - mpmath.mpf(float(b)) <= abs(ref) * mpmath.mpf(2) ** -50
    q = b.lower_rational()
    assert mpmath.mpf(q.numerator) / q.denominator <= ref * (1 + mpmath.mpf(10) ** -50)


@given(bounds)
def test_sharp_bound_dominates_weaker(b):
    assert b.ceil() >= b.weaker_ceil()
    assert reference(b) >= mpmath.mpf(b.weaker().numerator) / b.weaker().denominator - mpmath.mpf(10) ** -40


@given(pairs(), st.data())
def test_lemma_and_upper_bound_hold(p, data):
    G, A, B = p
    if A.card < B.card:
        A, B = B, A
    k = data.draw(st.integers(1, B.card))
    t = data.draw(st.integers(1, 4))
    T = derive_exceptional_set(A, B, k)
    neg = rep_counts(A, B.negate())
    assert all(neg[x] <= k for x in range(G.order) if x not in T)
    assert check_energy_lemma(A, B, k, t).holds
    assert check_energy_upper_bound(A, B, None, k).holds
    assert check_energy_bijection(A, B).holds
