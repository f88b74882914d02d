import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from addcomb.group import Subgroup, make_group, stabilizer
from addcomb.sums import (
    KERNELS,
    additive_energy,
    additive_energy_pairs,
    dyson_transform,
    holes_rho,
    i_representable,
    is_sidon,
    pollard_sum,
    rep_counts,
    sumset,
)
from strategies import pairs

Z5 = make_group([5])
Z6 = make_group([6])
Z7 = make_group([7])
Z12 = make_group([12])


def test_sumset_examples():
    A = Z5.set([0, 1, 2])
    assert sumset(A, A).elements == (0, 1, 2, 3, 4)
    assert sumset(Z6.set([0, 3]), Z6.set([0, 3])).elements == (0, 3)
    S = Z12.set([1, 5, 11])
    assert sumset(Z12.set([0]), S) == S
    with pytest.raises(ValueError):
        sumset(Z5.empty(), A)


@pytest.mark.parametrize("kernel", KERNELS)
def test_rep_counts_examples(kernel):
    A = Z5.set([0, 1, 2])
    assert rep_counts(A, A, kernel).counts.tolist() == [1, 2, 3, 2, 1]
    Z4 = make_group([4])
    assert rep_counts(Z4.full(), Z4.full(), kernel).counts.tolist() == [4, 4, 4, 4]
    got = rep_counts(Z6.set([0, 1, 2, 3]), Z6.set([0, 1]), kernel).counts.tolist()
    assert got == [1, 2, 2, 2, 1, 0]


def test_rep_counts_rejects_unknown_kernel():
    with pytest.raises(ValueError):
        rep_counts(Z5.set([0]), Z5.set([0]), "fft2")


def test_i_representable_examples():
    A = Z5.set([0, 1, 2])
    assert i_representable(A, A, 2).elements == (1, 2, 3)
    assert not i_representable(A, A, 4)
    assert i_representable(A, A, 1) == sumset(A, A)
    with pytest.raises(ValueError):
        i_representable(A, A, 0)


def test_pollard_sum_examples():
    A = Z5.set([0, 1, 2])
    assert pollard_sum(A, A, 2) == 8
    assert pollard_sum(Z12.set([0, 1, 2, 6, 7, 8]), Z12.set([0, 1, 6, 7]), 3) == 20
    assert pollard_sum(A, A, 3) == 9
    assert pollard_sum(A, A, 50) == 9


def test_holes_examples():
    H = Subgroup(Z6.set([0, 3]))
    assert holes_rho(Z6.set([0]), Z6.set([1]), H) == 2
    assert holes_rho(Z6.set([0, 3]), Z6.set([1, 4]), H) == 0
    assert holes_rho(Z12.set([0, 1]), Z12.set([0, 6]), Subgroup(Z12.set([0, 6]))) == 2


def test_dyson_examples():
    A, B = Z5.set([0, 1, 2]), Z5.set([0, 1])
    assert dyson_transform(A, B, 0) == (A, B)
    Ax, Bx = dyson_transform(A, B, 2)
    assert Ax.elements == (0, 1, 2, 3) and Bx.elements == (2,)


def test_sidon_examples():
    assert is_sidon(Z7.set([0, 1, 3]))
    assert sumset(Z7.set([0, 1, 3]), Z7.set([0, 1, 3])).card == 6
    assert not is_sidon(Z7.set([0, 1, 2]))
    assert is_sidon(Z7.set([4]))


def test_energy_examples():
    A = Z5.set([0, 1, 2])
    assert additive_energy(A, A) == 5
    assert additive_energy(A, Z5.set([0, 3, 4])) == 5
    assert additive_energy(Z12.set([3]), Z12.set([0, 1, 2, 5])) == 0


@given(pairs())
def test_counts_match_pair_enumeration(p):
    G, A, B = p
    expected = oracles.rep_counts(G.orders, A.elements, B.elements)
    for kernel in KERNELS:
        assert rep_counts(A, B, kernel).counts.tolist() == expected
    assert set(sumset(A, B)) == oracles.sumset(G.orders, A.elements, B.elements)


@given(pairs())
def test_profile_invariants(p):
    G, A, B = p
    prof = rep_counts(A, B)
    assert prof.total == A.card * B.card
    assert prof == rep_counts(B, A)
    m = min(A.card, B.card)
    assert int(prof.counts.max()) <= m
    assert i_representable(A, B, m + 1).card == 0
    for i in range(1, m + 1):
        assert i_representable(A, B, i + 1) <= i_representable(A, B, i)
    assert pollard_sum(A, B, m) == A.card * B.card
    assert pollard_sum(A, B, 1) == sumset(A, B).card


@given(pairs(), st.data())
def test_translation_equivariance(p, data):
    G, A, B = p
    g = data.draw(st.integers(0, G.order - 1))
    h = data.draw(st.integers(0, G.order - 1))
    base = rep_counts(A, B)
    moved = rep_counts(A.translate(g), B.translate(h))
    gh = G.add(g, h)
    for x in range(G.order):
        assert moved[G.add(x, gh)] == base[x]


@given(pairs())
def test_sumset_stabilizer_contains_summand_stabilizers(p):
    G, A, B = p
    H = stabilizer(sumset(A, B))
    assert stabilizer(A).carrier <= H.carrier
    assert sumset(sumset(A, B), H.carrier) == sumset(A, B)
    assert holes_rho(sumset(A, H.carrier), sumset(B, H.carrier), H) == 0


@given(pairs(shapes=[(5,), (6,), (2, 2), (2, 4), (3, 3), (8,)]))
def test_energy_edge_count(p):
    G, A, B = p
    assert additive_energy(A, B) == additive_energy_pairs(A, B)
    assert additive_energy(A, B) == additive_energy(A, B.negate())


@given(pairs(), st.data())
def test_dyson_preserves_size_and_contracts(p, data):
    G, A, B = p
    x = data.draw(st.integers(0, G.order - 1))
    Ax, Bx = dyson_transform(A, B, x)
    assert Ax.card + Bx.card == A.card + B.card
    if Bx:
        for i in range(1, min(A.card, B.card) + 1):
            assert i_representable(Ax, Bx, i) <= i_representable(A, B, i).translate(x)


def test_sidon_matches_difference_oracle():
    rng = random.Random(3)
    for _ in range(200):
        B = Z12.set(rng.sample(range(12), rng.randint(1, 6)))
        diffs = [oracles.add((12,), a, oracles.neg((12,), b)) for a in B for b in B if a != b]
        assert is_sidon(B) == (len(diffs) == len(set(diffs)))


@pytest.mark.parametrize("orders", [[1024], [32, 32], [2, 2, 4, 64], [3, 5, 7]])
def test_large_kernels_agree(orders):
    G = make_group(orders)
    rng = np.random.default_rng(11)
    for density in (0.05, 0.3, 0.7):
        A = type(G.full()).from_array(G, rng.random(G.order) < density)
        B = type(G.full()).from_array(G, rng.random(G.order) < density)
        if not A or not B:
            continue
        ref = rep_counts(A, B, "naive").counts
        for kernel in ("bitset", "transform"):
            assert np.array_equal(rep_counts(A, B, kernel).counts, ref)
