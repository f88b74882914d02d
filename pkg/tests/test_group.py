import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from addcomb.group import (
    GroupMismatchError,
    GSet,
    Subgroup,
    cyclic_subgroup,
    is_periodic,
    make_group,
    max_proper_subgroup_size,
    stabilizer,
    subgroup_lattice,
    trivial_subgroup,
    whole_group,
)
from strategies import SHAPES, groups, subsets


def test_mixed_radix_index():
    G = make_group([2, 6])
    assert G.order == 12
    assert G.index((1, 3)) == 9
    assert G.coords(9) == (1, 3)
    assert G.zero == 0


@pytest.mark.parametrize("orders", [[], [0], [3, -1], [1 << 11, 1 << 10]])
def test_make_group_rejects(orders):
    with pytest.raises(ValueError):
        make_group(orders)


@given(groups(), st.data())
def test_arithmetic_matches_coordinates(G, data):
    g = data.draw(st.integers(0, G.order - 1))
    h = data.draw(st.integers(0, G.order - 1))
    assert G.add(g, h) == oracles.add(G.orders, g, h)
    assert G.neg(g) == oracles.neg(G.orders, g)
    assert G.sub(g, h) == oracles.add(G.orders, g, oracles.neg(G.orders, h))
    assert G.index(G.coords(g)) == g


@given(groups(), st.data())
def test_translate_matches_coordinates(G, data):
    A = data.draw(subsets(G, nonempty=False))
    g = data.draw(st.integers(0, G.order - 1))
    expected = {oracles.add(G.orders, a, g) for a in A}
    assert set(A.translate(g)) == expected
    assert A.translate(g).card == A.card


def test_group_equality_and_hash():
    assert make_group([2, 6]) == make_group((2, 6))
    assert hash(make_group([2, 6])) == hash(make_group([2, 6]))
    assert make_group([2, 6]) != make_group([12])


def test_invariant_factors():
    assert make_group([12]).invariant_factors() == (12,)
    assert make_group([4, 3]).invariant_factors() == (12,)
    assert make_group([2, 6]).invariant_factors() == (2, 6)
    assert make_group([2, 3, 4]).invariant_factors() == (2, 12)
    assert make_group([3, 4]).is_cyclic()
    assert not make_group([2, 4]).is_cyclic()


def test_set_basics(z12):
    A = z12.set([7, 1, 0, 6])
    assert A.elements == (0, 1, 6, 7)
    assert len(A) == 4 and 6 in A and 5 not in A
    assert A.complement().card == 8
    assert (A | z12.set([2])).card == 5
    assert (A & z12.set([1, 2])).elements == (1,)
    assert (A - z12.set([0])).elements == (1, 6, 7)
    assert z12.set([0, 6]) <= A
    assert A.without([0, 6]).elements == (1, 7)
    assert A.negate().elements == (0, 5, 6, 11)
    with pytest.raises(ValueError):
        z12.set([12])


def test_mixing_groups_is_an_error():
    A = make_group([4]).set([0])
    B = make_group([2, 2]).set([0])
    with pytest.raises(GroupMismatchError):
        A | B


@given(groups(), st.data())
def test_array_round_trip(G, data):
    A = data.draw(subsets(G, nonempty=False))
    arr = A.to_array()
    assert arr.dtype == np.bool_ and arr.shape == (G.order,)
    assert list(np.flatnonzero(arr)) == list(A.elements)
    assert GSet.from_array(G, arr) == A


def test_stabilizer_examples(z12):
    Z6 = make_group([6])
    assert stabilizer(Z6.set([0, 3])).elements == (0, 3)
    assert stabilizer(Z6.set([0, 1])).is_trivial
    assert stabilizer(z12.empty()).order == 12
    assert stabilizer(z12.full()).order == 12
    assert is_periodic(z12.set([0, 4, 8, 1, 5, 9]))


@given(groups(), st.data())
def test_stabilizer_matches_oracle(G, data):
    S = data.draw(subsets(G))
    H = stabilizer(S)
    assert set(H.elements) == oracles.stabilizer(G.orders, S.elements)
    assert H.is_valid()
    assert H.order * (S.card // H.order) == S.card


@pytest.mark.parametrize(
    "orders,count",
    [([1], 1), ([2, 2], 5), ([12], 6), ([2, 4], 8), ([3, 3], 6), ([2, 2, 2], 16), ([2, 2, 2, 2], 67)],
)
def test_lattice_sizes(orders, count):
    lattice = subgroup_lattice(make_group(orders))
    assert len(lattice) == count
    assert lattice[0].is_trivial and lattice[-1].order == make_group(orders).order
    assert all(H.is_valid() for H in lattice)


@pytest.mark.parametrize("orders", [[2, 2], [6], [2, 4], [8], [3, 3], [2, 2, 2]])
def test_lattice_matches_closed_subsets(orders):
    G = make_group(orders)
    got = {frozenset(H.elements) for H in subgroup_lattice(G)}
    assert got == set(oracles.all_subgroups(orders))


def test_lattice_order_limit():
    with pytest.raises(ValueError):
        subgroup_lattice(make_group([512]))


def test_subgroup_helpers(z12):
    assert cyclic_subgroup(z12, 8).elements == (0, 4, 8)
    H = cyclic_subgroup(z12, 4).join(cyclic_subgroup(z12, 6))
    assert H.elements == (0, 2, 4, 6, 8, 10)
    assert trivial_subgroup(z12).is_trivial
    assert whole_group(z12).order == 12
    assert H.coset(1).elements == (1, 3, 5, 7, 9, 11)
    assert not Subgroup(z12.set([0, 1])).is_valid()


def test_max_proper_subgroup():
    assert max_proper_subgroup_size(make_group([12])) == 6
    assert max_proper_subgroup_size(make_group([7])) == 1
    assert max_proper_subgroup_size(make_group([3, 3])) == 3
    assert max_proper_subgroup_size(make_group([1])) == 0


@given(groups([s for s in SHAPES if len(s) > 0]))
def test_lagrange(G):
    for H in subgroup_lattice(G):
        assert G.order % H.order == 0
