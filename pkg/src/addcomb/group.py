"""Finite abelian groups presented as products of cyclic factors, and their subsets.

Elements are addressed by flat mixed-radix indices, most significant factor
first: ``(a_1, ..., a_k)`` lives at ``sum(a_j * prod(n_m for m > j))``.  A subset
is a Python ``int`` used as a bitset, so translation, union and intersection are
word-parallel big-integer operations.

>>> G = make_group([2, 6])
>>> G.index((1, 3))
9
>>> A = G.set([0, 1, 6, 7])
>>> sorted(A.translate(G.index((0, 5))))
[0, 5, 6, 11]
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd, prod
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_GROUP_ORDER = 1 << 20
MAX_LATTICE_ORDER = 256

# Full addition tables are built only up to this order.
_TABLE_ORDER = 256


class GroupMismatchError(ValueError):
    """Raised when two sets from different ambient groups are combined."""


@dataclass(frozen=True, eq=False)
class GroupSpec:
    """The group Z_{n_1} x ... x Z_{n_k}."""

    orders: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))
        object.__setattr__(self, "_hash", hash(self.orders))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, GroupSpec):
            return NotImplemented
        return self.orders == other.orders

    @cached_property
    def order(self) -> int:
        return prod(self.orders)

    @cached_property
    def strides(self) -> tuple[int, ...]:
        out = []
        w = 1
        for n in reversed(self.orders):
            out.append(w)
            w *= n
        return tuple(reversed(out))

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    def __str__(self) -> str:
        return " x ".join(f"Z_{n}" for n in self.orders)

    # element arithmetic on flat indices

    def coords(self, g: int) -> tuple[int, ...]:
        out = []
        for n, w in zip(self.orders, self.strides):
            out.append((g // w) % n)
        return tuple(out)

    def index(self, coords: Sequence[int]) -> int:
        if len(coords) != len(self.orders):
            raise ValueError(f"expected {len(self.orders)} coordinates, got {len(coords)}")
        return sum((c % n) * w for c, n, w in zip(coords, self.orders, self.strides))

    @property
    def zero(self) -> int:
        return 0

    def add(self, g: int, h: int) -> int:
        if self.order <= _TABLE_ORDER:
            return _add_table(self)[g][h]
        return self.index([a + b for a, b in zip(self.coords(g), self.coords(h))])

    def neg(self, g: int) -> int:
        return _neg_table(self)[g]

    def sub(self, g: int, h: int) -> int:
        return self.add(g, self.neg(h))

    def element_order(self, g: int) -> int:
        out = 1
        for a, n in zip(self.coords(g), self.orders):
            m = n // gcd(a, n)
            out = out * m // gcd(out, m)
        return out

    def is_cyclic(self) -> bool:
        return all(gcd(a, b) == 1 for i, a in enumerate(self.orders) for b in self.orders[i + 1 :])

    def invariant_factors(self) -> tuple[int, ...]:
        """Canonical invariant factors n_1 | n_2 | ... (trivial factors dropped)."""
        return _invariant_factors(self.orders)

    # sets

    def set(self, elements: Iterable[int]) -> "GSet":
        mask = 0
        for g in elements:
            g = int(g)
            if not 0 <= g < self.order:
                raise ValueError(f"element {g} outside [0, {self.order})")
            mask |= 1 << g
        return GSet(self, mask)

    def empty(self) -> "GSet":
        return GSet(self, 0)

    def full(self) -> "GSet":
        return GSet(self, self.full_mask)

    def singleton(self, g: int) -> "GSet":
        return self.set([g])

    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def _steps(self) -> dict[int, tuple[tuple[int, int, int, int], ...]]:
        return {}

    def translation_steps(self, g: int) -> tuple[tuple[int, int, int, int], ...]:
        """Per-axis rotations (low mask, high mask, shift, block span) for ``g + .``."""
        steps = self._steps.get(g)
        if steps is None:
            steps = tuple(
                _shift_masks(self, axis, a) for axis, a in enumerate(self.coords(g)) if a
            )
            if len(self._steps) < 1 << 16:
                self._steps[g] = steps
        return steps

    def translate_mask(self, mask: int, g: int) -> int:
        """Bitset of ``g + S`` for the bitset ``mask`` of S."""
        if g == 0 or mask == 0:
            return mask
        for low, high, sh, span in self.translation_steps(g):
            mask = ((mask & low) << sh) | ((mask & high) >> (span - sh))
        return mask


def make_group(orders: Sequence[int], max_order: int = MAX_GROUP_ORDER) -> GroupSpec:
    """Build Z_{n_1} x ... x Z_{n_k} from its list of cyclic factor orders."""
    orders = [int(n) for n in orders]
    if not orders:
        raise ValueError("a group needs at least one cyclic factor")
    if any(n < 1 for n in orders):
        raise ValueError(f"cyclic factor orders must be >= 1, got {orders}")
    if prod(orders) > max_order:
        raise ValueError(f"group order {prod(orders)} exceeds maximum {max_order}")
    return GroupSpec(tuple(orders))


@lru_cache(maxsize=None)
def _invariant_factors(orders: tuple[int, ...]) -> tuple[int, ...]:
    from sympy import factorint

    by_prime: dict[int, list[int]] = {}
    for n in orders:
        for p, e in factorint(n).items():
            by_prime.setdefault(p, []).append(p**e)
    cols = [sorted(v, reverse=True) for v in by_prime.values()]
    width = max((len(c) for c in cols), default=0)
    factors = [prod(c[i] for c in cols if i < len(c)) for i in range(width)]
    return tuple(sorted(factors)) or (1,)


@lru_cache(maxsize=None)
def _add_table(G: GroupSpec) -> tuple[tuple[int, ...], ...]:
    c = np.array([G.coords(g) for g in range(G.order)], dtype=np.int64)
    n = np.array(G.orders, dtype=np.int64)
    w = np.array(G.strides, dtype=np.int64)
    s = (c[:, None, :] + c[None, :, :]) % n
    flat = (s * w).sum(axis=2)
    return tuple(tuple(int(v) for v in row) for row in flat)


@lru_cache(maxsize=None)
def _neg_table(G: GroupSpec) -> tuple[int, ...]:
    return tuple(G.index([-a for a in G.coords(g)]) for g in range(G.order))


@lru_cache(maxsize=4096)
def _shift_masks(G: GroupSpec, axis: int, a: int) -> tuple[int, int, int, int]:
    # Rotating axis `axis` by `a` moves every offset o inside each block of
    # length span = n*w to (o + a*w) mod span.
    n, w = G.orders[axis], G.strides[axis]
    span = n * w
    sh = a * w
    block_low = (1 << (span - sh)) - 1
    block_high = ((1 << span) - 1) ^ block_low
    low = high = 0
    for start in range(0, G.order, span):
        low |= block_low << start
        high |= block_high << start
    return low, high, sh, span


@dataclass(frozen=True, eq=False)
class GSet:
    """A subset of a finite abelian group, stored as an int bitset."""

    group: GroupSpec
    mask: int
    card: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> self.group.order:
            raise ValueError("bitset has bits outside the group")
        object.__setattr__(self, "card", self.mask.bit_count())

    def __hash__(self) -> int:
        return hash((self.mask, self.group._hash))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GSet):
            return NotImplemented
        return self.mask == other.mask and self.group == other.group

    def __len__(self) -> int:
        return self.card

    def __bool__(self) -> bool:
        return self.mask != 0

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, g: int) -> bool:
        return bool((self.mask >> g) & 1)

    def __repr__(self) -> str:
        return f"GSet({self.group}, {{{','.join(map(str, self.elements))}}})"

    @cached_property
    def elements(self) -> tuple[int, ...]:
        m = self.mask
        out = []
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return tuple(out)

    def to_array(self) -> np.ndarray:
        """Characteristic vector as a boolean array of length ``order``."""
        n = self.group.order
        raw = self.mask.to_bytes((n + 7) // 8, "little")
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
        return bits[:n].astype(bool)

    @classmethod
    def from_array(cls, group: GroupSpec, bits: np.ndarray) -> "GSet":
        bits = np.asarray(bits, dtype=bool).ravel()
        if bits.size != group.order:
            raise ValueError("characteristic vector has the wrong length")
        packed = np.packbits(bits, bitorder="little").tobytes()
        return cls(group, int.from_bytes(packed, "little"))

    def _check(self, other: "GSet") -> None:
        if self.group != other.group:
            raise GroupMismatchError(f"sets live in {self.group} and {other.group}")

    def __or__(self, other: "GSet") -> "GSet":
        self._check(other)
        return GSet(self.group, self.mask | other.mask)

    def __and__(self, other: "GSet") -> "GSet":
        self._check(other)
        return GSet(self.group, self.mask & other.mask)

    def __sub__(self, other: "GSet") -> "GSet":
        self._check(other)
        return GSet(self.group, self.mask & ~other.mask)

    def __le__(self, other: "GSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def complement(self) -> "GSet":
        return GSet(self.group, self.group.full_mask ^ self.mask)

    def translate(self, g: int) -> "GSet":
        return GSet(self.group, self.group.translate_mask(self.mask, g))

    def negate(self) -> "GSet":
        return self._negated

    @cached_property
    def _negated(self) -> "GSet":
        neg = _neg_table(self.group)
        mask = 0
        for g in self.elements:
            mask |= 1 << neg[g]
        return GSet(self.group, mask)

    def without(self, elements: Iterable[int]) -> "GSet":
        mask = self.mask
        for g in elements:
            mask &= ~(1 << g)
        return GSet(self.group, mask)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup, kept as its carrier set."""

    carrier: GSet

    @property
    def group(self) -> GroupSpec:
        return self.carrier.group

    @property
    def order(self) -> int:
        return self.carrier.card

    @property
    def is_trivial(self) -> bool:
        return self.carrier.mask == 1

    @property
    def elements(self) -> tuple[int, ...]:
        return self.carrier.elements

    def __contains__(self, g: int) -> bool:
        return g in self.carrier

    def __repr__(self) -> str:
        return f"Subgroup({self.group}, {{{','.join(map(str, self.elements))}}})"

    def is_valid(self) -> bool:
        """Closure, identity and Lagrange checks, by brute force."""
        G = self.group
        S = self.carrier
        if 0 not in S or G.order % S.card:
            return False
        return all(G.add(x, y) in S for x in S.elements for y in S.elements)

    def coset(self, x: int) -> GSet:
        return self.carrier.translate(x)

    def join(self, other: "Subgroup") -> "Subgroup":
        from addcomb.sums import sumset

        return Subgroup(sumset(self.carrier, other.carrier))


def trivial_subgroup(G: GroupSpec) -> Subgroup:
    return Subgroup(G.singleton(0))


def whole_group(G: GroupSpec) -> Subgroup:
    return Subgroup(G.full())


def cyclic_subgroup(G: GroupSpec, g: int) -> Subgroup:
    mask = 1
    x = g
    while x != 0:
        mask |= 1 << x
        x = G.add(x, g)
    return Subgroup(GSet(G, mask))


def stabilizer(S: GSet) -> Subgroup:
    """H(S) = {x : x + S = S}; the empty set is stabilized by everything."""
    G = S.group
    if not S:
        return whole_group(G)
    s0 = S.elements[0]
    neg_s0 = G.neg(s0)
    mask = 0
    # x + S = S forces x + s0 in S
    for s in S.elements:
        x = G.add(s, neg_s0)
        if not (mask >> x) & 1 and G.translate_mask(S.mask, x) == S.mask:
            mask |= 1 << x
    return Subgroup(GSet(G, mask))


def is_periodic(S: GSet) -> bool:
    return not stabilizer(S).is_trivial


@lru_cache(maxsize=64)
def subgroup_lattice(G: GroupSpec, max_order: int = MAX_LATTICE_ORDER) -> tuple[Subgroup, ...]:
    """Every subgroup of G, sorted by (order, bitset).

    Starts from the cyclic subgroups and closes under joins until nothing new
    appears.
    """
    if G.order > max_order:
        raise ValueError(f"group order {G.order} exceeds lattice maximum {max_order}")
    found: dict[int, Subgroup] = {}
    for g in range(G.order):
        H = cyclic_subgroup(G, g)
        found.setdefault(H.carrier.mask, H)
    frontier = list(found.values())
    while frontier:
        new = []
        current = list(found.values())
        for H in frontier:
            for K in current:
                J = H.join(K)
                if J.carrier.mask not in found:
                    found[J.carrier.mask] = J
                    new.append(J)
        frontier = new
    return tuple(sorted(found.values(), key=lambda H: (H.order, H.carrier.mask)))


def max_proper_subgroup_size(G: GroupSpec) -> int:
    """Largest order of a proper subgroup; 0 for the trivial group."""
    return max((H.order for H in subgroup_lattice(G) if H.order < G.order), default=0)
