"""Sumsets and representation counts.

``rep_counts`` has three interchangeable kernels:

naive
    enumerates all |A||B| pairs.
bitset
    shift-and-accumulate: each translate ``a + B`` is added into a bit-sliced
    counter (one big int per binary digit of the count), so a single pass over
    A costs O(|A| * order / wordsize * log min(|A|, |B|)).
transform
    multi-dimensional FFT over the group shape, rounded back to integers.

All three return identical counts; tests hold them to the naive kernel.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from addcomb.group import GroupMismatchError, GSet, GroupSpec, Subgroup, _add_table

KERNELS = ("naive", "bitset", "transform")

# Above this many pairs the bitset kernel beats per-pair enumeration.
_NAIVE_PAIR_LIMIT = 96


# Small profiles answer queries from a plain list; numpy call overhead dominates there.
_SMALL_ORDER = 128


@dataclass(frozen=True, eq=False)
class RepProfile:
    """counts[g] = r_{A,B}(g), the number of pairs (a, b) with a + b = g."""

    group: GroupSpec
    counts: np.ndarray
    _memo: dict = field(default_factory=dict, repr=False)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def __getitem__(self, g: int) -> int:
        return int(self.counts[g])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RepProfile):
            return NotImplemented
        return self.group == other.group and np.array_equal(self.counts, other.counts)

    def at_least(self, i: int) -> GSet:
        key = ("at_least", i)
        out = self._memo.get(key)
        if out is None:
            if self.group.order <= _SMALL_ORDER:
                mask = 0
                for g, c in enumerate(self._list()):
                    if c >= i:
                        mask |= 1 << g
                out = GSet(self.group, mask)
            else:
                out = GSet.from_array(self.group, self.counts >= i)
            self._memo[key] = out
        return out

    def capped_sum(self, t: int) -> int:
        key = ("capped", t)
        out = self._memo.get(key)
        if out is None:
            if self.group.order <= _SMALL_ORDER:
                out = sum(c if c < t else t for c in self._list())
            else:
                out = int(np.minimum(self.counts, t).sum())
            self._memo[key] = out
        return out

    def _list(self) -> list[int]:
        out = self._memo.get("list")
        if out is None:
            out = self._memo["list"] = self.counts.tolist()
        return out


def _same_group(A: GSet, B: GSet) -> GroupSpec:
    if A.group != B.group:
        raise GroupMismatchError(f"sets live in {A.group} and {B.group}")
    return A.group


def sumset(A: GSet, B: GSet) -> GSet:
    """A + B, as the union of the translates a + B."""
    G = _same_group(A, B)
    if not A or not B:
        raise ValueError("sumset of an empty set")
    if A.card > B.card:
        A, B = B, A
    mask = 0
    for a in A.elements:
        mask |= G.translate_mask(B.mask, a)
    return GSet(G, mask)


def _counts_naive(A: GSet, B: GSet) -> np.ndarray:
    G = A.group
    if G.order <= 256:
        table = _add_table(G)
        counts = [0] * G.order
        for a in A.elements:
            row = table[a]
            for b in B.elements:
                counts[row[b]] += 1
        return np.array(counts, dtype=np.int64)
    n = np.array(G.orders, dtype=np.int64)
    w = np.array(G.strides, dtype=np.int64)
    ca = np.array(A.elements, dtype=np.int64)[:, None] // w % n
    cb = np.array(B.elements, dtype=np.int64)[:, None] // w % n
    flat = np.zeros((len(ca), len(cb)), dtype=np.int64)
    for j in range(len(G.orders)):
        flat += (ca[:, j, None] + cb[None, :, j]) % n[j] * w[j]
    return np.bincount(flat.ravel(), minlength=G.order).astype(np.int64)


def _unpack(mask: int, n: int) -> np.ndarray:
    raw = mask.to_bytes((n + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n]


def _counts_bitset(A: GSet, B: GSet) -> np.ndarray:
    G = A.group
    if A.card > B.card:
        A, B = B, A
    planes: list[int] = []
    translate = G.translate_mask
    bmask = B.mask
    for a in A.elements:
        carry = translate(bmask, a)
        i = 0
        while carry:
            if i == len(planes):
                planes.append(carry)
                break
            p = planes[i]
            planes[i] = p ^ carry
            carry &= p
            i += 1
    counts = np.zeros(G.order, dtype=np.int64)
    for j, p in enumerate(planes):
        if p:
            counts += _unpack(p, G.order).astype(np.int64) << j
    return counts


def _counts_transform(A: GSet, B: GSet) -> np.ndarray:
    G = A.group
    shape = G.orders
    axes = tuple(range(len(shape)))
    fa = np.fft.rfftn(A.to_array().reshape(shape).astype(np.float64), axes=axes)
    fb = np.fft.rfftn(B.to_array().reshape(shape).astype(np.float64), axes=axes)
    conv = np.fft.irfftn(fa * fb, s=shape, axes=axes)
    return np.rint(conv).astype(np.int64).ravel()


_KERNEL_FUNCS = {
    "naive": _counts_naive,
    "bitset": _counts_bitset,
    "transform": _counts_transform,
}


def choose_kernel(A: GSet, B: GSet) -> str:
    if A.card * B.card <= _NAIVE_PAIR_LIMIT:
        return "naive"
    return "bitset"


@lru_cache(maxsize=8192)
def _rep_counts_cached(A: GSet, B: GSet, kernel: str) -> RepProfile:
    counts = _KERNEL_FUNCS[kernel](A, B)
    counts.setflags(write=False)
    return RepProfile(A.group, counts)


def rep_counts(A: GSet, B: GSet, kernel: str | None = None) -> RepProfile:
    """Representation function r_{A,B} over the whole group."""
    _same_group(A, B)
    if kernel is None:
        kernel = choose_kernel(A, B)
    elif kernel not in _KERNEL_FUNCS:
        raise ValueError(f"unknown kernel {kernel!r}; choose from {KERNELS}")
    return _rep_counts_cached(A, B, kernel)


def i_representable(A: GSet, B: GSet, i: int, kernel: str | None = None) -> GSet:
    """A +_i B: elements with at least i representations a + b."""
    if i < 1:
        raise ValueError("i must be a positive integer")
    return rep_counts(A, B, kernel).at_least(i)


def pollard_sum(A: GSet, B: GSet, t: int, kernel: str | None = None) -> int:
    """sum_{i=1}^t |A +_i B|, computed as sum_g min(r(g), t)."""
    if t < 1:
        raise ValueError("t must be a positive integer")
    return rep_counts(A, B, kernel).capped_sum(t)


def holes_rho(A: GSet, B: GSet, H: Subgroup) -> int:
    """Number of H-holes: |A+H| - |A| + |B+H| - |B|."""
    _same_group(A, B)
    out = 0
    for S in (A, B):
        if S:
            out += sumset(S, H.carrier).card - S.card
    return out


def dyson_transform(A: GSet, B: GSet, x: int) -> tuple[GSet, GSet]:
    """Return (A(x), B(x)) = (A u (x+B), A n (x+B))."""
    _same_group(A, B)
    shifted = B.translate(x)
    return A | shifted, A & shifted


def is_sidon(B: GSet) -> bool:
    if not B:
        raise ValueError("is_sidon needs a nonempty set")
    counts = rep_counts(B, B.negate()).counts
    return bool(counts[1:].max(initial=0) <= 1)


def additive_energy(A: GSet, B: GSet, kernel: str | None = None) -> int:
    """Reduced additive energy: number of edges sum_c C(r_{A,B}(c), 2)."""
    prof = rep_counts(A, B, kernel)
    out = prof._memo.get("energy")
    if out is None:
        if prof.group.order <= _SMALL_ORDER:
            out = sum(c * (c - 1) for c in prof._list()) // 2
        else:
            c = prof.counts
            out = int((c * (c - 1) // 2).sum())
        prof._memo["energy"] = out
    return out


def additive_energy_pairs(A: GSet, B: GSet) -> int:
    """Same quantity counted edge by edge from the pair graph; small inputs only."""
    G = _same_group(A, B)
    pairs = [(a, b) for a in A.elements for b in B.elements]
    edges = 0
    for i, (a, b) in enumerate(pairs):
        s = G.add(a, b)
        for a2, b2 in pairs[i + 1 :]:
            if G.add(a2, b2) == s:
                edges += 1
    return edges

