"""Two extremal families that miss Pollard's bound by a quadratic defect.

Family 1 takes H-periodic sets whose images mod H are arithmetic progressions
of lengths s >= r >= 2; family 2 removes H from one side and adds back a
smaller subgroup L.  Both come with a closed form for

    defect = sum_{i<=t} |A +_i B| - t|A| - t|B| + t^2

namely x^2 - x|H| and x^2 - x|L|.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator

from addcomb.group import (
    GroupSpec,
    GSet,
    Subgroup,
    cyclic_subgroup,
    make_group,
    subgroup_lattice,
)
from addcomb.sums import pollard_sum, sumset


class FamilyParameterError(ValueError):
    pass


@dataclass(frozen=True)
class ExampleInstance:
    family: int
    G: GroupSpec
    A: GSet
    B: GSet
    H_or_L: Subgroup
    t: int
    x: int
    s: int | None
    r: int
    predicted_defect: int

    def defect(self) -> int:
        t = self.t
        return pollard_sum(self.A, self.B, t) - t * self.A.card - t * self.B.card + t * t


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise FamilyParameterError(f"violated: {what}")


def build_example1(
    H_order: int, quotient_order: int, d: int, s: int, r: int, x: int
) -> ExampleInstance:
    """Family 1 inside Z_{|H|} x Z_q, with H the first factor.

    A and B are the preimages of {0, d, ..., (s-1)d} and {0, d, ..., (r-1)d}.
    """
    _require(H_order >= 2, "|H| >= 2")
    _require(quotient_order >= 1, "quotient order >= 1")
    _require(s >= r >= 2, "s >= r >= 2")
    _require(1 <= x <= H_order - 1, "1 <= x <= |H| - 1")
    d %= quotient_order
    ord_d = quotient_order // gcd(d, quotient_order)
    _require(r + s - 1 <= ord_d, f"r + s - 1 <= ord(d) = {ord_d}")
    t = (r - 1) * H_order + x
    G = make_group([H_order, quotient_order])
    H = Subgroup(G.set(G.index((h, 0)) for h in range(H_order)))

    def periodic_ap(length: int) -> GSet:
        return G.set(G.index((h, j * d)) for h in range(H_order) for j in range(length))

    return ExampleInstance(
        family=1,
        G=G,
        A=periodic_ap(s),
        B=periodic_ap(r),
        H_or_L=H,
        t=t,
        x=x,
        s=s,
        r=r,
        predicted_defect=x * x - x * H_order,
    )


def quotient_generator(G: GroupSpec, H: Subgroup) -> int | None:
    """Smallest g whose coset generates G/H, or None when G/H is not cyclic."""
    for g in range(G.order):
        if cyclic_subgroup(G, g).join(H).order == G.order:
            return g
    return None


def build_example2(
    G: GroupSpec, H: Subgroup, L: Subgroup, r: int, x: int, generator: int | None = None
) -> ExampleInstance:
    """Family 2: A = (G \\ H) u L and B = (B' \\ H) u L.

    B' is the preimage of the progression 0, g, ..., (r-1)g in G/H, where g is
    ``generator`` (default: the smallest element generating G/H).
    """
    _require(1 < L.order < H.order < G.order, "0 < L < H < G")
    _require(L.carrier <= H.carrier, "L is a subgroup of H")
    _require(H.is_valid() and L.is_valid(), "H and L are subgroups")
    if generator is None:
        generator = quotient_generator(G, H)
        _require(generator is not None, "G/H cyclic")
    else:
        _require(
            cyclic_subgroup(G, generator).join(H).order == G.order,
            "generator generates G/H",
        )
    index = G.order // H.order
    _require(2 <= r <= index, f"2 <= r <= |G/H| = {index}")
    _require(1 <= x <= L.order - 1, "1 <= x <= |L| - 1")
    t = (r - 1) * H.order + x
    progression = [0]
    for _ in range(r - 1):
        progression.append(G.add(progression[-1], generator))
    B_prime = sumset(G.set(progression), H.carrier)
    A = (H.carrier.complement()) | L.carrier
    B = (B_prime - H.carrier) | L.carrier
    return ExampleInstance(
        family=2,
        G=G,
        A=A,
        B=B,
        H_or_L=L,
        t=t,
        x=x,
        s=None,
        r=r,
        predicted_defect=x * x - x * L.order,
    )


def example1_parameters(
    max_H: int, max_quotient: int, t: int | None = None
) -> Iterator[tuple[int, int, int, int, int, int]]:
    """Every admissible (H_order, quotient_order, d, s, r, x), optionally at fixed t."""
    for h in range(2, max_H + 1):
        for q in range(1, max_quotient + 1):
            for d in range(q):
                ord_d = q // gcd(d, q)
                for r in range(2, ord_d + 1):
                    for s in range(r, ord_d - r + 2):
                        for x in range(1, h):
                            if t is None or (r - 1) * h + x == t:
                                yield h, q, d, s, r, x


def example2_chains(G: GroupSpec) -> Iterator[tuple[Subgroup, Subgroup]]:
    """Pairs L < H < G with |L| >= 2 and G/H cyclic."""
    lattice = subgroup_lattice(G)
    for H in lattice:
        if not 1 < H.order < G.order or quotient_generator(G, H) is None:
            continue
        for L in lattice:
            if 1 < L.order < H.order and L.carrier <= H.carrier:
                yield L, H


def example2_parameters(
    G: GroupSpec, t: int | None = None
) -> Iterator[tuple[Subgroup, Subgroup, int, int]]:
    """Every admissible (L, H, r, x) in G, optionally at fixed t."""
    for L, H in example2_chains(G):
        for r in range(2, G.order // H.order + 1):
            for x in range(1, L.order):
                if t is None or (r - 1) * H.order + x == t:
                    yield L, H, r, x
