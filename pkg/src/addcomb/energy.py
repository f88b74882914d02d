"""Additive energy bounds for pairs whose differences are mostly rare.

The lower bound on sum_{i<=t} |A +_i B| contains t / (t + sqrt(t(t-1))), which
is irrational for t >= 2.  :class:`EnergyLowerBound` keeps it symbolic and
compares integers against it exactly by squaring; floats are only produced
for display, rounded toward zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from addcomb.group import GSet
from addcomb.sums import additive_energy, pollard_sum, rep_counts
from addcomb.theorems import Branch, TheoremVerdict, not_applicable

# bits of precision for the rational upper bracket on sqrt(t(t-1))
_SQRT_BITS = 64


def derive_exceptional_set(A: GSet, B: GSet, k: int) -> GSet:
    """Smallest T with r_{A,-B}(x) <= k off T, i.e. {x : |(x+B) n A| > k}."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    return rep_counts(A, B.negate()).at_least(k + 1)


def _clique_cap(A: GSet, B: GSet, T: GSet, k: int) -> tuple[int, int]:
    # |A|^2 |B| / (|T|(|B| - k) + k|A|) as (numerator, denominator)
    return A.card**2 * B.card, T.card * (B.card - k) + k * A.card


def _hypotheses(A: GSet, B: GSet, T: GSet, k: int) -> bool:
    return A.card >= B.card >= k >= 1 and A.card >= T.card


@dataclass(frozen=True)
class EnergyLowerBound:
    """t * min{ |A||B| / (t + sqrt(t(t-1))), cap }, held exactly."""

    t: int
    ab: int
    cap_num: int
    cap_den: int

    @property
    def cap(self) -> Fraction:
        return Fraction(self.cap_num, self.cap_den)

    def _first_at_most(self, n: int) -> bool:
        # n >= t*ab / (t + s)  <=>  n*s >= t*ab - n*t, with s^2 = t(t-1)
        t = self.t
        gap = t * self.ab - n * t
        if gap <= 0:
            return True
        if n <= 0:
            return False
        return n * n * t * (t - 1) >= gap * gap

    def is_at_most(self, n: int) -> bool:
        """Exact test of bound <= n."""
        return self._first_at_most(n) or self.t * self.cap_num <= n * self.cap_den

    def ceil(self) -> int:
        """Smallest integer n with bound <= n."""
        second = -(-self.t * self.cap_num // self.cap_den)
        lo, hi = 0, self.t * self.ab
        while lo < hi:
            mid = (lo + hi) // 2
            if self._first_at_most(mid):
                hi = mid
            else:
                lo = mid + 1
        return min(lo, second)

    def lower_rational(self) -> Fraction:
        """A rational no larger than the true bound, within 2^-60 relative."""
        t = self.t
        scale = 1 << _SQRT_BITS
        s_hi = Fraction(math.isqrt(t * (t - 1) * scale * scale) + 1, scale)
        if t * (t - 1) == 0:
            s_hi = Fraction(0)
        first = Fraction(t * self.ab) / (t + s_hi)
        return min(first, t * self.cap)

    def __float__(self) -> float:
        q = self.lower_rational()
        f = float(q)
        if Fraction(f) > q:
            f = math.nextafter(f, -math.inf)
        return f

    def weaker(self) -> Fraction:
        """min{ |A||B|/2, t * cap }, the bound without the square root."""
        return min(Fraction(self.ab, 2), self.t * self.cap)

    def weaker_ceil(self) -> int:
        return min(-(-self.ab // 2), -(-self.t * self.cap_num // self.cap_den))


def energy_lower_bound(A: GSet, B: GSet, T: GSet, k: int, t: int) -> EnergyLowerBound:
    if t < 1:
        raise ValueError("t must be a positive integer")
    if not _hypotheses(A, B, T, k):
        raise ValueError("need |A| >= |B| >= k >= 1 and |A| >= |T|")
    return EnergyLowerBound(t, A.card * B.card, *_clique_cap(A, B, T, k))


@dataclass(frozen=True)
class EnergyReport:
    energy: int
    T: GSet
    k: int
    t: int
    lower_bound: EnergyLowerBound | None
    upper_bound_rhs: Fraction | None


def energy_report(A: GSet, B: GSet, k: int, t: int, T: GSet | None = None) -> EnergyReport:
    if T is None:
        T = derive_exceptional_set(A, B, k)
    E = additive_energy(A, B)
    if not _hypotheses(A, B, T, k):
        return EnergyReport(E, T, k, t, None, None)
    upper = Fraction(T.card * B.card * (B.card - k) + (k - 1) * A.card * B.card, 2)
    return EnergyReport(E, T, k, t, energy_lower_bound(A, B, T, k, t), upper)


def _resolve_T(A: GSet, B: GSet, k: int, T: GSet | None) -> GSet:
    minimal = derive_exceptional_set(A, B, k)
    if T is None:
        return minimal
    if not minimal <= T:
        raise ValueError("T must contain every x with r_{A,-B}(x) > k")
    return T


def check_energy_upper_bound(
    A: GSet, B: GSet, T: GSet | None, k: int
) -> TheoremVerdict:
    """2 E(A, B) <= |T||B|(|B|-k) + (k-1)|A||B|."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    if not A.card >= B.card >= k:
        return not_applicable("energy-upper")
    T = _resolve_T(A, B, k, T)
    if not _hypotheses(A, B, T, k):
        return not_applicable("energy-upper")
    lhs = 2 * additive_energy(A, B)
    rhs = T.card * B.card * (B.card - k) + (k - 1) * A.card * B.card
    mirror = 2 * additive_energy(A, B.negate())
    checks = (("energy_mirror", lhs, "==", mirror),)
    ok = lhs <= rhs and lhs == mirror
    return TheoremVerdict(
        "energy-upper", ok, Branch.BOUND, lhs, rhs, relation="<=", checks=checks
    )


def check_energy_lemma(
    A: GSet, B: GSet, k: int, t: int, T: GSet | None = None
) -> TheoremVerdict:
    """sum_{i<=t} |A +_i B| against both forms of the energy lower bound.

    ``rhs`` is the ceiling of the sharp bound, which is equivalent for an
    integer left side.
    """
    if k < 1 or t < 1:
        raise ValueError("k and t must be positive integers")
    if not A.card >= B.card >= k:
        return not_applicable("energy")
    T = _resolve_T(A, B, k, T)
    if not _hypotheses(A, B, T, k):
        return not_applicable("energy")
    bound = energy_lower_bound(A, B, T, k, t)
    lhs = pollard_sum(A, B, t)
    rhs = bound.ceil()
    weaker = bound.weaker_ceil()
    checks = (
        ("sharp_bound", lhs, ">=", rhs),
        ("weaker_bound", lhs, ">=", weaker),
        ("bound_chain", rhs, ">=", weaker),
    )
    ok = bound.is_at_most(lhs) and lhs >= weaker and rhs >= weaker
    details = {"T": T, "k": k, "bound": bound}
    return TheoremVerdict(
        "energy", ok, Branch.BOUND, lhs, rhs, checks=checks, details=details
    )


def check_energy_bijection(A: GSet, B: GSet, kernel: str | None = None) -> TheoremVerdict:
    """E(A, B) == E(A, -B): a + b = a' + b' iff a - b' = a' - b."""
    lhs = additive_energy(A, B, kernel)
    rhs = additive_energy(A, B.negate(), kernel)
    return TheoremVerdict("energy-bijection", lhs == rhs, Branch.BOUND, lhs, rhs, relation="==")
