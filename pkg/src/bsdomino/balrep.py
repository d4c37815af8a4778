"""Balanced representations of rational points.

For a point x and a phase z, the bi-infinite integer sequence

    B_k(x, z) = floor((z + k) x) - floor((z + k - 1) x)      (componentwise)

is a balanced representation of x: every term lies in
{floor(x1), floor(x1)+1} x {floor(x2), floor(x2)+1}, partial sums
telescope, and sliding averages converge to x at rate 1/(2K+1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadRange
from .rationals import IntVec2, Vec2, as_rat


def b_k(x: Vec2, z, k: int) -> IntVec2:
    """The k-th term of the balanced representation of x with phase z."""
    z = as_rat(z)
    hi = x.scale(z + k).floor()
    lo = x.scale(z + k - 1).floor()
    return (hi[0] - lo[0], hi[1] - lo[1])


@dataclass(frozen=True)
class BalancedWindow:
    """Consecutive terms B_{k_lo} .. B_{k_hi} of one balanced representation."""

    x: Vec2
    z: Fraction
    k_lo: int
    k_hi: int
    values: tuple[IntVec2, ...]


def window(x: Vec2, z, k_lo: int, k_hi: int) -> BalancedWindow:
    if k_lo > k_hi:
        raise BadRange(f"k_lo={k_lo} exceeds k_hi={k_hi}")
    z = as_rat(z)
    values = tuple(b_k(x, z, k) for k in range(k_lo, k_hi + 1))
    return BalancedWindow(x, z, k_lo, k_hi, values)


def window_sum(w: BalancedWindow) -> IntVec2:
    s1 = sum(v[0] for v in w.values)
    s2 = sum(v[1] for v in w.values)
    return (s1, s2)


def average_error(x: Vec2, z, big_k: int) -> Fraction:
    """Max-norm distance between x and the average of B_{-K} .. B_K.

    Telescoping makes the sum floor((z+K)x) - floor((z-K-1)x), so the
    error is strictly below 1/(2K+1).
    """
    if big_k < 0:
        raise BadRange(f"K must be nonnegative, got {big_k}")
    z = as_rat(z)
    hi = x.scale(z + big_k).floor()
    lo = x.scale(z - big_k - 1).floor()
    count = 2 * big_k + 1
    avg = Vec2(Fraction(hi[0] - lo[0], count), Fraction(hi[1] - lo[1], count))
    return (avg - x).max_abs()
