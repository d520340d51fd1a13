"""Single lattice paths: step weights, recursive oracle, and closed forms.

Paths live in Z x Z and use steps to the right and downwards.  A right
step from (a, b) to (a+1, b) carries the label a - 2b and is weighted; a
down step has weight 1.  ``gf_brute`` implements the defining recursion
directly and serves as the independent oracle for every closed form.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .exactalg import (MPoly, RatFunc, RF_ONE, RF_X, RF_Y, RF_ZERO, qpoch,
                       qpow, substitute)


@dataclass(frozen=True, order=True)
class LatticePoint:
    x: int
    y: int


class WeightMode(enum.Enum):
    """Which step-weight convention is in force.

    GENERAL_XY is the half-hexagon weight (X q^l + Y q^-l)/2 for label l.
    UNIT_XY_HALF_ZERO sets X = Y = 1 and gives the label-0 step weight 1/2
    instead of 1 (the quarter-hexagon convention).
    """
    GENERAL_XY = "general_xy"
    UNIT_XY_HALF_ZERO = "unit_xy_half_zero"


_HALF = Fraction(1, 2)


def _pow2(e: int) -> Fraction:
    return Fraction(2 ** e) if e >= 0 else Fraction(1, 2 ** -e)


def label_weight(label: int, mode: WeightMode) -> RatFunc:
    """Weight of a right step with the given label."""
    if mode is WeightMode.GENERAL_XY:
        return (RF_X * qpow(label) + RF_Y * qpow(-label)) * _HALF
    if label == 0:
        return RatFunc.from_scalar(_HALF)
    return (qpow(label) + qpow(-label)) * _HALF


def step_weight(a: int, b: int, mode: WeightMode) -> RatFunc:
    """Weight of the right step (a, b) -> (a+1, b), whose label is a - 2b."""
    return label_weight(a - 2 * b, mode)


_memo: dict[tuple[int, int, int, WeightMode], RatFunc] = {}


def gf_brute(a: int, b: int, c: int, d: int,
             mode: WeightMode = WeightMode.GENERAL_XY) -> RatFunc:
    """Generating function of all right/down paths (a,b) -> (c,d), by recursion.

    This is the oracle: it never consults a closed form.  Zero for a > c
    or b < d.  Memoized up to translation: the value only depends on
    (a - 2b, c - a, b - d).
    """
    if a > c or b < d:
        return RF_ZERO
    return _gf_brute_rec(a - 2 * b, c - a, b - d, mode)


def _gf_brute_rec(label: int, right: int, down: int, mode: WeightMode) -> RatFunc:
    if right == 0:
        return RF_ONE
    key = (label, right, down, mode)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    # take the first right step, or the first down step
    val = label_weight(label, mode) * _gf_brute_rec(label + 1, right - 1, down, mode)
    if down > 0:
        val = val + _gf_brute_rec(label + 2, right, down - 1, mode)
    _memo[key] = val
    return val


def gf_closed(a: int, b: int, c: int, d: int) -> RatFunc:
    """Closed product form for the path generating function (general X, Y)."""
    if a > c or b < d:
        return RF_ZERO
    out = RF_ONE
    for j in range(1, c - a + 1):
        num = (RF_X * qpow(j - 1 - 2 * b + a) + RF_Y * qpow(-j + 1 + 2 * d - a)) \
            * (RF_ONE - qpow(2 * (b - d) + 2 * j))
        out = out * num / ((RF_ONE - qpow(2 * j)) * 2)
    return out


def gfone(a: int, c: int) -> RatFunc:
    """Paths from (a, a) down to (c, 0); zero for c < a."""
    if c < a:
        return RF_ZERO
    out = RatFunc.from_scalar(Fraction(1, 2 ** (c - a))) * qpow(a * (a - c))
    for j in range(1, c - a + 1):
        num = (RF_X * qpow(j - 1) + RF_Y * qpow(1 - j)) * (RF_ONE - qpow(2 * a + 2 * j))
        out = out * num / (RF_ONE - qpow(2 * j))
    return out


def shift_quotient(a: int, c: int, d: int) -> RatFunc:
    """The X/Y-free factor with gfone(a+d, c+d) = gfone(a, c) * shift_quotient."""
    if d < 0:
        raise ValueError("shift must be nonnegative")
    q2 = qpow(2)
    lhs = qpoch(qpow(2 * d + 2), q2, c) / (qpow(d * c) * qpoch(q2, q2, c))
    rhs = qpow(d * a) * qpoch(q2, q2, a) / qpoch(qpow(2 * d + 2), q2, a)
    return lhs * rhs


def gf_xy1(a: int, b: int, c: int, d: int) -> RatFunc:
    """Closed form of gf_closed specialized to X = Y = 1."""
    if a > c or b < d:
        return RF_ZERO
    n = c - a
    q2 = qpow(2)
    e2 = (a - c) * (a + c - 1 - 4 * d)
    assert e2 % 2 == 0
    pre = RatFunc.from_scalar(_pow2(a - c)) * qpow(e2 // 2)
    return pre * qpoch(-qpow(2 * a - 2 * b - 2 * d), q2, n) \
        * qpoch(qpow(2 * b - 2 * d + 2), q2, n) / qpoch(q2, q2, n)


def gftwo(b: int, c: int) -> RatFunc:
    """Paths (2b+1, b) -> (c, 0) with X = Y = 1; closed form for c >= 2b+1."""
    if c < 2 * b + 1:
        return gf_xy1(2 * b + 1, b, c, 0)
    n = c - 2 * b - 1
    pre = RatFunc.from_scalar(_pow2(2 * b + 1 - c))
    e = b * (2 * b + 1) - c * (c - 1) // 2
    return pre * qpow(e) * qpoch(qpow(4 * b + 4), qpow(4), n) / qpoch(qpow(2), qpow(2), n)


def gfthree(b: int, c: int) -> RatFunc:
    """Half-weighted start at (2b+1, b) plus start at (2b, b-1), X = Y = 1.

    Closed form for c >= 2b+1, definitional fallback otherwise.
    """
    if c < 2 * b + 1 or b < 1:
        return gf_xy1(2 * b + 1, b, c, 0) * Fraction(1, 2) + gf_xy1(2 * b, b - 1, c, 0)
    n = c - 2 * b
    pre = RatFunc.from_scalar(_pow2(2 * b - c))
    e = b * (2 * b - 1) - (c - 1) * c // 2
    return pre * qpow(e) * (RF_ONE - qpow(2 * c)) \
        * qpoch(qpow(4 * b + 4), qpow(4), n - 1) / qpoch(qpow(2), qpow(2), n)
