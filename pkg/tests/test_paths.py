"""Single-path generating functions: closed forms against the recursion."""

from fractions import Fraction

import pytest

from dentedhex.exactalg import RF_ONE, RF_X, RF_Y, RF_ZERO, qpow, substitute
from dentedhex.paths import (WeightMode, gf_brute, gf_closed, gf_xy1, gfone,
                             gftwo, gfthree, label_weight, shift_quotient,
                             step_weight)


def test_step_weight_labels():
    w = step_weight(5, 2, WeightMode.GENERAL_XY)
    assert w == (RF_X * qpow(1) + RF_Y * qpow(-1)) * Fraction(1, 2)
    assert label_weight(0, WeightMode.GENERAL_XY) == \
        (RF_X + RF_Y) * Fraction(1, 2)
    assert label_weight(0, WeightMode.UNIT_XY_HALF_ZERO) == \
        RF_ONE * Fraction(1, 2)
    assert label_weight(2, WeightMode.UNIT_XY_HALF_ZERO) == \
        (qpow(2) + qpow(-2)) * Fraction(1, 2)


def test_brute_base_cases():
    assert gf_brute(0, 0, 0, 0) == RF_ONE
    assert gf_brute(3, 1, 2, 0) == RF_ZERO    # end left of start
    assert gf_brute(0, 0, 0, 1) == RF_ZERO    # end above start
    # one right step from (1, 1)
    assert gf_brute(1, 1, 2, 1) == label_weight(-1, WeightMode.GENERAL_XY)


def test_closed_matches_brute_small():
    for a in range(0, 5):
        for c in range(a, 5):
            for b in range(0, 5):
                for d in range(0, b + 1):
                    assert gf_closed(a, b, c, d) == gf_brute(a, b, c, d), \
                        (a, b, c, d)


def test_gfone_is_diagonal_specialization():
    for a in range(0, 5):
        for c in range(a, 6):
            assert gfone(a, c) == gf_closed(a, a, c, 0), (a, c)
    assert gfone(3, 2).is_zero()


def test_shift_quotient_factorization():
    for a in range(0, 4):
        for c in range(a, 5):
            base = gfone(a, c)
            for d in range(0, 4):
                quot = shift_quotient(a, c, d)
                assert not quot.depends_on("X") and not quot.depends_on("Y")
                assert gfone(a + d, c + d) == base * quot, (a, c, d)
    with pytest.raises(ValueError):
        shift_quotient(1, 2, -1)


def test_gf_xy1_specializes_general_form():
    for a in range(0, 5):
        for c in range(a, 6):
            for b in range(0, 4):
                for d in range(0, b + 1):
                    at_one = substitute(gf_closed(a, b, c, d),
                                        {"X": RF_ONE, "Y": RF_ONE})
                    assert gf_xy1(a, b, c, d) == at_one, (a, b, c, d)


def test_gftwo_matches_brute():
    for b in range(0, 3):
        for c in range(0, 8):
            assert gftwo(b, c) == \
                gf_brute(2 * b + 1, b, c, 0, WeightMode.UNIT_XY_HALF_ZERO), \
                (b, c)


def test_gfthree_matches_brute():
    half = Fraction(1, 2)
    for b in range(1, 3):
        for c in range(0, 8):
            want = gf_brute(2 * b + 1, b, c, 0, WeightMode.UNIT_XY_HALF_ZERO) \
                * half \
                + gf_brute(2 * b, b - 1, c, 0, WeightMode.UNIT_XY_HALF_ZERO)
            assert gfthree(b, c) == want, (b, c)
