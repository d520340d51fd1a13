"""The determinant identity, its matrices, and the triangulating algorithm."""

from fractions import Fraction

import pytest

from dentedhex.detid import (AdmissibleSeq, DetidError, DyckPath, Step,
                             admissible_from_dyck, alpha_sequence, catalan,
                             dyck_from_admissible, enumerate_admissible,
                             enumerate_dyck, enumerate_irreducible,
                             funfact_factors, halfinteger_symmetry_check,
                             matrix_m, matrix_m_factor, matrix_mpp,
                             matrix_mppp, matrix_mppp_infinity, matrix_mprime,
                             matrix_s, mppp_column_of_value, mppp_entry,
                             qbinom_identity_check, reduce_blocks,
                             solution_basis, starred_solution, theorem_check,
                             triangulating_matrix, verify_triangulization)
from dentedhex.exactalg import (RatFunc, RF_ONE, RF_T, RF_ZERO, qpoch, qpow,
                                substitute)
from dentedhex.lgv import QMatrix, determinant


def test_sequence_validation():
    with pytest.raises(DetidError):
        AdmissibleSeq((2, 2))
    with pytest.raises(DetidError):
        AdmissibleSeq((0, 1))
    assert AdmissibleSeq((1,)).is_admissible()
    assert not AdmissibleSeq((3,)).is_admissible()
    assert AdmissibleSeq((3, 4)).is_irreducible()
    assert not AdmissibleSeq((1, 4)).is_irreducible()
    assert not AdmissibleSeq((2, 3)).is_irreducible()


def test_enumeration_counts():
    assert [s.values for s in enumerate_admissible(1)] == [(1,), (2,)]
    for m in range(1, 7):
        assert len(enumerate_admissible(m)) == catalan(m + 1), m
    with pytest.raises(DetidError):
        enumerate_admissible(13)


def test_dyck_example():
    p = dyck_from_admissible(AdmissibleSeq((3, 6, 7, 8)))
    downs = [t for t, s in enumerate(p.steps, start=1) if s is Step.DOWN]
    assert downs == [4, 7, 8, 9, 10]
    assert len(p.steps) == 10


def test_dyck_roundtrip_and_counts():
    for m in range(1, 7):
        for s in enumerate_admissible(m):
            assert admissible_from_dyck(dyck_from_admissible(s)) == s
        assert len(enumerate_dyck(m + 1)) == catalan(m + 1)


def test_dyck_validation():
    with pytest.raises(DetidError):
        DyckPath((Step.DOWN, Step.UP))
    with pytest.raises(DetidError):
        DyckPath((Step.UP, Step.UP))


def test_matrix_entries_zero_below_window():
    m = matrix_m(AdmissibleSeq((1, 4)))
    assert m[1, 0].is_zero()       # a_1 = 1 < 3 = 2*2 - 1
    assert not m[1, 1].is_zero()
    one = matrix_m(AdmissibleSeq((1,)))
    assert one[0, 0] == RF_ONE


def test_identity_base_cases():
    lhs, rhs = theorem_check(AdmissibleSeq((1,)))
    assert lhs == rhs == RF_ONE
    lhs, rhs = theorem_check(AdmissibleSeq((2,)))
    want = qpoch(RF_T * qpow(2), qpow(1), 1) / (RF_ONE - qpow(1))
    assert lhs == rhs == want


def test_identity_small_sweep():
    for m in (1, 2, 3):
        for s in enumerate_admissible(m):
            lhs, rhs = theorem_check(s)
            assert lhs == rhs, s
            assert not lhs.is_zero(), s


def test_identity_negative_control():
    lhs, rhs = theorem_check(AdmissibleSeq((3,)))
    assert lhs != rhs


def test_block_reduction_rule():
    bs = reduce_blocks(AdmissibleSeq((1, 3, 4)))
    assert [(b.seq.values, b.x_offset) for b in bs] == \
        [((1,), 0), ((1, 2), 1)]
    bs = reduce_blocks(AdmissibleSeq((3, 4)))
    assert [(b.seq.values, b.x_offset) for b in bs] == [((3, 4), 0)]


def test_block_determinant_product():
    for m in (1, 2, 3):
        for s in enumerate_admissible(m):
            prod = RF_ONE
            for b in reduce_blocks(s):
                assert b.seq.is_irreducible() or b.seq.values == (1,), (s, b)
                prod = prod * determinant(matrix_m(b.seq, b.x_offset))
            assert prod == determinant(matrix_m(s)), s


def test_simplified_matrix_relations():
    for m in (1, 2, 3):
        for s in enumerate_admissible(m):
            mp = matrix_mprime(s)
            assert determinant(mp) == determinant(matrix_s(s)), s
            assert determinant(matrix_m(s)) == \
                matrix_m_factor(s) * determinant(mp), s
            zeroed = mp.map(lambda e: substitute(e, {"T": RF_ZERO}))
            sm = matrix_s(s)
            assert all(zeroed[i, j] == sm[i, j]
                       for i in range(s.m) for j in range(s.m)), s


def test_quarter_substitution_reproduces_determinant_entries():
    # q -> q^2 and T -> q^{4x} turn the identity matrix entries into the
    # entries of the closed quarter-hexagon determinant
    for s in (AdmissibleSeq((2,)), AdmissibleSeq((1, 4)), AdmissibleSeq((3, 4))):
        mm = matrix_m(s)
        for x0 in (0, 1, 2):
            for i in range(s.m):
                for j in range(s.m):
                    got = substitute(mm[i, j],
                                     {"q": qpow(2), "T": qpow(4 * x0)})
                    n = s.values[j] + 1 - 2 * (i + 1)
                    if s.values[j] < 2 * (i + 1) - 1:
                        want = RF_ZERO
                    else:
                        want = qpoch(qpow(4 * (i + 1) + 4 * x0), qpow(4), n) \
                            / qpoch(qpow(2), qpow(2), n)
                    assert got == want, (s, x0, i, j)


def _tp(c):
    return RF_ONE - RF_T * qpow(c)


def _pq(k, n):
    return qpoch(qpow(k), qpow(1), n)


def test_reversed_matrix_golden_m3():
    expected = {
        (1, 0): RF_ONE, (2, 0): RF_ONE, (3, 0): RF_ONE,
        (1, 1): _pq(5, 1) * _tp(6) / _tp(10),
        (2, 1): _pq(3, 1) * _tp(6) / _tp(8),
        (3, 1): RF_ONE - qpow(1),
        (1, 2): _pq(4, 2) * _tp(5) * _tp(6) / (_tp(8) * _tp(10)),
        (2, 2): _pq(2, 2) * _tp(5) / _tp(8),
        (3, 2): RF_ZERO,
        (1, 3): _pq(3, 3) * _tp(4) * _tp(5) / (_tp(8) * _tp(10)),
        (2, 3): _pq(1, 3) * _tp(5) / _tp(8),
        (3, 3): RF_ZERO,
        (1, 4): _pq(2, 4) * _tp(3) * _tp(5) / (_tp(8) * _tp(10)),
        (2, 4): RF_ZERO, (3, 4): RF_ZERO,
        (1, 5): _pq(1, 5) * _tp(3) * _tp(5) / (_tp(8) * _tp(10)),
        (2, 5): RF_ZERO, (3, 5): RF_ZERO,
    }
    for (i, j), want in expected.items():
        assert mppp_entry(3, i, j) == want, (i, j)


def test_staircase_zeros():
    for m in (1, 2, 3, 4):
        mat = matrix_mppp(m)
        for i in range(1, m + 1):
            for j in range(2 * (m - i + 1), 2 * m):
                assert mat[i - 1, j].is_zero(), (m, i, j)


def test_column_deletion_recursion():
    for m in range(2, 7):
        big = matrix_mppp_infinity(m)
        small = matrix_mppp_infinity(m - 1)
        for i in range(m - 1):
            d = big[i, 2]
            for j in range(2 * (m - 1)):
                assert big[i, j + 2] / d == small[i, j], (m, i, j)


def test_halfinteger_symmetry():
    for m in (1, 2, 3):
        for i in range(1, m + 1):
            for k in range(1, m + 1):
                for j in range(2 * m):
                    lhs, rhs = halfinteger_symmetry_check(m, i, j, k)
                    assert lhs == rhs, (m, i, j, k)


def test_cleared_row_factor_counts():
    for m in (1, 2, 3, 4):
        for i in range(1, m + 1):
            for j in range(2 * (m - i + 1)):
                assert len(funfact_factors(m, i, j)) == m - i, (m, i, j)
    with pytest.raises(DetidError):
        funfact_factors(2, 2, 2)


def test_qbinom_sum_vanishes():
    assert qbinom_identity_check(1, 1, []).is_zero()
    assert qbinom_identity_check(5, 2,
                                 [Fraction(2), Fraction(-3),
                                  Fraction(1, 7)]).is_zero()
    for n in range(1, 7):
        assert qbinom_identity_check(n, n, []).is_zero(), n
    with pytest.raises(DetidError):
        qbinom_identity_check(3, 1, [Fraction(1)])


def test_alpha_values():
    al = alpha_sequence(4)
    one = RF_ONE
    assert al[0] == -(one - qpow(1)).inv()
    assert al[1] == qpow(1) / ((one - qpow(1)) ** 2 * (one - qpow(3)))
    assert al[2] == -qpow(2) * (one + qpow(2)) / (
        (one - qpow(1)) ** 3 * (one - qpow(3)) * (one - qpow(5)))
    num7 = (qpow(8) + qpow(7) + 3 * qpow(6) + 2 * qpow(5) + 3 * qpow(4)
            + 2 * qpow(3) + 3 * qpow(2) + qpow(1) + one)
    assert al[3] == qpow(3) * num7 / (
        (one - qpow(1)) ** 3 * (one - qpow(3)) ** 2 * (one - qpow(5))
        * (one - qpow(7)))


def test_basis_matrix_m4_golden():
    # the 8 x 4 matrix of shifted fundamental vectors; each column repeats
    # the pattern (1, alpha_1, 0, alpha_3, ...) two rows further down
    basis = solution_basis(4)
    al = alpha_sequence(4)
    expect = [[RF_ZERO] * 4 for _ in range(8)]
    for k in range(4):
        expect[2 * k][k] = RF_ONE
        for t in range(4 - k):
            expect[2 * k + 2 * t + 1][k] = al[t]
    for i in range(8):
        for j in range(4):
            assert basis[i, j] == expect[i][j], (i, j)


def test_basis_annihilates_reversed_matrix():
    for m in (1, 2, 3):
        prod = matrix_mppp(m) @ solution_basis(m)
        assert all(prod[i, j].is_zero()
                   for i in range(m) for j in range(m)), m


def test_starred_solution_annihilates_system():
    for m in (2, 3):
        for s in enumerate_irreducible(m):
            sol = starred_solution(s)
            assert sol[1] == RF_ONE
            assert all(not e.depends_on("T") for e in sol)
            sys_mat = matrix_mpp(s)
            for i in range(m):
                acc = RF_ZERO
                for j in range(m + 1):
                    acc = acc + sys_mat[i, j] * sol[j]
                assert acc.is_zero(), (s, i)
            # numeric parameter witnesses on top of the symbolic check
            for x0 in (0, 1, 5):
                num = sys_mat.map(lambda e: substitute(e, {"T": qpow(2 * x0)}))
                for i in range(m):
                    acc = RF_ZERO
                    for j in range(m + 1):
                        acc = acc + num[i, j] * sol[j]
                    assert acc.is_zero(), (s, i, x0)


def test_triangulating_matrix_shape():
    f = triangulating_matrix(AdmissibleSeq((3, 5, 6)))
    for i in range(3):
        assert f[i, i] == RF_ONE
        for j in range(i + 1, 3):
            assert f[i, j].is_zero()
        for j in range(3):
            assert not f[i, j].depends_on("T")
    with pytest.raises(DetidError):
        triangulating_matrix(AdmissibleSeq((1, 4)))


def test_triangulization_reports():
    for m in (1, 2, 3):
        for s in enumerate_irreducible(m):
            rep = verify_triangulization(s)
            assert rep["ok"], rep


def test_reversed_column_indexing():
    assert mppp_column_of_value(3, 1) == 5
    assert mppp_column_of_value(3, 6) == 0
    with pytest.raises(DetidError):
        mppp_column_of_value(3, 7)
