"""A q-Pochhammer determinant identity and its verification machinery.

For a strictly increasing sequence a = (a_1 < ... < a_m) of positive
integers with 2i-1 <= a_i <= 2m ("admissible"), the determinant of the
matrix with (i, j)-entry

    (q^{2i} T; q^2)_{a_j+1-2i} / (q; q)_{a_j+1-2i}        (T = q^{2x})

equals prod_k (q^{2k} T; q)_{a_k-2k+1} times the determinant of the
companion matrix with entries 1 / (q; q)_{a_j+1-2i}.  Everything here
works in exact arithmetic: the identity itself (``theorem_check``), its
reduction to irreducible sequences (``reduce_blocks``), the simplified
and reversed matrices m', m'' and m''', the alternating q-binomial sum
that powers the invariance argument, and the recursive construction of
the lower triangular matrix that triangulates m'.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactalg import (MPoly, RatFunc, RF_ONE, RF_T, RF_ZERO, qbinom, qexp,
                       qpoch, qpow, substitute)
from .lgv import QMatrix, determinant


class DetidError(Exception):
    pass


# -- sequences and Dyck paths ---------------------------------------------

@dataclass(frozen=True, order=True)
class AdmissibleSeq:
    """A strictly increasing sequence of positive integers.

    The name records the intended use; the admissibility window
    2i-1 <= a_i <= 2m is exposed as a predicate rather than enforced, so
    that deliberately out-of-window sequences (negative controls) can be
    built.
    """
    values: tuple[int, ...]

    def __post_init__(self):
        v = self.values
        if not v:
            raise DetidError("sequence must be nonempty")
        if any(x < 1 for x in v):
            raise DetidError("sequence entries must be positive")
        if any(v[i] >= v[i + 1] for i in range(len(v) - 1)):
            raise DetidError("sequence must be strictly increasing")

    @property
    def m(self) -> int:
        return len(self.values)

    def is_admissible(self) -> bool:
        m = self.m
        return all(2 * i - 1 <= a <= 2 * m
                   for i, a in enumerate(self.values, start=1))

    def is_irreducible(self) -> bool:
        if not self.is_admissible():
            return False
        m = self.m
        if self.values[-1] != 2 * m:
            return False
        return all(self.values[i - 1] >= 2 * i + 1 for i in range(1, m))


class Step(enum.Enum):
    UP = "U"
    DOWN = "D"


@dataclass(frozen=True)
class DyckPath:
    """Up/down steps of even length, never dipping below the axis."""
    steps: tuple[Step, ...]

    def __post_init__(self):
        h = 0
        for s in self.steps:
            h += 1 if s is Step.UP else -1
            if h < 0:
                raise DetidError("path dips below the axis")
        if h != 0:
            raise DetidError("path must return to the axis")


def enumerate_admissible(m: int) -> list[AdmissibleSeq]:
    """All strictly increasing a with 2i-1 <= a_i <= 2m, in lex order."""
    if m < 1:
        raise DetidError("length must be positive")
    if m > 12:
        raise DetidError("length capped at 12")
    out: list[AdmissibleSeq] = []

    def rec(prefix: list[int]):
        i = len(prefix)
        if i == m:
            out.append(AdmissibleSeq(tuple(prefix)))
            return
        lo = max(2 * i + 1, prefix[-1] + 1 if prefix else 1)
        for a in range(lo, 2 * m + 1):
            prefix.append(a)
            rec(prefix)
            prefix.pop()

    rec([])
    return out


def enumerate_irreducible(m: int) -> list[AdmissibleSeq]:
    return [a for a in enumerate_admissible(m) if a.is_irreducible()]


def dyck_from_admissible(a: AdmissibleSeq) -> DyckPath:
    """Bijection: length-l admissible sequence -> Dyck path of length 2l+2.

    The i-th down step happens right after a_i up/down steps; a final
    down step closes the path.
    """
    if not a.is_admissible():
        raise DetidError("sequence is not admissible")
    length = 2 * a.m + 2
    downs = set(x + 1 for x in a.values)
    downs.add(length)
    steps = tuple(Step.DOWN if t in downs else Step.UP
                  for t in range(1, length + 1))
    return DyckPath(steps)


def admissible_from_dyck(p: DyckPath) -> AdmissibleSeq:
    """Inverse of dyck_from_admissible."""
    if len(p.steps) < 4:
        raise DetidError("path too short to encode a sequence")
    times = [t for t, s in enumerate(p.steps, start=1) if s is Step.DOWN]
    return AdmissibleSeq(tuple(t - 1 for t in times[:-1]))


def enumerate_dyck(half_length: int) -> list[DyckPath]:
    """All Dyck paths of length 2*half_length, by direct recursion."""
    out: list[DyckPath] = []

    def rec(prefix: list[Step], h: int):
        if len(prefix) == 2 * half_length:
            if h == 0:
                out.append(DyckPath(tuple(prefix)))
            return
        if h + (2 * half_length - len(prefix)) < 0:
            return
        prefix.append(Step.UP)
        rec(prefix, h + 1)
        prefix.pop()
        if h > 0:
            prefix.append(Step.DOWN)
            rec(prefix, h - 1)
            prefix.pop()

    rec([], 0)
    return out


# -- the two matrices of the identity -------------------------------------

def _zero_guard(a_j: int, i: int) -> bool:
    return a_j < 2 * i - 1


def matrix_m(a: AdmissibleSeq, x_offset: int = 0) -> QMatrix:
    """Entries (q^{2i+2k} T; q^2)_{a_j+1-2i} / (q; q)_{a_j+1-2i}, k = x_offset."""
    v = a.values

    def entry(i: int, j: int) -> RatFunc:
        if _zero_guard(v[j - 1], i):
            return RF_ZERO
        n = v[j - 1] + 1 - 2 * i
        return qpoch(RF_T * qpow(2 * i + 2 * x_offset), qpow(2), n) \
            / qpoch(qpow(1), qpow(1), n)

    return QMatrix.build(a.m, a.m, entry)


def matrix_s(a: AdmissibleSeq) -> QMatrix:
    """Entries 1 / (q; q)_{a_j+1-2i}, with the same zero guard."""
    v = a.values

    def entry(i: int, j: int) -> RatFunc:
        if _zero_guard(v[j - 1], i):
            return RF_ZERO
        return qpoch(qpow(1), qpow(1), v[j - 1] + 1 - 2 * i).inv()

    return QMatrix.build(a.m, a.m, entry)


def theorem_check(a: AdmissibleSeq, x_offset: int = 0) -> tuple[RatFunc, RatFunc]:
    """Both sides of the determinant identity; the caller asserts equality."""
    lhs = determinant(matrix_m(a, x_offset))
    rhs = determinant(matrix_s(a))
    for k, ak in enumerate(a.values, start=1):
        rhs = rhs * qpoch(RF_T * qpow(2 * k + 2 * x_offset), qpow(1), ak - 2 * k + 1)
    return lhs, rhs


@dataclass(frozen=True)
class Block:
    seq: AdmissibleSeq
    x_offset: int


def reduce_blocks(a: AdmissibleSeq) -> list[Block]:
    """Split at every k < m with a_k <= 2k; the determinant factors.

    det(matrix_m(a, x)) equals the product of det(matrix_m(block, x + offset))
    over the returned blocks.  For admissible input each block is either
    irreducible or the trivial singleton (1).
    """
    blocks: list[Block] = []
    values = a.values
    offset = 0
    while True:
        m = len(values)
        split = None
        for k in range(1, m):
            if values[k - 1] <= 2 * k and values[k] - 2 * k >= 1:
                split = k
                break
        if split is None:
            blocks.append(Block(AdmissibleSeq(values), offset))
            return blocks
        blocks.append(Block(AdmissibleSeq(values[:split]), offset))
        values = tuple(x - 2 * split for x in values[split:])
        offset += split


# -- simplified matrix m' and its reversed relative m''' -------------------

def matrix_mprime(a: AdmissibleSeq, x_offset: int = 0) -> QMatrix:
    """Entries (T q^{2i}; q^2)_n / ((T q^{2i}; q)_n (q; q)_n), n = a_j+1-2i."""
    v = a.values

    def entry(i: int, j: int) -> RatFunc:
        if _zero_guard(v[j - 1], i):
            return RF_ZERO
        n = v[j - 1] + 1 - 2 * i
        base = RF_T * qpow(2 * i + 2 * x_offset)
        return qpoch(base, qpow(2), n) \
            / (qpoch(base, qpow(1), n) * qpoch(qpow(1), qpow(1), n))

    return QMatrix.build(a.m, a.m, entry)


def matrix_m_factor(a: AdmissibleSeq, x_offset: int = 0) -> RatFunc:
    """The row/column factor with det(m) = factor * det(m')."""
    out = RF_ONE
    for k, ak in enumerate(a.values, start=1):
        out = out * qpoch(RF_T * qpow(2 * k + 2 * x_offset), qpow(1), ak - 2 * k + 1)
    return out


def mppp_entry(m: int, i: int, j: int) -> RatFunc:
    """(i, j)-entry of the reversed staircase matrix, 1<=i<=m, 0<=j<=2m-1.

    (q^{2(m-i+1)-j}; q)_j (T q^{2m-j+1}; q)_j / (T^... staircase: zero
    for j >= 2(m-i+1) because the first factor contains (1 - q^0).
    """
    if not (1 <= i <= m and 0 <= j <= 2 * m - 1):
        raise DetidError("index out of range")
    num = qpoch(qpow(2 * (m - i + 1) - j), qpow(1), j) \
        * qpoch(RF_T * qpow(2 * m - j + 1), qpow(1), j)
    den = qpoch(RF_T * qpow(2 * (2 * m - i + 1) - 2 * j), qpow(2), j)
    return num / den


def matrix_mppp(m: int) -> QMatrix:
    """The m x 2m reversed staircase matrix (columns indexed 0..2m-1)."""
    if m > 8:
        raise DetidError("size capped at 8")
    return QMatrix.build(m, 2 * m, lambda i, jj: mppp_entry(m, i, jj - 1))


def mppp_infinity_entry(m: int, i: int, j: int) -> RatFunc:
    """The T -> 0 specialization: (q^{2(m-i+1)-j}; q)_j."""
    if not (1 <= i <= m and 0 <= j <= 2 * m - 1):
        raise DetidError("index out of range")
    return qpoch(qpow(2 * (m - i + 1) - j), qpow(1), j)


def matrix_mppp_infinity(m: int) -> QMatrix:
    return QMatrix.build(m, 2 * m, lambda i, jj: mppp_infinity_entry(m, i, jj - 1))


def matrix_mpp(a: AdmissibleSeq) -> QMatrix:
    """The m x (m+1) row-normalized system matrix for a* = (1, a_1..a_m).

    Row i of the starred m' matrix divided by its last entry (the column
    of value 2m); requires a_m = 2m so that the divisor is nonzero,
    which holds for irreducible a.  Entry for column value v:
    (q^{2+v-2i}; q)_{2m-v} (T q^{1+v}; q)_{2m-v} / (T q^{2+2v-2i}; q^2)_{2m-v}.
    """
    m = a.m
    if a.values[-1] != 2 * m:
        raise DetidError("last element must be 2m")
    star = (1,) + a.values

    def entry(i: int, j: int) -> RatFunc:
        v = star[j - 1]
        n = 2 * m - v
        return qpoch(qpow(2 + v - 2 * i), qpow(1), n) \
            * qpoch(RF_T * qpow(1 + v), qpow(1), n) \
            / qpoch(RF_T * qpow(2 + 2 * v - 2 * i), qpow(2), n)

    return QMatrix.build(m, m + 1, entry)


def mppp_column_of_value(m: int, v: int) -> int:
    """Column index of value v in the reversed matrix: j = 2m - v."""
    if not (1 <= v <= 2 * m):
        raise DetidError("value out of range")
    return 2 * m - v


# -- the alternating q-binomial sum ---------------------------------------

def qbinom_identity_check(n: int, r: int, gammas: Sequence[Fraction]) -> RatFunc:
    """Sum_k (-1)^k q^{e(n,k)} [n k]_q prod_i (1 - gamma_i q^k); zero for r >= 1."""
    if n < 1 or r < 1:
        raise DetidError("n and r must be positive")
    if len(gammas) != n - r:
        raise DetidError("need exactly n - r gamma values")
    total = RF_ZERO
    for k in range(n + 1):
        term = qpow(qexp(n, k)) * RatFunc.from_poly(qbinom(n, k))
        if k % 2:
            term = -term
        for g in gammas:
            term = term * (RF_ONE - RatFunc.from_scalar(Fraction(g)) * qpow(k))
        total = total + term
    return total


def halfinteger_symmetry_check(m: int, i: int, j: int, k: int) -> tuple[RatFunc, RatFunc]:
    """Entry (i, j) at x = 1/2 - k versus entry (k, j) at x = 1/2 - i.

    In terms of T = q^{2x} this substitutes T -> q^{1-2k} on the left
    and T -> q^{1-2i} on the right; the two sides agree.
    """
    lhs = substitute(mppp_entry(m, i, j), {"T": qpow(1 - 2 * k)})
    rhs = substitute(mppp_entry(m, k, j), {"T": qpow(1 - 2 * i)})
    return lhs, rhs


def funfact_factors(m: int, i: int, j: int) -> list[int]:
    """Exponents y with entry * (T q^{2m+2}; q^2)_{m-i} =
    (q^{2(m-i+1)-j}; q)_j * prod (1 - T q^y).

    Returns the sorted list of exponents; its length is m - i for every
    column j in the nonzero staircase part.  Raises if the cleared entry
    does not factor completely into such binomials.
    """
    if j >= 2 * (m - i + 1):
        raise DetidError("entry lies in the zero staircase")
    cleared = mppp_entry(m, i, j) * qpoch(RF_T * qpow(2 * m + 2), qpow(2), m - i)
    lead = qpoch(qpow(2 * (m - i + 1) - j), qpow(1), j)
    ratio = cleared / lead
    if not ratio.is_polynomial():
        raise DetidError("cleared entry is not polynomial")
    p = ratio.as_poly()
    ys: list[int] = []
    y = -2 * m - 2
    while p.degree("T") > 0 and y <= 4 * m + 2:
        quot = p.divexact(MPoly.constant(1) - MPoly.monomial(1, eq=y, et=1))
        if quot is None:
            y += 1
            continue
        ys.append(y)
        p = quot
    if p != MPoly.constant(1):
        raise DetidError("leftover non-binomial factor: %s" % p)
    return sorted(ys)


# -- the recursive triangulating construction ------------------------------

def alpha_sequence(n: int) -> list[RatFunc]:
    """The odd-position entries alpha_1, alpha_3, ..., alpha_{2n-1} of the
    fundamental solution vector (1, alpha_1, 0, alpha_3, 0, ...).

    Built by walking the staircase system upwards: the last equation is
    c_0 + (1-q) c_1 = 0; each earlier row brings in exactly one new
    unknown with coefficient (q; q)_{2t+1}.
    """
    alphas: list[RatFunc] = []
    c: dict[int, RatFunc] = {0: RF_ONE}
    for t in range(n):
        # row m - t of the T -> 0 staircase matrix, nonzero for j < 2t+2
        acc = RF_ZERO
        for jj, cj in c.items():
            acc = acc + qpoch(qpow(2 * (t + 1) - jj), qpow(1), jj) * cj
        new = -acc / qpoch(qpow(1), qpow(1), 2 * t + 1)
        alphas.append(new)
        c[2 * t + 1] = new
    return alphas


def solution_basis(m: int) -> QMatrix:
    """2m x m matrix whose k-th column is the fundamental vector shifted
    down by 2(k-1); its columns span the nullspace of the staircase
    system, independently of T."""
    alphas = alpha_sequence(m)
    c1 = [RF_ZERO] * (2 * m)
    c1[0] = RF_ONE
    for t, al in enumerate(alphas):
        c1[2 * t + 1] = al

    def entry(jj: int, k: int) -> RatFunc:
        shift = jj - 1 - 2 * (k - 1)
        return c1[shift] if shift >= 0 else RF_ZERO

    return QMatrix.build(2 * m, m, entry)


def _nullspace(rows: list[list[RatFunc]], ncols: int) -> list[list[RatFunc]]:
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        pr = next((r for r in range(top, len(mat))
                   if not mat[r][col].is_zero()), None)
        if pr is None:
            continue
        mat[top], mat[pr] = mat[pr], mat[top]
        inv = mat[top][col].inv()
        mat[top] = [e * inv for e in mat[top]]
        for r in range(len(mat)):
            if r != top and not mat[r][col].is_zero():
                f = mat[r][col]
                mat[r] = [u - f * v for u, v in zip(mat[r], mat[top])]
        pivots.append(col)
        top += 1
    basis = []
    for fc in (c for c in range(ncols) if c not in pivots):
        vec = [RF_ZERO] * ncols
        vec[fc] = RF_ONE
        for ri, pc in enumerate(pivots):
            vec[pc] = -mat[ri][fc]
        basis.append(vec)
    return basis


def starred_solution(a: AdmissibleSeq) -> list[RatFunc]:
    """T-free solution of the starred system for irreducible a.

    Returns (w_1, w_{a_1}, ..., w_{a_m}): the coordinates of a nullspace
    vector of the reversed staircase system supported on the columns of
    a* = (1, a_1, ..., a_m), normalized so that the a_1-coordinate is 1.
    """
    if not a.is_irreducible():
        raise DetidError("sequence must be irreducible")
    m = a.m
    star = (1,) + a.values
    support = {mppp_column_of_value(m, v) for v in star}
    basis = solution_basis(m)
    forbidden = [j for j in range(2 * m) if j not in support]
    rows = [[basis[j, k] for k in range(m)] for j in forbidden]
    lam = _nullspace(rows, m)
    if not lam:
        raise DetidError("no solution with the prescribed zeros")
    lam = lam[0]
    w = [RF_ZERO] * (2 * m)
    for k in range(m):
        if lam[k].is_zero():
            continue
        for j in range(2 * m):
            w[j] = w[j] + lam[k] * basis[j, k]
    pivot = w[mppp_column_of_value(m, a.values[0])]
    if pivot.is_zero():
        raise DetidError("vanishing leading coordinate")
    inv = pivot.inv()
    return [w[mppp_column_of_value(m, v)] * inv for v in star]


def triangulating_matrix(a: AdmissibleSeq) -> QMatrix:
    """Lower triangular unit-diagonal T-free f with m'(a) f upper triangular.

    Column k is the solution for the shifted tail sequence
    (a_k - 2(k-1), ..., a_m - 2(k-1)), which is again irreducible.
    """
    if not a.is_irreducible():
        raise DetidError("sequence must be irreducible")
    m = a.m
    cols: list[list[RatFunc]] = []
    for k in range(1, m + 1):
        tail = AdmissibleSeq(tuple(v - 2 * (k - 1) for v in a.values[k - 1:]))
        if tail.m == 1:
            sol = [RF_ONE]
        else:
            sol = starred_solution(tail)[1:]
        col = [RF_ZERO] * (k - 1) + sol
        cols.append(col)
    return QMatrix.build(m, m, lambda i, j: cols[j - 1][i - 1])


def _is_t_free(f: RatFunc) -> bool:
    if not f.depends_on("T"):
        return True
    # representation may hide a cancellation; compare f(T) with f(qT)
    return f == substitute(f, {"T": RF_T * qpow(1)})


def verify_triangulization(a: AdmissibleSeq) -> dict:
    """Check the triangulation and the resulting determinant evaluation.

    Returns a report dict with "ok" and, on failure, the offending
    entries.  Asserts: m'(a) f(a) upper triangular, T-free diagonal, and
    det(m'(a)) = product of the diagonal = det(s(a)).
    """
    f = triangulating_matrix(a)
    mp = matrix_mprime(a)
    prod = mp @ f
    failures: list[str] = []
    for i in range(a.m):
        for j in range(a.m):
            e = prod[i, j]
            if i > j and not e.is_zero():
                failures.append("nonzero below diagonal at (%d, %d): %s"
                                % (i + 1, j + 1, e.canonical()))
            if i == j and not _is_t_free(e):
                failures.append("diagonal entry %d depends on T: %s"
                                % (i + 1, e.canonical()))
    diag = RF_ONE
    for i in range(a.m):
        diag = diag * prod[i, i]
    det_mp = determinant(mp)
    det_s = determinant(matrix_s(a))
    if diag != det_mp:
        failures.append("diagonal product differs from det(m')")
    if det_mp != det_s:
        failures.append("det(m') differs from det(s)")
    return {
        "ok": not failures,
        "sequence": list(a.values),
        "failures": failures,
        "diagonal": [prod[i, i].canonical() for i in range(a.m)],
    }


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)
