"""Matrices over RatFunc, exact determinants, and the factorization theorems.

The Lindstrom-Gessel-Viennot determinant expresses the generating
function of nonintersecting path families; ``family_gf_brute`` is the
independent oracle that enumerates the families outright.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .exactalg import RatFunc, RF_ONE, RF_ZERO, qpoch, qpow
from .paths import LatticePoint, WeightMode, gfone, label_weight, shift_quotient


class LgvError(Exception):
    pass


class QMatrix:
    """Dense matrix over RatFunc."""

    def __init__(self, rows: int, cols: int, entries: Sequence[RatFunc] | None = None):
        if rows <= 0 or cols <= 0:
            raise LgvError("matrix dimensions must be positive")
        self.rows = rows
        self.cols = cols
        if entries is None:
            self.entries = [RF_ZERO] * (rows * cols)
        else:
            entries = list(entries)
            if len(entries) != rows * cols:
                raise LgvError("entry count does not match dimensions")
            self.entries = entries

    @staticmethod
    def build(rows: int, cols: int, fn: Callable[[int, int], RatFunc]) -> "QMatrix":
        """Entries from fn(i, j) with 1-based i, j."""
        return QMatrix(rows, cols,
                       [fn(i + 1, j + 1) for i in range(rows) for j in range(cols)])

    @staticmethod
    def identity(n: int) -> "QMatrix":
        m = QMatrix(n, n)
        for i in range(n):
            m[i, i] = RF_ONE
        return m

    def __getitem__(self, ij: tuple[int, int]) -> RatFunc:
        i, j = ij
        return self.entries[i * self.cols + j]

    def __setitem__(self, ij: tuple[int, int], v: RatFunc):
        i, j = ij
        self.entries[i * self.cols + j] = v

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise LgvError("dimension mismatch in matrix product")
        out = QMatrix(self.rows, other.cols)
        for i in range(self.rows):
            for j in range(other.cols):
                s = RF_ZERO
                for k in range(self.cols):
                    a = self[i, k]
                    b = other[k, j]
                    if not (a.is_zero() or b.is_zero()):
                        s = s + a * b
                out[i, j] = s
        return out

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "QMatrix":
        return QMatrix(len(row_idx), len(col_idx),
                       [self[i, j] for i in row_idx for j in col_idx])

    def map(self, fn: Callable[[RatFunc], RatFunc]) -> "QMatrix":
        return QMatrix(self.rows, self.cols, [fn(e) for e in self.entries])

    def __str__(self):
        lines = []
        for i in range(self.rows):
            lines.append("[" + ", ".join(str(self[i, j]) for j in range(self.cols)) + "]")
        return "\n".join(lines)


_COFACTOR_LIMIT = 6


def determinant(m: QMatrix) -> RatFunc:
    """Exact determinant.

    Cofactor expansion with zero pruning (memoized over column subsets)
    up to 6x6; exact division-based Gaussian elimination above.  Both
    strategies agree; the cofactor route avoids rational-function
    division on the sparse staircase matrices that dominate here.
    """
    if m.rows != m.cols:
        raise LgvError("determinant of a non-square matrix")
    if m.rows <= _COFACTOR_LIMIT:
        return _det_cofactor(m)
    return _det_elimination(m)


def _det_cofactor(m: QMatrix) -> RatFunc:
    n = m.rows
    memo: dict[int, RatFunc] = {}

    def minor(cols_mask: int, row: int) -> RatFunc:
        if row == n:
            return RF_ONE
        hit = memo.get(cols_mask)
        if hit is not None:
            return hit
        total = RF_ZERO
        sign = 1
        for j in range(n):
            bit = 1 << j
            if not cols_mask & bit:
                continue
            e = m[row, j]
            if not e.is_zero():
                sub = minor(cols_mask & ~bit, row + 1)
                if not sub.is_zero():
                    term = e * sub
                    total = total + (term if sign > 0 else -term)
            sign = -sign
        memo[cols_mask] = total
        return total

    return minor((1 << n) - 1, 0)


def _det_elimination(m: QMatrix) -> RatFunc:
    n = m.rows
    a = [[m[i, j] for j in range(n)] for i in range(n)]
    det = RF_ONE
    sign = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if pivot is None:
            return RF_ZERO
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        p = a[col][col]
        det = det * p
        inv = p.inv()
        for r in range(col + 1, n):
            f = a[r][col]
            if f.is_zero():
                continue
            f = f * inv
            for c in range(col + 1, n):
                if not a[col][c].is_zero():
                    a[r][c] = a[r][c] - f * a[col][c]
            a[r][col] = RF_ZERO
    return det if sign > 0 else -det


def determinant_fraction(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Plain rational determinant, used as the evaluation-homomorphism oracle."""
    n = len(rows)
    a = [list(map(Fraction, r)) for r in rows]
    det = Fraction(1)
    sign = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det * sign


def _check_increasing(t: Sequence[int], name: str):
    if any(t[i] >= t[i + 1] for i in range(len(t) - 1)):
        raise LgvError("%s must be strictly increasing: %r" % (name, tuple(t)))


def lgv_matrix_half(a: Sequence[int], c: Sequence[int]) -> QMatrix:
    """Matrix (gfone(a_i, c_j)) for the half-hexagon path families."""
    if len(a) != len(c):
        raise LgvError("start and end tuples must have equal length")
    _check_increasing(a, "a")
    _check_increasing(c, "c")
    return QMatrix.build(len(a), len(a), lambda i, j: gfone(a[i - 1], c[j - 1]))


@dataclass(frozen=True)
class PathEndpoints:
    """Ordered endpoint lists for a nonintersecting family."""
    starts: tuple[LatticePoint, ...]
    ends: tuple[LatticePoint, ...]

    def __post_init__(self):
        if len(self.starts) != len(self.ends):
            raise LgvError("starts and ends must have equal length")
        for seq, name in ((self.starts, "starts"), (self.ends, "ends")):
            if any(seq[i] >= seq[i + 1] for i in range(len(seq) - 1)):
                raise LgvError("%s must be strictly increasing" % name)

    @property
    def count(self) -> int:
        return len(self.starts)


def half_endpoints(a: Sequence[int], c: Sequence[int]) -> PathEndpoints:
    return PathEndpoints(tuple(LatticePoint(x, x) for x in a),
                         tuple(LatticePoint(x, 0) for x in c))


_FAMILY_STEP_LIMIT = 60


def _single_paths(start: LatticePoint, end: LatticePoint) -> Iterator[tuple[LatticePoint, ...]]:
    """All right/down paths start -> end, as vertex tuples."""
    if end.x < start.x or end.y > start.y:
        return
    if start == end:
        yield (start,)
        return
    if end.x > start.x:
        for rest in _single_paths(LatticePoint(start.x + 1, start.y), end):
            yield (start,) + rest
    if end.y < start.y:
        for rest in _single_paths(LatticePoint(start.x, start.y - 1), end):
            yield (start,) + rest


def _path_weight(path: tuple[LatticePoint, ...], mode: WeightMode) -> RatFunc:
    w = RF_ONE
    for p, r in zip(path, path[1:]):
        if r.x == p.x + 1:
            w = w * label_weight(p.x - 2 * p.y, mode)
    return w


def family_gf_brute(e: PathEndpoints, mode: WeightMode = WeightMode.GENERAL_XY) -> RatFunc:
    """Sum of weights over all vertex-disjoint families start_i -> end_i.

    Pure enumeration (the LGV oracle); connection is the identity
    permutation.  Raises on desk-scale overflow.
    """
    total_steps = sum((e.ends[i].x - e.starts[i].x) + (e.starts[i].y - e.ends[i].y)
                      for i in range(e.count))
    if total_steps > _FAMILY_STEP_LIMIT:
        raise LgvError("family enumeration limit exceeded (%d steps)" % total_steps)

    def rec(i: int, used: frozenset[LatticePoint]) -> RatFunc:
        if i == e.count:
            return RF_ONE
        total = RF_ZERO
        for path in _single_paths(e.starts[i], e.ends[i]):
            verts = set(path)
            if verts & used:
                continue
            rest = rec(i + 1, used | verts)
            if not rest.is_zero():
                total = total + _path_weight(path, mode) * rest
        return total

    return rec(0, frozenset())


def enumerate_families(e: PathEndpoints) -> Iterator[tuple[tuple[LatticePoint, ...], ...]]:
    """Yield every vertex-disjoint family (identity connection)."""
    def rec(i: int, used: frozenset[LatticePoint], acc):
        if i == e.count:
            yield tuple(acc)
            return
        for path in _single_paths(e.starts[i], e.ends[i]):
            verts = set(path)
            if verts & used:
                continue
            yield from rec(i + 1, used | verts, acc + [path])
    yield from rec(0, frozenset(), [])


def family_weight(family, mode: WeightMode) -> RatFunc:
    w = RF_ONE
    for path in family:
        w = w * _path_weight(path, mode)
    return w


def half_quotient_check(a: Sequence[int], c: Sequence[int], d: int) -> tuple[RatFunc, RatFunc]:
    """Both sides of the width-shift factorization for the half hexagon.

    lhs = det(gfone(a_i+d, c_j+d)) / det(gfone(a_i, c_j)); rhs is the
    X/Y-free product of q-Pochhammer quotients.  The caller asserts
    lhs == rhs; returning both sides lets the CLI print a diff
    certificate on failure.
    """
    if d < 0:
        raise LgvError("shift must be nonnegative")
    base = determinant(lgv_matrix_half(a, c))
    if base.is_zero():
        raise LgvError("unshifted determinant is zero")
    shifted = determinant(lgv_matrix_half([x + d for x in a], [x + d for x in c]))
    lhs = shifted / base
    rhs = RF_ONE
    for m in range(len(a)):
        rhs = rhs * shift_quotient(a[m], c[m], d)
    return lhs, rhs


def quarter_endpoints(m: int, x: int, a: Sequence[int]) -> PathEndpoints:
    """Endpoints for the odd quarter-hexagon family: starts (2(x+i-1)+1, x+i-1)."""
    if len(a) != m:
        raise LgvError("sequence length must equal m")
    starts = tuple(LatticePoint(2 * (x + i - 1) + 1, x + i - 1) for i in range(1, m + 1))
    ends = tuple(LatticePoint(2 * x + aj, 0) for aj in a)
    return PathEndpoints(starts, ends)


def quarter_family_gf(m: int, x: int, a: Sequence[int]) -> RatFunc:
    """Closed determinant form for the odd quarter-hexagon families.

    Prefactor times det([a_j >= 2i-1] * (q^{4i+4x}; q^4)_{a_j+1-2i}
    / (q^2; q^2)_{a_j+1-2i}); the Iverson bracket kills entries whose
    path would end left of its start.
    """
    if len(a) != m or m <= 0:
        raise LgvError("need an increasing sequence of length m")
    _check_increasing(a, "a")
    if any(aj < 0 for aj in a):
        raise LgvError("sequence entries must be nonnegative")
    s = sum(a)
    exp_half = sum(aj - aj * aj for aj in a)
    assert exp_half % 2 == 0
    e = exp_half // 2 + (4 * m ** 3 - 3 * m ** 2 - m) // 6
    from .paths import _pow2
    pre = RatFunc.from_scalar(_pow2(m * m - s)) * qpow(e) * qpow(2 * x) ** (m * m - s)

    def entry(i: int, j: int) -> RatFunc:
        n = a[j - 1] + 1 - 2 * i
        if a[j - 1] < 2 * i - 1:
            return RF_ZERO
        return qpoch(qpow(4 * i + 4 * x), qpow(4), n) / qpoch(qpow(2), qpow(2), n)

    return pre * determinant(QMatrix.build(m, m, entry))
