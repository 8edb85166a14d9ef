"""Exact rational and integer linear algebra.

Everything here works over ``fractions.Fraction``; no floating point is
ever involved.  Matrices are small, dense and immutable.  Indices are
0-based throughout the code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError, RankDeficientError, SingularMatrixError

Rat = Fraction


def as_rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused so that inexact values never sneak in.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError(f"refusing inexact float {x!r}; pass a Fraction or 'p/q' string")
    return Fraction(x)


def lcm_all(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out


class Matrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(as_rat(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionError("ragged rows")
            if ncols is not None and ncols != width:
                raise DimensionError("column count mismatch")
        else:
            width = ncols or 0
        self._rows = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> Matrix:
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> Matrix:
        if not cols:
            return cls([[] for _ in range(nrows or 0)], ncols=0)
        return cls(zip(*cols))

    @classmethod
    def diag(cls, values: Sequence) -> Matrix:
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.col(j) for j in range(self.ncols)]

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self._rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    @property
    def T(self) -> Matrix:
        return Matrix(zip(*self._rows), ncols=self.nrows) if self.nrows else Matrix.zeros(self.ncols, 0)

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], ncols=self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {other.shape} from {self.shape}")
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], ncols=self.ncols)

    def __neg__(self) -> Matrix:
        return Matrix([[-a for a in r] for r in self._rows], ncols=self.ncols)

    def scale(self, c) -> Matrix:
        c = as_rat(c)
        return Matrix([[c * a for a in r] for r in self._rows], ncols=self.ncols)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        return Matrix(
            [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self._rows],
            ncols=other.ncols,
        )

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} against {self.shape}")
        v = [as_rat(x) for x in v]
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self._rows)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> Matrix:
        cols = list(cols)
        return Matrix([[self._rows[i][j] for j in cols] for i in rows], ncols=len(cols))

    def hstack(self, other: Matrix) -> Matrix:
        if self.nrows != other.nrows:
            raise DimensionError("hstack needs equal row counts")
        return Matrix([r + s for r, s in zip(self._rows, other._rows)], ncols=self.ncols + other.ncols)

    def vstack(self, other: Matrix) -> Matrix:
        if self.ncols != other.ncols:
            raise DimensionError("vstack needs equal column counts")
        return Matrix(self._rows + other._rows, ncols=self.ncols)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self._rows for x in r)

    def to_int_rows(self) -> list[list[int]]:
        if not self.is_integral():
            raise ValueError("matrix has non-integral entries")
        return [[x.numerator for x in r] for r in self._rows]

    def is_square(self) -> bool:
        return self.nrows == self.ncols


def _scaled_integer_rows(m: Matrix) -> tuple[list[list[int]], int]:
    """Clear denominators row by row; return integer rows and the product of scales."""
    out = []
    scale = 1
    for r in m.rows:
        s = lcm_all(x.denominator for x in r)
        out.append([(x * s).numerator for x in r])
        scale *= s
    return out, scale


def _bareiss(a: list[list[int]]) -> tuple[int, int]:
    """Fraction-free elimination in place.

    Returns (rank, signed determinant of the leading block when square and
    full rank, else 0).
    """
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    sign = 1
    prev = 1
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((i for i in range(rank, nrows) if a[i][col] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            a[rank], a[piv] = a[piv], a[rank]
            sign = -sign
        p = a[rank][col]
        for i in range(rank + 1, nrows):
            for j in range(col + 1, ncols):
                a[i][j] = (a[i][j] * p - a[i][col] * a[rank][j]) // prev
            a[i][col] = 0
        prev = p
        rank += 1
    det = sign * prev if rank == nrows == ncols else 0
    return rank, det


def rank(m: Matrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    rows, _ = _scaled_integer_rows(m)
    return _bareiss(rows)[0]


def det(m: Matrix) -> Fraction:
    """Exact determinant via Bareiss on the row-scaled integer matrix."""
    if not m.is_square():
        raise DimensionError(f"determinant of non-square {m.shape} matrix")
    if m.nrows == 0:
        return Fraction(1)
    rows, scale = _scaled_integer_rows(m)
    _, d = _bareiss(rows)
    return Fraction(d, scale)


def gram_det_sq(m: Matrix) -> Fraction:
    """det(m^T m): the square of the Gram volume of the columns of m.

    Zero signals linearly dependent columns; callers decide whether that is
    an error.
    """
    if m.ncols == 0:
        return Fraction(1)
    return det(m.T @ m)


def solve(a: Matrix, rhs: Sequence) -> tuple[Fraction, ...]:
    """Solve a x = rhs for square nonsingular a by Gauss-Jordan elimination."""
    if not a.is_square():
        raise DimensionError("solve needs a square matrix")
    if len(rhs) != a.nrows:
        raise DimensionError("right-hand side length mismatch")
    n = a.nrows
    aug = [list(r) + [as_rat(v)] for r, v in zip(a.rows, rhs)]
    _gauss_jordan(aug, n)
    return tuple(aug[i][n] for i in range(n))


def inverse(a: Matrix) -> Matrix:
    if not a.is_square():
        raise DimensionError("inverse needs a square matrix")
    n = a.nrows
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a.rows)]
    _gauss_jordan(aug, n)
    return Matrix([row[n:] for row in aug], ncols=n)


def _gauss_jordan(aug: list[list[Fraction]], n: int) -> None:
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]


def nullspace(m: Matrix) -> list[tuple[Fraction, ...]]:
    """Rational basis of {x : m x = 0} from the reduced row echelon form."""
    ncols = m.ncols
    rows = [list(r) for r in m.rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][f]
        basis.append(tuple(v))
    return basis


def primitive(v: Sequence) -> tuple[int, ...]:
    """The primitive integer vector on the ray through a nonzero rational v."""
    v = [as_rat(x) for x in v]
    if all(x == 0 for x in v):
        raise ValueError("zero vector has no primitive representative")
    s = lcm_all(x.denominator for x in v)
    ints = [(x * s).numerator for x in v]
    g = math.gcd(*ints)
    return tuple(x // g for x in ints)


# -- Smith normal form -------------------------------------------------------


@dataclass(frozen=True)
class SnfResult:
    U: Matrix
    S: Matrix
    V: Matrix
    invariant_factors: tuple[int, ...]

    @property
    def factor_product(self) -> int:
        return math.prod(self.invariant_factors)


def _smallest_nonzero(a, t, nrows, ncols):
    best = None
    for i in range(t, nrows):
        for j in range(t, ncols):
            x = a[i][j]
            if x != 0 and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
    return best


def snf(b: Matrix) -> SnfResult:
    """Smith normal form U b V = (diag(d_1..d_r), 0) of a full-row-rank integer matrix.

    Pivot: smallest absolute nonzero entry of the remaining block, ties broken
    by (row, col) order, which makes the output deterministic.
    """
    a = b.to_int_rows()
    nrows, ncols = b.shape
    U = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in a:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    factors = []
    for t in range(nrows):
        while True:
            best = _smallest_nonzero(a, t, nrows, ncols)
            if best is None:
                raise RankDeficientError(f"matrix has rank {t} < {nrows} rows")
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = a[t][t]
            for i in range(t + 1, nrows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, ncols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            if any(a[i][t] for i in range(t + 1, nrows)) or any(a[t][j] for j in range(t + 1, ncols)):
                continue
            bad = next(
                (i for i in range(t + 1, nrows) for j in range(t + 1, ncols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        factors.append(a[t][t])
    return SnfResult(Matrix(U), Matrix(a), Matrix(V), tuple(factors))


def lattice_basis_nullspace(b: Matrix) -> Matrix:
    """Z-basis of {x in Z^c : b x = 0}, as the columns of the returned matrix.

    These are the trailing columns of V in U b V = (D, 0).
    """
    res = snf(b)
    r = b.nrows
    return res.V.submatrix(range(b.ncols), range(r, b.ncols))


def span_lattice_basis(m: Matrix) -> Matrix:
    """Z-basis of span(columns of m) intersected with Z^n."""
    n = m.nrows
    if rank(m) == n:
        return Matrix.identity(n)
    # integer rows spanning the orthogonal complement of the column span
    normals = [primitive(v) for v in nullspace(m.T)]
    return lattice_basis_nullspace(Matrix(normals))
