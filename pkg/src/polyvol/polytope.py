"""Polytope representations, coning and exact lattice-point enumeration."""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    DimensionError,
    EnumerationBudgetError,
    InvalidPolytopeError,
    NonSimpleError,
    PositiveVectorError,
    SingularMatrixError,
)
from .feasibility import nonnegative_solution, positive_solution
from .linalg import Matrix, as_rat, det, inverse, lcm_all, rank, solve

ENUMERATION_CAP = 10**7

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class PolytopeStd:
    """P = {a >= 0 : A a = b} with integral A (r x n) of rank r and dim n - r."""

    A: Matrix
    b: tuple[int, ...]

    def __post_init__(self):
        A = self.A if isinstance(self.A, Matrix) else Matrix(self.A)
        object.__setattr__(self, "A", A)
        if not A.is_integral():
            raise InvalidPolytopeError("A must be integral")
        b = tuple(as_rat(x) for x in self.b)
        if any(x.denominator != 1 for x in b):
            raise InvalidPolytopeError("b must be integral")
        object.__setattr__(self, "b", tuple(x.numerator for x in b))
        if len(self.b) != A.nrows:
            raise DimensionError(f"b has length {len(self.b)}, A has {A.nrows} rows")
        if rank(A) != A.nrows:
            raise InvalidPolytopeError(f"A must have full row rank {A.nrows}")
        if nonnegative_solution(list(A.rows), self.b) is None:
            raise InvalidPolytopeError("polytope is empty")
        # recession cone {a >= 0, A a = 0} must be trivial
        if nonnegative_solution(list(A.rows) + [[1] * A.ncols], [0] * A.nrows + [1]) is not None:
            raise InvalidPolytopeError("polytope is unbounded")
        if positive_solution(coned_matrix(A, self.b).rows) is None:
            raise InvalidPolytopeError(
                "no strictly positive point: dimension is below n - r "
                "(some coordinate vanishes on the whole polytope)"
            )

    @property
    def n(self) -> int:
        return self.A.ncols

    @property
    def r(self) -> int:
        return self.A.nrows

    @property
    def d(self) -> int:
        return self.n - self.r

    def dilate(self, s: int) -> PolytopeStd:
        return PolytopeStd(self.A, tuple(s * x for x in self.b))


@dataclass(frozen=True)
class PolytopeH:
    """Full-dimensional bounded {x in R^d : A x <= b}, rational data."""

    A: Matrix
    b: tuple[Fraction, ...]

    def __post_init__(self):
        A = self.A if isinstance(self.A, Matrix) else Matrix(self.A)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", tuple(as_rat(x) for x in self.b))
        if len(self.b) != A.nrows:
            raise DimensionError(f"b has length {len(self.b)}, A has {A.nrows} rows")
        if not _h_bounded(A):
            raise InvalidPolytopeError("H-representation is unbounded")
        if not _h_full_dimensional(A, self.b):
            raise InvalidPolytopeError(
                "H-representation is empty or not full-dimensional; "
                "reduce to the affine hull first"
            )

    @property
    def d(self) -> int:
        return self.A.ncols

    def dilate(self, s) -> PolytopeH:
        s = as_rat(s)
        return PolytopeH(self.A, tuple(s * x for x in self.b))

    def translate(self, t: Sequence) -> PolytopeH:
        shift = self.A.apply(t)
        return PolytopeH(self.A, tuple(x + y for x, y in zip(self.b, shift)))


@dataclass(frozen=True)
class PolytopeV:
    vertices: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple(tuple(as_rat(x) for x in v) for v in self.vertices)
        object.__setattr__(self, "vertices", pts)
        if not pts:
            raise InvalidPolytopeError("no vertices")
        dim = len(pts[0])
        if any(len(v) != dim for v in pts):
            raise DimensionError("vertices of mixed dimension")
        diffs = Matrix([[a - b for a, b in zip(v, pts[0])] for v in pts[1:]], ncols=dim)
        if rank(diffs) != dim:
            raise InvalidPolytopeError("vertices do not span a full-dimensional polytope")

    @property
    def d(self) -> int:
        return len(self.vertices[0])

    def dilate(self, s) -> PolytopeV:
        s = as_rat(s)
        return PolytopeV(tuple(tuple(s * x for x in v) for v in self.vertices))


@dataclass(frozen=True)
class ConedSystem:
    """cone(P) = {x in R^{n+1}_{>=0} : B x = 0} with B = (A | -b)."""

    B: Matrix
    n: int = field(init=False)
    r: int = field(init=False)

    def __post_init__(self):
        B = self.B if isinstance(self.B, Matrix) else Matrix(self.B)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "n", B.ncols - 1)
        object.__setattr__(self, "r", B.nrows)

    @property
    def d(self) -> int:
        return self.n - self.r


def coned_matrix(A: Matrix, b: Sequence[int]) -> Matrix:
    return Matrix([list(row) + [-as_rat(v)] for row, v in zip(A.rows, b)])


def _h_bounded(A: Matrix) -> bool:
    # {x : A x <= 0} = {0}  iff  rank A = d and A^T y = 0 has a solution y > 0
    if rank(A) != A.ncols:
        return False
    return positive_solution(A.T.rows) is not None


def _h_full_dimensional(A: Matrix, b: Sequence[Fraction]) -> bool:
    # exists (x, t, u), t > 0, u > 0 with A x + t 1 <= u b; homogeneous, so ask
    # for t, u >= 1.  Variables: x+ , x-, t', u', slacks, all >= 0.
    m, d = A.shape
    rows, rhs = [], []
    for i in range(m):
        a = list(A.row(i))
        slack = [Fraction(int(k == i)) for k in range(m)]
        rows.append(a + [-x for x in a] + [Fraction(1), -b[i]] + slack)
        rhs.append(b[i] - 1)  # move the constant parts of t = 1 + t', u = 1 + u'
    return nonnegative_solution(rows, rhs) is not None


# -- conversions --------------------------------------------------------------


def _is_nonnegativity_row(row: Sequence[Fraction], rhs: Fraction) -> bool:
    nz = [x for x in row if x != 0]
    return rhs == 0 and len(nz) == 1 and nz[0] < 0


def std_from_h(p: PolytopeH) -> PolytopeStd:
    """Slack-variable standard form of an H-polytope lying in the nonnegative orthant.

    Rows that merely restate x_i >= 0 are dropped; every other row gets a
    slack variable and is scaled to integers by the lcm of its denominators.
    The first d coordinates of the result project back onto p.
    """
    for v, _ in vertices_of_h(p):
        if any(x < 0 for x in v):
            raise InvalidPolytopeError(
                f"polytope leaves the nonnegative orthant at vertex {fmt_point(v)}; "
                "translate it first (PolytopeH.translate)"
            )
    kept = [i for i in range(p.A.nrows) if not _is_nonnegativity_row(p.A.row(i), p.b[i])]
    m = len(kept)
    rows, rhs = [], []
    for k, i in enumerate(kept):
        row = p.A.row(i)
        scale = lcm_all([x.denominator for x in row] + [p.b[i].denominator])
        rows.append([(x * scale).numerator for x in row] + [int(k == t) for t in range(m)])
        rhs.append((p.b[i] * scale).numerator)
    return PolytopeStd(Matrix(rows), tuple(rhs))


def h_from_v_2d(p: PolytopeV) -> PolytopeH:
    if p.d != 2:
        raise DimensionError("V to H conversion is only supported for polygons")
    pts = order_polygon(p.vertices)
    rows, rhs = [], []
    for a, b in zip(pts, pts[1:] + pts[:1]):
        normal = (b[1] - a[1], a[0] - b[0])  # outward for counter-clockwise order
        rows.append(normal)
        rhs.append(normal[0] * a[0] + normal[1] * a[1])
    return PolytopeH(Matrix(rows), tuple(rhs))


def order_polygon(points: Sequence[Point]) -> list[Point]:
    """Counter-clockwise order around the centroid, exact (no angles computed)."""
    k = len(points)
    cx = sum((p[0] for p in points), Fraction(0)) / k
    cy = sum((p[1] for p in points), Fraction(0)) / k

    def half(p):
        x, y = p[0] - cx, p[1] - cy
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    def cmp(p, q):
        hp, hq = half(p), half(q)
        if hp != hq:
            return hp - hq
        cross = (p[0] - cx) * (q[1] - cy) - (p[1] - cy) * (q[0] - cx)
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    return sorted(points, key=functools.cmp_to_key(cmp))


# -- coning ------------------------------------------------------------------


def cone_over(p: PolytopeStd) -> ConedSystem:
    c = ConedSystem(coned_matrix(p.A, p.b))
    if not positive_vector_exists(c):
        raise PositiveVectorError(
            "Simpcone precondition violated: cone(P) contains no positive vector"
        )
    return c


def positive_vector_exists(c: ConedSystem | Matrix) -> bool:
    B = c.B if isinstance(c, ConedSystem) else c
    return positive_solution(B.rows) is not None


# -- vertices ----------------------------------------------------------------


def fmt_point(v: Sequence[Fraction]) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def enumerate_basic_vertices(p: PolytopeStd) -> list[Point]:
    """All basic feasible solutions of A a = b, a >= 0, deduplicated and sorted."""
    found = set()
    for cols in itertools.combinations(range(p.n), p.r):
        sub = p.A.submatrix(range(p.r), cols)
        if det(sub) == 0:
            continue
        xb = solve(sub, p.b)
        if any(x < 0 for x in xb):
            continue
        full = [Fraction(0)] * p.n
        for c, x in zip(cols, xb):
            full[c] = x
        found.add(tuple(full))
    return sorted(found)


def vertices_of_h(p: PolytopeH) -> list[tuple[Point, frozenset[int]]]:
    """Vertices of an H-polytope with the set of row indices binding at each."""
    m, d = p.A.shape
    found = {}
    for rows in itertools.combinations(range(m), d):
        sub = p.A.submatrix(rows, range(d))
        try:
            v = solve(sub, [p.b[i] for i in rows])
        except SingularMatrixError:
            continue
        if v in found:
            continue
        vals = p.A.apply(v)
        if all(x <= y for x, y in zip(vals, p.b)):
            found[v] = frozenset(i for i in range(m) if vals[i] == p.b[i])
    return sorted(found.items())


def is_simple(p: PolytopeH) -> bool:
    return all(len(binding) == p.d for _, binding in vertices_of_h(p))


def require_simple(p: PolytopeH) -> list[tuple[Point, frozenset[int]]]:
    verts = vertices_of_h(p)
    for v, binding in verts:
        if len(binding) != p.d:
            raise NonSimpleError(
                f"non-simple vertex {fmt_point(v)}: {len(binding)} binding rows, expected {p.d}"
            )
    return verts


def period(p: PolytopeStd) -> int:
    """Least positive integer k such that kP is integral."""
    return lcm_all(x.denominator for v in enumerate_basic_vertices(p) for x in v)


# -- lattice points ----------------------------------------------------------


def lattice_points(p: PolytopeStd, s: int, cap: int = ENUMERATION_CAP):
    """Yield every integer a >= 0 with A a = s b.

    Enumerates the d non-basic coordinates of a fixed basis inside the box
    given by s times the vertex maxima, and solves for the basic ones.
    """
    if s < 0:
        raise ValueError("dilation factor must be nonnegative")
    if s == 0:
        yield (0,) * p.n
        return
    basic = _independent_columns(p.A)
    nonbasic = [j for j in range(p.n) if j not in basic]
    verts = enumerate_basic_vertices(p)
    bounds = [math.floor(s * max(v[j] for v in verts)) for j in nonbasic]
    total = math.prod(u + 1 for u in bounds)
    if total > cap:
        raise EnumerationBudgetError(f"{total} candidates exceed the enumeration cap {cap}")

    inv = inverse(p.A.submatrix(range(p.r), basic))
    den = lcm_all(x.denominator for row in inv.rows for x in row)
    adj = [[(x * den).numerator for x in row] for row in inv.rows]
    a_n = [[p.A[i, j].numerator for j in nonbasic] for i in range(p.r)]
    sb = [s * x.numerator for x in p.b]

    for xs in itertools.product(*(range(u + 1) for u in bounds)):
        rhs = [sb[i] - sum(c * x for c, x in zip(a_n[i], xs)) for i in range(p.r)]
        xb = []
        for row in adj:
            num = sum(c * x for c, x in zip(row, rhs))
            if num < 0 or num % den:
                break
            xb.append(num // den)
        else:
            pt = [0] * p.n
            for j, x in zip(nonbasic, xs):
                pt[j] = x
            for j, x in zip(basic, xb):
                pt[j] = x
            yield tuple(pt)


def lattice_count(p: PolytopeStd, s: int, cap: int = ENUMERATION_CAP) -> int:
    """#{a in Z^n_{>=0} : A a = s b}."""
    return sum(1 for _ in lattice_points(p, s, cap))


def _independent_columns(A: Matrix) -> list[int]:
    chosen: list[int] = []
    for j in range(A.ncols):
        trial = chosen + [j]
        if rank(A.submatrix(range(A.nrows), trial)) == len(trial):
            chosen = trial
        if len(chosen) == A.nrows:
            break
    return chosen
