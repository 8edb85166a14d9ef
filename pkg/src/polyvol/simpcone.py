"""Signed simplicial cone decomposition by pivot column elimination.

The cone K = {x >= 0 : B x = 0} (B is r x N) is encoded by the stacked
matrix M = [E_N; B].  Eliminating constraint rows one at a time, keeping
either the contributing or the dually contributing columns of the chosen
row, yields a signed sum of simplicial cones whose generators are the
surviving columns restricted to the top N rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from .errors import DegenerateInputError, DimensionError, PositiveVectorError, RankDeficientError
from .feasibility import positive_solution
from .linalg import Matrix, det, gram_det_sq, inverse, rank, snf


def _sgn(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class ElimState:
    """One term of the running decomposition.

    ``M`` is (N + r) x N.  ``ignored_rows`` indexes constraint rows (0-based,
    i.e. row N + i of M) and ``ignored_cols`` indexes columns of M.
    """

    M: Matrix
    ignored_rows: frozenset[int] = frozenset()
    ignored_cols: frozenset[int] = frozenset()
    sign: int = 1
    pivot_product: Fraction = Fraction(1)

    @property
    def ncols(self) -> int:
        return self.M.ncols

    @property
    def nconstraints(self) -> int:
        return self.M.nrows - self.M.ncols

    def constraint_row(self, i: int) -> tuple[Fraction, ...]:
        return self.M.row(self.ncols + i)

    def live_rows(self) -> list[int]:
        """Row indices of M that are not ignored, top to bottom."""
        top = list(range(self.ncols))
        return top + [self.ncols + k for k in range(self.nconstraints) if k not in self.ignored_rows]

    def live_cols(self) -> list[int]:
        return [j for j in range(self.ncols) if j not in self.ignored_cols]


@dataclass(frozen=True)
class SignedCone:
    sign: int
    generators: Matrix
    pivot_product: Fraction | None = None
    ignored_cols: tuple[int, ...] = ()

    @property
    def dim(self) -> int:
        """Number of generators."""
        return self.generators.ncols

    @property
    def heights(self) -> tuple[Fraction, ...]:
        return self.generators.row(self.generators.nrows - 1)


@dataclass(frozen=True)
class Decomposition:
    cones: tuple[SignedCone, ...]
    invariant_factor_product: int
    n: int
    r: int
    B: Matrix | None = field(default=None, compare=False)

    @property
    def d(self) -> int:
        return self.n - self.r

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "invariant_factor_product": self.invariant_factor_product,
            "cones": [
                {
                    "sign": c.sign,
                    "pivot_product": None if c.pivot_product is None else str(c.pivot_product),
                    "ignored_cols": list(c.ignored_cols),
                    "generators": [[str(x) for x in row] for row in c.generators.rows],
                }
                for c in self.cones
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> Decomposition:
        cones = []
        for c in data["cones"]:
            pp = c.get("pivot_product")
            cones.append(
                SignedCone(
                    sign=int(c["sign"]),
                    generators=Matrix(c["generators"]),
                    pivot_product=None if pp is None else Fraction(pp),
                    ignored_cols=tuple(c.get("ignored_cols", ())),
                )
            )
        return cls(tuple(cones), int(data["invariant_factor_product"]), int(data["n"]), int(data["r"]))


def init_state(B: Matrix) -> ElimState:
    """M = [E_N; B] with nothing ignored, sign +1 and pivot product 1."""
    B = B if isinstance(B, Matrix) else Matrix(B)
    return ElimState(Matrix.identity(B.ncols).vstack(B))


def pivot_eliminate(st: ElimState, i: int, j: int) -> ElimState:
    """Column elimination with pivot at constraint row i, column j."""
    if i in st.ignored_rows or j in st.ignored_cols:
        raise ValueError(f"row {i} or column {j} already ignored")
    N = st.ncols
    piv = st.M[N + i, j]
    if piv == 0:
        raise ZeroDivisionError(f"zero pivot at constraint row {i}, column {j}")
    cols = st.M.columns()
    pivot_col = cols[j]
    for k in st.live_cols():
        if k == j:
            continue
        f = cols[k][N + i] / piv
        if f:
            cols[k] = tuple(a - f * b for a, b in zip(cols[k], pivot_col))
    return ElimState(
        Matrix.from_columns(cols),
        st.ignored_rows | {i},
        st.ignored_cols | {j},
        st.sign,
        st.pivot_product * piv,
    )


def classify_columns(st: ElimState, i: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Split the live columns with a nonzero entry in constraint row i.

    Column j with entry m is contributing when the first nonzero entry of
    m * (column j on live rows) is positive, and dually contributing
    otherwise.  Returned signs are sgn(m) and -sgn(m) respectively.
    """
    if i in st.ignored_rows:
        raise ValueError(f"constraint row {i} already ignored")
    N = st.ncols
    live = st.live_rows()
    contributing, dual = [], []
    for j in st.live_cols():
        m = st.M[N + i, j]
        if m == 0:
            continue
        first = next((st.M[k, j] for k in live if st.M[k, j] != 0), None)
        if first is None:
            raise DegenerateInputError(f"column {j} vanishes on every live row")
        if m * first > 0:
            contributing.append((j, _sgn(m)))
        else:
            dual.append((j, -_sgn(m)))
    return contributing, dual


def ct_row(st: ElimState, i: int) -> list[ElimState]:
    """Constant-term extraction in constraint row i.

    Uses the contributing columns when there are strictly fewer of them;
    on a tie the dually contributing side is used.
    """
    contributing, dual = classify_columns(st, i)
    chosen = contributing if len(contributing) < len(dual) else dual
    out = []
    for j, s in chosen:
        new = pivot_eliminate(st, i, j)
        out.append(ElimState(new.M, new.ignored_rows, new.ignored_cols, st.sign * s, new.pivot_product))
    return out


def choose_row(st: ElimState, order: Literal["first", "last"] = "first") -> int:
    """Live constraint row minimising min(#contributing, #dual)."""
    rows = [k for k in range(st.nconstraints) if k not in st.ignored_rows]
    if order == "last":
        rows.reverse()
    best, best_val = None, None
    for k in rows:
        c, dl = classify_columns(st, k)
        val = min(len(c), len(dl))
        if best_val is None or val < best_val:
            best, best_val = k, val
    return best


def _same_live_part(a: ElimState, b: ElimState) -> bool:
    cols = a.live_cols()
    return all(a.M.col(j) == b.M.col(j) for j in cols)


def simpcone(B: Matrix, row_order: Literal["first", "last"] = "first") -> Decomposition:
    """Signed simplicial cone decomposition of {x >= 0 : B x = 0}.

    ``row_order`` only changes how ties between equally cheap constraint
    rows are broken; every choice gives a valid decomposition.
    """
    B = B if isinstance(B, Matrix) else Matrix(B)
    if not B.is_integral():
        raise DimensionError("B must be an integer matrix")
    r, N = B.shape
    if rank(B) != r:
        raise RankDeficientError(f"B must have full row rank {r}")
    if positive_solution(B.rows) is None:
        raise PositiveVectorError("Simpcone precondition violated: cone contains no positive vector")

    states: dict[tuple[frozenset, frozenset], ElimState] = {
        (frozenset(), frozenset()): init_state(B)
    }
    for _ in range(r):
        collected: dict[tuple[frozenset, frozenset], ElimState] = {}
        for st in states.values():
            k0 = choose_row(st, row_order)
            for new in ct_row(st, k0):
                key = (new.ignored_rows, new.ignored_cols)
                old = collected.get(key)
                if old is None:
                    collected[key] = new
                    continue
                # pivot order does not matter for the live columns
                assert _same_live_part(old, new), "collected terms disagree"
                collected[key] = ElimState(
                    old.M, old.ignored_rows, old.ignored_cols, old.sign + new.sign, old.pivot_product
                )
        states = {k: v for k, v in collected.items() if v.sign != 0}

    cones = []
    for key in sorted(states, key=lambda k: sorted(k[1])):
        st = states[key]
        live = st.live_cols()
        gens = st.M.submatrix(range(N), live)
        cones.append(SignedCone(st.sign, gens, st.pivot_product, tuple(sorted(st.ignored_cols))))
    return Decomposition(tuple(cones), snf(B).factor_product, N - 1, r, B)


def invariant_sq(M: Matrix, r: int) -> Fraction:
    """Square of Det(B1) * Det(C2 - C1 B1^{-1} B2) for M = [C1 C2; B1 B2].

    C is the top square block, B1 the leading r x r block of the bottom r
    rows.  The square is returned because the Gram-type Det is in general
    irrational while its square is exact.
    """
    N = M.ncols
    if M.nrows != N + r:
        raise DimensionError(f"expected {N + r} rows, got {M.nrows}")
    C = M.submatrix(range(N), range(N))
    if det(C) == 0:
        raise ValueError("top block is singular")
    B1 = M.submatrix(range(N, N + r), range(r))
    B2 = M.submatrix(range(N, N + r), range(r, N))
    d1 = det(B1)
    if d1 == 0:
        raise ValueError("leading bottom block B1 is singular")
    C1 = M.submatrix(range(N), range(r))
    C2 = M.submatrix(range(N), range(r, N))
    X = C2 - C1 @ inverse(B1) @ B2
    return d1 * d1 * gram_det_sq(X)


def invariant_I(M: Matrix, r: int) -> Fraction:
    """|Det(B1)| * Det(C2 - C1 B1^{-1} B2) when that number is rational.

    Raises ArithmeticError when the value is an irrational square root; use
    invariant_sq for an always-exact answer.
    """
    sq = invariant_sq(M, r)
    num, den = sq.numerator, sq.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise ArithmeticError(f"invariant is the irrational square root of {sq}")
    return Fraction(rn, rd)


def gcd_of_maximal_minors(B: Matrix) -> int:
    """Brute-force gcd of all r x r minors; oracle for the invariant factor product."""
    from itertools import combinations

    r, N = B.shape
    g = 0
    for cols in combinations(range(N), r):
        g = math.gcd(g, int(det(B.submatrix(range(r), cols))))
    return g


__all__ = [
    "ElimState",
    "SignedCone",
    "Decomposition",
    "init_state",
    "pivot_eliminate",
    "classify_columns",
    "ct_row",
    "choose_row",
    "simpcone",
    "invariant_sq",
    "invariant_I",
    "gcd_of_maximal_minors",
]
