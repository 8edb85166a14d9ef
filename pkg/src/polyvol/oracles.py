"""Independent checks: Ehrhart interpolation, direct Laurent series, point enumeration.

Nothing here shares code with the volume formulas it is meant to check,
apart from the lattice-point enumerator.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import EnumerationBudgetError, InadmissibleBetaError, PeriodError
from .linalg import Matrix, as_rat, inverse, primitive, rank
from .polytope import PolytopeStd, lattice_count, lattice_points, period

PARALLELEPIPED_CAP = 10**6


# -- Ehrhart interpolation ------------------------------------------------------


@dataclass(frozen=True)
class EhrhartFit:
    samples: tuple[tuple[int, int], ...]
    coefficients: tuple[Fraction, ...]  # c_0 .. c_d in the variable s
    period_used: int

    def __call__(self, s) -> Fraction:
        return sum((c * Fraction(s) ** k for k, c in enumerate(self.coefficients)), Fraction(0))

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1]


def _lagrange_coefficients(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Coefficients (low to high) of the interpolating polynomial."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            # multiply basis by (x - xs[j])
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += ys[i] * basis[k] / denom
    return coeffs


def ehrhart_fit(p: PolytopeStd, cap: int | None = None) -> EhrhartFit:
    """Fit L(s) on s = 0, pi, ..., d pi and check it at (d+1) pi and (d+2) pi.

    pi is the period from vertex denominators, so L restricted to multiples
    of pi is a genuine polynomial of degree d.
    """
    pi = period(p)
    d = p.d
    kw = {} if cap is None else {"cap": cap}
    samples = [(k * pi, lattice_count(p, k * pi, **kw)) for k in range(d + 3)]
    coeffs = _lagrange_coefficients([s for s, _ in samples[: d + 1]], [c for _, c in samples[: d + 1]])
    fit = EhrhartFit(tuple(samples), tuple(coeffs), pi)
    for s, c in samples[d + 1 :]:
        if fit(s) != c:
            raise PeriodError(f"quasi-polynomial period misdetected: fit gives {fit(s)} at s={s}, count is {c}")
    return fit


def ehrhart_volume(p: PolytopeStd, cap: int | None = None) -> Fraction:
    return ehrhart_fit(p, cap).leading


# -- constant term by Laurent series -----------------------------------------------


def _mul_truncated(a: dict[int, Fraction], b: dict[int, Fraction], top: int) -> dict[int, Fraction]:
    out: dict[int, Fraction] = defaultdict(Fraction)
    for i, x in a.items():
        for j, y in b.items():
            if i + j <= top:
                out[i + j] += x * y
    return {k: v for k, v in out.items() if v}


def series_ct_q(pairs: Sequence[tuple], r_max: int | None = None) -> Fraction:
    """q^0 coefficient of prod 1/(m - b q) expanded as a Laurent series at q = 0.

    A factor with m != 0 is the series sum_k b^k q^k / m^(k+1); a factor with
    m = 0 is the monomial -1/(b q).  Degrees above r_max (default: the
    number of m = 0 factors) can never come back down to 0 and are dropped.
    """
    pairs = [(as_rat(m), as_rat(b)) for m, b in pairs]
    if any(m == 0 and b == 0 for m, b in pairs):
        raise InadmissibleBetaError("factor with zero height and zero beta pairing")
    top = sum(1 for m, _ in pairs if m == 0) if r_max is None else r_max
    acc: dict[int, Fraction] = {0: Fraction(1)}
    for m, b in pairs:
        if m == 0:
            factor = {-1: -1 / b}
        else:
            factor = {k: b**k / m ** (k + 1) for k in range(top + 1)}
        acc = _mul_truncated(acc, factor, top)
    return acc.get(0, Fraction(0))


# -- fundamental parallelepiped --------------------------------------------------


def parallelepiped_points(generators: Matrix, cap: int = PARALLELEPIPED_CAP) -> list[tuple[int, ...]]:
    """Integer points of {sum k_i g_i : 0 <= k_i < 1} for independent columns g_i.

    Works in k independent coordinates: the points there lie in the box
    spanned by the projected parallelepiped; each candidate is lifted back by
    solving for the k_i and kept when all k_i are in [0, 1) and the lift is
    integral.
    """
    N, k = generators.shape
    if rank(generators) != k:
        raise ValueError("generators must be linearly independent")
    rows: list[int] = []
    for i in range(N):
        if rank(generators.submatrix(rows + [i], range(k))) == len(rows) + 1:
            rows.append(i)
        if len(rows) == k:
            break
    G = generators.submatrix(rows, range(k))
    Ginv = inverse(G)
    lo = [math.floor(sum(min(x, 0) for x in G.row(i))) for i in range(k)]
    hi = [math.ceil(sum(max(x, 0) for x in G.row(i))) for i in range(k)]
    size = math.prod(h - l + 1 for l, h in zip(lo, hi))
    if size > cap:
        raise EnumerationBudgetError(f"{size} candidates exceed the parallelepiped cap {cap}")
    out = []
    for y in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        coef = Ginv.apply(y)
        if any(c < 0 or c >= 1 for c in coef):
            continue
        x = generators.apply(coef)
        if all(v.denominator == 1 for v in x):
            out.append(tuple(int(v) for v in x))
    return sorted(out)


def parallelepiped_enumerate(generators: Matrix, cap: int = PARALLELEPIPED_CAP) -> int:
    return len(parallelepiped_points(generators, cap))


# -- weighted lattice identity for signed decompositions -------------------------


def _series_mul(a: dict[int, Fraction], b: dict[int, Fraction], top: int) -> dict[int, Fraction]:
    return _mul_truncated(a, b, top)


def _geometric(c: Fraction, step: int, top: int, low: int) -> dict[int, Fraction]:
    """1/(1 - c t^step), step > 0, truncated so that the product stays below top."""
    out = {}
    k = 0
    while k * step <= top - low:
        out[k * step] = c**k
        k += 1
    return out


def cone_height_series(cones, beta: Sequence[int], kappa: Fraction, top: int) -> dict[int, Fraction]:
    """Signed sum of cone generating functions under y_j -> kappa^beta_j, y_{n+1} -> t.

    Each simplicial cone contributes
        sum_{p in parallelepiped} x^p / prod (1 - x^g)
    over its primitive generators g.  A factor with negative t-degree is
    flipped, 1/(1 - X) = -X^{-1} / (1 - X^{-1}), so everything is a Laurent
    series in t.  Returns coefficients of t^k for k <= top.
    """
    kappa = Fraction(kappa)
    total: dict[int, Fraction] = defaultdict(Fraction)
    for c in cones:
        gens = [primitive(col) for col in c.generators.columns()]
        G = Matrix.from_columns(gens)
        points = parallelepiped_points(G)

        def weight(v):
            return kappa ** sum(b * x for b, x in zip(beta, v[:-1]))

        num: dict[int, Fraction] = defaultdict(Fraction)
        for pt in points:
            num[pt[-1]] += weight(pt)
        shift = 0
        scalar = Fraction(1)
        series_factors = []
        for g in gens:
            h, w = g[-1], weight(g)
            if h == 0:
                if w == 1:
                    raise InadmissibleBetaError("kappa^(beta.nu) = 1 on a height-zero generator")
                scalar /= 1 - w
            elif h > 0:
                series_factors.append((w, h))
            else:
                scalar *= -1 / w
                shift += -h
                series_factors.append((1 / w, -h))
        low = min(num) + shift
        acc = {k + shift: v * scalar for k, v in num.items()}
        for w, h in series_factors:
            acc = _series_mul(acc, _geometric(w, h, top, low), top)
        for k, v in acc.items():
            total[k] += c.sign * v
    return {k: v for k, v in total.items() if v}


def direct_height_series(p: PolytopeStd, beta: Sequence[int], kappa: Fraction, top: int) -> dict[int, Fraction]:
    """sum over lattice points a of sP of kappa^(beta.a), for s = 0..top."""
    kappa = Fraction(kappa)
    out = {}
    for s in range(top + 1):
        v = sum((kappa ** sum(b * x for b, x in zip(beta, a)) for a in lattice_points(p, s)), Fraction(0))
        if v:
            out[s] = v
    return out
