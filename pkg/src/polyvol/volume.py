"""Volume formulas built on the constant-term evaluation of simplicial cones.

Every cone term reduces to

    CT_q 1 / prod_k (m_k - b_k q),

where m_k is the height (last coordinate) of generator k and b_k is the
pairing of a fixed integer vector beta with the remaining coordinates.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import (
    DegenerateInputError,
    DimensionError,
    InadmissibleBetaError,
    InvalidPolytopeError,
)
from .linalg import Matrix, as_rat, det, gram_det_sq, inverse, primitive
from .polytope import PolytopeH, PolytopeStd, cone_over, fmt_point, require_simple
from .simpcone import Decomposition, SignedCone, simpcone

Pair = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class VolTerm:
    numerator_value: Fraction
    pairs: tuple[Pair, ...]
    d: int


@dataclass(frozen=True)
class VolumeResult:
    value: Fraction
    method: str
    beta: tuple[int, ...] | None
    cone_count: int
    decomposition: Decomposition | None = None


# -- constant terms ----------------------------------------------------------


def ct_q(pairs: Iterable[Pair]) -> Fraction:
    """CT_q of 1 / prod (m - b q) for the Laurent expansion about q = 0.

    With z zero heights, this is prod_{m=0} (-b)^{-1} times the coefficient
    of q^z in prod_{m!=0} 1/(m - b q).  That coefficient is built by
    multiplying truncated geometric series one factor at a time.
    """
    pairs = [(as_rat(m), as_rat(b)) for m, b in pairs]
    zeros = [b for m, b in pairs if m == 0]
    if any(b == 0 for b in zeros):
        raise InadmissibleBetaError("factor with zero height and zero beta pairing")
    z = len(zeros)
    coeffs = [Fraction(1)] + [Fraction(0)] * z
    scale = Fraction(1)
    for m, b in pairs:
        if m == 0:
            scale /= -b
            continue
        scale /= m
        x = b / m
        # multiply by 1/(1 - x q), truncated at degree z
        for k in range(1, z + 1):
            coeffs[k] += x * coeffs[k - 1]
    return scale * coeffs[z]


def vol_term(t: VolTerm) -> Fraction:
    if len(t.pairs) < t.d + 1:
        return Fraction(0)
    if len(t.pairs) > t.d + 1:
        raise DimensionError(f"{len(t.pairs)} factors for dimension {t.d}")
    return t.numerator_value * ct_q(t.pairs)


# -- beta ---------------------------------------------------------------------


def _pairing(beta: Sequence[int], nu: Sequence[Fraction]) -> Fraction:
    return sum((b * x for b, x in zip(beta, nu)), Fraction(0))


def cone_pairs(c: SignedCone, beta: Sequence[int]) -> list[Pair]:
    gens = c.generators
    dim = gens.nrows - 1
    if len(beta) != dim:
        raise DimensionError(f"beta has length {len(beta)}, cone generators need {dim}")
    out = []
    for col in gens.columns():
        out.append((col[-1], _pairing(beta, col[:-1])))
    return out


def is_admissible(beta: Sequence[int], cones: Iterable[SignedCone]) -> bool:
    return all(not (m == 0 and b == 0) for c in cones for m, b in cone_pairs(c, beta))


def sample_beta(
    dim: int,
    cones: Sequence[SignedCone],
    seed: int = 0,
    range_: int = 50,
    max_attempts: int = 1000,
    accept: Callable[[tuple[int, ...]], bool] | None = None,
) -> tuple[int, ...]:
    """Seeded random integer beta admissible for every cone.

    beta = 0 is tried first.  The sampling range grows fourfold after every
    250 rejected draws.
    """
    if not cones:
        raise ValueError("no cones to be admissible for")

    def ok(beta):
        return is_admissible(beta, cones) and (accept is None or accept(beta))

    zero = (0,) * dim
    if ok(zero):
        return zero
    rng = random.Random(seed)
    bound = range_
    for attempt in range(1, max_attempts + 1):
        beta = tuple(rng.randint(-bound, bound) for _ in range(dim))
        if ok(beta):
            return beta
        if attempt % 250 == 0:
            bound *= 4
    raise InadmissibleBetaError(
        f"no admissible beta after {max_attempts} draws; try a larger range than {range_}"
    )


def _check_beta(beta, cones, dim):
    beta = tuple(int(x) for x in beta)
    if len(beta) != dim:
        raise DimensionError(f"beta must have length {dim}")
    if not is_admissible(beta, cones):
        raise InadmissibleBetaError(f"beta {beta} is not admissible for the decomposition")
    return beta


# -- full-dimensional cones ----------------------------------------------------


def vol_cone_full(c: SignedCone, beta: Sequence[int]) -> Fraction:
    gens = c.generators
    if gens.ncols < gens.nrows:
        return Fraction(0)
    if gens.ncols > gens.nrows:
        raise DimensionError("more generators than the ambient dimension")
    return abs(det(gens)) * ct_q(cone_pairs(c, beta))


def volume_fulldim(
    cones: Sequence[SignedCone], d: int, beta: Sequence[int] | None = None, seed: int = 0
) -> VolumeResult:
    """(1/d!) sum_i s_i |det V_i| CT_q(...) over cones in R^{d+1}."""
    for c in cones:
        if c.generators.nrows != d + 1:
            raise DimensionError(f"cone lives in R^{c.generators.nrows}, expected R^{d + 1}")
    beta = sample_beta(d, cones, seed) if beta is None else _check_beta(beta, cones, d)
    total = sum((c.sign * vol_cone_full(c, beta) for c in cones), Fraction(0))
    return VolumeResult(total / math.factorial(d), "fulldim", beta, len(cones))


# -- relative volume via Simpcone ------------------------------------------------


def vol_cone_relative(c: SignedCone, D: int, beta: Sequence[int], d: int | None = None) -> Fraction:
    """|D / pivot product| * CT_q(...); zero for cones with fewer than d + 1 generators."""
    if c.pivot_product is None:
        raise ValueError("cone carries no pivot product")
    if d is not None and c.dim < d + 1:
        return Fraction(0)
    return abs(Fraction(D) / c.pivot_product) * ct_q(cone_pairs(c, beta))


def volume_from_decomposition(
    dec: Decomposition, beta: Sequence[int] | None = None, seed: int = 0
) -> VolumeResult:
    cones = dec.cones
    if not cones:
        return VolumeResult(Fraction(0), "simpcone", None, 0, dec)
    beta = sample_beta(dec.n, cones, seed) if beta is None else _check_beta(beta, cones, dec.n)
    total = Fraction(0)
    for c in cones:
        total += c.sign * vol_cone_relative(c, dec.invariant_factor_product, beta, dec.d)
    return VolumeResult(total / math.factorial(dec.d), "simpcone", beta, len(cones), dec)


def volume_simpcone(
    p: PolytopeStd, seed: int = 0, beta: Sequence[int] | None = None, row_order: str = "first"
) -> VolumeResult:
    """Relative volume of a standard-form polytope from its Simpcone decomposition."""
    dec = simpcone(cone_over(p).B, row_order=row_order)
    return volume_from_decomposition(dec, beta, seed)


def _exact_sqrt(x: Fraction) -> Fraction:
    if x < 0:
        raise ArithmeticError("negative Gram ratio")
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise ArithmeticError(f"Gram ratio {x} is not the square of a rational")
    return Fraction(rn, rd)


def det_ratio(gens: Matrix, basis: Matrix) -> Fraction:
    """Det(gens) / Det(basis) for column sets spanning the same space."""
    g = gram_det_sq(gens)
    if g == 0:
        raise DegenerateInputError("generators are linearly dependent")
    return _exact_sqrt(g / gram_det_sq(basis))


def volume_general_relative(
    cones: Sequence[SignedCone],
    basis: Matrix,
    d: int,
    beta: Sequence[int] | None = None,
    seed: int = 0,
) -> VolumeResult:
    """Relative volume from any signed simplicial decomposition of cone(P).

    ``basis`` is a Z-basis of span(cone(P)) intersected with Z^{n+1}; each
    cone is weighted by the ratio of Gram volumes of its generators and the
    basis.
    """
    n = basis.nrows - 1
    beta = sample_beta(n, cones, seed) if beta is None else _check_beta(beta, cones, n)
    total = Fraction(0)
    for c in cones:
        if c.dim < d + 1:
            continue
        total += c.sign * det_ratio(c.generators, basis) * ct_q(cone_pairs(c, beta))
    return VolumeResult(total / math.factorial(d), "general-relative", beta, len(cones))


def parallelepiped_count(c: SignedCone | Matrix, basis: Matrix, primitive_first: bool = True) -> int:
    """Lattice points in the fundamental parallelepiped, as a Det ratio.

    By default the generators are first replaced by their primitive integer
    vectors; with ``primitive_first=False`` integral generators are used as
    given.
    """
    gens = c.generators if isinstance(c, SignedCone) else c
    if primitive_first or not gens.is_integral():
        gens = Matrix.from_columns([primitive(col) for col in gens.columns()])
    ratio = det_ratio(gens, basis)
    if ratio.denominator != 1:
        raise ArithmeticError(f"Det ratio {ratio} is not an integer; basis is not a lattice basis")
    return int(ratio)


# -- simple polytopes: supporting cones and Lawrence --------------------------------


def _vertex_data(p: PolytopeH):
    """(vertex, A_v) for each vertex of a simple polytope, rows in index order."""
    out = []
    for v, binding in require_simple(p):
        rows = sorted(binding)
        out.append((v, p.A.submatrix(rows, range(p.d))))
    return out


def supporting_cones_simple(p: PolytopeH) -> list[SignedCone]:
    """Coned supporting cones, one per vertex, all with sign +1.

    The tangent cone at v is {u : A_v u <= 0}, generated by the columns of
    -A_v^{-1}; each is lifted to height 0 and joined by (v, 1).
    """
    cones = []
    for v, Av in _vertex_data(p):
        W = -inverse(Av)
        cols = [tuple(col) + (Fraction(0),) for col in W.columns()]
        cols.append(tuple(v) + (Fraction(1),))
        cones.append(SignedCone(1, Matrix.from_columns(cols)))
    return cones


def lawrence_beta_ok(p: PolytopeH, beta: Sequence[int]) -> bool:
    # beta.v = 0 is harmless (that vertex term vanishes); only a_vj = 0 breaks the formula
    for v, Av in _vertex_data(p):
        a = inverse(Av).T.apply(beta)
        if any(x == 0 for x in a):
            return False
    return True


def volume_lawrence(p: PolytopeH, beta: Sequence[int] | None = None, seed: int = 0) -> VolumeResult:
    """Lawrence's vertex sum for an integral simple polytope.

    vol = (1/d!) sum_v (beta.v)^d / (|det A_v| prod_j a_vj),  a_v = beta^T A_v^{-1}.
    """
    d = p.d
    data = _vertex_data(p)
    for v, _ in data:
        if any(x.denominator != 1 for x in v):
            raise InvalidPolytopeError(
                f"Lawrence formula needs integral vertices; {fmt_point(v)} is not (dilate first)"
            )
    if beta is None:
        beta = sample_beta(d, supporting_cones_simple(p), seed, accept=lambda b: lawrence_beta_ok(p, b))
    beta = tuple(int(x) for x in beta)
    if len(beta) != d:
        raise DimensionError(f"beta must have length {d}")
    total = Fraction(0)
    for v, Av in data:
        a = inverse(Av).T.apply(beta)
        bv = _pairing(beta, v)
        if any(x == 0 for x in a):
            raise InadmissibleBetaError(
                f"beta {beta} pairs to zero with an edge direction at vertex {fmt_point(v)}; resample"
            )
        total += bv**d / (abs(det(Av)) * math.prod(a))
    return VolumeResult(total / math.factorial(d), "lawrence", beta, len(data))


def volume_brion(p: PolytopeH, beta: Sequence[int] | None = None, seed: int = 0) -> VolumeResult:
    res = volume_fulldim(supporting_cones_simple(p), p.d, beta, seed)
    return VolumeResult(res.value, "fulldim-brion", res.beta, res.cone_count)


# -- simplices ---------------------------------------------------------------------


def simplex_volume(vertices: Sequence[Sequence]) -> Fraction:
    """|det(v_1 - v_0, ..., v_d - v_0)| / d!"""
    pts = [[as_rat(x) for x in v] for v in vertices]
    d = len(pts[0])
    if len(pts) != d + 1:
        raise DimensionError(f"a {d}-simplex needs {d + 1} vertices, got {len(pts)}")
    v0 = pts[0]
    m = Matrix([[a - b for a, b in zip(v, v0)] for v in pts[1:]])
    vol = abs(det(m))
    if vol == 0:
        raise DegenerateInputError("degenerate simplex")
    return vol / math.factorial(d)


def volume_triangulation(simplices: Sequence[tuple[int, Sequence[Sequence]]]) -> VolumeResult:
    total = sum((s * simplex_volume(verts) for s, verts in simplices), Fraction(0))
    return VolumeResult(total, "triangulation", None, len(simplices))


def coned_simplices(simplices: Sequence[tuple[int, Sequence[Sequence]]]) -> list[SignedCone]:
    """Cones over signed simplices: generators (v, 1) for each vertex v."""
    out = []
    for s, verts in simplices:
        cols = [tuple(as_rat(x) for x in v) + (Fraction(1),) for v in verts]
        out.append(SignedCone(s, Matrix.from_columns(cols)))
    return out
