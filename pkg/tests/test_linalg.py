import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyvol.errors import DimensionError, RankDeficientError, SingularMatrixError
from polyvol.linalg import (
    Matrix,
    as_rat,
    det,
    gram_det_sq,
    inverse,
    lattice_basis_nullspace,
    nullspace,
    primitive,
    rank,
    snf,
    solve,
)
from polyvol.simpcone import gcd_of_maximal_minors


def ints(lo=-6, hi=6):
    return st.integers(lo, hi)


def int_matrix(rows, cols, lo=-6, hi=6):
    return st.lists(st.lists(ints(lo, hi), min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(Matrix)


@st.composite
def shaped(draw, max_rows=4, max_cols=6):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(r, max_cols))
    return draw(int_matrix(r, c))


def cofactor_det(rows):
    n = len(rows)
    if n == 0:
        return Fraction(1)
    return sum(
        (-1) ** j * rows[0][j] * cofactor_det([r[:j] + r[j + 1 :] for r in rows[1:]]) for j in range(n)
    )


def brute_kernel_basis_check(B, X):
    # every small integer kernel vector is an integer combination of X
    # (checked by solving in the columns of X)
    r, N = B.shape
    for v in itertools.product(range(-2, 3), repeat=N):
        if any(v) and all(x == 0 for x in B.apply(v)):
            coords = solve_least(X, v)
            assert all(c.denominator == 1 for c in coords), (v, coords)


def solve_least(X, v):
    # X has independent columns; pick independent rows and solve
    k = X.ncols
    rows = []
    for i in range(X.nrows):
        if rank(X.submatrix(rows + [i], range(k))) == len(rows) + 1:
            rows.append(i)
    sub = X.submatrix(rows[:k], range(k))
    c = solve(sub, [v[i] for i in rows[:k]])
    assert X.apply(c) == tuple(Fraction(x) for x in v)
    return c


# -- rationals and construction ------------------------------------------------


def test_as_rat_refuses_floats():
    with pytest.raises(TypeError):
        as_rat(0.5)
    assert as_rat("3/6") == Fraction(1, 2)
    assert as_rat(Fraction(4, -6)).denominator == 3


def test_ragged_rows_rejected():
    with pytest.raises(DimensionError):
        Matrix([[1, 2], [3]])


def test_shape_checks():
    with pytest.raises(DimensionError):
        Matrix([[1, 2]]) @ Matrix([[1, 2]])
    with pytest.raises(DimensionError):
        det(Matrix([[1, 2, 3], [4, 5, 6]]))


# -- rank, det, gram ------------------------------------------------------------


@pytest.mark.parametrize(
    "m, expected",
    [(Matrix.identity(3), 3), (Matrix.zeros(2, 4), 0), (Matrix([[1, 2], [2, 4]]), 1)],
)
def test_rank_examples(m, expected):
    assert rank(m) == expected


@pytest.mark.parametrize(
    "m, expected",
    [(Matrix.identity(4), 1), (Matrix.diag([2, 3]), 6), (Matrix([[1, 2], [3, 4]]), -2)],
)
def test_det_examples(m, expected):
    assert det(m) == expected
    assert det(m) == cofactor_det([list(r) for r in m.rows])


def test_det_with_fractions():
    m = Matrix([["1/2", "1/3"], ["1/5", "1/7"]])
    assert det(m) == Fraction(1, 14) - Fraction(1, 15)


@pytest.mark.parametrize(
    "cols, expected",
    [([(4, 2)], 20), ([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 1), ([(1, 0, 0), (0, 2, 0)], 4)],
)
def test_gram_examples(cols, expected):
    assert gram_det_sq(Matrix.from_columns(cols)) == expected


def test_gram_zero_for_dependent_columns():
    assert gram_det_sq(Matrix.from_columns([(1, 2), (2, 4)])) == 0


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(int_matrix(n, n), int_matrix(n, n))))
def test_det_multiplicative(pair):
    a, b = pair
    assert det(a @ b) == det(a) * det(b)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: int_matrix(n, n)))
def test_det_matches_cofactor_and_gram(m):
    d = det(m)
    assert d == cofactor_det([list(r) for r in m.rows])
    assert gram_det_sq(m) == d * d


@settings(max_examples=100, deadline=None)
@given(shaped())
def test_rank_bounded_and_nullspace_dimension(m):
    k = rank(m)
    assert k <= min(m.shape)
    ns = nullspace(m)
    assert len(ns) == m.ncols - k
    for v in ns:
        assert all(x == 0 for x in m.apply(v))


# -- solve / inverse ---------------------------------------------------------------


def test_solve_examples():
    assert solve(Matrix.identity(3), [1, 2, 3]) == (1, 2, 3)
    assert solve(Matrix.diag([2, 4]), [2, 4]) == (1, 1)
    assert inverse(Matrix([[1, 1], [0, 1]])) == Matrix([[1, -1], [0, 1]])


def test_singular_raises():
    with pytest.raises(SingularMatrixError):
        inverse(Matrix([[1, 2], [2, 4]]))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: int_matrix(n, n)))
def test_inverse_multiplies_back(m):
    if det(m) == 0:
        return
    assert m @ inverse(m) == Matrix.identity(m.nrows)


# -- Smith normal form -----------------------------------------------------------


@pytest.mark.parametrize(
    "b, factors",
    [([[2, 0], [0, 6]], [2, 6]), ([[2, 4], [4, 4]], [2, 4]), ([[1, -1]], [1])],
)
def test_snf_examples(b, factors):
    assert list(snf(Matrix(b)).invariant_factors) == factors


def test_snf_rank_deficient():
    with pytest.raises(RankDeficientError):
        snf(Matrix([[1, 2], [2, 4]]))


def _check_snf(B):
    res = snf(B)
    r, N = B.shape
    assert res.U @ B @ res.V == res.S
    assert abs(det(res.U)) == 1 and abs(det(res.V)) == 1
    f = list(res.invariant_factors)
    assert all(x > 0 for x in f)
    assert all(f[i + 1] % f[i] == 0 for i in range(len(f) - 1))
    for i in range(r):
        for j in range(N):
            assert res.S[i, j] == (f[i] if i == j else 0)
    assert res.factor_product == gcd_of_maximal_minors(B)


@settings(max_examples=150, deadline=None)
@given(shaped(max_rows=4, max_cols=6))
def test_snf_properties(B):
    if rank(B) != B.nrows:
        with pytest.raises(RankDeficientError):
            snf(B)
        return
    _check_snf(B)


def test_snf_deterministic():
    B = Matrix([[6, 4, 10], [2, 8, -4]])
    assert snf(B) == snf(B)


# -- lattice bases ---------------------------------------------------------------


@pytest.mark.parametrize(
    "b, expected",
    [([[1, -1]], [(1, 1)]), ([[2, -4]], [(2, 1)])],
)
def test_lattice_basis_examples(b, expected):
    X = lattice_basis_nullspace(Matrix(b))
    cols = [tuple(abs(x) for x in c) for c in X.columns()]
    assert cols == expected


def test_lattice_basis_knapsack_last_entries():
    a = [2, 3, 5]
    B = Matrix([a + [-1]])
    X = lattice_basis_nullspace(B)
    assert X.ncols == 3
    assert all(x == 0 for x in (B @ X).rows[0])
    # same lattice as the obvious basis e_i + a_i e_4: the top block is unimodular
    assert abs(det(X.submatrix(range(3), range(3)))) == 1
    for col in X.columns():
        assert col[-1] == sum(ai * x for ai, x in zip(a, col[:3]))


@settings(max_examples=60, deadline=None)
@given(shaped(max_rows=2, max_cols=4).filter(lambda m: rank(m) == m.nrows))
def test_lattice_basis_is_z_basis(B):
    X = lattice_basis_nullspace(B)
    assert X.ncols == B.ncols - B.nrows
    assert all(x == 0 for row in (B @ X).rows for x in row)
    # integrally independent: SNF of X^T is all ones
    assert all(f == 1 for f in snf(X.T).invariant_factors)
    brute_kernel_basis_check(B, X)


def test_primitive():
    assert primitive([Fraction(2, 3), Fraction(4, 3)]) == (1, 2)
    assert primitive([-4, 6, 0]) == (-2, 3, 0)
