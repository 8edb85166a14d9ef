import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ex3198, pentagon_h, segment
from polyvol.errors import EnumerationBudgetError, InadmissibleBetaError, PeriodError
from polyvol.linalg import Matrix, det, lattice_basis_nullspace, primitive, rank
from polyvol.oracles import (
    ehrhart_fit,
    ehrhart_volume,
    parallelepiped_enumerate,
    parallelepiped_points,
    series_ct_q,
)
from polyvol.polytope import PolytopeStd, cone_over, std_from_h
from polyvol.simpcone import simpcone
from polyvol.volume import ct_q, det_ratio, parallelepiped_count, volume_simpcone

F = Fraction


# -- Ehrhart -------------------------------------------------------------------------


def test_ehrhart_examples():
    assert ehrhart_volume(std_from_h(pentagon_h())) == 5
    assert ehrhart_volume(segment()) == 2
    fit = ehrhart_fit(PolytopeStd(Matrix([[1, 2, 3]]), (6,)))
    assert fit.leading == 3
    assert fit.samples[1] == (1, 7)
    assert all(fit(s) == c for s, c in fit.samples)


def test_ehrhart_rational_period():
    fit = ehrhart_fit(ex3198())
    assert fit.period_used == 21
    assert ehrhart_volume(ex3198()) == F(31, 98)


def test_ehrhart_detects_bad_period(monkeypatch):
    import polyvol.oracles as o

    # 2x + 3y = 1 has vertices (1/2, 0) and (0, 1/3), period 6; pretending it is 1 breaks the fit
    monkeypatch.setattr(o, "period", lambda _: 1)
    with pytest.raises(PeriodError, match="period misdetected"):
        o.ehrhart_fit(PolytopeStd(Matrix([[2, 3]]), (1,)))


def test_ehrhart_budget():
    with pytest.raises(EnumerationBudgetError):
        ehrhart_volume(PolytopeStd(Matrix([[1, 1, 1, 1]]), (40,)), cap=1000)


def test_ehrhart_matches_simpcone(corpus):
    for name, p in corpus.items():
        assert ehrhart_volume(p) == volume_simpcone(p).value, name


# -- series CT ----------------------------------------------------------------------------


def test_series_ct_examples():
    assert series_ct_q([(2, 0), (5, 0)]) == F(1, 10)
    assert series_ct_q([(0, 1), (1, 1)]) == -1
    with pytest.raises(InadmissibleBetaError):
        series_ct_q([(0, 0)])


def test_series_ct_matches_ct_q_200():
    rng = random.Random(20240)
    checked = 0
    while checked < 200:
        k = rng.randint(1, 6)  # d <= 5
        pairs = []
        for _ in range(k):
            m = rng.choice([0, 0, F(rng.randint(-9, 9), rng.randint(1, 4))])
            b = F(rng.randint(-9, 9), rng.randint(1, 4))
            pairs.append((m, b))
        if any(m == 0 and b == 0 for m, b in pairs):
            continue
        assert series_ct_q(pairs) == ct_q(pairs), pairs
        checked += 1


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=1, max_size=6))
def test_series_ct_property(pairs):
    if any(m == 0 and b == 0 for m, b in pairs):
        return
    assert series_ct_q(pairs) == ct_q(pairs)


# -- parallelepipeds ----------------------------------------------------------------------


def test_parallelepiped_examples():
    assert parallelepiped_enumerate(Matrix.identity(3)) == 1
    assert parallelepiped_enumerate(Matrix.diag([2, 3])) == 6
    assert parallelepiped_points(Matrix.from_columns([(1, 0), (1, 2)])) == [(0, 0), (1, 1)]


def test_parallelepiped_budget():
    with pytest.raises(EnumerationBudgetError):
        parallelepiped_enumerate(Matrix.diag([100, 100, 100]), cap=1000)


def test_parallelepiped_full_dim_is_det():
    rng = random.Random(5)
    for _ in range(30):
        m = Matrix([[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)])
        if det(m) == 0:
            continue
        assert parallelepiped_enumerate(m) == abs(det(m))


def test_parallelepiped_ratio_matches_enumeration_50():
    """Det ratio against the SNF lattice basis equals direct enumeration."""
    rng = random.Random(77)
    done = 0
    while done < 50:
        N = rng.randint(2, 5)
        k = rng.randint(1, min(3, N))
        cols = [tuple(rng.randint(-3, 3) for _ in range(N)) for _ in range(k)]
        G = Matrix.from_columns([primitive(c) if any(c) else c for c in cols])
        if rank(G) != k:
            continue
        # lattice of span(G) intersected with Z^N: kernel of the primitive normals
        from polyvol.linalg import span_lattice_basis

        basis = span_lattice_basis(G)
        assert parallelepiped_count(G, basis) == parallelepiped_enumerate(G)
        done += 1


def test_parallelepiped_in_corpus_cones(corpus):
    for name, p in corpus.items():
        B = cone_over(p).B
        basis = lattice_basis_nullspace(B)
        for c in simpcone(B).cones:
            G = Matrix.from_columns([primitive(col) for col in c.generators.columns()])
            try:
                pts = parallelepiped_enumerate(G)
            except EnumerationBudgetError:
                continue
            assert det_ratio(G, basis) == pts, name
