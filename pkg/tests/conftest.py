from pathlib import Path

import pytest

from polyvol.io import load_polytope
from polyvol.linalg import Matrix
from polyvol.polytope import PolytopeH, PolytopeStd, std_from_h

DATA = Path(__file__).resolve().parent.parent / "data"

PENTAGON_A = [[-1, 0], [0, -1], [1, -2], [-2, 1], [1, 1]]
PENTAGON_B = [0, 0, 1, 1, 4]
EX3198_A = [[2, 3, -1, -1, 0], [-1, 3, 0, 1, 0], [7, 0, 0, 0, 1]]
EX3198_B = [-3, 2, 3]
EX52_B = [[5, 6, -1, -2, -3], [-1, 1, -3, 1, 1]]


def pentagon_h():
    return PolytopeH(Matrix(PENTAGON_A), tuple(PENTAGON_B))


def ex3198():
    return PolytopeStd(Matrix(EX3198_A), tuple(EX3198_B))


def segment():
    # conv{(0,0),(4,2)}: x - 2y = 0, x + z = 4
    return PolytopeStd(Matrix([[1, -2, 0], [1, 0, 1]]), (0, 4))


def corpus_std():
    """Every corpus file that has a standard form, by name."""
    out = {}
    for f in sorted(DATA.iterdir()):
        p = load_polytope(f)
        if isinstance(p, PolytopeStd):
            out[f.name] = p
        elif isinstance(p, PolytopeH):
            out[f.name] = std_from_h(p)
        elif p.d == 2:
            from polyvol.polytope import h_from_v_2d

            out[f.name] = std_from_h(h_from_v_2d(p))
    return out


@pytest.fixture(scope="session")
def corpus():
    return corpus_std()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
