"""Exact feasibility of {x >= 0 : A x = b} by a phase-one simplex method.

Pivoting is over Fractions with Bland's rule, so the method terminates and
the answer is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .linalg import as_rat


def nonnegative_solution(a: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Return some x >= 0 with a x = b, or None when no such x exists."""
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return tuple(Fraction(0) for _ in range(n))
    rows = []
    rhs = []
    for r, v in zip(a, b):
        r = [as_rat(x) for x in r]
        v = as_rat(v)
        if v < 0:
            r = [-x for x in r]
            v = -v
        rows.append(r)
        rhs.append(v)

    # tableau columns: n originals then m artificials
    width = n + m
    tab = [rows[i] + [Fraction(int(i == k)) for k in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    # reduced costs of the phase-one objective: minimise the sum of artificials
    cost = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(width + 1):
            cost[j] -= tab[i][j]
    for i in range(m):
        cost[n + i] += 1

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            coef = tab[i][enter]
            if coef > 0:
                ratio = tab[i][width] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:  # cannot happen: phase-one objective is bounded below
            break
        _pivot(tab, cost, leave, enter)
        basis[leave] = enter

    if cost[width] != 0:  # optimum -sum(artificials) nonzero -> infeasible
        return None
    x = [Fraction(0)] * width
    for i, var in enumerate(basis):
        x[var] = tab[i][width]
    return tuple(x[:n])


def _pivot(tab, cost, r, c):
    p = tab[r][c]
    tab[r] = [x / p for x in tab[r]]
    for i in range(len(tab)):
        if i != r and tab[i][c] != 0:
            f = tab[i][c]
            tab[i] = [x - f * y for x, y in zip(tab[i], tab[r])]
    if cost[c] != 0:
        f = cost[c]
        cost[:] = [x - f * y for x, y in zip(cost, tab[r])]


def positive_solution(a: Sequence[Sequence]) -> tuple[Fraction, ...] | None:
    """Some x with a x = 0 and every entry of x >= 1, or None.

    By scaling, this exists iff the cone {x >= 0 : a x = 0} contains a
    strictly positive vector.
    """
    n = len(a[0]) if a else 0
    rows = [[as_rat(x) for x in r] for r in a]
    # substitute x = 1 + y with y >= 0
    rhs = [-sum(r, Fraction(0)) for r in rows]
    y = nonnegative_solution(rows, rhs)
    if y is None:
        return None
    return tuple(v + 1 for v in y) if rows else tuple(Fraction(1) for _ in range(n))
