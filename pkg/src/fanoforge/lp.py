"""Exact rational linear programming.

A dense two-phase simplex over ``fractions.Fraction`` with Bland's rule.
Small problems only (a handful of variables), which is all the cone
computations in this package ever need.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None


def _pivot(tab, basis, row, col):
    piv = tab[row][col]
    prow = [v / piv if v else v for v in tab[row]]
    tab[row] = prow
    nz = [j for j, b in enumerate(prow) if b]
    for r in range(len(tab)):
        if r != row and tab[r][col] != 0:
            f = tab[r][col]
            cur = tab[r]
            for j in nz:
                cur[j] = cur[j] - f * prow[j]
    basis[row] = col


def _simplex(tab, basis, ncols, allowed):
    # last row is the objective row (reduced costs, maximization form:
    # entering column has negative entry); last column is the rhs.
    m = len(tab) - 1
    while True:
        col = None
        for j in range(ncols):
            if allowed[j] and tab[m][j] < 0:
                col = j
                break
        if col is None:
            return OPTIMAL
        row = None
        best = None
        for i in range(m):
            a = tab[i][col]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[row]):
                    best, row = ratio, i
        if row is None:
            return UNBOUNDED
        _pivot(tab, basis, row, col)


def solve_standard(c: Sequence, a_eq: Sequence[Sequence], b_eq: Sequence) -> LPResult:
    """Maximize c.y subject to A y = b, y >= 0, all data exact."""
    n = len(c)
    m = len(a_eq)
    rows = []
    for i in range(m):
        r = [Fraction(v) for v in a_eq[i]]
        b = Fraction(b_eq[i])
        if b < 0:
            r = [-v for v in r]
            b = -b
        rows.append(r + [b])
    # phase 1: artificials n..n+m-1
    ncols = n + m
    tab = []
    for i, r in enumerate(rows):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(r[:n] + art + [r[n]])
    obj = [Fraction(0)] * (ncols + 1)
    for r in tab:
        for j in range(n):
            obj[j] -= r[j]
        obj[-1] -= r[-1]
    tab.append(obj)
    basis = list(range(n, n + m))
    _simplex(tab, basis, ncols, [True] * ncols)
    if tab[m][-1] != 0:
        return LPResult(INFEASIBLE)
    # drive remaining artificials out of the basis
    for i in range(m):
        if basis[i] >= n:
            for j in range(n):
                if tab[i][j] != 0:
                    _pivot(tab, basis, i, j)
                    break
    keep = [i for i in range(m) if basis[i] < n]
    tab = [tab[i][:n] + [tab[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    obj = [-Fraction(v) for v in c] + [Fraction(0)]
    for i, bcol in enumerate(basis):
        f = obj[bcol]
        if f != 0:
            obj = [a - f * b for a, b in zip(obj, tab[i])]
    tab.append(obj)
    status = _simplex(tab, basis, n, [True] * n)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    y = [Fraction(0)] * n
    for i, bcol in enumerate(basis):
        y[bcol] = tab[i][-1]
    return LPResult(OPTIMAL, tab[-1][-1], tuple(y))


def maximize(c: Sequence, a_ub: Sequence[Sequence] = (), b_ub: Sequence = (),
             a_eq: Sequence[Sequence] = (), b_eq: Sequence = (),
             nonneg: bool = False) -> LPResult:
    """Maximize c.x subject to a_ub x <= b_ub and a_eq x = b_eq.

    Variables are free unless ``nonneg`` is set.
    """
    n = len(c)

    def expand(row):
        row = [Fraction(v) for v in row]
        return row if nonneg else row + [-v for v in row]

    mu = len(a_ub)
    eq_rows, rhs = [], []
    for i, row in enumerate(a_ub):
        slack = [Fraction(0)] * mu
        slack[i] = Fraction(1)
        eq_rows.append(expand(row) + slack)
        rhs.append(b_ub[i])
    for i, row in enumerate(a_eq):
        eq_rows.append(expand(row) + [Fraction(0)] * mu)
        rhs.append(b_eq[i])
    cc = expand(c) + [Fraction(0)] * mu
    res = solve_standard(cc, eq_rows, rhs) if eq_rows else None
    if res is None:
        # no constraints at all
        bad = (lambda v: v > 0) if nonneg else (lambda v: v != 0)
        if any(bad(Fraction(v)) for v in c):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, Fraction(0), tuple(Fraction(0) for _ in range(n)))
    if res.status != OPTIMAL:
        return res
    y = res.x
    x = tuple(y[j] if nonneg else y[j] - y[n + j] for j in range(n))
    return LPResult(OPTIMAL, res.value, x)


def feasible_point(a_ub=(), b_ub=(), a_eq=(), b_eq=(), n=None, nonneg=False):
    """Return an exact feasible point or None."""
    if n is None:
        n = len(a_ub[0]) if a_ub else len(a_eq[0])
    res = maximize([0] * n, a_ub, b_ub, a_eq, b_eq, nonneg=nonneg)
    return res.x if res.status == OPTIMAL else None
