"""Exact rational linear algebra: fraction-free rank and a simplex LP solver.

The simplex keeps an integer tableau and uses Edmonds' integer pivoting
(every entry is a minor of the original data, so the division by the
previous pivot is exact).  Bland's rule is used for both entering and
leaving variables, so the method cannot cycle and is fully deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def _integer_rows(rows) -> list[list[int]]:
    out = []
    for row in rows:
        row = [Fraction(v) for v in row]
        den = lcm(*(v.denominator for v in row)) if row else 1
        out.append([int(v * den) for v in row])
    return out


def exact_rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q by Bareiss fraction-free elimination."""
    m = _integer_rows(rows)
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, len(m)):
            a = m[r][col]
            row_r = m[r]
            row_p = m[rank]
            for c in range(col, ncols):
                row_r[c] = (p * row_r[c] - a * row_p[c]) // prev
        prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


def solve_linear(A: Sequence[Sequence], b: Sequence):
    """Solve ``A x = b`` exactly.

    Returns ``(particular, nullspace_dim)`` with ``particular`` a list of
    Fractions (free variables set to zero), or ``None`` if inconsistent.
    """
    rows = [[Fraction(v) for v in row] + [Fraction(rhs)] for row, rhs in zip(A, b)]
    ncols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [v / p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][-1] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = rows[i][-1]
    return x, ncols - len(pivots)


@dataclass
class LPResult:
    status: str
    x: list[Fraction] | None = None
    value: Fraction | None = None
    pivots: int = 0

    @property
    def feasible(self) -> bool:
        return self.status in (OPTIMAL, UNBOUNDED)


class _Tableau:
    """Integer tableau for ``min c.x  s.t.  A x = b, x >= 0`` with ``b >= 0``.

    Row layout: ``rows[i] = [a_i1 .. a_iN, b_i]``; the true tableau is
    ``rows / den``.  ``obj`` holds reduced costs in the same scaling, with the
    last entry equal to minus the current objective value.
    """

    def __init__(self, rows, basis):
        self.rows = rows
        self.basis = basis
        self.den = 1
        self.pivots = 0

    def pivot(self, r: int, k: int, extra_rows=()):
        rows = self.rows
        prow = rows[r]
        p = prow[k]
        den = self.den
        for i, row in enumerate(rows):
            if i == r:
                continue
            a = row[k]
            if a == 0:
                if p != den:
                    rows[i] = [(p * v) // den for v in row]
                continue
            rows[i] = [(p * v - a * w) // den for v, w in zip(row, prow)]
        for row in extra_rows:
            a = row[k]
            if a == 0:
                row[:] = [(p * v) // den for v in row]
            else:
                row[:] = [(p * v - a * w) // den for v, w in zip(row, prow)]
        if p < 0:
            # keep den > 0 so sign tests on scaled entries stay valid
            for i, row in enumerate(rows):
                rows[i] = [-v for v in row]
            for row in extra_rows:
                row[:] = [-v for v in row]
            p = -p
        self.den = p
        self.basis[r] = k
        self.pivots += 1

    def run(self, obj: list[int], allowed: int) -> str:
        """Bland's-rule simplex on columns ``< allowed``; ``obj`` updated in place."""
        rows = self.rows
        while True:
            k = next((j for j in range(allowed) if obj[j] < 0), None)
            if k is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(rows):
                a = row[k]
                if a <= 0:
                    continue
                if best is None:
                    best = i
                    continue
                # compare row[-1]/a with rows[best][-1]/rows[best][k]
                lhs = row[-1] * rows[best][k]
                rhs = rows[best][-1] * a
                if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                    best = i
            if best is None:
                return UNBOUNDED
            self.pivot(best, k, extra_rows=(obj,))

    def solution(self, nvars: int) -> list[Fraction]:
        x = [Fraction(0)] * nvars
        for i, var in enumerate(self.basis):
            if var < nvars:
                x[var] = Fraction(self.rows[i][-1], self.den)
        return x


def linprog_exact(
    c: Sequence | None = None,
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    A_ge: Sequence[Sequence] = (),
    b_ge: Sequence = (),
    *,
    maximize: bool = False,
    nvars: int | None = None,
) -> LPResult:
    """Exact LP over ``x >= 0``: optimize ``c.x`` subject to
    ``A_eq x = b_eq`` and ``A_ge x >= b_ge``.

    With ``c`` omitted this is a pure feasibility problem.  Inputs may be
    ints or Fractions.
    """
    if nvars is None:
        if A_eq:
            nvars = len(A_eq[0])
        elif A_ge:
            nvars = len(A_ge[0])
        elif c is not None:
            nvars = len(c)
        else:
            nvars = 0
    n_ge = len(A_ge)
    raw = []
    for row, rhs in zip(A_eq, b_eq):
        raw.append(list(row) + [0] * n_ge + [rhs])
    for i, (row, rhs) in enumerate(zip(A_ge, b_ge)):
        surplus = [0] * n_ge
        surplus[i] = -1
        raw.append(list(row) + surplus + [rhs])
    rows = _integer_rows(raw)
    for row in rows:
        if row[-1] < 0:
            row[:] = [-v for v in row]
    ncols = nvars + n_ge
    m = len(rows)
    # artificials occupy columns ncols .. ncols+m-1
    full = []
    for i, row in enumerate(rows):
        art = [0] * m
        art[i] = 1
        full.append(row[:-1] + art + [row[-1]])
    tab = _Tableau(full, [ncols + i for i in range(m)])
    width = ncols + m
    phase1 = [0] * (width + 1)
    for row in full:
        for j in range(ncols):
            phase1[j] -= row[j]
        phase1[-1] -= row[-1]
    tab.run(phase1, ncols)
    if phase1[-1] != 0:
        return LPResult(INFEASIBLE, pivots=tab.pivots)
    # drive remaining artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= ncols:
            k = next((j for j in range(ncols) if tab.rows[i][j] != 0), None)
            if k is None:
                del tab.rows[i]
                del tab.basis[i]
                continue
            tab.pivot(i, k)
        i += 1
    if c is None:
        return LPResult(OPTIMAL, tab.solution(nvars), Fraction(0), tab.pivots)
    cvec = [Fraction(v) for v in c] + [Fraction(0)] * n_ge
    if maximize:
        cvec = [-v for v in cvec]
    cden = lcm(*(v.denominator for v in cvec)) if cvec else 1
    cint = [int(v * cden) for v in cvec]
    # reduced costs in tableau scaling: den * c_j - sum_i c_B(i) * row_i[j]
    obj = [tab.den * cj for cj in cint] + [0] * m + [0]
    for i, var in enumerate(tab.basis):
        cb = cint[var]
        if cb:
            row = tab.rows[i]
            obj = [o - cb * v for o, v in zip(obj, row)]
    status = tab.run(obj, ncols)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, tab.solution(nvars), None, tab.pivots)
    x = tab.solution(nvars)
    value = sum((Fraction(v) * xi for v, xi in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, x, value, tab.pivots)
