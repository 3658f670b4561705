"""Exact two-phase tableau simplex over the rationals with Bland's rule.

Solves ``min c.x  s.t.  A x = b, x >= 0``.  The tableau is kept fraction
free: every row is an integer vector, rescaled by positive factors during a
pivot and reduced by its gcd, which leaves each equation (and the sign of
every reduced cost) unchanged.  Results are exact ``Fraction`` values.  At
optimality the dual vector ``y`` satisfies ``A^T y <= c`` and ``b.y == c.x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPSolution:
    status: str
    x: Optional[list] = None
    y: Optional[list] = None
    value: Optional[Fraction] = None
    pivots: int = 0


class PivotLimit(RuntimeError):
    pass


def _int_row(values) -> tuple[list, Fraction]:
    """Coprime integer row proportional to ``values`` and the positive factor used."""
    if all(type(v) is int for v in values):
        ints = list(values)
        g = gcd(*ints) if ints else 0
        if g > 1:
            return [v // g for v in ints], Fraction(1, g)
        return ints, Fraction(1)
    fr = [Fraction(v) for v in values]
    den = lcm(*(f.denominator for f in fr)) if fr else 1
    ints = [f.numerator * (den // f.denominator) for f in fr]
    g = gcd(*ints) if ints else 0
    if g > 1:
        ints = [v // g for v in ints]
        return ints, Fraction(den, g)
    return ints, Fraction(den)


def _reduce(row: list) -> int:
    g = gcd(*row)
    if g > 1:
        row[:] = [v // g for v in row]
        return g
    return 1


class _Tableau:
    def __init__(self, rows: list, basis: list):
        self.rows = rows  # constraint rows then the objective row, last entry = rhs
        self.basis = basis
        self.obj_scale = Fraction(1)  # objective row = obj_scale * (true row)
        self.pivots = 0

    def pivot(self, r: int, col: int) -> None:
        rows = self.rows
        pr = rows[r]
        p = pr[col]
        if p < 0:
            pr[:] = [-v for v in pr]
            p = -p
        nz = [j for j, v in enumerate(pr) if v]
        last = len(rows) - 1
        for i, row in enumerate(rows):
            if i == r:
                continue
            f = row[col]
            if not f:
                continue
            if p != 1:
                row[:] = [v * p for v in row]
            for j in nz:
                row[j] -= f * pr[j]
            g = _reduce(row)
            if i == last:
                self.obj_scale = self.obj_scale * p / g
        self.basis[r] = col

    def run(self, allowed: int, max_pivots: int) -> str:
        rows = self.rows
        m = len(self.basis)
        while True:
            obj = rows[m]
            col = next((j for j in range(allowed) if obj[j] < 0), None)
            if col is None:
                return OPTIMAL
            best = None
            for i in range(m):
                a = rows[i][col]
                if a > 0:
                    num = rows[i][-1]
                    if best is None:
                        best = (num, a, i)
                        continue
                    bn, ba, bi = best
                    lhs, rhs = num * ba, bn * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[bi]):
                        best = (num, a, i)
            if best is None:
                return UNBOUNDED
            self.pivots += 1
            if self.pivots > max_pivots:
                raise PivotLimit(f"more than {max_pivots} pivots")
            self.pivot(best[2], col)


def solve_standard(
    c: Sequence, A: Sequence[Sequence], b: Sequence, max_pivots: int = 100_000
) -> LPSolution:
    m = len(A)
    n = len(c)
    # row i of the tableau is factor[i] * (A_i | b_i) in coprime integers, rhs >= 0,
    # followed by a unit artificial column
    factor = []
    full = []
    for i in range(m):
        ints, f = _int_row(list(A[i]) + [b[i]])
        if ints[-1] < 0:
            ints = [-v for v in ints]
            f = -f
        factor.append(f)
        art = [0] * m
        art[i] = 1
        full.append(ints[:n] + art + [ints[n]])
    width = n + m + 1

    basis = [n + i for i in range(m)]
    p1 = [0] * width
    for i in range(m):
        for j in range(n):
            p1[j] -= full[i][j]
        p1[-1] -= full[i][-1]
    tab = _Tableau(full + [p1], basis)
    tab.run(n, max_pivots)
    if tab.rows[m][-1] != 0:
        return LPSolution(INFEASIBLE, pivots=tab.pivots)
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if tab.rows[i][j] != 0), None)
            if col is not None:
                tab.pivot(i, col)

    # phase 2 objective: reduced costs c - c_B B^-1 A, built from the current rows
    cint, scale = _int_row(list(c))
    obj = cint + [0] * m + [0]
    for i in range(m):
        cb = obj[basis[i]]
        if cb:
            row = tab.rows[i]
            piv = row[basis[i]]
            if piv < 0:
                row[:] = [-v for v in row]
                piv = -piv
            obj = [v * piv - cb * rv for v, rv in zip(obj, row)]
            scale *= piv
            g = _reduce(obj)
            scale /= g
    tab.rows[m] = obj
    tab.obj_scale = scale
    status = tab.run(n, max_pivots)
    if status == UNBOUNDED:
        return LPSolution(UNBOUNDED, pivots=tab.pivots)
    x = [Fraction(0)] * n
    for i in range(m):
        bi = basis[i]
        if bi < n:
            row = tab.rows[i]
            x[bi] = Fraction(row[-1], row[bi])
    obj = tab.rows[m]
    # artificial j costs 0, so its reduced cost is minus the dual of tableau row j;
    # that row is factor[j] times the original one
    y = [-Fraction(obj[n + j]) / tab.obj_scale * factor[j] for j in range(m)]
    value = sum((c[j] * x[j] for j in range(n) if c[j] and x[j]), Fraction(0))
    return LPSolution(OPTIMAL, x, y, value, tab.pivots)
