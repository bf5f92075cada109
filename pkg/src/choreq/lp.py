"""Exact rational linear programming (dense tableau simplex, Bland's rule)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import AlgorithmDefect

DEFAULT_PIVOT_CAP = 100_000


@dataclass
class LpProblem:
    """minimise ``objective . x`` s.t. ``A_eq x = b_eq``, ``A_ub x <= b_ub``, ``0 <= x <= upper``.

    ``upper`` entries of ``None`` mean no upper bound.
    """

    objective: list[Fraction]
    A_eq: list[list[Fraction]] = field(default_factory=list)
    b_eq: list[Fraction] = field(default_factory=list)
    A_ub: list[list[Fraction]] = field(default_factory=list)
    b_ub: list[Fraction] = field(default_factory=list)
    upper: list[Fraction | None] | None = None

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def standard_form(self) -> tuple[list[Fraction], list[list[Fraction]], list[Fraction]]:
        """Equality form with one slack per inequality or finite upper bound."""
        nv = self.num_vars
        ub_rows = [list(r) for r in self.A_ub]
        ub_rhs = list(self.b_ub)
        for v, u in enumerate(self.upper or []):
            if u is not None:
                row = [Fraction(0)] * nv
                row[v] = Fraction(1)
                ub_rows.append(row)
                ub_rhs.append(u)
        ns = len(ub_rows)
        A = [list(r) + [Fraction(0)] * ns for r in self.A_eq]
        for s, r in enumerate(ub_rows):
            slack = [Fraction(0)] * ns
            slack[s] = Fraction(1)
            A.append(list(r) + slack)
        c = list(self.objective) + [Fraction(0)] * ns
        return c, A, list(self.b_eq) + ub_rhs

    def solve(self, basis: Sequence[int] | None = None, pivot_cap: int = DEFAULT_PIVOT_CAP) -> "LpResult":
        c, A, b = self.standard_form()
        res = solve_standard(c, A, b, basis=basis, pivot_cap=pivot_cap)
        if res.x is not None:
            res.x = res.x[: self.num_vars]
        return res


@dataclass
class LpResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None
    x: list[Fraction] | None
    pivots: int = 0


class _Tableau:
    def __init__(self, A: list[list[Fraction]], b: list[Fraction], pivot_cap: int):
        self.rows = [list(r) + [rhs] for r, rhs in zip(A, b)]
        self.basis: list[int] = [-1] * len(self.rows)
        self.pivots = 0
        self.pivot_cap = pivot_cap

    def pivot(self, r: int, col: int, obj: list[Fraction] | None = None) -> None:
        self.pivots += 1
        if self.pivots > self.pivot_cap:
            raise AlgorithmDefect(f"simplex exceeded {self.pivot_cap} pivots")
        prow = self.rows[r]
        pv = prow[col]
        if pv != 1:
            prow = [v / pv for v in prow]
            self.rows[r] = prow
        for k, row in enumerate(self.rows):
            f = row[col]
            if k != r and f != 0:
                self.rows[k] = [a - f * p for a, p in zip(row, prow)]
        if obj is not None and obj[col] != 0:
            f = obj[col]
            obj[:] = [a - f * p for a, p in zip(obj, prow)]
        self.basis[r] = col

    def reduced_costs(self, c: list[Fraction]) -> list[Fraction]:
        obj = list(c) + [Fraction(0)]
        for r, v in enumerate(self.basis):
            f = obj[v]
            if f != 0:
                obj = [a - f * p for a, p in zip(obj, self.rows[r])]
        return obj

    def run(self, obj: list[Fraction], allowed: int) -> str:
        """Bland's rule on columns ``< allowed``; ``obj`` holds reduced costs."""
        while True:
            enter = next((j for j in range(allowed) if obj[j] < 0), None)
            if enter is None:
                return "optimal"
            best = None
            for r, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    key = (row[-1] / a, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return "unbounded"
            self.pivot(best[1], enter, obj)


def solve_standard(c: Sequence[Fraction], A: Sequence[Sequence[Fraction]], b: Sequence[Fraction],
                   basis: Sequence[int] | None = None,
                   pivot_cap: int = DEFAULT_PIVOT_CAP) -> LpResult:
    """Minimise ``c.x`` subject to ``A x = b``, ``x >= 0``.

    ``basis`` optionally names one column per row forming a feasible starting
    basis, which skips phase one.
    """
    c = [Fraction(v) for v in c]
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    nv = len(c)
    if basis is not None:
        tab = _Tableau(A, b, pivot_cap)
        try:
            for r, col in enumerate(basis):
                if tab.rows[r][col] == 0:
                    raise ValueError
                tab.pivot(r, col)
        except ValueError:
            tab = None
        if tab is not None and all(row[-1] >= 0 for row in tab.rows):
            return _phase_two(tab, c, nv)

    # Phase one with one artificial per row.
    for r in range(len(A)):
        if b[r] < 0:
            A[r] = [-v for v in A[r]]
            b[r] = -b[r]
    na = len(A)
    ext = [row + [Fraction(int(k == r)) for k in range(na)] for r, row in enumerate(A)]
    tab = _Tableau(ext, b, pivot_cap)
    tab.basis = [nv + r for r in range(na)]
    phase1 = [Fraction(0)] * nv + [Fraction(1)] * na
    obj = tab.reduced_costs(phase1)
    tab.run(obj, nv + na)
    if -obj[-1] != 0:
        return LpResult("infeasible", None, None, tab.pivots)
    # Drive artificials out of the basis; drop redundant rows.
    r = 0
    while r < len(tab.rows):
        if tab.basis[r] >= nv:
            col = next((j for j in range(nv) if tab.rows[r][j] != 0), None)
            if col is None:
                del tab.rows[r]
                del tab.basis[r]
                continue
            tab.pivot(r, col)
        r += 1
    tab.rows = [row[:nv] + [row[-1]] for row in tab.rows]
    return _phase_two(tab, c, nv)


def _phase_two(tab: _Tableau, c: list[Fraction], nv: int) -> LpResult:
    obj = tab.reduced_costs(c)
    status = tab.run(obj, nv)
    if status == "unbounded":
        return LpResult("unbounded", None, None, tab.pivots)
    x = [Fraction(0)] * nv
    for r, v in enumerate(tab.basis):
        x[v] = tab.rows[r][-1]
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return LpResult("optimal", value, x, tab.pivots)
