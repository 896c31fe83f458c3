"""Exact rational linear algebra: row reduction and a tiny simplex solver.

Everything runs on fractions.Fraction, so results are exact and certificates
can be replayed by direct substitution.  The systems handled here are tiny
(at most a few dozen variables), so dense tableaus with Bland's rule are
plenty; Bland's rule also guarantees termination.

Feasibility problems have the standard form  A x = b, x >= 0.  When no
solution exists the solver produces a Farkas certificate: a row-combination
vector y with  y.A <= 0 componentwise and y.b > 0, which contradicts any
nonnegative solution on contraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Row = tuple[Fraction, ...]


def _as_fraction_rows(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


@dataclass(frozen=True)
class RREFResult:
    rows: tuple[Row, ...]  # nonzero reduced rows, pivot coefficient 1
    rhs: tuple[Fraction, ...]
    pivots: tuple[int, ...]
    rank: int
    consistent: bool


def rref(rows: Sequence[Sequence], rhs: Sequence) -> RREFResult:
    """Reduced row echelon form of [rows | rhs]."""
    work = _as_fraction_rows(rows)
    b = [Fraction(x) for x in rhs]
    if len(work) != len(b):
        raise ValueError("row/rhs length mismatch")
    n_cols = len(work[0]) if work else 0
    pivots: list[int] = []
    rank = 0
    for col in range(n_cols):
        pivot_row = next(
            (r for r in range(rank, len(work)) if work[r][col] != 0), None
        )
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        b[rank], b[pivot_row] = b[pivot_row], b[rank]
        inv = 1 / work[rank][col]
        work[rank] = [x * inv for x in work[rank]]
        b[rank] *= inv
        for r in range(len(work)):
            if r != rank and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[rank])]
                b[r] -= f * b[rank]
        pivots.append(col)
        rank += 1
    consistent = all(b[r] == 0 for r in range(rank, len(work)))
    return RREFResult(
        rows=tuple(tuple(work[r]) for r in range(rank)),
        rhs=tuple(b[:rank]),
        pivots=tuple(pivots),
        rank=rank,
        consistent=consistent,
    )


@dataclass(frozen=True)
class LPResult:
    status: str  # 'optimal', 'infeasible' or 'unbounded'
    objective: Fraction | None
    solution: tuple[Fraction, ...] | None
    certificate: tuple[Fraction, ...] | None  # Farkas y when infeasible


def verify_farkas(
    rows: Sequence[Sequence], rhs: Sequence, y: Sequence[Fraction]
) -> bool:
    """Replay a Farkas certificate: y.A <= 0 componentwise and y.b > 0."""
    work = _as_fraction_rows(rows)
    b = [Fraction(x) for x in rhs]
    n = len(work[0]) if work else 0
    combo = [sum(y[i] * work[i][j] for i in range(len(work))) for j in range(n)]
    value = sum(y[i] * b[i] for i in range(len(b)))
    return all(c <= 0 for c in combo) and value > 0


class _Tableau:
    """Dense simplex tableau over Fractions with Bland's anticycling rule."""

    def __init__(self, rows: list[list[Fraction]], b: list[Fraction], n_real: int):
        self.m = len(rows)
        self.n_real = n_real
        # columns: n_real structural + m artificial + 1 rhs
        self.t = [
            rows[i] + [Fraction(int(i == j)) for j in range(self.m)] + [b[i]]
            for i in range(self.m)
        ]
        self.basis = [n_real + i for i in range(self.m)]

    def pivot(self, row: int, col: int) -> None:
        inv = 1 / self.t[row][col]
        self.t[row] = [x * inv for x in self.t[row]]
        for r in range(self.m):
            if r != row and self.t[r][col] != 0:
                f = self.t[r][col]
                self.t[r] = [a - f * p for a, p in zip(self.t[r], self.t[row])]
        self.basis[row] = col

    def reduced_cost(self, costs: list[Fraction], j: int) -> Fraction:
        return costs[j] - sum(
            costs[self.basis[i]] * self.t[i][j] for i in range(self.m)
        )

    def run(self, costs: list[Fraction], columns: list[int]) -> str:
        while True:
            entering = next(
                (j for j in columns if self.reduced_cost(costs, j) < 0), None
            )
            if entering is None:
                return "optimal"
            leaving, best = None, None
            for i in range(self.m):
                coeff = self.t[i][entering]
                if coeff > 0:
                    ratio = self.t[i][-1] / coeff
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and self.basis[i] < self.basis[leaving])
                    ):
                        best, leaving = ratio, i
            if leaving is None:
                return "unbounded"
            self.pivot(leaving, entering)

    def objective_value(self, costs: list[Fraction]) -> Fraction:
        return sum(costs[self.basis[i]] * self.t[i][-1] for i in range(self.m))

    def solution(self) -> list[Fraction]:
        x = [Fraction(0)] * self.n_real
        for i in range(self.m):
            if self.basis[i] < self.n_real:
                x[self.basis[i]] = self.t[i][-1]
        return x


def solve_lp(
    objective: Sequence, rows: Sequence[Sequence], rhs: Sequence, maximize: bool = False
) -> LPResult:
    """Optimize objective . x subject to rows . x = rhs, x >= 0, exactly."""
    a = _as_fraction_rows(rows)
    b = [Fraction(x) for x in rhs]
    c = [Fraction(x) for x in objective]
    if maximize:
        c = [-x for x in c]
    n = len(c)
    if any(len(row) != n for row in a):
        raise ValueError("objective/row length mismatch")

    flips = [-1 if bi < 0 else 1 for bi in b]
    a = [[x * f for x in row] for row, f in zip(a, flips)]
    b = [x * f for x, f in zip(b, flips)]
    m = len(a)
    tab = _Tableau(a, b, n)

    # phase 1: minimize the artificial total
    phase1_costs = [Fraction(0)] * n + [Fraction(1)] * m + [Fraction(0)]
    all_columns = list(range(n + m))
    status = tab.run(phase1_costs, all_columns)
    if status != "optimal":
        raise AssertionError("phase-1 objective is bounded below by zero")
    artificial_total = tab.objective_value(phase1_costs)
    if artificial_total > 0:
        # Farkas multipliers from the phase-1 optimum: y_i = z(artificial_i)
        lam = [phase1_costs[tab.basis[i]] for i in range(m)]
        y = [
            sum(lam[r] * tab.t[r][n + i] for r in range(m)) * flips[i]
            for i in range(m)
        ]
        if not verify_farkas(rows, rhs, y):
            raise AssertionError("extracted Farkas certificate failed replay")
        return LPResult(
            status="infeasible", objective=None, solution=None, certificate=tuple(y)
        )

    # drive leftover zero-value artificials out of the basis; a row whose
    # structural coefficients are all zero is redundant and can be ignored
    for i in range(m):
        if tab.basis[i] >= n:
            col = next((j for j in range(n) if tab.t[i][j] != 0), None)
            if col is not None:
                tab.pivot(i, col)

    structural = [j for j in range(n)]
    phase2_costs = c + [Fraction(0)] * m + [Fraction(0)]
    # rows still carrying an artificial basis variable are redundant:
    # freeze them by excluding artificial columns from entering
    status = tab.run(phase2_costs, structural)
    if status == "unbounded":
        return LPResult(
            status="unbounded", objective=None, solution=None, certificate=None
        )
    x = tab.solution()
    for row, target in zip(rows, rhs):
        total = sum(Fraction(rj) * xj for rj, xj in zip(row, x))
        if total != Fraction(target):
            raise AssertionError("simplex solution fails the constraints")
    if any(xj < 0 for xj in x):
        raise AssertionError("simplex solution is not nonnegative")
    value = sum(ci * xi for ci, xi in zip(c, x))
    return LPResult(
        status="optimal",
        objective=-value if maximize else value,
        solution=tuple(x),
        certificate=None,
    )


def feasible_point(rows: Sequence[Sequence], rhs: Sequence) -> LPResult:
    """Find any nonnegative solution of rows . x = rhs, or certify none exists."""
    n = len(rows[0]) if rows else 0
    return solve_lp([Fraction(0)] * n, rows, rhs)
