"""Dense two-phase simplex for small equality-form LPs.

Solves  min c^T x  s.t.  A x = b, x >= 0  with Bland's anti-cycling rule
(lowest eligible index enters; ratio ties leave by lowest basis index).
Problem sizes here are a handful of rows and at most a few hundred columns,
so a dense numpy tableau is plenty.  A hard iteration cap guards against
numerical cycling and raises SimplexError when exceeded.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SimplexError

PIVOT_EPS = 1e-11
COST_EPS = 1e-11
MAX_ITER = 20_000


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: np.ndarray | None
    objective: float | None


def _pivot(tab: np.ndarray, basis: list[int], row: int, col: int) -> None:
    tab[row] /= tab[row, col]
    factors = tab[:, col].copy()
    factors[row] = 0.0
    tab -= np.outer(factors, tab[row])
    tab[:, col] = 0.0
    tab[row, col] = 1.0
    basis[row] = col


def _iterate(tab: np.ndarray, basis: list[int], ncols: int) -> str:
    m = tab.shape[0] - 1
    for _ in range(MAX_ITER):
        costs = tab[-1, :ncols]
        enter = -1
        for j in range(ncols):
            if costs[j] < -COST_EPS:
                enter = j
                break
        if enter < 0:
            return "optimal"
        col = tab[:m, enter]
        leave = -1
        best = np.inf
        for i in range(m):
            if col[i] > PIVOT_EPS:
                ratio = tab[i, -1] / col[i]
                if ratio < best - PIVOT_EPS or (
                    abs(ratio - best) <= PIVOT_EPS and (leave < 0 or basis[i] < basis[leave])
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            return "unbounded"
        _pivot(tab, basis, leave, enter)
    raise SimplexError("cycling guard exceeded")


def solve_eq_lp(c, A, b) -> LPResult:
    c = np.asarray(c, dtype=np.float64)
    A = np.asarray(A, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    m, n = A.shape

    A = A.copy()
    b = b.copy()
    neg = b < 0
    A[neg] *= -1.0
    b[neg] *= -1.0

    # Phase 1: artificial basis, minimize the artificial mass.
    tab = np.zeros((m + 1, n + m + 1))
    tab[:m, :n] = A
    tab[:m, n : n + m] = np.eye(m)
    tab[:m, -1] = b
    tab[-1, :n] = -A.sum(axis=0)
    tab[-1, -1] = -b.sum()
    basis = list(range(n, n + m))
    if _iterate(tab, basis, n + m) != "optimal":
        raise SimplexError("phase 1 reported unbounded")
    feas_tol = 1e-8 * (1.0 + float(np.abs(b).max(initial=0.0)))
    if -tab[-1, -1] > feas_tol:
        return LPResult("infeasible", None, None)

    # Drive leftover artificials out (redundant rows pivot on the largest
    # available entry; rows with none are inert and keep a zero artificial).
    for i in range(m):
        if basis[i] >= n:
            row = tab[i, :n]
            j = int(np.argmax(np.abs(row)))
            if abs(row[j]) > PIVOT_EPS:
                _pivot(tab, basis, i, j)

    # Phase 2 on the original columns.
    tab2 = np.zeros((m + 1, n + 1))
    tab2[:m, :n] = tab[:m, :n]
    tab2[:m, -1] = tab[:m, -1]
    tab2[-1, :n] = c
    for i, bv in enumerate(basis):
        if bv < n:
            tab2[-1] -= tab2[-1, bv] * tab2[i]
    status = _iterate(tab2, basis, n)
    if status == "unbounded":
        return LPResult("unbounded", None, None)
    x = np.zeros(n)
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = tab2[i, -1]
    return LPResult("optimal", x, float(c @ x))


def feasible(A, b) -> bool:
    """Whether {x >= 0 : A x = b} is non-empty (phase 1 only)."""
    A = np.asarray(A, dtype=np.float64)
    n = A.shape[1]
    res = solve_eq_lp(np.zeros(n), A, b)
    return res.status == "optimal"
