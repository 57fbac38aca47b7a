"""Dense two-phase tableau simplex for small standard-form LPs.

Solves ``min c @ x  s.t.  A @ x = b, x >= 0`` with Bland's rule. Meant as a
slow but transparent reference; problem sizes are a few hundred columns.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Infeasible, MaxIterations, Unbounded


@dataclass
class SimplexResult:
    x: np.ndarray
    objective: float
    basis: np.ndarray
    reduced_costs: np.ndarray
    iterations: int


def _pivot(T: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    for i in range(T.shape[0]):
        if i != row and T[i, col] != 0.0:
            T[i] -= T[i, col] * T[row]


def _run(T, basis, allowed, eps, max_pivots, start_iter):
    """Iterate on tableau ``T`` (objective in the last row) until optimal."""
    m = T.shape[0] - 1
    it = start_iter
    while True:
        costs = T[-1, :-1]
        # reduced costs carry roundoff proportional to the tableau entries
        cost_tol = eps * max(1.0, float(np.abs(T[:m, :-1]).max(initial=0.0)))
        candidates = np.flatnonzero((costs < -cost_tol) & allowed)
        if candidates.size == 0:
            return it
        col = int(candidates[0])
        column = T[:m, col]
        pos = column > eps
        if not np.any(pos):
            raise Unbounded("LP objective is unbounded below")
        ratios = np.full(m, np.inf)
        ratios[pos] = T[:m, -1][pos] / column[pos]
        best = ratios.min()
        ties = np.flatnonzero(ratios <= best + eps * max(1.0, abs(best)))
        row = int(min(ties, key=lambda r: basis[r]))
        _pivot(T, row, col)
        basis[row] = col
        it += 1
        if it > max_pivots:
            raise MaxIterations(f"simplex exceeded {max_pivots} pivots")


def simplex(c, A, b, eps: float = 1e-10, max_pivots: int = 50_000) -> SimplexResult:
    """Solve ``min c x`` subject to ``A x = b``, ``x >= 0``.

    Raises:
        Infeasible: phase one ends with positive artificial cost.
        Unbounded: an improving direction has no blocking row.
    """
    c = np.asarray(c, dtype=float)
    A = np.array(A, dtype=float)
    b = np.array(b, dtype=float)
    m, n = A.shape
    flip = b < 0
    A[flip] *= -1
    b[flip] *= -1

    # columns: original n, artificial m, rhs
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n:n + m] = np.eye(m)
    T[:m, -1] = b
    T[-1, :n] = -A.sum(axis=0)
    T[-1, -1] = -b.sum()
    basis = np.arange(n, n + m)
    allowed = np.ones(n + m, dtype=bool)
    it = _run(T, basis, allowed, eps, max_pivots, 0)
    scale = max(1.0, np.abs(b).max(initial=0.0))
    if -T[-1, -1] > 1e-8 * scale:
        raise Infeasible(f"LP infeasible (phase-one residual {-T[-1, -1]:.3e})")

    # drive artificials out of the basis; drop redundant rows
    keep = np.ones(m, dtype=bool)
    for r in range(m):
        if basis[r] >= n:
            nz = np.flatnonzero(np.abs(T[r, :n]) > 1e-9)
            if nz.size:
                _pivot(T, r, int(nz[0]))
                basis[r] = int(nz[0])
            else:
                keep[r] = False
    rows = np.flatnonzero(keep)
    T = np.vstack([T[rows][:, list(range(n)) + [n + m]], np.zeros((1, n + 1))])
    basis = basis[rows]
    m = rows.size

    T[-1, :n] = c
    for r in range(m):
        T[-1] -= c[basis[r]] * T[r]
    allowed = np.ones(n, dtype=bool)
    it = _run(T, basis, allowed, eps, max_pivots, it)

    x = np.zeros(n)
    x[basis] = T[:m, -1]
    return SimplexResult(x, float(c @ x), basis.copy(), T[-1, :n].copy(), it)


def linprog_free(c, A_eq=None, b_eq=None, A_ub=None, b_ub=None, free=None, **kw):
    """``min c x`` with ``A_eq x = b_eq``, ``A_ub x <= b_ub``; ``free`` marks unbounded vars.

    Non-free variables are ``>= 0``. Returns ``(x, objective)``.
    """
    c = np.asarray(c, dtype=float)
    n = c.shape[0]
    free = np.zeros(n, dtype=bool) if free is None else np.asarray(free, dtype=bool)
    A_eq = np.zeros((0, n)) if A_eq is None else np.asarray(A_eq, dtype=float)
    b_eq = np.zeros(0) if b_eq is None else np.asarray(b_eq, dtype=float)
    A_ub = np.zeros((0, n)) if A_ub is None else np.asarray(A_ub, dtype=float)
    b_ub = np.zeros(0) if b_ub is None else np.asarray(b_ub, dtype=float)
    nf = int(free.sum())
    k = A_ub.shape[0]
    neg = np.zeros((n, nf))
    neg[np.flatnonzero(free), np.arange(nf)] = -1.0
    # x = x_pos + neg @ x_neg, plus slacks for the inequalities
    A = np.block([
        [A_eq, A_eq @ neg, np.zeros((A_eq.shape[0], k))],
        [A_ub, A_ub @ neg, np.eye(k)],
    ])
    b = np.concatenate([b_eq, b_ub])
    cc = np.concatenate([c, c @ neg, np.zeros(k)])
    res = simplex(cc, A, b, **kw)
    x = res.x[:n] + neg @ res.x[n:n + nf]
    return x, res.objective
