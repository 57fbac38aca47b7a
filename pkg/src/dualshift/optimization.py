"""Sparsest dual shift with fixed eigenvectors, posed as an l1 linear program.

With the dual eigenbasis ``V_f`` fixed, every entry of
``S_f = V_f diag(lam_f) V_f^H`` is linear in ``lam_f``. Minimizing the l1
mass of the off-diagonal entries (real and imaginary parts counted
separately) under linear constraints is therefore an LP in ``lam_f``.

The main solver is ADMM with a support-polishing step; an independent tableau
simplex is kept as a test oracle for small problems.
"""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field

import numpy as np

from .axiomatic import DualGraphResult, make_dual_result
from .errors import Infeasible, MaxIterations, Unbounded
from .gsp import GraphShiftOperator
from .reports import PASS, SKIP, CheckReport
from .simplex import linprog_free
from .spectral import (
    DEFAULT_TOL,
    EigenDecomposition,
    ToleranceConfig,
    _square,
    check_simple_spectrum,
    is_real_symmetric,
    symmetric_evd,
    unitarity_error,
)

log = logging.getLogger(__name__)

NORMALIZATIONS = ("first_row_sum_one", "fixed_entry", "none")


@dataclass(frozen=True)
class ConstraintSet:
    """Constraints on the sought dual shift.

    ``real_valued=None`` means "real when ``V_f`` is real". ``fixed_entry`` is
    ``(i, j, value)`` (0-based) and is used only with
    ``normalization="fixed_entry"``.
    """

    hollow_diagonal: bool = True
    real_valued: bool | None = None
    normalization: str = "first_row_sum_one"
    fixed_entry: tuple | None = None
    nonnegative_offdiag: bool = False

    def __post_init__(self):
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(f"unknown normalization {self.normalization!r}")
        if self.normalization == "none":
            raise ValueError("an l1 objective needs a normalization, or lam_f = 0 is optimal")
        if self.normalization == "fixed_entry":
            if self.fixed_entry is None or len(self.fixed_entry) != 3:
                raise ValueError("fixed_entry normalization needs (i, j, value)")
            i, j, v = self.fixed_entry
            object.__setattr__(self, "fixed_entry", (int(i), int(j), complex(v)))

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.fixed_entry is not None:
            i, j, v = self.fixed_entry
            d["fixed_entry"] = [i, j, [v.real, v.imag]]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ConstraintSet":
        d = dict(d)
        fe = d.get("fixed_entry")
        if fe is not None:
            v = fe[2]
            if isinstance(v, (list, tuple)):
                v = complex(v[0], v[1])
            d["fixed_entry"] = (fe[0], fe[1], v)
        return cls(**d)


@dataclass
class SolverReport:
    objective_value: float
    iterations: int
    primal_residual: float
    dual_residual: float
    status: str
    polished: bool = False
    solver: str = "admm"

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SparseDualSolution:
    eigenvalues: np.ndarray
    matrix: np.ndarray
    report: SolverReport

    def __iter__(self):
        return iter((self.eigenvalues, self.matrix, self.report))


@dataclass
class _LP:
    """``min ||A x||_1`` s.t. ``C x = d`` and ``(A x)[nonneg] >= 0``."""

    A: np.ndarray
    C: np.ndarray
    d: np.ndarray
    nonneg: np.ndarray
    real: bool
    N: int = 0
    extra: dict = field(default_factory=dict)

    def to_lambda(self, x) -> np.ndarray:
        if self.real:
            return x.astype(np.complex128)
        return x[: self.N] + 1j * x[self.N:]


def _use_real(V_f: np.ndarray, constraints: ConstraintSet) -> bool:
    if constraints.real_valued is None:
        return bool(np.all(np.abs(V_f.imag) <= 1e-14))
    return constraints.real_valued


def _entry_map(V_f: np.ndarray, real: bool) -> np.ndarray:
    """Complex matrix ``E`` with ``vec(S_f) = E x`` (row-major ``vec``)."""
    N = V_f.shape[0]
    T = np.einsum("ai,bi->abi", V_f, V_f.conj()).reshape(N * N, N)
    return T if real else np.hstack([T, 1j * T])


def _ri(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return rows.real, rows.imag


def _build_lp(V_f: np.ndarray, constraints: ConstraintSet) -> _LP:
    N = V_f.shape[0]
    real = _use_real(V_f, constraints)
    E = _entry_map(V_f, real)
    idx = np.arange(N * N).reshape(N, N)
    off = idx[~np.eye(N, dtype=bool)]
    diag = np.diag(idx)

    re, im = _ri(E[off])
    live_re = np.linalg.norm(re, axis=1) > 1e-14
    live_im = np.linalg.norm(im, axis=1) > 1e-14
    A = np.vstack([re[live_re], im[live_im]])
    nonneg = np.zeros(A.shape[0], dtype=bool)

    eq_rows, eq_rhs = [], []

    def add_eq(row: np.ndarray, rhs: complex):
        for part, val in ((row.real, rhs.real), (row.imag, rhs.imag)):
            if np.linalg.norm(part) > 1e-14:
                eq_rows.append(part)
                eq_rhs.append(val)
            elif abs(val) > 1e-12:
                raise Infeasible("normalization cannot be met by any dual eigenvalues")

    if constraints.hollow_diagonal:
        for k in diag:
            add_eq(E[k], 0j)
    if constraints.normalization == "first_row_sum_one":
        add_eq(E[idx[0]].sum(axis=0), 1 + 0j)
    elif constraints.normalization == "fixed_entry":
        i, j, v = constraints.fixed_entry
        if not (0 <= i < N and 0 <= j < N):
            raise ValueError(f"fixed entry ({i}, {j}) outside a {N}x{N} shift")
        add_eq(E[idx[i, j]], v)
    if constraints.nonnegative_offdiag:
        nonneg[: int(live_re.sum())] = True
        for row in im[live_im]:
            eq_rows.append(row)
            eq_rhs.append(0.0)

    n = E.shape[1]
    C = np.array(eq_rows).reshape(-1, n)
    d = np.array(eq_rhs, dtype=float)
    return _LP(A, C, d, nonneg, real, N)


def _objective(V_f, lam) -> float:
    S = (V_f * lam) @ V_f.conj().T
    off = ~np.eye(S.shape[0], dtype=bool)
    return float(np.abs(S[off].real).sum() + np.abs(S[off].imag).sum())


def _check_equalities(lp: _LP):
    if lp.C.shape[0] == 0:
        return
    x0, *_ = np.linalg.lstsq(lp.C, lp.d, rcond=None)
    if np.linalg.norm(lp.C @ x0 - lp.d) > 1e-9 * max(1.0, np.linalg.norm(lp.d)):
        raise Infeasible("equality constraints are inconsistent for this eigenbasis")


def _admm(lp: _LP, rho: float, tol: float, max_iter: int, alpha: float = 1.6):
    A, C, d = lp.A, lp.C, lp.d
    n = A.shape[1]
    m = C.shape[0]
    K = np.block([[A.T @ A, C.T], [C, np.zeros((m, m))]])
    Kp = np.linalg.pinv(K, rcond=1e-13)
    G = Kp[:n, :n] @ A.T
    x_const = Kp[:n, n:] @ d

    z = np.zeros(A.shape[0])
    u = np.zeros(A.shape[0])
    x = x_const.copy()
    r_rel = s_rel = np.inf
    it = 0
    for it in range(1, max_iter + 1):
        x = G @ (z - u) + x_const
        Ax = A @ x
        Ax_hat = alpha * Ax + (1.0 - alpha) * z
        v = Ax_hat + u
        z_old = z
        z = np.sign(v) * np.maximum(np.abs(v) - 1.0 / rho, 0.0)
        if lp.nonneg.any():
            z[lp.nonneg] = np.maximum(v[lp.nonneg] - 1.0 / rho, 0.0)
        u = u + Ax_hat - z
        r = np.linalg.norm(Ax - z)
        s = rho * np.linalg.norm(A.T @ (z - z_old))
        r_rel = r / max(1.0, np.linalg.norm(Ax), np.linalg.norm(z))
        s_rel = s / max(1.0, rho * np.linalg.norm(A.T @ u))
        if r_rel <= tol and s_rel <= tol:
            break
        if it % 50 == 0:
            xp = _polish(lp, x, z)
            if xp is not None and _certify(lp, xp, rho * u):
                return xp, z, it, float(r_rel), float(s_rel), "optimal"
            if r_rel > 10 * s_rel:
                rho *= 2.0
                u /= 2.0
            elif s_rel > 10 * r_rel:
                rho /= 2.0
                u *= 2.0
    status = "optimal" if (r_rel <= tol and s_rel <= tol) else "max_iter"
    return x, z, it, float(r_rel), float(s_rel), status


def _certify(lp: _LP, x: np.ndarray, y: np.ndarray, tol: float = 1e-9) -> bool:
    """KKT check for a polished point: some multiplier ``y`` near the given one
    must lie in the subdifferential at ``A x`` with ``A^T y`` in the row space of ``C``.
    """
    a = lp.A @ x
    zero = np.abs(a) <= 1e-12 * max(1.0, np.abs(a).max(initial=0.0))
    y0 = np.where(zero, y, np.sign(a))
    # correct y on the zero rows only: A_Z^T delta - C^T mu = -A^T y0
    M = np.hstack([lp.A[zero].T, -lp.C.T])
    rhs = -lp.A.T @ y0
    sol, *_ = np.linalg.lstsq(M, rhs, rcond=None)
    if np.linalg.norm(M @ sol - rhs) > tol * max(1.0, np.linalg.norm(rhs)):
        return False
    yz = y0[zero] + sol[: int(zero.sum())]
    upper = np.all(yz <= 1.0 + tol)
    lower = np.all((yz >= -1.0 - tol) | lp.nonneg[zero])
    return bool(upper and lower)


def _polish(lp: _LP, x: np.ndarray, z: np.ndarray) -> np.ndarray | None:
    """Project ``x`` onto {A_Z x = 0, C x = d} where Z is the zero set of ``z``."""
    zero = z == 0.0
    M = np.vstack([lp.A[zero], lp.C])
    rhs = np.concatenate([np.zeros(int(zero.sum())), lp.d])
    if M.shape[0] == 0:
        return x
    corr, *_ = np.linalg.lstsq(M, M @ x - rhs, rcond=None)
    xp = x - corr
    if np.linalg.norm(M @ xp - rhs) > 1e-10 * max(1.0, np.linalg.norm(rhs)):
        return None
    if lp.nonneg.any() and np.any((lp.A @ xp)[lp.nonneg] < -1e-10):
        return None
    return xp


def solve_sparse_dual(V_f, constraints: ConstraintSet = ConstraintSet(), tol: float = 1e-8,
                      max_iter: int = 50_000, rho: float = 1.0) -> SparseDualSolution:
    """Minimize the off-diagonal l1 mass of ``V_f diag(lam_f) V_f^H``.

    Args:
        V_f: unitary dual eigenbasis (columns).
        constraints: the constraint set.
        tol: ADMM relative primal/dual residual tolerance.
        max_iter: ADMM iteration cap.
        rho: initial ADMM penalty (adapted by residual balancing).

    Returns:
        ``(lam_f, S_f, report)`` as a SparseDualSolution (unpackable).

    Raises:
        Infeasible: the equality constraints admit no dual eigenvalues.
        MaxIterations: ADMM did not reach ``tol``.
    """
    V_f = _square(V_f, "V_f")
    N = V_f.shape[0]
    if unitarity_error(V_f) > 1e-10 * N:
        raise ValueError("V_f must be unitary")
    lp = _build_lp(V_f, constraints)
    _check_equalities(lp)

    x, z, it, r_rel, s_rel, status = _admm(lp, rho, tol, max_iter)
    obj_admm = _objective(V_f, lp.to_lambda(x))
    polished = False
    xp = _polish(lp, x, z)
    if xp is not None:
        obj_p = _objective(V_f, lp.to_lambda(xp))
        if obj_p <= obj_admm + 1e-7 * max(1.0, obj_admm):
            x, polished = xp, True
    if status != "optimal":
        if constraints.nonnegative_offdiag:
            _lp_feasible(lp)
        raise MaxIterations(
            f"ADMM stopped after {it} iterations (primal {r_rel:.2e}, dual {s_rel:.2e})"
        )
    lam = lp.to_lambda(x)
    S = (V_f * lam) @ V_f.conj().T
    report = SolverReport(_objective(V_f, lam), it, r_rel, s_rel, status, polished)
    log.debug("sparse dual solved: %s", report)
    return SparseDualSolution(lam, S, report)


def _lp_feasible(lp: _LP):
    n = lp.A.shape[1]
    A_ub = -lp.A[lp.nonneg]
    linprog_free(np.zeros(n), lp.C, lp.d, A_ub, np.zeros(A_ub.shape[0]),
                 free=np.ones(n, dtype=bool))


def build_sparse_dual(S: GraphShiftOperator, constraints: ConstraintSet = ConstraintSet(),
                      tol: float = 1e-8, max_iter: int = 50_000) -> DualGraphResult:
    """Sparsest dual of ``S`` among shifts with eigenvectors ``V^H``."""
    V = S.V
    sol = solve_sparse_dual(V.conj().T, constraints, tol, max_iter)
    method = {
        "kind": "optimization",
        "objective": "l1",
        "constraints": constraints.to_dict(),
        "tol": tol,
        "max_iter": max_iter,
    }
    return make_dual_result(V, sol.eigenvalues, method, S.tol,
                            extra={"solver": sol.report.to_dict()})


# --- independent oracle ------------------------------------------------------

def brute_force_lp_oracle(V_f, constraints: ConstraintSet = ConstraintSet(),
                          tol: float = 1e-8, max_iter: int = 50_000) -> SparseDualSolution:
    """Same program solved by the tableau simplex; for N <= 6 only.

    The LP is assembled entry by entry from explicit outer products, sharing
    no code with the main solver's vectorized construction.
    """
    V_f = _square(V_f, "V_f")
    N = V_f.shape[0]
    if N > 6:
        raise ValueError("the simplex oracle is limited to N <= 6")
    real = _use_real(V_f, constraints)
    nv = N if real else 2 * N

    def entry_row(a, b):
        row = np.zeros(nv, dtype=np.complex128)
        for i in range(N):
            w = V_f[a, i] * np.conj(V_f[b, i])
            row[i] = w
            if not real:
                row[N + i] = 1j * w
        return row

    obj_rows, signed = [], []
    eq, rhs = [], []
    for a in range(N):
        for b in range(N):
            if a == b:
                continue
            row = entry_row(a, b)
            obj_rows.append(row.real)
            signed.append(constraints.nonnegative_offdiag)
            obj_rows.append(row.imag)
            signed.append(False)
            if constraints.nonnegative_offdiag:
                eq.append(row.imag)
                rhs.append(0.0)

    def add(row, value):
        eq.append(row.real)
        rhs.append(value.real)
        eq.append(row.imag)
        rhs.append(value.imag)

    if constraints.hollow_diagonal:
        for a in range(N):
            add(entry_row(a, a), 0j)
    if constraints.normalization == "first_row_sum_one":
        add(sum(entry_row(0, b) for b in range(N)), 1 + 0j)
    else:
        i, j, v = constraints.fixed_entry
        add(entry_row(i, j), v)

    # variables: lam (free), p_k >= 0, q_k >= 0 with row_k lam = p_k - q_k
    K = len(obj_rows)
    R = np.array(obj_rows).reshape(-1, nv)
    c = np.concatenate([np.zeros(nv), np.ones(2 * K)])
    A_eq = np.zeros((K + len(eq), nv + 2 * K))
    b_eq = np.zeros(K + len(eq))
    A_eq[:K, :nv] = R
    A_eq[:K, nv:nv + K] = -np.eye(K)
    A_eq[:K, nv + K:] = np.eye(K)
    A_eq[K:, :nv] = np.array(eq).reshape(-1, nv)
    b_eq[K:] = rhs
    A_ub = np.zeros((0, nv + 2 * K))
    b_ub = np.zeros(0)
    if any(signed):
        # q_k <= 0 together with q_k >= 0 makes the signed entries non-negative
        sel = np.flatnonzero(signed)
        A_ub = np.zeros((sel.size, nv + 2 * K))
        A_ub[np.arange(sel.size), nv + K + sel] = 1.0
        b_ub = np.zeros(sel.size)
    free = np.zeros(nv + 2 * K, dtype=bool)
    free[:nv] = True
    x, _ = linprog_free(c, A_eq, b_eq, A_ub, b_ub, free=free)
    lam = x[:nv].astype(np.complex128) if real else x[:N] + 1j * x[N:nv]
    S = (V_f * lam) @ V_f.conj().T
    report = SolverReport(_objective(V_f, lam), 0, 0.0, 0.0, "optimal", solver="simplex")
    return SparseDualSolution(lam, S, report)


# --- shift classes -----------------------------------------------------------

def canonical_representative(U, constraints: ConstraintSet = ConstraintSet(),
                             tol: float = 1e-8, max_iter: int = 50_000,
                             tol_config: ToleranceConfig = DEFAULT_TOL) -> GraphShiftOperator:
    """Shift minimizing the objective among all ``U diag(lam) U^H``."""
    U = _square(U, "U")
    sol = solve_sparse_dual(U, constraints, tol, max_iter)
    return GraphShiftOperator.from_matrix(
        sol.matrix,
        evd=EigenDecomposition(U, sol.eigenvalues),
        meta={"generator": "canonical_representative", "params": constraints.to_dict(),
              "solver": sol.report.to_dict()},
        tol=tol_config,
    )


def optimum_is_unique(V_f, constraints: ConstraintSet, objective: float,
                      seed: int = 0, rtol: float = 1e-6) -> bool:
    """Probe the optimal face along one random direction.

    Minimizes and maximizes ``r @ x`` over the feasible points whose
    objective is within ``1e-9`` of ``objective``; a spread above ``rtol``
    means more than one optimal dual.
    """
    V_f = _square(V_f, "V_f")
    lp = _build_lp(V_f, constraints)
    n = lp.A.shape[1]
    K = lp.A.shape[0]
    rng = np.random.default_rng(seed)
    r = rng.standard_normal(n)
    # variables: x (free), t (K) with -t <= A x <= t, sum t <= objective + eps
    eps = 1e-9 * (1.0 + objective)
    A_ub = np.block([
        [lp.A, -np.eye(K)],
        [-lp.A, -np.eye(K)],
        [np.zeros((1, n)), np.ones((1, K))],
    ])
    b_ub = np.concatenate([np.zeros(2 * K), [objective + eps]])
    if lp.nonneg.any():
        sel = lp.A[lp.nonneg]
        A_ub = np.vstack([A_ub, np.hstack([-sel, np.zeros((sel.shape[0], K))])])
        b_ub = np.concatenate([b_ub, np.zeros(sel.shape[0])])
    A_eq = np.hstack([lp.C, np.zeros((lp.C.shape[0], K))])
    free = np.zeros(n + K, dtype=bool)
    free[:n] = True
    cvec = np.concatenate([r, np.zeros(K)])
    try:
        lo_x, _ = linprog_free(cvec, A_eq, lp.d, A_ub, b_ub, free=free)
        hi_x, _ = linprog_free(-cvec, A_eq, lp.d, A_ub, b_ub, free=free)
    except Unbounded:
        # an unbounded optimal face, e.g. adding a multiple of I without hollowness
        return False
    spread = np.linalg.norm(lo_x[:n] - hi_x[:n])
    return bool(spread <= rtol * (1.0 + np.linalg.norm(lo_x[:n])))


def verify_duality_closure(U, constraints: ConstraintSet = ConstraintSet(),
                           tol: float = 1e-6, solver_tol: float = 1e-8,
                           max_iter: int = 50_000) -> CheckReport:
    """Check that the canonical representative is the dual of its own dual.

    ``S*`` is solved on ``U`` and ``S_f*`` on ``U^H``. The eigenbasis of
    ``S_f*`` is then recomputed when possible (Jacobi on a real-symmetric
    ``S_f*`` with simple spectrum) and the program re-solved on its
    conjugate transpose; the result should be ``S*`` again. Non-unique
    optima are reported as SKIP rather than FAIL.
    """
    U = _square(U, "U")
    primal = solve_sparse_dual(U, constraints, solver_tol, max_iter)
    dual = solve_sparse_dual(U.conj().T, constraints, solver_tol, max_iter)
    Sf = dual.matrix
    if is_real_symmetric(Sf, atol=1e-10) and check_simple_spectrum(np.linalg.eigvalsh(Sf.real)):
        basis = symmetric_evd(0.5 * (Sf.real + Sf.real.T)).eigenvectors
        route = "recomputed"
    else:
        basis = U.conj().T
        route = "transported"
    back = solve_sparse_dual(basis.conj().T, constraints, solver_tol, max_iter)
    denom = max(np.linalg.norm(primal.matrix), 1e-300)
    residual = float(np.linalg.norm(back.matrix - primal.matrix) / denom)
    unique = (
        optimum_is_unique(U, constraints, primal.report.objective_value)
        and optimum_is_unique(U.conj().T, constraints, dual.report.objective_value)
    )
    details = {
        "eigenbasis_route": route,
        "degenerate": not unique,
        "objective_primal": primal.report.objective_value,
        "objective_dual": dual.report.objective_value,
    }
    report = CheckReport.from_residual("duality_closure", residual, tol, **details)
    if report.status != PASS and not unique:
        return CheckReport(report.check, residual, tol, SKIP,
                           {**details, "reason": "non-unique LP optimum"})
    return report
