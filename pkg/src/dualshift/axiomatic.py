"""Closed-form dual shifts from a primal eigendecomposition, plus axiom checks.

The dual eigenvectors are ``V^H``. Dual eigenvalues come from

    lam_f = D_f^{-1} V D lam,

with ``D = diag(g(v_1), ..., g(v_N))`` over the columns of ``V`` and ``D_f``
the same over the columns of ``V^H``, for a permutation-invariant ``g``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidPermutation, ZeroWeight
from .gsp import GraphShiftOperator
from .reports import CheckReport
from .spectral import (
    DEFAULT_TOL,
    EigenDecomposition,
    ToleranceConfig,
    _square,
    as_vector,
    check_simple_spectrum,
)

AXIOM_TOL = 1e-8


@dataclass(frozen=True)
class GFunction:
    """Permutation-invariant weight ``g``: constant 1 or ``||x||_p ** q``."""

    kind: str = "constant"
    p: float = 2.0
    q: float = 1.0

    def __post_init__(self):
        if self.kind not in ("constant", "norm_power"):
            raise ValueError(f"unknown g kind {self.kind!r}")
        if self.kind == "norm_power" and not self.p >= 1:
            raise ValueError(f"norm order p must be >= 1, got {self.p}")

    @classmethod
    def constant(cls) -> "GFunction":
        return cls("constant")

    @classmethod
    def norm_power(cls, p: float, q: float) -> "GFunction":
        return cls("norm_power", float(p), float(q))

    @classmethod
    def parse(cls, text: str) -> "GFunction":
        """Parse ``const`` or ``norm:p:q``."""
        text = text.strip().lower()
        if text in ("const", "constant"):
            return cls.constant()
        parts = text.split(":")
        if len(parts) == 3 and parts[0] == "norm":
            return cls.norm_power(float(parts[1]), float(parts[2]))
        raise ValueError(f"cannot parse g function {text!r}; use 'const' or 'norm:p:q'")

    def __call__(self, x) -> float:
        if self.kind == "constant":
            return 1.0
        x = np.asarray(x)
        if np.isinf(self.p):
            nrm = np.abs(x).max()
        else:
            nrm = np.sum(np.abs(x) ** self.p) ** (1.0 / self.p)
        return float(nrm ** self.q)

    def weights(self, M) -> np.ndarray:
        """``g`` evaluated on every column of ``M``."""
        M = np.asarray(M)
        return np.array([self(M[:, k]) for k in range(M.shape[1])])

    def to_dict(self) -> dict:
        if self.kind == "constant":
            return {"kind": "constant"}
        return {"kind": "norm_power", "p": self.p, "q": self.q}


@dataclass(frozen=True, eq=False)
class DualGraphResult:
    dual_shift: GraphShiftOperator
    dual_eigenvalues: np.ndarray
    dual_eigenvectors: np.ndarray
    method: dict
    diagnostics: dict = field(default_factory=dict)


def _check_weights(w: np.ndarray, which: str):
    if np.any(np.abs(w) < 1e-14):
        raise ZeroWeight(f"g vanishes on a column of {which}")


def dual_eigenvalues_from(V, lam, g: GFunction = GFunction()) -> np.ndarray:
    """``D_f^{-1} V D lam`` for an explicit (not necessarily canonical) pair."""
    V = _square(V, "V")
    lam = as_vector(lam, "eigenvalues")
    d = g.weights(V)
    d_f = g.weights(V.conj().T)
    _check_weights(d, "V")
    _check_weights(d_f, "V^H")
    return (V @ (d * lam)) / d_f


def dual_eigenvalues(evd: EigenDecomposition, g: GFunction = GFunction()) -> np.ndarray:
    return dual_eigenvalues_from(evd.eigenvectors, evd.eigenvalues, g)


def dual_matrix(V, lam_f) -> np.ndarray:
    """``V^H diag(lam_f) V``."""
    V = np.asarray(V)
    Vf = V.conj().T
    return (Vf * np.asarray(lam_f)) @ Vf.conj().T


def offdiag_stats(S, threshold: float) -> dict:
    S = np.asarray(S)
    n = S.shape[0]
    mask = np.abs(S) > threshold
    np.fill_diagonal(mask, False)
    pairs = int(np.count_nonzero(np.triu(mask | mask.T, 1)))
    total_pairs = n * (n - 1) // 2
    return {
        "offdiag_nonzero": int(np.count_nonzero(mask)),
        "offdiag_pairs_nonzero": pairs,
        "offdiag_pairs_total": total_pairs,
        "nonzero_pair_fraction": pairs / total_pairs if total_pairs else 0.0,
        "max_abs_entry": float(np.abs(S).max(initial=0.0)),
        "threshold": threshold,
    }


def make_dual_result(V, lam_f, method: dict, tol: ToleranceConfig = DEFAULT_TOL,
                     extra: dict | None = None) -> DualGraphResult:
    V = np.asarray(V)
    lam_f = np.asarray(lam_f, dtype=np.complex128)
    Vf = V.conj().T
    Sf = dual_matrix(V, lam_f)
    n = V.shape[0]
    dual = GraphShiftOperator.from_matrix(
        Sf,
        evd=EigenDecomposition(Vf, lam_f),
        node_labels=[str(k) for k in range(n)],
        meta={"generator": "dual", "params": method},
        tol=tol,
    )
    diag = offdiag_stats(Sf, tol.zero_edge_threshold)
    diag["dual_simple_spectrum"] = check_simple_spectrum(lam_f, tol)
    if extra:
        diag.update(extra)
    return DualGraphResult(dual, dual.eigenvalues, dual.V, method, diag)


def build_dual(S: GraphShiftOperator, g: GFunction = GFunction()) -> DualGraphResult:
    """Dual shift ``V^H diag(lam_f) V`` with ``lam_f`` from the closed form.

    Dual node ``k`` is the primal frequency ``(lam_k, v_k)``. The dual keeps
    its constructed eigendecomposition ``(V^H, lam_f)`` so that taking the
    dual again uses ``V`` unchanged.
    """
    lam_f = dual_eigenvalues_from(S.V, S.eigenvalues, g)
    return make_dual_result(S.V, lam_f, {"kind": "axiomatic", "g": g.to_dict()}, S.tol)


def _rel(a, b) -> float:
    nb = np.linalg.norm(b)
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)) / (nb if nb > 0 else 1.0))


def as_permutation(P, n: int) -> np.ndarray:
    """Index array ``perm`` with ``(P x)[i] = x[perm[i]]``; accepts indices or a matrix."""
    arr = np.asarray(P)
    if arr.ndim == 2:
        if arr.shape != (n, n) or not np.all((arr == 0) | (arr == 1)):
            raise InvalidPermutation("permutation matrix must be a 0/1 N x N matrix")
        if not (np.all(arr.sum(0) == 1) and np.all(arr.sum(1) == 1)):
            raise InvalidPermutation("not a permutation matrix")
        return np.argmax(arr, axis=1)
    if arr.ndim != 1 or arr.shape[0] != n:
        raise InvalidPermutation(f"permutation must have length {n}")
    if not np.issubdtype(arr.dtype, np.integer) or sorted(arr.tolist()) != list(range(n)):
        raise InvalidPermutation(f"{arr.tolist()} is not a permutation of 0..{n - 1}")
    return arr.astype(int)


def permutation_matrix(perm) -> np.ndarray:
    perm = np.asarray(perm)
    return np.eye(perm.shape[0])[perm]


def verify_axiom_duality(S: GraphShiftOperator, g: GFunction = GFunction(),
                         tol: float = AXIOM_TOL) -> CheckReport:
    """The dual of the dual must give back ``S``."""
    dual = build_dual(S, g)
    dual2 = build_dual(dual.dual_shift, g)
    lam_back = dual2.dual_eigenvalues
    res = max(_rel(dual2.dual_shift.matrix, S.matrix), _rel(lam_back, S.eigenvalues))
    return CheckReport.from_residual("A1_duality", res, tol, g=g.to_dict())


def verify_axiom_reordering(S: GraphShiftOperator, P, g: GFunction = GFunction(),
                            tol: float = AXIOM_TOL) -> CheckReport:
    """Relabeling the primal nodes must leave the dual unchanged.

    The relabeled shift ``P S P^T`` is given the transported EVD ``(P V, lam)``.
    """
    perm = as_permutation(P, S.n)
    V, lam = S.V, S.eigenvalues
    lam_f = dual_eigenvalues_from(V, lam, g)
    PV = V[perm, :]
    lam_fp = dual_eigenvalues_from(PV, lam, g)
    Sf = dual_matrix(V, lam_f)
    Sf_perm = dual_matrix(PV, lam_fp)
    res = max(_rel(Sf_perm, Sf), _rel(lam_fp, lam_f[perm]))
    return CheckReport.from_residual(
        "A2_reordering", res, tol, g=g.to_dict(), permutation=perm.tolist()
    )


def verify_axiom_permutation(S: GraphShiftOperator, P, g: GFunction = GFunction(),
                             tol: float = AXIOM_TOL) -> CheckReport:
    """Permuting the eigenpairs must permute the dual nodes accordingly.

    Builds the dual from ``(V P, P^T lam)`` and compares with ``P^T S_f P``.
    """
    perm = as_permutation(P, S.n)
    Pm = permutation_matrix(perm)
    V, lam = S.V, S.eigenvalues
    lam_f = dual_eigenvalues_from(V, lam, g)
    VP = V @ Pm
    lam_p = Pm.T @ lam
    lam_fp = dual_eigenvalues_from(VP, lam_p, g)
    Sf = dual_matrix(V, lam_f)
    Sf_perm = dual_matrix(VP, lam_fp)
    res = max(_rel(Sf_perm, Pm.T @ Sf @ Pm), _rel(lam_fp, lam_f))
    return CheckReport.from_residual(
        "A3_permutation", res, tol, g=g.to_dict(), permutation=perm.tolist()
    )


def is_laplacian_like(S, rtol: float = 1e-9) -> bool:
    """Real, symmetric, zero row sums and non-positive off-diagonal entries."""
    S = _square(S.matrix if isinstance(S, GraphShiftOperator) else S, "S")
    scale = rtol * max(np.linalg.norm(S), 1e-300)
    if np.abs(S.imag).max() > scale:
        return False
    A = S.real
    if np.abs(A - A.T).max() > scale:
        return False
    if np.abs(A.sum(axis=1)).max() > scale:
        return False
    off = A - np.diag(np.diag(A))
    return bool(off.max() <= scale)
