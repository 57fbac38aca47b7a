"""Dense complex linear algebra helpers: eigendecompositions and their checks.

Matrices and vectors are plain ``numpy`` arrays of dtype ``complex128``.
Only real-symmetric matrices are diagonalized internally (cyclic Jacobi);
any other normal shift must come with an eigendecomposition of its own.
"""
from __future__ import annotations

import dataclasses
import io
import os
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    NoConvergence,
    NonSquare,
    NotSymmetric,
    NotUnitary,
    ParseError,
    RepeatedEigenvalues,
)

TOL_ENV_VAR = "DUALSHIFT_TOL"


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical tolerances used across the package.

    Attributes:
        normality_tol: relative Frobenius tolerance of the normality test.
        unitarity_tol: per-dimension tolerance on ``||V^H V - I||_F``.
        simple_spectrum_gap: minimum pairwise eigenvalue distance.
        zero_edge_threshold: magnitude at or below which an entry is no edge.
    """

    normality_tol: float = 1e-10
    unitarity_tol: float = 1e-10
    simple_spectrum_gap: float = 1e-8
    zero_edge_threshold: float = 1e-6

    def __post_init__(self):
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{f.name} must be strictly positive, got {value!r}")

    @classmethod
    def from_env(cls, environ=None) -> "ToleranceConfig":
        """Build a config, applying ``DUALSHIFT_TOL`` overrides if present.

        The variable holds comma-separated ``name=value`` pairs, e.g.
        ``DUALSHIFT_TOL="zero_edge_threshold=1e-8,simple_spectrum_gap=1e-6"``.
        A bare number overrides every tolerance at once.
        """
        environ = os.environ if environ is None else environ
        raw = environ.get(TOL_ENV_VAR, "").strip()
        if not raw:
            return cls()
        names = [f.name for f in dataclasses.fields(cls)]
        try:
            return cls(**{name: float(raw) for name in names})
        except ValueError:
            pass
        overrides = {}
        for item in raw.split(","):
            if not item.strip():
                continue
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep or key not in names:
                raise ValueError(f"bad {TOL_ENV_VAR} entry: {item!r}")
            overrides[key] = float(value)
        return cls(**overrides)


DEFAULT_TOL = ToleranceConfig()


def as_matrix(a, name="matrix") -> np.ndarray:
    """Return ``a`` as a finite complex128 2-D array."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def as_vector(a, name="vector") -> np.ndarray:
    v = np.array(a, dtype=np.complex128)
    if v.ndim != 1:
        raise DimensionMismatch(f"{name} must be 1-D, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} has non-finite entries")
    return v


def _square(a, name="matrix") -> np.ndarray:
    m = as_matrix(a, name)
    if m.shape[0] != m.shape[1]:
        raise NonSquare(f"{name} must be square, got shape {m.shape}")
    return m


def _frozen(a: np.ndarray) -> np.ndarray:
    a = a.copy()
    a.setflags(write=False)
    return a


def unitarity_error(V) -> float:
    V = np.asarray(V)
    return float(np.linalg.norm(V.conj().T @ V - np.eye(V.shape[1])))


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Unitary eigenbasis ``V`` (columns) and eigenvalues ``lam`` of a normal matrix."""

    eigenvectors: np.ndarray
    eigenvalues: np.ndarray
    canonical: bool = False

    def __post_init__(self):
        V = _square(self.eigenvectors, "eigenvectors")
        lam = as_vector(self.eigenvalues, "eigenvalues")
        if lam.shape[0] != V.shape[0]:
            raise DimensionMismatch(
                f"{lam.shape[0]} eigenvalues for a {V.shape[0]}x{V.shape[0]} basis"
            )
        n = V.shape[0]
        err = unitarity_error(V)
        if err > DEFAULT_TOL.unitarity_tol * max(n, 1):
            raise NotUnitary(f"||V^H V - I||_F = {err:.3e} exceeds tolerance")
        object.__setattr__(self, "eigenvectors", _frozen(V))
        object.__setattr__(self, "eigenvalues", _frozen(lam))

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]

    def reconstruct(self) -> np.ndarray:
        """Return ``V diag(lam) V^H``."""
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.conj().T


def _canonical_order(lam: np.ndarray) -> np.ndarray:
    idx = np.arange(lam.shape[0])
    return np.lexsort((idx, -lam.imag, -lam.real))


def _phase_fix(V: np.ndarray, tie_tol: float = 1e-12) -> np.ndarray:
    V = V.copy()
    for k in range(V.shape[1]):
        col = V[:, k]
        mags = np.abs(col)
        pivot = int(np.flatnonzero(mags >= mags.max() - tie_tol)[0])
        if mags[pivot] == 0:
            continue
        phase = col[pivot] / mags[pivot]
        col = col * np.conj(phase)
        col[pivot] = mags[pivot]
        V[:, k] = col
    return V


def canonicalize(evd: EigenDecomposition) -> EigenDecomposition:
    """Sort eigenpairs and fix eigenvector phases deterministically.

    Eigenvalues are ordered by descending real part, then descending imaginary
    part, then original position. Each eigenvector is rotated so that its
    largest-magnitude entry (the first one on ties within 1e-12) is real and
    positive.
    """
    order = _canonical_order(evd.eigenvalues)
    V = _phase_fix(evd.eigenvectors[:, order])
    return EigenDecomposition(V, evd.eigenvalues[order], canonical=True)


def reconstruction_error(evd: EigenDecomposition, S) -> float:
    return float(np.linalg.norm(evd.reconstruct() - np.asarray(S)))


def is_real_symmetric(S, atol: float = 1e-12) -> bool:
    S = np.asarray(S)
    return bool(
        S.ndim == 2
        and S.shape[0] == S.shape[1]
        and np.all(np.abs(S.imag) <= atol)
        and np.all(np.abs(S - S.T) <= atol)
    )


def symmetric_evd(S, max_sweeps: int = 50) -> EigenDecomposition:
    """Diagonalize a real-symmetric matrix with the cyclic Jacobi method.

    Sweeps over all (p, q) pairs in row order, annihilating each off-diagonal
    entry with a plane rotation, until every off-diagonal magnitude falls
    below ``1e-12 * ||S||_F``.

    Args:
        S: square matrix, real and symmetric to 1e-12 entrywise.
        max_sweeps: sweep budget.

    Returns:
        Canonicalized EigenDecomposition.

    Raises:
        NotSymmetric: if ``S`` is not real-symmetric.
        NoConvergence: if the sweep budget runs out.
    """
    S = _square(S, "S")
    if not is_real_symmetric(S):
        raise NotSymmetric("symmetric_evd needs a real-symmetric matrix")
    A = S.real.copy()
    A = 0.5 * (A + A.T)
    n = A.shape[0]
    V = np.eye(n)
    thresh = 1e-12 * np.linalg.norm(A)
    converged = False
    for _ in range(max_sweeps + 1):
        off = np.abs(A - np.diag(np.diag(A)))
        if off.max(initial=0.0) <= thresh:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= thresh:
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                if tau >= 0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                ap, aq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * ap - s * aq
                A[:, q] = s * ap + c * aq
                rp, rq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                A[p, q] = A[q, p] = 0.0
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    if not converged:
        raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")
    return canonicalize(EigenDecomposition(V, np.diag(A)))


def check_normal(S, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True iff ``||S S^H - S^H S||_F <= normality_tol * max(1, ||S||_F^2)``."""
    S = _square(S, "S")
    Sh = S.conj().T
    comm = np.linalg.norm(S @ Sh - Sh @ S)
    return bool(comm <= tol.normality_tol * max(1.0, np.linalg.norm(S) ** 2))


def min_eigengap(lam) -> float:
    lam = as_vector(lam, "eigenvalues")
    if lam.shape[0] < 2:
        return np.inf
    d = np.abs(lam[:, None] - lam[None, :])
    return float(d[np.triu_indices(lam.shape[0], 1)].min())


def check_simple_spectrum(lam, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True iff all eigenvalues are pairwise at least ``simple_spectrum_gap`` apart."""
    return min_eigengap(lam) >= tol.simple_spectrum_gap


def require_simple_spectrum(lam, tol: ToleranceConfig = DEFAULT_TOL, exc=RepeatedEigenvalues):
    if not check_simple_spectrum(lam, tol):
        raise exc(f"eigenvalues not simple: minimum gap {min_eigengap(lam):.3e}")


# --- CSV ---------------------------------------------------------------------

def format_complex(z: complex) -> str:
    z = complex(z)
    return f"{z.real:.17g}{z.imag:+.17g}j"


def parse_complex(token: str) -> complex:
    text = token.strip().replace(" ", "")
    if not text:
        raise ParseError("empty CSV field")
    try:
        z = complex(text.replace("i", "j") if text.endswith("i") else text)
    except ValueError as exc:
        raise ParseError(f"cannot parse complex number {token!r}") from exc
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise ParseError(f"non-finite value {token!r}")
    return z


def matrix_to_csv(M) -> str:
    M = np.atleast_2d(np.asarray(M, dtype=np.complex128))
    return "".join(",".join(format_complex(z) for z in row) + "\n" for row in M)


def matrix_from_csv(text: str) -> np.ndarray:
    rows = []
    for line in io.StringIO(text):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append([parse_complex(t) for t in line.split(",")])
    if not rows:
        raise ParseError("CSV holds no rows")
    if len({len(r) for r in rows}) != 1:
        raise ParseError("CSV rows have unequal lengths")
    return np.array(rows, dtype=np.complex128)


def vector_to_csv(v) -> str:
    """One entry per line."""
    return matrix_to_csv(np.asarray(v, dtype=np.complex128).reshape(-1, 1))


def vector_from_csv(text: str) -> np.ndarray:
    M = matrix_from_csv(text)
    if M.shape[0] == 1 or M.shape[1] == 1:
        return M.ravel()
    raise ParseError(f"expected a vector, got a {M.shape[0]}x{M.shape[1]} table")
