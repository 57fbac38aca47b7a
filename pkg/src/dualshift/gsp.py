"""Graph shift operators, graph signals, the GFT and polynomial graph filters."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegreeTooHigh, DimensionMismatch, IndexOutOfRange, NotNormal
from .spectral import (
    DEFAULT_TOL,
    EigenDecomposition,
    ToleranceConfig,
    _frozen,
    _square,
    as_vector,
    check_normal,
    is_real_symmetric,
    symmetric_evd,
)

VERTEX = "vertex"
FREQUENCY = "frequency"


@dataclass(frozen=True, eq=False)
class GraphShiftOperator:
    """A normal shift matrix together with its eigendecomposition.

    Entry ``(i, j)`` with ``i != j`` stands for the edge ``j -> i``. The
    diagonal is free.
    """

    matrix: np.ndarray
    evd: EigenDecomposition
    node_labels: tuple = ()
    directed: bool = False
    meta: dict = field(default_factory=dict)
    tol: ToleranceConfig = DEFAULT_TOL

    def __post_init__(self):
        S = _square(self.matrix, "matrix")
        n = S.shape[0]
        if self.evd.n != n:
            raise DimensionMismatch(f"EVD of size {self.evd.n} for a {n}-node shift")
        if not check_normal(S, self.tol):
            raise NotNormal("shift operator is not normal")
        err = np.linalg.norm(self.evd.reconstruct() - S)
        if err > 1e-9 * max(1.0, np.linalg.norm(S)):
            raise ValueError(f"EVD does not reconstruct the matrix (error {err:.3e})")
        labels = tuple(str(x) for x in self.node_labels) or tuple(str(i) for i in range(n))
        if len(labels) != n:
            raise DimensionMismatch(f"{len(labels)} labels for {n} nodes")
        object.__setattr__(self, "matrix", _frozen(S))
        object.__setattr__(self, "node_labels", labels)

    @classmethod
    def from_matrix(cls, S, evd=None, node_labels=(), directed=None, meta=None,
                    tol: ToleranceConfig = DEFAULT_TOL) -> "GraphShiftOperator":
        """Wrap a matrix, diagonalizing it with Jacobi when no EVD is given."""
        S = _square(S, "S")
        if evd is None:
            evd = symmetric_evd(S)
        if directed is None:
            directed = not np.allclose(S, S.T, rtol=0, atol=1e-12)
        return cls(S, evd, tuple(node_labels), bool(directed), dict(meta or {}), tol)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def V(self) -> np.ndarray:
        return self.evd.eigenvectors

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.evd.eigenvalues

    @property
    def is_real_symmetric(self) -> bool:
        return is_real_symmetric(self.matrix)

    def edges(self, threshold=None) -> list[tuple[int, int]]:
        """Return ``(source, target)`` pairs of off-diagonal entries above threshold."""
        thr = self.tol.zero_edge_threshold if threshold is None else threshold
        mask = np.abs(self.matrix) > thr
        np.fill_diagonal(mask, False)
        return [(int(j), int(i)) for i, j in zip(*np.nonzero(mask))]


@dataclass(frozen=True, eq=False)
class GraphSignal:
    values: np.ndarray
    domain: str = VERTEX

    def __post_init__(self):
        if self.domain not in (VERTEX, FREQUENCY):
            raise ValueError(f"unknown signal domain {self.domain!r}")
        object.__setattr__(self, "values", _frozen(as_vector(self.values, "signal")))

    def __array__(self, dtype=None, copy=None):
        return np.array(self.values, dtype=dtype)

    def __len__(self):
        return self.values.shape[0]


@dataclass(frozen=True, eq=False)
class PolynomialFilter:
    """Filter ``H = sum_l h[l] S^l`` given by its coefficients ``h[0..L]``."""

    coefficients: np.ndarray

    def __post_init__(self):
        h = as_vector(self.coefficients, "coefficients")
        if h.shape[0] == 0:
            raise ValueError("filter needs at least one coefficient")
        object.__setattr__(self, "coefficients", _frozen(h))

    @property
    def degree(self) -> int:
        return self.coefficients.shape[0] - 1


def _signal(x, n: int) -> np.ndarray:
    v = as_vector(np.asarray(x), "signal")
    if v.shape[0] != n:
        raise DimensionMismatch(f"signal of length {v.shape[0]} on a {n}-node graph")
    return v


def _coefficients(h, n: int) -> np.ndarray:
    if not isinstance(h, PolynomialFilter):
        h = PolynomialFilter(h)
    if h.degree > n - 1:
        raise DegreeTooHigh(f"filter degree {h.degree} exceeds N-1 = {n - 1}")
    return h.coefficients


def gft(S: GraphShiftOperator, x) -> GraphSignal:
    """Graph Fourier transform ``V^H x``."""
    x = _signal(x, S.n)
    return GraphSignal(S.V.conj().T @ x, FREQUENCY)


def igft(S: GraphShiftOperator, x_hat) -> GraphSignal:
    """Inverse GFT ``V x_hat``."""
    x_hat = _signal(x_hat, S.n)
    return GraphSignal(S.V @ x_hat, VERTEX)


def frequency_response(S: GraphShiftOperator, h) -> np.ndarray:
    """Return ``h~[i] = sum_l h[l] * lam[i]**l``."""
    coeffs = _coefficients(h, S.n)
    lam = S.eigenvalues
    out = np.zeros_like(lam)
    for c in coeffs[::-1]:
        out = out * lam + c
    return out


def apply_filter(S: GraphShiftOperator, h, x) -> GraphSignal:
    """Apply ``sum_l h[l] S^l`` to ``x`` by Horner's rule on the shift."""
    coeffs = _coefficients(h, S.n)
    domain = x.domain if isinstance(x, GraphSignal) else VERTEX
    x = _signal(x, S.n)
    y = np.zeros_like(x)
    for c in coeffs[::-1]:
        y = S.matrix @ y + c * x
    return GraphSignal(y, domain)


def apply_filter_spectral(S: GraphShiftOperator, h, x) -> GraphSignal:
    """Apply the same filter as ``V diag(h~) V^H x``."""
    resp = frequency_response(S, h)
    x = _signal(x, S.n)
    return GraphSignal(S.V @ (resp * (S.V.conj().T @ x)))


def filter_matrix(S: GraphShiftOperator, h) -> np.ndarray:
    """Dense ``sum_l h[l] S^l``, accumulated by Horner's rule."""
    coeffs = _coefficients(h, S.n)
    H = np.zeros_like(S.matrix)
    eye = np.eye(S.n)
    for c in coeffs[::-1]:
        H = S.matrix @ H + c * eye
    return H


def canonical_basis(n: int, i: int) -> GraphSignal:
    """Indicator signal of node ``i`` (1-based, ``1 <= i <= n``)."""
    if n < 1 or not 1 <= i <= n:
        raise IndexOutOfRange(f"index {i} outside 1..{n}")
    e = np.zeros(n, dtype=np.complex128)
    e[i - 1] = 1.0
    return GraphSignal(e)
