"""Vertex-domain windowing as filtering on the dual shift.

Multiplying a signal by a window ``w`` maps its GFT through
``V^H diag(w) V``, which shares eigenvectors with the dual shift and is
therefore a polynomial in it whenever the dual spectrum is simple. The
coefficients solve the Vandermonde system ``Psi_f h_f = w``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .axiomatic import DualGraphResult
from .errors import DimensionMismatch, IllConditioned, RepeatedDualEigenvalues
from .gsp import (
    GraphShiftOperator,
    GraphSignal,
    PolynomialFilter,
    apply_filter,
    filter_matrix,
    gft,
)
from .reports import CheckReport
from .spectral import DEFAULT_TOL, ToleranceConfig, as_vector, require_simple_spectrum

MAX_CONDITION = 1e12
WINDOWING_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class VandermondeSystem:
    nodes: np.ndarray
    matrix: np.ndarray
    condition_estimate: float

    @classmethod
    def from_nodes(cls, nodes) -> "VandermondeSystem":
        nodes = as_vector(nodes, "nodes")
        psi = np.vander(nodes, nodes.shape[0], increasing=True)
        return cls(nodes, psi, float(abs(np.linalg.cond(psi, 1))))


def window_signal(w, x) -> GraphSignal:
    """Entrywise product ``w * x``."""
    w = as_vector(np.asarray(w), "window")
    x = as_vector(np.asarray(x), "signal")
    if w.shape != x.shape:
        raise DimensionMismatch(f"window length {w.shape[0]} != signal length {x.shape[0]}")
    return GraphSignal(w * x)


def dual_filter_coefficients(dual: DualGraphResult, w,
                             tol: ToleranceConfig = DEFAULT_TOL,
                             max_condition: float = MAX_CONDITION) -> PolynomialFilter:
    """Coefficients ``h_f`` of the dual-domain filter equivalent to windowing by ``w``.

    Raises:
        RepeatedDualEigenvalues: the dual spectrum is not simple.
        IllConditioned: the 1-norm condition number of ``Psi_f`` exceeds the gate.
    """
    lam_f = dual.dual_eigenvalues
    w = as_vector(np.asarray(w), "window")
    if w.shape[0] != lam_f.shape[0]:
        raise DimensionMismatch(f"window of length {w.shape[0]} for {lam_f.shape[0]} nodes")
    require_simple_spectrum(lam_f, tol, RepeatedDualEigenvalues)
    system = VandermondeSystem.from_nodes(lam_f)
    if not np.isfinite(system.condition_estimate) or system.condition_estimate > max_condition:
        raise IllConditioned(f"Vandermonde condition {system.condition_estimate:.3e}")
    h = np.linalg.solve(system.matrix, w)
    res = np.linalg.norm(system.matrix @ h - w)
    if res > 1e-8 * max(1.0, np.linalg.norm(w)):
        raise IllConditioned(f"Vandermonde residual {res:.3e} too large")
    return PolynomialFilter(h)


def _rel(a, b) -> float:
    nb = np.linalg.norm(b)
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)) / (nb if nb > 0 else 1.0))


def windowing_routes(S: GraphShiftOperator, dual: DualGraphResult, w, x) -> dict:
    """Both sides of the windowing identity along with the intermediate pieces."""
    h_f = dual_filter_coefficients(dual, w, S.tol)
    x_w = window_signal(w, x)
    lhs = gft(S, x_w).values
    rhs = apply_filter(dual.dual_shift, h_f, gft(S, x).values).values
    V = S.V
    mapping = V.conj().T @ (np.asarray(w, dtype=np.complex128)[:, None] * V)
    poly = filter_matrix(dual.dual_shift, h_f)
    return {
        "h_f": h_f.coefficients,
        "x_w": x_w.values,
        "windowed_gft": lhs,
        "filtered_gft": rhs,
        "mapping_matrix": mapping,
        "filter_matrix": poly,
        "signal_discrepancy": _rel(rhs, lhs),
        "mapping_discrepancy": _rel(poly, mapping),
    }


def verify_windowing_duality(S: GraphShiftOperator, dual: DualGraphResult, w, x,
                             tol: float = WINDOWING_TOL) -> CheckReport:
    """Check ``gft(w * x) == H(h_f, S_f) gft(x)``; SKIP on a degenerate dual spectrum."""
    try:
        routes = windowing_routes(S, dual, w, x)
    except RepeatedDualEigenvalues as exc:
        return CheckReport.skipped("windowing", tol, f"RepeatedDualEigenvalues: {exc}")
    except IllConditioned as exc:
        return CheckReport.skipped("windowing", tol, f"IllConditioned: {exc}")
    res = max(routes["signal_discrepancy"], routes["mapping_discrepancy"])
    return CheckReport.from_residual(
        "windowing", res, tol,
        signal_discrepancy=routes["signal_discrepancy"],
        mapping_discrepancy=routes["mapping_discrepancy"],
    )
