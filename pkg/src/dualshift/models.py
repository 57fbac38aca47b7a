"""Graph generators with known eigenstructure, plus JSON / DOT serialization."""
from __future__ import annotations

import json
import logging

import numpy as np

from .errors import DegenerateSpectrum, ParseError, SchemaError, TooSmall
from .gsp import GraphShiftOperator
from .spectral import (
    DEFAULT_TOL,
    EigenDecomposition,
    ToleranceConfig,
    canonicalize,
    check_simple_spectrum,
    is_real_symmetric,
    symmetric_evd,
)

log = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 generator; uniform draws are ``output / 2**64``."""

    def __init__(self, seed: int):
        self.state = int(seed) & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        return self.next_u64() / 2.0**64


def _check_n(n: int):
    if n < 2:
        raise TooSmall(f"need at least 2 nodes, got {n}")


def _meta(generator, params, seed=None):
    return {"generator": generator, "params": params, "seed": seed}


def path_graph(n: int, tol: ToleranceConfig = DEFAULT_TOL) -> GraphShiftOperator:
    _check_n(n)
    A = np.diag(np.ones(n - 1), 1) + np.diag(np.ones(n - 1), -1)
    return GraphShiftOperator.from_matrix(A, directed=False, meta=_meta("path", {"n": n}), tol=tol)


def dft_matrix(n: int) -> np.ndarray:
    """Unitary DFT basis, column ``k`` is ``exp(-2j pi k n / N) / sqrt(N)``."""
    k = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(k, k) / n) / np.sqrt(n)


def cycle_graph(n: int, directed: bool = True, tol: ToleranceConfig = DEFAULT_TOL) -> GraphShiftOperator:
    """Cycle adjacency; the directed one has ``S[(i + 1) % N, i] = 1``.

    The directed cycle is diagonalized analytically by the DFT basis: with
    ``S x`` delaying the signal by one node, column ``k`` of the basis has
    eigenvalue ``exp(+2j pi k / N)``.
    """
    _check_n(n)
    A = np.zeros((n, n))
    for i in range(n):
        A[(i + 1) % n, i] = 1.0
    meta = _meta("cycle", {"n": n, "directed": directed})
    if not directed:
        A = np.minimum(A + A.T, 1.0)
        return GraphShiftOperator.from_matrix(A, directed=False, meta=meta, tol=tol)
    lam = np.exp(2j * np.pi * np.arange(n) / n)
    evd = canonicalize(EigenDecomposition(dft_matrix(n), lam))
    return GraphShiftOperator.from_matrix(A, evd=evd, directed=True, meta=meta, tol=tol)


def dct2_basis(n: int) -> np.ndarray:
    """Orthonormal DCT-II basis; column ``k`` is ``cos(k pi (m + 1/2) / N)`` normalized."""
    m = np.arange(n)
    V = np.cos(np.pi * np.outer(m + 0.5, m) / n)
    return V / np.linalg.norm(V, axis=0)


def dct2_graph(n: int, tol: ToleranceConfig = DEFAULT_TOL) -> GraphShiftOperator:
    """Path with self-loops at both ends, diagonalized by the DCT-II basis.

    Eigenvalue of basis vector ``k`` is ``2 cos(k pi / N)``.
    """
    _check_n(n)
    A = np.diag(np.ones(n - 1), 1) + np.diag(np.ones(n - 1), -1)
    A[0, 0] = A[-1, -1] = 1.0
    V = dct2_basis(n)
    lam = 2.0 * np.cos(np.pi * np.arange(n) / n)
    evd = canonicalize(EigenDecomposition(V, lam))
    return GraphShiftOperator.from_matrix(A, evd=evd, directed=False,
                                          meta=_meta("dct2", {"n": n}), tol=tol)


def erdos_renyi_adjacency(n: int, p: float, seed: int) -> np.ndarray:
    rng = SplitMix64(seed)
    A = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.uniform() < p:
                A[i, j] = A[j, i] = 1.0
    return A


def erdos_renyi(n: int, p: float, seed: int, max_attempts: int = 100,
                tol: ToleranceConfig = DEFAULT_TOL) -> GraphShiftOperator:
    """Undirected G(n, p) adjacency with a simple spectrum.

    Pairs ``i < j`` are visited in lexicographic order with one uniform draw
    each. If the spectrum is repeated, the seed is incremented and the graph
    redrawn.

    Raises:
        DegenerateSpectrum: no simple spectrum within ``max_attempts`` draws.
    """
    _check_n(n)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    # with p in {0, 1} every seed gives the same graph, so redrawing cannot help
    fixed = p in (0.0, 1.0)
    for attempt in range(1, max_attempts + 1):
        A = erdos_renyi_adjacency(n, p, seed + attempt - 1)
        evd = symmetric_evd(A)
        simple = check_simple_spectrum(evd.eigenvalues, tol)
        if fixed and not simple:
            log.warning("erdos_renyi(n=%d, p=%g): repeated spectrum is unavoidable", n, p)
        if simple or fixed:
            log.info("erdos_renyi(n=%d, p=%g, seed=%d): simple spectrum after %d attempt(s)",
                     n, p, seed, attempt)
            meta = _meta("er", {"n": n, "p": p, "attempts": attempt,
                                "effective_seed": seed + attempt - 1,
                                "simple_spectrum": simple}, seed)
            return GraphShiftOperator.from_matrix(A, evd=evd, directed=False, meta=meta, tol=tol)
    raise DegenerateSpectrum(f"no simple spectrum in {max_attempts} attempts")


def laplacian(S: GraphShiftOperator) -> GraphShiftOperator:
    """Combinatorial Laplacian ``D - A`` of an undirected graph's adjacency."""
    A = np.where(np.eye(S.n, dtype=bool), 0.0, np.abs(S.matrix.real))
    L = np.diag(A.sum(axis=1)) - A
    meta = dict(S.meta)
    meta["generator"] = f"laplacian({S.meta.get('generator', 'graph')})"
    return GraphShiftOperator.from_matrix(L, node_labels=S.node_labels, directed=False,
                                          meta=meta, tol=S.tol)


# --- JSON --------------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not np.isfinite(x):
            raise ValueError("cannot serialize non-finite float")
        return f"{x:.17g}"
    if isinstance(x, str):
        return json.dumps(x, ensure_ascii=False)
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    if isinstance(x, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_fmt(v)}" for k, v in x.items()) + "}"
    if isinstance(x, complex):
        return _fmt([x.real, x.imag])
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(obj: dict) -> str:
    """Deterministic JSON: insertion-ordered keys, floats at 17 significant digits."""
    lines = ["{"]
    items = list(obj.items())
    for k, (key, value) in enumerate(items):
        comma = "," if k < len(items) - 1 else ""
        if isinstance(value, list) and value and isinstance(value[0], list):
            rows = [f"    {_fmt(row)}" for row in value]
            lines.append(f"  {json.dumps(key)}: [")
            lines.append(",\n".join(rows))
            lines.append(f"  ]{comma}")
        else:
            lines.append(f"  {json.dumps(key)}: {_fmt(value)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _pairs(M) -> list:
    M = np.asarray(M)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def to_dict(S: GraphShiftOperator, include_evd: bool = True) -> dict:
    meta = {
        "generator": S.meta.get("generator", "matrix"),
        "params": S.meta.get("params", {}),
        "seed": S.meta.get("seed"),
    }
    out = {
        "n": S.n,
        "directed": S.directed,
        "labels": list(S.node_labels),
        "matrix": _pairs(S.matrix),
        "meta": meta,
    }
    if include_evd:
        out["evd"] = {
            "eigenvalues": [[float(z.real), float(z.imag)] for z in S.eigenvalues],
            "eigenvectors": _pairs(S.V),
            "canonical": S.evd.canonical,
        }
    return out


def to_json(S: GraphShiftOperator, include_evd: bool = True) -> str:
    return dumps(to_dict(S, include_evd))


def _complex_matrix(data, name, n=None):
    if not isinstance(data, list) or not data:
        raise SchemaError(f"{name} must be a non-empty list of rows")
    try:
        M = np.array([[complex(float(e[0]), float(e[1])) for e in row] for row in data])
    except (TypeError, IndexError, ValueError) as exc:
        raise SchemaError(f"{name} entries must be [re, im] pairs") from exc
    if M.ndim != 2 or (n is not None and M.shape != (n, n)):
        raise SchemaError(f"{name} must be {n}x{n}")
    return M


def from_dict(d: dict, tol: ToleranceConfig = DEFAULT_TOL) -> GraphShiftOperator:
    if not isinstance(d, dict):
        raise SchemaError("graph JSON must be an object")
    for key, typ in (("n", int), ("directed", bool), ("labels", list), ("matrix", list)):
        if key not in d:
            raise SchemaError(f"missing field {key!r}")
        if not isinstance(d[key], typ) or (typ is int and isinstance(d[key], bool)):
            raise SchemaError(f"field {key!r} must be {typ.__name__}")
    n = d["n"]
    M = _complex_matrix(d["matrix"], "matrix", n)
    if len(d["labels"]) != n or not all(isinstance(x, str) for x in d["labels"]):
        raise SchemaError("labels must be n strings")
    meta = d.get("meta", {}) or {}
    if not isinstance(meta, dict):
        raise SchemaError("meta must be an object")
    evd = None
    if d.get("evd") is not None:
        e = d["evd"]
        try:
            lam = np.array([complex(float(a), float(b)) for a, b in e["eigenvalues"]])
            V = _complex_matrix(e["eigenvectors"], "evd.eigenvectors", n)
            evd = EigenDecomposition(V, lam, bool(e.get("canonical", False)))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad evd block: {exc}") from exc
    elif not is_real_symmetric(M):
        raise SchemaError("a non-symmetric shift needs an 'evd' block")
    try:
        return GraphShiftOperator.from_matrix(M, evd=evd, node_labels=d["labels"],
                                              directed=d["directed"], meta=meta, tol=tol)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def from_json(text: str, tol: ToleranceConfig = DEFAULT_TOL) -> GraphShiftOperator:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return from_dict(d, tol)


# --- DOT ---------------------------------------------------------------------

def to_dot(S: GraphShiftOperator, threshold: float | None = None, name: str = "G") -> str:
    """Graphviz text with one edge per off-diagonal entry above ``threshold``.

    Edge ``weight`` is the magnitude; ``sign`` is given for real entries and
    ``phase`` (radians) for complex ones.
    """
    thr = S.tol.zero_edge_threshold if threshold is None else threshold
    M = S.matrix
    symmetric = bool(np.allclose(M, M.T, rtol=0, atol=1e-12))
    kind, arrow = ("graph", "--") if symmetric else ("digraph", "->")
    lines = [f"{kind} {name} {{"]
    for i, label in enumerate(S.node_labels):
        lines.append(f"  {i} [label={json.dumps(label)}];")
    for i in range(S.n):
        for j in range(S.n):
            if i == j or (symmetric and j < i):
                continue
            z = M[i, j]
            mag = abs(z)
            if mag <= thr:
                continue
            if abs(z.imag) <= 1e-12 * max(1.0, mag):
                note = f'sign="{"+" if z.real >= 0 else "-"}"'
            else:
                note = f"phase={np.angle(z):.17g}"
            # entry (i, j) is the edge j -> i
            src, dst = (i, j) if symmetric else (j, i)
            lines.append(f"  {src} {arrow} {dst} [weight={mag:.17g}, {note}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
