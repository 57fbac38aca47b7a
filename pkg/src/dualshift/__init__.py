"""Shifts on the frequency domain of a graph: build, check and export dual graphs."""
from .axiomatic import (
    DualGraphResult,
    GFunction,
    build_dual,
    dual_eigenvalues,
    is_laplacian_like,
    verify_axiom_duality,
    verify_axiom_permutation,
    verify_axiom_reordering,
)
from .errors import *  # noqa: F401,F403
from .gsp import (
    GraphShiftOperator,
    GraphSignal,
    PolynomialFilter,
    apply_filter,
    apply_filter_spectral,
    canonical_basis,
    frequency_response,
    gft,
    igft,
)
from .models import (
    cycle_graph,
    dct2_graph,
    erdos_renyi,
    from_json,
    laplacian,
    path_graph,
    to_dot,
    to_json,
)
from .optimization import (
    ConstraintSet,
    SolverReport,
    brute_force_lp_oracle,
    build_sparse_dual,
    canonical_representative,
    solve_sparse_dual,
    verify_duality_closure,
)
from .reports import CheckReport
from .spectral import (
    EigenDecomposition,
    ToleranceConfig,
    canonicalize,
    check_normal,
    check_simple_spectrum,
    symmetric_evd,
)
from .windowing import (
    VandermondeSystem,
    dual_filter_coefficients,
    verify_windowing_duality,
    window_signal,
)

__version__ = "0.1.0"
