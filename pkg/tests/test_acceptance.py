"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line; the lines are repeated in
the terminal summary (see ``conftest.py``) so they show without ``-s``.
"""
import contextlib
import hashlib
import io
import time

import numpy as np
import pytest

from dualshift import (
    ConstraintSet,
    GFunction,
    GraphShiftOperator,
    PolynomialFilter,
    apply_filter,
    apply_filter_spectral,
    brute_force_lp_oracle,
    build_dual,
    build_sparse_dual,
    dct2_graph,
    erdos_renyi,
    gft,
    is_laplacian_like,
    solve_sparse_dual,
    verify_axiom_duality,
    verify_axiom_permutation,
    verify_axiom_reordering,
    verify_duality_closure,
    verify_windowing_duality,
)
from dualshift.cli import main
from dualshift.errors import RepeatedDualEigenvalues
from dualshift.models import dct2_basis, dft_matrix, laplacian
from dualshift.spectral import DEFAULT_TOL, check_simple_spectrum
from dualshift.windowing import windowing_routes

from conftest import random_shift, random_symmetric, random_unitary

RESULTS: list[str] = []
EXCHANGE_BASIS = np.array([[1, 1], [1, -1]]) / np.sqrt(2)

# sha256 of `dualshift gen er --n 10 --p 0.15 --seed 42`, pinned on first run
ER_FIXTURE_SHA256 = "f88c1acbcfedacac4e18c532829d46909b74817720b5cc388bb706a5b32ed817"


def record(number: int, title: str, ok: bool, detail: str):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number} ({title}): {detail}"
    print(line)
    RESULTS.append(line)
    assert ok, line


def test_criterion_1_axiom_suite():
    rng = np.random.default_rng(1)
    gs = [GFunction.constant(), GFunction.norm_power(1, 1),
          GFunction.norm_power(2, 2), GFunction.norm_power(3, 1)]
    start = time.perf_counter()
    worst, checks, failures = 0.0, 0, 0
    for n in (4, 8, 12):
        for _ in range(100):
            S = random_shift(rng, n)
            for g in gs:
                perm = rng.permutation(n)
                for rep in (verify_axiom_duality(S, g),
                            verify_axiom_reordering(S, perm, g),
                            verify_axiom_permutation(S, perm, g)):
                    checks += 1
                    failures += not rep.passed
                    worst = max(worst, rep.residual)
    elapsed = time.perf_counter() - start
    ok = failures == 0 and worst <= 1e-8 and elapsed < 30
    record(1, "axiom suite", ok,
           f"{checks} checks, {failures} failures, worst residual {worst:.2e}, {elapsed:.1f} s")


def test_criterion_2_windowing():
    rng = np.random.default_rng(2)
    passed, worst, drawn = 0, 0.0, 0
    while passed < 100 and drawn < 1000:
        drawn += 1
        S = random_shift(rng, 8)
        dual = build_dual(S)
        if not check_simple_spectrum(dual.dual_eigenvalues, DEFAULT_TOL):
            continue
        w = rng.uniform(0, 1, 8)
        x = rng.standard_normal(8)
        rep = verify_windowing_duality(S, dual, w, x)
        if not rep.passed:
            break
        passed += 1
        worst = max(worst, rep.residual)
    ex = GraphShiftOperator.from_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
    mapping = windowing_routes(ex, build_dual(ex), [1.0, 0.0], [1.0, 1.0])["mapping_matrix"]
    map_err = float(np.abs(mapping - 0.5).max())
    ok = passed == 100 and worst <= 1e-6 and map_err <= 1e-12
    record(2, "windowing duality", ok,
           f"{passed}/100 instances, worst residual {worst:.2e}, exchange mapping error {map_err:.1e}")


def test_criterion_3_parseval_and_filters():
    rng = np.random.default_rng(3)
    parseval, filt = 0.0, 0.0
    for k in range(100):
        n = 2 + k % 11
        S = random_shift(rng, n)
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        parseval = max(parseval, abs(np.linalg.norm(gft(S, x).values) - np.linalg.norm(x)))
        h = PolynomialFilter(rng.standard_normal(rng.integers(1, n + 1)))
        a = apply_filter(S, h, x).values
        b = apply_filter_spectral(S, h, x).values
        filt = max(filt, np.linalg.norm(a - b) / max(1.0, np.linalg.norm(a)))
    ok = parseval <= 1e-10 and filt <= 1e-9
    record(3, "Parseval and filter forms", ok,
           f"max Parseval gap {parseval:.1e}, max filter discrepancy {filt:.1e}")


def test_criterion_4_sparsity_contrast():
    start = time.perf_counter()
    dct = dct2_graph(10)
    sparse = build_sparse_dual(dct).diagnostics
    dense = build_dual(dct).diagnostics
    er = build_sparse_dual(erdos_renyi(10, 0.15, 42)).diagnostics
    elapsed = time.perf_counter() - start
    ok = (sparse["offdiag_nonzero"] < dense["offdiag_nonzero"]
          and sparse["nonzero_pair_fraction"] <= 0.4
          and er["nonzero_pair_fraction"] > sparse["nonzero_pair_fraction"]
          and elapsed < 10)
    record(4, "DCT sparsity contrast", ok,
           f"DCT optimized {sparse['offdiag_nonzero']} vs axiomatic {dense['offdiag_nonzero']} "
           f"entries, pair fraction {sparse['nonzero_pair_fraction']:.3f}; "
           f"ER fraction {er['nonzero_pair_fraction']:.3f}; {elapsed:.1f} s")


def random_eigenbasis(k: int):
    """Alternate hollow-feasible real bases and generic complex unitaries."""
    rng = np.random.default_rng(500 + k)
    n = 3 + k % 4
    if k % 2 == 0:
        a = random_symmetric(rng, n)
        np.fill_diagonal(a, 0)
        return np.linalg.eigh(a)[1], ConstraintSet()
    # a generic complex basis admits no hollow shift, so normalize an entry instead
    cs = ConstraintSet(hollow_diagonal=False, normalization="fixed_entry", fixed_entry=(0, 1, 1.0))
    return random_unitary(rng, n), cs


def test_criterion_5_oracle_equivalence():
    worst = 0.0
    for k in range(25):
        U, cs = random_eigenbasis(k)
        main_obj = solve_sparse_dual(U, cs).report.objective_value
        oracle_obj = brute_force_lp_oracle(U, cs).report.objective_value
        worst = max(worst, abs(main_obj - oracle_obj))
    S_f = solve_sparse_dual(EXCHANGE_BASIS, ConstraintSet()).matrix
    exch_err = float(np.abs(S_f - [[0, 1], [1, 0]]).max())
    # "exactly" read as floating-point exact: a few ulps, since 1/sqrt(2) is inexact
    ok = worst <= 1e-5 and exch_err <= 1e-15
    record(5, "LP oracle equivalence", ok,
           f"25 bases, worst objective gap {worst:.1e}, exchange error {exch_err:.1e}")


def test_criterion_6_duality_closure():
    parts, ok = [], True
    for name, U in (("exchange", EXCHANGE_BASIS), ("DCT-II(8)", dct2_basis(8)),
                    ("DFT(4)", dft_matrix(4))):
        rep = verify_duality_closure(U)
        if rep.status == "SKIP":
            parts.append(f"{name} flagged degenerate")
            ok &= bool(rep.details.get("degenerate"))
        else:
            parts.append(f"{name} {rep.residual:.1e}")
            ok &= rep.passed and rep.residual <= 1e-6
    record(6, "duality closure", ok, ", ".join(parts))


def test_criterion_7_laplacian_non_closure():
    L = laplacian(erdos_renyi(10, 0.15, 42))
    primal = is_laplacian_like(L)
    dual = is_laplacian_like(build_dual(L).dual_shift)
    record(7, "Laplacian non-closure", primal and not dual,
           f"primal Laplacian-like {primal}, axiomatic dual Laplacian-like {dual}")


def test_criterion_8_determinism():
    outputs = []
    for _ in range(2):
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            assert main(["gen", "er", "--n", "10", "--p", "0.15", "--seed", "42"]) == 0
        outputs.append(buf.getvalue().encode())
    digest = hashlib.sha256(outputs[0]).hexdigest()
    ok = outputs[0] == outputs[1] and digest == ER_FIXTURE_SHA256
    record(8, "determinism", ok, f"two runs identical {outputs[0] == outputs[1]}, sha256 {digest[:16]}")
