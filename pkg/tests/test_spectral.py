import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dualshift import EigenDecomposition, ToleranceConfig, canonicalize, check_normal
from dualshift import check_simple_spectrum, symmetric_evd
from dualshift.errors import NonSquare, NoConvergence, NotSymmetric, NotUnitary, ParseError
from dualshift.errors import RepeatedEigenvalues
from dualshift.spectral import (
    matrix_from_csv,
    matrix_to_csv,
    require_simple_spectrum,
    unitarity_error,
    vector_from_csv,
)

from conftest import SQ2, random_symmetric, random_unitary


class TestSymmetricEVD:
    def test_exchange(self):
        evd = symmetric_evd([[0, 1], [1, 0]])
        np.testing.assert_allclose(evd.eigenvalues, [1, -1], atol=1e-14)
        expected = np.array([[1, 1], [1, -1]]) / SQ2
        np.testing.assert_allclose(evd.eigenvectors, expected, atol=1e-14)
        assert evd.canonical

    def test_identity_succeeds_but_is_not_simple(self):
        evd = symmetric_evd(np.eye(3))
        np.testing.assert_allclose(evd.eigenvalues, [1, 1, 1])
        with pytest.raises(RepeatedEigenvalues):
            require_simple_spectrum(evd.eigenvalues)

    def test_path3_matches_analytic(self):
        S = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], float)
        evd = symmetric_evd(S)
        # path eigenvalues are 2 cos(k pi / (N + 1))
        analytic = 2 * np.cos(np.pi * np.arange(1, 4) / 4)
        np.testing.assert_allclose(evd.eigenvalues, analytic, atol=1e-13)
        expected = np.array([
            [0.5, SQ2 / 2, 0.5],
            [1 / SQ2, 0.0, -1 / SQ2],
            [-0.5, SQ2 / 2, -0.5],
        ]).T
        np.testing.assert_allclose(evd.eigenvectors, expected, atol=1e-13)
        np.testing.assert_allclose(evd.reconstruct(), S, atol=1e-12)

    def test_against_numpy(self, rng):
        for n in (1, 2, 5, 12, 30):
            S = random_symmetric(rng, n)
            evd = symmetric_evd(S)
            np.testing.assert_allclose(np.sort(evd.eigenvalues.real), np.linalg.eigvalsh(S),
                                       atol=1e-10)
            assert np.linalg.norm(evd.reconstruct() - S) <= 1e-9 * max(1, np.linalg.norm(S))
            assert unitarity_error(evd.eigenvectors) <= 1e-10 * n

    def test_zero_matrix(self):
        evd = symmetric_evd(np.zeros((3, 3)))
        np.testing.assert_array_equal(evd.eigenvalues, 0)

    def test_rejects_nonsymmetric(self):
        with pytest.raises(NotSymmetric):
            symmetric_evd([[0, 1], [0, 0]])
        with pytest.raises(NotSymmetric):
            symmetric_evd([[0, 1j], [1j, 0]])

    def test_rejects_nonsquare(self):
        with pytest.raises(NonSquare):
            symmetric_evd(np.zeros((2, 3)))

    def test_sweep_budget(self, rng):
        with pytest.raises(NoConvergence):
            symmetric_evd(random_symmetric(rng, 8), max_sweeps=1)

    def test_permuted_evd_is_valid(self, rng):
        S = random_symmetric(rng, 6)
        evd = symmetric_evd(S)
        P = np.eye(6)[rng.permutation(6)]
        moved = EigenDecomposition(P @ evd.eigenvectors, evd.eigenvalues)
        np.testing.assert_allclose(moved.reconstruct(), P @ S @ P.T, atol=1e-10)


class TestCanonicalize:
    def test_sort_rule(self):
        V = np.array([[1, 1], [-1, 1]]) / SQ2
        evd = canonicalize(EigenDecomposition(V, [-1, 1]))
        np.testing.assert_allclose(evd.eigenvalues, [1, -1])

    def test_sign_rule(self):
        col = -np.array([-0.5, SQ2 / 2, -0.5])
        V = np.column_stack([[0.5, SQ2 / 2, 0.5], [1 / SQ2, 0, -1 / SQ2], col])
        evd = canonicalize(EigenDecomposition(V, [SQ2, 0, -SQ2]))
        np.testing.assert_allclose(evd.eigenvectors[:, 2], [-0.5, SQ2 / 2, -0.5], atol=1e-15)

    def test_ties_in_magnitude_pick_lowest_index(self):
        V = np.array([[1, 1], [1, -1]]) / SQ2
        evd = canonicalize(EigenDecomposition(-V, [1, -1]))
        np.testing.assert_allclose(evd.eigenvectors, V, atol=1e-15)

    def test_complex_ordering(self):
        lam = [1j, -1, 1, -1j]
        evd = canonicalize(EigenDecomposition(np.eye(4), lam))
        np.testing.assert_allclose(evd.eigenvalues, [1, 1j, -1j, -1])

    def test_exact_ties_keep_original_order(self):
        evd = canonicalize(EigenDecomposition(np.eye(3)[:, [2, 0, 1]], [1, 1, 1]))
        np.testing.assert_array_equal(evd.eigenvectors.real, np.eye(3)[:, [2, 0, 1]])

    def test_complex_phase_removed(self, rng):
        U = random_unitary(rng, 5)
        lam = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        base = canonicalize(EigenDecomposition(U, lam))
        rotated = EigenDecomposition(base.eigenvectors * np.exp(1j * np.pi / 3), base.eigenvalues)
        again = canonicalize(rotated)
        np.testing.assert_allclose(again.eigenvectors, base.eigenvectors, atol=1e-14)
        np.testing.assert_allclose(again.reconstruct(), base.reconstruct(), atol=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 9), st.integers(0, 2**32 - 1))
    def test_idempotent_and_preserves_matrix(self, n, seed):
        rng = np.random.default_rng(seed)
        U = random_unitary(rng, n)
        lam = np.round(rng.standard_normal(n), 1) + 1j * np.round(rng.standard_normal(n), 1)
        evd = EigenDecomposition(U, lam)
        once = canonicalize(evd)
        twice = canonicalize(once)
        np.testing.assert_array_equal(once.eigenvalues, twice.eigenvalues)
        assert np.abs(once.eigenvectors - twice.eigenvectors).max() <= 1e-14
        assert np.linalg.norm(once.reconstruct() - evd.reconstruct()) <= 1e-12
        pivots = np.abs(once.eigenvectors).argmax(axis=0)
        assert np.all(once.eigenvectors[pivots, np.arange(n)].imag == 0)
        assert np.all(once.eigenvectors[pivots, np.arange(n)].real > 0)

    def test_rejects_non_unitary(self):
        with pytest.raises(NotUnitary):
            EigenDecomposition(np.array([[1, 1], [0, 1]]), [1, 2])


class TestChecks:
    def test_symmetric_is_normal(self, rng):
        assert check_normal(random_symmetric(rng, 7))

    def test_circulant_is_normal(self):
        C = np.roll(np.eye(5), 1, axis=0)
        assert check_normal(C)

    def test_nilpotent_not_normal(self):
        assert not check_normal([[0, 1], [0, 0]])

    def test_nonsquare(self):
        with pytest.raises(NonSquare):
            check_normal(np.zeros((2, 3)))

    def test_simple_spectrum(self):
        assert check_simple_spectrum([1, -1])
        assert not check_simple_spectrum([1, 1, 0])
        assert not check_simple_spectrum([SQ2, 0, SQ2])
        assert check_simple_spectrum([3.0])

    def test_tolerance_config(self):
        with pytest.raises(ValueError):
            ToleranceConfig(zero_edge_threshold=0)
        cfg = ToleranceConfig.from_env({"DUALSHIFT_TOL": "zero_edge_threshold=1e-3"})
        assert cfg.zero_edge_threshold == 1e-3 and cfg.normality_tol == 1e-10
        assert ToleranceConfig.from_env({"DUALSHIFT_TOL": "1e-4"}).unitarity_tol == 1e-4
        assert ToleranceConfig.from_env({}) == ToleranceConfig()
        with pytest.raises(ValueError):
            ToleranceConfig.from_env({"DUALSHIFT_TOL": "bogus=1"})


class TestCSV:
    def test_round_trip(self, rng):
        M = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
        np.testing.assert_array_equal(matrix_from_csv(matrix_to_csv(M)), M)

    def test_pure_real_entries(self):
        M = matrix_from_csv("1,0.5\n-2,3e-3+1j\n")
        np.testing.assert_array_equal(M, [[1, 0.5], [-2, 3e-3 + 1j]])

    def test_at_least_12_significant_digits(self):
        text = matrix_to_csv([[1 / 3]])
        assert len(text.split("+")[0].replace("0.", "", 1)) >= 12

    def test_errors(self):
        with pytest.raises(ParseError):
            matrix_from_csv("1,2\n3\n")
        with pytest.raises(ParseError):
            matrix_from_csv("1,abc\n")
        with pytest.raises(ParseError):
            vector_from_csv("1,2\n3,4\n")
