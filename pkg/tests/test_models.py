import json

import numpy as np
import pytest

from dualshift import build_dual, cycle_graph, dct2_graph, erdos_renyi, path_graph
from dualshift.errors import DegenerateSpectrum, ParseError, SchemaError, TooSmall
from dualshift.models import (
    SplitMix64,
    dct2_basis,
    dumps,
    erdos_renyi_adjacency,
    from_json,
    laplacian,
    to_dict,
    to_dot,
    to_json,
)

ER_FIXTURE_EDGES = [(1, 9), (2, 3), (2, 8), (3, 4), (3, 7), (4, 6), (4, 7), (4, 8), (5, 6), (5, 8)]


def undirected_edges(A):
    i, j = np.nonzero(np.triu(A, 1))
    return list(zip(i.tolist(), j.tolist()))


class TestSplitMix64:
    def test_reference_values(self):
        assert SplitMix64(0).next_u64() == 0xE220A8397B1DCDAF
        rng = SplitMix64(1234567)
        assert [rng.next_u64() for _ in range(5)] == [
            6457827717110365317, 3203168211198807973, 9817491932198370423,
            4593380528125082431, 16408922859458223821,
        ]

    def test_uniform_range(self):
        rng = SplitMix64(7)
        u = [rng.uniform() for _ in range(1000)]
        assert 0.0 <= min(u) and max(u) < 1.0
        assert abs(np.mean(u) - 0.5) < 0.05


class TestGenerators:
    def test_path_two_is_exchange(self):
        np.testing.assert_array_equal(path_graph(2).matrix, [[0, 1], [1, 0]])

    def test_directed_cycle(self):
        S = cycle_graph(4)
        expected = np.roll(np.eye(4), 1, axis=0)
        np.testing.assert_array_equal(S.matrix.real, expected)
        lam = np.sort_complex(np.round(S.eigenvalues, 12))
        np.testing.assert_allclose(lam, np.sort_complex(np.array([1, -1j, -1, 1j])), atol=1e-12)
        assert S.directed
        assert np.linalg.norm(S.evd.reconstruct() - S.matrix) <= 1e-12

    def test_cycle_two_is_exchange(self):
        np.testing.assert_allclose(cycle_graph(2).matrix, [[0, 1], [1, 0]])
        np.testing.assert_allclose(cycle_graph(2, directed=False).matrix, [[0, 1], [1, 0]])

    def test_undirected_cycle(self):
        S = cycle_graph(4, directed=False)
        np.testing.assert_allclose(np.sort(S.eigenvalues.real),
                                   np.sort(2 * np.cos(2 * np.pi * np.arange(4) / 4)), atol=1e-12)
        np.testing.assert_array_equal(S.matrix, S.matrix.T)

    @pytest.mark.parametrize("n", [2, 5, 10])
    def test_dct_diagonalizes(self, n):
        S = dct2_graph(n)
        U = dct2_basis(n)
        np.testing.assert_allclose(U.T @ U, np.eye(n), atol=1e-12)
        D = U.T @ S.matrix.real @ U
        assert np.linalg.norm(D - np.diag(np.diag(D))) <= 1e-9
        np.testing.assert_allclose(np.sort(np.diag(D)),
                                   np.sort(2 * np.cos(np.pi * np.arange(n) / n)), atol=1e-12)

    def test_too_small(self):
        for make in (path_graph, dct2_graph, cycle_graph):
            with pytest.raises(TooSmall):
                make(1)


class TestErdosRenyi:
    def test_empty_and_complete(self):
        empty = erdos_renyi(6, 0.0, 3)
        assert not empty.matrix.any()
        assert empty.meta["params"]["simple_spectrum"] is False
        full = erdos_renyi(6, 1.0, 3)
        np.testing.assert_array_equal(full.matrix.real, np.ones((6, 6)) - np.eye(6))

    def test_fixture(self):
        S = erdos_renyi(10, 0.15, 42)
        assert undirected_edges(S.matrix.real) == ER_FIXTURE_EDGES
        assert S.meta["params"]["attempts"] == 3
        assert S.meta["seed"] == 42
        np.testing.assert_allclose(
            S.eigenvalues.real,
            [2.74386778, 1.26986935, 1, 0.76270523, 0, -0.37690547,
             -0.5987526, -1, -1.37438876, -2.42639553], atol=1e-8)

    def test_redraw_uses_next_seed(self):
        S = erdos_renyi(10, 0.15, 42)
        np.testing.assert_array_equal(S.matrix.real, erdos_renyi_adjacency(10, 0.15, 44))

    def test_bit_exact(self):
        a, b = erdos_renyi(10, 0.3, 9), erdos_renyi(10, 0.3, 9)
        assert to_json(a) == to_json(b)

    def test_degenerate(self):
        with pytest.raises(DegenerateSpectrum):
            erdos_renyi(4, 1e-6, 0, max_attempts=5)

    def test_bad_probability(self):
        with pytest.raises(ValueError):
            erdos_renyi(4, 1.5, 0)

    def test_laplacian(self):
        L = laplacian(erdos_renyi(10, 0.15, 42)).matrix.real
        np.testing.assert_allclose(L.sum(axis=1), 0, atol=1e-12)
        assert (L[~np.eye(10, dtype=bool)] <= 0).all()


class TestJson:
    def test_round_trip_exchange(self):
        S = path_graph(2)
        T = from_json(to_json(S))
        np.testing.assert_array_equal(T.matrix, S.matrix)
        assert T.node_labels == ("0", "1")

    def test_round_trip_complex_dual(self):
        S = build_dual(cycle_graph(4)).dual_shift
        T = from_json(to_json(S))
        assert np.abs(T.matrix - S.matrix).max() <= 1e-15
        np.testing.assert_array_equal(T.V, S.V)

    def test_schema_order(self):
        d = json.loads(to_json(path_graph(3)))
        assert list(d)[:5] == ["n", "directed", "labels", "matrix", "meta"]
        assert d["matrix"][0][1] == [1.0, 0.0]
        assert d["meta"]["generator"] == "path"

    def test_float_format(self):
        assert dumps({"x": 0.1}) .strip() == '{\n  "x": 0.10000000000000001\n}'

    @pytest.mark.parametrize("text, exc", [
        ("{not json", ParseError),
        ('{"n": 2}', SchemaError),
        ('{"n": "2", "directed": false, "labels": ["a", "b"], "matrix": []}', SchemaError),
        ('{"n": 2, "directed": false, "labels": ["a"], '
         '"matrix": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]}', SchemaError),
        ('{"n": 2, "directed": true, "labels": ["a", "b"], '
         '"matrix": [[[0, 0], [0, 0]], [[1, 0], [0, 0]]]}', SchemaError),
    ])
    def test_errors(self, text, exc):
        with pytest.raises(exc):
            from_json(text)
        with pytest.raises(ParseError):
            from_json(text)

    def test_dict_without_evd(self):
        assert "evd" not in to_dict(path_graph(2), include_evd=False)


class TestDot:
    def edge_lines(self, text):
        return [ln for ln in text.splitlines() if "--" in ln or "->" in ln]

    def test_exchange(self):
        text = to_dot(path_graph(2))
        assert text.startswith("graph ")
        assert self.edge_lines(text) == ['  0 -- 1 [weight=1, sign="+"];']

    def test_dual_of_exchange(self):
        lines = self.edge_lines(to_dot(build_dual(path_graph(2)).dual_shift, 1e-6))
        assert len(lines) == 1
        weight = float(lines[0].split("weight=")[1].split(",")[0])
        assert weight == pytest.approx(np.sqrt(2) / 2, abs=1e-12)

    def test_empty(self):
        assert self.edge_lines(to_dot(erdos_renyi(4, 0.0, 0))) == []

    def test_threshold_above_max(self):
        assert self.edge_lines(to_dot(dct2_graph(5), threshold=10.0)) == []

    def test_directed(self):
        text = to_dot(cycle_graph(3))
        assert text.startswith("digraph ")
        # entry (1, 0) is the edge 0 -> 1
        assert '  0 -> 1 [weight=1, sign="+"];' in text
