import numpy as np
import pytest

from dualshift import GraphShiftOperator, path_graph

SQ2 = np.sqrt(2.0)


def random_symmetric(rng, n):
    a = rng.standard_normal((n, n))
    return (a + a.T) / 2


def random_shift(rng, n):
    return GraphShiftOperator.from_matrix(random_symmetric(rng, n))


def random_unitary(rng, n, complex_valued=True):
    a = rng.standard_normal((n, n))
    if complex_valued:
        a = a + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def exchange():
    return path_graph(2)


@pytest.fixture
def path3():
    return path_graph(3)


@pytest.fixture
def rng():
    return np.random.default_rng(20181126)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
