import math

import numpy as np
import pytest

from concurrence_bounds.bipartite import DensityMatrix, PureState, density_from_pure


def bell_pure():
    return PureState.from_amplitudes(np.array([1, 0, 0, 1]) / math.sqrt(2))


def maximally_entangled(n):
    psi = np.zeros(n * n)
    psi[np.arange(n) * (n + 1)] = 1 / math.sqrt(n)
    return density_from_pure(PureState.from_amplitudes(psi))


def product_pure(n, seed=0):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=n) + 1j * rng.normal(size=n)
    b = rng.normal(size=n) + 1j * rng.normal(size=n)
    psi = np.kron(a / np.linalg.norm(a), b / np.linalg.norm(b))
    return density_from_pure(PureState.from_amplitudes(psi))


@pytest.fixture
def bell():
    return density_from_pure(bell_pure())


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_hermitian(rng, n):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return g + g.conj().T


def mixed(n):
    return DensityMatrix.from_matrix(np.eye(n * n) / (n * n))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
