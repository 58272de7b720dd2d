import math

import numpy as np
import pytest

from concurrence_bounds.bipartite import (
    DensityMatrix,
    PureState,
    SchmidtVector,
    density_from_pure,
    partial_trace_second,
    partial_transpose_first,
    pure_from_schmidt,
    realign,
    schmidt_decompose,
)
from concurrence_bounds.errors import InvalidStateError, NormViolation
from concurrence_bounds.linalg import trace_norm
from concurrence_bounds.oracle import pure_concurrence
from concurrence_bounds.states import random_density, random_pure, random_schmidt, random_unitary

from conftest import bell_pure, mixed, product_pure


def brute_realign(m, n):
    out = np.zeros_like(m)
    for a in range(n):
        for b in range(n):
            for a2 in range(n):
                for b2 in range(n):
                    out[a * n + a2, b * n + b2] = m[a * n + b, a2 * n + b2]
    return out


def brute_partial_transpose(m, n):
    out = np.zeros_like(m)
    for a in range(n):
        for b in range(n):
            for a2 in range(n):
                for b2 in range(n):
                    out[a * n + b, a2 * n + b2] = m[a2 * n + b, a * n + b2]
    return out


class TestDensityMatrix:
    def test_valid(self):
        rho = DensityMatrix.from_matrix(np.diag([0.5, 0.5, 0, 0]))
        assert rho.dim == 2

    @pytest.mark.parametrize(
        "m, invariant",
        [
            (np.diag([0.5, 0.5, 0.1, 0]), "unit_trace"),
            (np.diag([1.5, -0.5, 0, 0]), "psd"),
            (np.eye(3) / 3, "shape"),
            (np.eye(6)[:, :4], "shape"),
        ],
    )
    def test_invalid(self, m, invariant):
        with pytest.raises(InvalidStateError) as info:
            DensityMatrix.from_matrix(m)
        assert info.value.invariant == invariant

    def test_non_hermitian(self):
        m = np.eye(4) / 4 + 0j
        m[0, 1] = 0.1
        with pytest.raises(InvalidStateError) as info:
            DensityMatrix.from_matrix(m)
        assert info.value.invariant == "hermitian"

    def test_custom_tolerance(self):
        m = np.diag([0.5, 0.5, 0, 0]) + 1e-8
        with pytest.raises(InvalidStateError):
            DensityMatrix.from_matrix(m)
        assert DensityMatrix.from_matrix(m, tol=1e-6).dim == 2

    def test_declared_dim_mismatch(self):
        with pytest.raises(InvalidStateError):
            DensityMatrix.from_matrix(np.eye(4) / 4, dim=3)


def test_pure_state_norm():
    with pytest.raises(NormViolation):
        PureState.from_amplitudes([1, 1, 0, 0])
    with pytest.raises(InvalidStateError):
        PureState.from_amplitudes([1, 0, 0])


def test_schmidt_vector_invariants():
    a = SchmidtVector.from_values([0.6, 0.8])
    assert np.allclose(a.alphas, [0.8, 0.6])
    with pytest.raises(NormViolation):
        SchmidtVector.from_values([0.5, 0.5])
    with pytest.raises(InvalidStateError):
        SchmidtVector.from_values([-0.6, 0.8])


def test_density_from_pure():
    e0 = PureState.from_amplitudes([1, 0, 0, 0])
    assert np.array_equal(density_from_pure(e0).matrix, np.diag([1, 0, 0, 0]))
    m = density_from_pure(bell_pure()).matrix
    expected = np.zeros((4, 4))
    for i in (0, 3):
        for j in (0, 3):
            expected[i, j] = 0.5
    assert np.allclose(m, expected, atol=1e-15)
    for s in range(5):
        rho = density_from_pure(random_pure(3, s)).matrix
        assert abs(np.trace(rho) - 1) <= 1e-12
        assert abs(np.trace(rho @ rho) - 1) <= 1e-12


def test_partial_trace_second(bell):
    assert np.allclose(partial_trace_second(bell), np.eye(2) / 2)
    sigma = np.array([[0.7, 0.2j], [-0.2j, 0.3]])
    rho = DensityMatrix.from_matrix(np.kron(np.diag([1, 0]), sigma))
    assert np.allclose(partial_trace_second(rho), np.diag([1, 0]))
    alpha = random_schmidt(4, 9)
    reduced = partial_trace_second(density_from_pure(pure_from_schmidt(alpha)))
    assert np.allclose(reduced, np.diag(alpha.alphas**2), atol=1e-15)
    rho = random_density(3, 4, 1)
    r1 = partial_trace_second(rho)
    assert abs(np.trace(r1) - 1) <= 1e-10
    assert np.allclose(r1, r1.conj().T)


def test_partial_transpose_first(bell):
    diag = DensityMatrix.from_matrix(np.diag([0.1, 0.2, 0.3, 0.4]))
    assert np.array_equal(partial_transpose_first(diag), diag.matrix)
    assert np.allclose(np.linalg.eigvalsh(partial_transpose_first(bell)), [-0.5, 0.5, 0.5, 0.5])
    for n in (2, 3):
        rho = random_density(n, 2, n)
        pt = partial_transpose_first(rho)
        assert np.array_equal(pt, brute_partial_transpose(rho.matrix, n))
        twice = partial_transpose_first(DensityMatrix(n, pt))
        assert np.array_equal(twice, rho.matrix)
        assert abs(np.trace(pt) - 1) <= 1e-12
        assert np.allclose(pt, pt.conj().T)
        assert trace_norm(pt) >= 1 - 1e-12


def test_ppt_norm_one_for_product_diagonal():
    rho = DensityMatrix.from_matrix(np.kron(np.diag([0.3, 0.7]), np.diag([0.4, 0.6])))
    assert trace_norm(partial_transpose_first(rho)) == pytest.approx(1, abs=1e-14)


def test_realign_matches_index_definition():
    for n in (2, 3):
        rho = random_density(n, 3, 10 + n)
        assert np.array_equal(realign(rho), brute_realign(rho.matrix, n))


def test_realign_examples(bell):
    for s in range(3):
        assert trace_norm(realign(product_pure(3, s))) == pytest.approx(1, abs=1e-12)
    assert trace_norm(realign(bell)) == pytest.approx(2, abs=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_realign_maximally_mixed(n):
    # brute force: the realigned I/N^2 is the rank-one |vec I><vec I| / N^2
    expected = np.linalg.svd(brute_realign(np.eye(n * n) / n**2, n), compute_uv=False).sum()
    assert expected == pytest.approx(1 / n, abs=1e-14)
    assert trace_norm(realign(mixed(n))) == pytest.approx(1 / n, abs=1e-12)


def test_realign_convention_invariance():
    for n in (2, 3):
        for s in range(5):
            rho = random_density(n, 1 + s % (n * n), [n, s])
            alt = realign(rho).T
            assert trace_norm(realign(rho)) == pytest.approx(trace_norm(alt), abs=1e-9)


def test_schmidt_decompose_examples():
    prod = PureState.from_amplitudes(np.array([1, 1, 0, 0]) / math.sqrt(2))
    assert np.allclose(schmidt_decompose(prod).alphas, [1, 0], atol=1e-12)
    assert np.allclose(schmidt_decompose(bell_pure()).alphas, [1 / math.sqrt(2)] * 2, atol=1e-12)


def test_schmidt_concurrence_dual_formula():
    for n in (2, 3, 4, 5):
        for s in range(20):
            psi = random_pure(n, [n, s])
            r1 = partial_trace_second(density_from_pure(psi))
            via_trace = math.sqrt(2 * (1 - np.trace(r1 @ r1).real))
            assert pure_concurrence(schmidt_decompose(psi)) == pytest.approx(via_trace, abs=1e-10)


def test_pure_from_schmidt():
    assert np.array_equal(pure_from_schmidt(SchmidtVector.from_values([1, 0])).amplitudes, [1, 0, 0, 0])
    bell = pure_from_schmidt(SchmidtVector.from_values([1 / math.sqrt(2)] * 2))
    assert np.allclose(bell.amplitudes, bell_pure().amplitudes)


def test_schmidt_round_trip():
    for n in range(2, 7):
        for s in range(100):
            alpha = random_schmidt(n, [n, s])
            back = schmidt_decompose(pure_from_schmidt(alpha))
            assert np.max(np.abs(back.alphas - alpha.alphas)) <= 1e-10


def test_schmidt_local_unitary_invariance():
    rng = np.random.default_rng(5)
    for n in (2, 3, 4):
        for s in range(10):
            psi = random_pure(n, [s, n])
            u = np.kron(random_unitary(n, rng), random_unitary(n, rng))
            moved = PureState.from_amplitudes(u @ psi.amplitudes / np.linalg.norm(u @ psi.amplitudes))
            assert np.allclose(schmidt_decompose(moved).alphas, schmidt_decompose(psi).alphas, atol=1e-9)
