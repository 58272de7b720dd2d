import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from concurrence_bounds.bipartite import SchmidtVector
from concurrence_bounds.bounds import apply_id_phi, phi_bound, ppt_bound, realign_bound
from concurrence_bounds.errors import BadRank, InvalidParams
from concurrence_bounds.oracle import pure_concurrence
from concurrence_bounds.states import (
    HouParams,
    ThetaSlice,
    closed_phi,
    closed_ppt,
    closed_realign,
    closed_witness,
    hou_eigenvalues,
    hou_matrix,
    hou_state,
    random_density,
    random_hou_params,
    random_pure,
    random_schmidt,
    slice_to_params,
)

from conftest import maximally_entangled

SQRT6 = math.sqrt(6)


@st.composite
def hou_params(draw):
    w = draw(st.lists(st.floats(0, 1, allow_subnormal=False), min_size=4, max_size=4).filter(lambda w: sum(w) > 1e-3))
    total = sum(w)
    q = [x / total for x in w[:3]]
    return HouParams(*q, max(0.0, 1 - sum(q)))


def test_params_validation():
    with pytest.raises(InvalidParams):
        HouParams(0.5, 0.5, 0.5, -0.5)
    with pytest.raises(InvalidParams):
        HouParams(0.3, 0.3, 0.3, 0.3)
    with pytest.raises(InvalidParams):
        ThetaSlice(0.5, 0.01, 1.0)


def test_hou_matrix_layout():
    m = hou_matrix(HouParams(0.4, 0.3, 0.2, 0.1))
    q = [0.4, 0.3, 0.2, 0.1]
    pattern = [1, 4, 3, 2, 2, 1, 4, 3, 3, 2, 1, 4, 4, 3, 2, 1]
    assert np.allclose(np.diag(m), [q[k - 1] / 4 for k in pattern])
    off = m - np.diag(np.diag(m))
    coherent = [0, 5, 10, 15]
    for i in range(16):
        for j in range(16):
            expected = 0.1 if (i != j and i in coherent and j in coherent) else 0.0
            assert off[i, j] == pytest.approx(expected)


def test_hou_maximally_entangled_corner():
    rho = hou_state(HouParams(1, 0, 0, 0))
    assert np.allclose(rho.matrix, maximally_entangled(4).matrix)
    assert np.linalg.matrix_rank(rho.matrix) == 1
    assert np.trace(rho.matrix @ rho.matrix).real == pytest.approx(1)


def test_hou_diagonal_corner():
    q = HouParams(0, 1, 0, 0)
    rho = hou_state(q)
    assert np.count_nonzero(rho.matrix - np.diag(np.diag(rho.matrix))) == 0
    for f in (closed_phi, closed_ppt, closed_realign, closed_witness):
        assert f(q) <= 1e-15
    for f in (phi_bound, ppt_bound, realign_bound):
        assert f(rho) <= 1e-10


def test_hou_state_valid_on_grid():
    k = 7
    for a in range(k + 1):
        for b in range(k + 1 - a):
            for c in range(k + 1 - a - b):
                hou_state(HouParams(a / k, b / k, c / k, 1 - (a + b + c) / k))


def test_slice_to_params():
    q = slice_to_params(ThetaSlice(0.5, 0.01, 0.0))
    assert q.as_tuple() == pytest.approx((0, 0.5, 0.49, 0.01), abs=1e-15)
    q = slice_to_params(ThetaSlice(0.5, 0.01, math.pi / 4))
    assert q.q1 == pytest.approx(0.245, abs=1e-15) and q.q3 == pytest.approx(0.245, abs=1e-15)
    q = slice_to_params(ThetaSlice(0.5, 0.01, math.asin(1 / 7)))
    assert q.q1 == pytest.approx(0.01, abs=1e-15)
    assert math.asin(1 / 7) == pytest.approx(0.14335, abs=1e-5)


def test_closed_phi():
    assert closed_phi(HouParams(0.4, 0.3, 0.2, 0.1)) == pytest.approx(0.3 / (2 * SQRT6), abs=1e-15)
    assert closed_phi(HouParams(0.4, 0.3, 0.2, 0.1)) == pytest.approx(0.061237, abs=1e-6)
    assert closed_phi(HouParams(0.1, 0.3, 0.2, 0.4)) == 0
    assert closed_phi(HouParams(0.25, 0.25, 0.25, 0.25)) == 0
    assert closed_phi(HouParams(1, 0, 0, 0)) == pytest.approx(1 / (2 * SQRT6), abs=1e-15)
    assert closed_phi(HouParams(1, 0, 0, 0)) == pytest.approx((2 / 4) * math.sqrt(2 / 12), abs=1e-15)


def test_closed_ppt():
    assert closed_ppt(HouParams(0, 0.5, 0.49, 0.01)) == pytest.approx(0.0, abs=1e-15)
    assert closed_ppt(slice_to_params(ThetaSlice(0.5, 0.01, math.pi / 4))) > 0


def test_closed_realign():
    assert closed_realign(HouParams(1, 0, 0, 0)) == pytest.approx(3 / SQRT6, abs=1e-15)
    assert closed_realign(HouParams(1, 0, 0, 0)) == pytest.approx(math.sqrt(1.5), abs=1e-15)
    assert closed_realign(HouParams(0, 0.5, 0.49, 0.01)) < 0


def test_closed_witness():
    assert closed_witness(HouParams(1, 0, 0, 0)) == 0
    assert closed_witness(HouParams(0.4, 0.3, 0.2, 0.1)) == pytest.approx(-0.8 / (2 * SQRT6), abs=1e-15)
    assert closed_witness(HouParams(0.4, 0.3, 0.2, 0.1)) == pytest.approx(-0.163299, abs=1e-6)


@settings(max_examples=200, deadline=None)
@given(hou_params())
def test_closed_witness_nonpositive(q):
    assert closed_witness(q) <= 0


@settings(max_examples=200, deadline=None)
@given(hou_params())
def test_closed_phi_sign(q):
    assert (closed_phi(q) > 0) == (q.q1 > q.q4)


def test_hou_eigenvalues():
    corner = hou_eigenvalues(HouParams(1, 0, 0, 0))
    assert sorted(corner) == sorted([0.25] * 4 + [0.0] * 8 + [-0.25] + [0.75] * 3)
    for s in range(50):
        q = random_hou_params(s)
        listed = hou_eigenvalues(q)
        assert len(listed) == 16
        assert sum(listed) == pytest.approx(3, abs=1e-14)
        got = np.linalg.eigvalsh(apply_id_phi(hou_state(q)))
        assert np.max(np.abs(got - np.sort(listed))) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(hou_params())
def test_closed_forms_match_numerics(q):
    rho = hou_state(q)
    assert phi_bound(rho) == pytest.approx(closed_phi(q), abs=1e-9)
    assert ppt_bound(rho) == pytest.approx(closed_ppt(q), abs=1e-9)
    assert realign_bound(rho) == pytest.approx(closed_realign(q), abs=1e-9)


def test_random_generators_deterministic():
    assert np.array_equal(random_schmidt(4, 3).alphas, random_schmidt(4, 3).alphas)
    assert np.array_equal(random_pure(3, [1, 2]).amplitudes, random_pure(3, [1, 2]).amplitudes)
    assert np.array_equal(random_density(3, 2, 7).matrix, random_density(3, 2, 7).matrix)
    assert not np.array_equal(random_density(3, 2, 7).matrix, random_density(3, 2, 8).matrix)
    assert random_hou_params(5) == random_hou_params(5)


def test_random_density_rank():
    rho = random_density(3, 2, 1)
    assert np.linalg.matrix_rank(rho.matrix, tol=1e-10) == 2
    for bad in (0, 10):
        with pytest.raises(BadRank):
            random_density(3, bad, 0)


def test_fixed_schmidt_concurrence():
    alpha = SchmidtVector.from_values([math.sqrt(0.8), math.sqrt(0.2)])
    assert pure_concurrence(alpha) == pytest.approx(0.8, abs=1e-15)
