"""State constructors: the four-parameter 4 x 4 example family and seeded random states.

The example family with weights q = (q1, q2, q3, q4) is a diagonal state plus
coherences q1/4 among the basis vectors |00>, |11>, |22>, |33>. Its closed-form
bounds are kept exactly as derived by hand (no algebraic simplification), so
they stay independent of the numeric path in :mod:`concurrence_bounds.bounds`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bipartite import DensityMatrix, PureState, SchmidtVector
from .errors import BadRank, InvalidParams

HOU_DIM = 4
PARAM_TOL = 1e-12
_SQRT6 = math.sqrt(6.0)

# zero-based diagonal pattern; entry k holds q[_DIAG_PATTERN[k]]
_DIAG_PATTERN = (0, 3, 2, 1, 1, 0, 3, 2, 2, 1, 0, 3, 3, 2, 1, 0)
_COHERENT = (0, 5, 10, 15)


@dataclass(frozen=True)
class HouParams:
    q1: float
    q2: float
    q3: float
    q4: float

    def __post_init__(self):
        q = self.as_tuple()
        if not all(math.isfinite(x) for x in q):
            raise InvalidParams(f"non-finite parameters {q}")
        if min(q) < 0:
            raise InvalidParams(f"parameters must be nonnegative, got {q}")
        if abs(sum(q) - 1.0) > PARAM_TOL:
            raise InvalidParams(f"parameters must sum to 1, got sum {sum(q)!r}")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.q1, self.q2, self.q3, self.q4)


@dataclass(frozen=True)
class ThetaSlice:
    """One point of the one-parameter cut q1 = r sin^2(theta), q3 = r cos^2(theta),
    r = 1 - q2 - q4, theta in [0, pi/4]."""

    q2: float
    q4: float
    theta: float

    def __post_init__(self):
        if not (-PARAM_TOL <= self.theta <= math.pi / 4 + PARAM_TOL):
            raise InvalidParams(f"theta must lie in [0, pi/4], got {self.theta}")
        if self.q2 < 0 or self.q4 < 0 or self.q2 + self.q4 > 1:
            raise InvalidParams(f"need q2, q4 >= 0 and q2 + q4 <= 1, got q2={self.q2}, q4={self.q4}")


def slice_to_params(s: ThetaSlice) -> HouParams:
    rest = 1.0 - s.q2 - s.q4
    return HouParams(
        q1=rest * math.sin(s.theta) ** 2,
        q2=s.q2,
        q3=rest * math.cos(s.theta) ** 2,
        q4=s.q4,
    )


def hou_matrix(q: HouParams) -> np.ndarray:
    qs = q.as_tuple()
    m = np.diag([qs[k] / 4 for k in _DIAG_PATTERN]).astype(np.complex128)
    for i in _COHERENT:
        for j in _COHERENT:
            if i != j:
                m[i, j] = q.q1 / 4
    return m


def hou_state(q: HouParams) -> DensityMatrix:
    return DensityMatrix.from_matrix(hou_matrix(q), HOU_DIM)


def closed_phi(q: HouParams) -> float:
    q1, _, _, q4 = q.as_tuple()
    return (1.0 / (4.0 * _SQRT6)) * (q1 - q4 + abs(q1 - q4))


def closed_ppt(q: HouParams) -> float:
    q1, q2, q3, q4 = q.as_tuple()
    s = math.sqrt(4 * q1**2 + (q2 - q4) ** 2)
    return (1.0 / (2.0 * _SQRT6)) * (2 * q1 + abs(q1 - q3) + abs(q2 + q4 - s) + s - 1)


def closed_realign(q: HouParams) -> float:
    q1, q2, q3, q4 = q.as_tuple()
    inner = math.sqrt((q1 - q2 + q3 - q4) ** 2) + 2 * math.sqrt((q1 - q3) ** 2 + (q2 - q4) ** 2) - 3
    return math.sqrt(1.0 / 6.0) * (3 * q1 + 0.25 * inner)


def closed_witness(q: HouParams) -> float:
    _, q2, q3, q4 = q.as_tuple()
    return -(1.0 / (2.0 * _SQRT6)) * (q2 + 2 * q3 + q4)


CLOSED_FORMS = {
    "phi": closed_phi,
    "ppt": closed_ppt,
    "realign": closed_realign,
    "witness": closed_witness,
}


def hou_eigenvalues(q: HouParams) -> list[float]:
    """Published spectrum of (I_4 (x) Phi) applied to the family state, in list order."""
    q1, q2, q3, q4 = q.as_tuple()
    return (
        [(q1 + 2 * q2) / 4] * 4
        + [(q2 + 2 * q3) / 4] * 4
        + [(q3 + 2 * q4) / 4] * 4
        + [(q4 - q1) / 4]
        + [(3 * q1 + q4) / 4] * 3
    )


# -- seeded random states ---------------------------------------------------


def rng_for(seed) -> np.random.Generator:
    """Counter-based Philox stream; identical output for identical seeds."""
    return np.random.Generator(np.random.Philox(seed))


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_schmidt(n: int, seed) -> SchmidtVector:
    g = np.abs(rng_for(seed).standard_normal(n))
    return SchmidtVector.from_values(g / np.linalg.norm(g))


def random_pure(n: int, seed) -> PureState:
    psi = _complex_gaussian(rng_for(seed), n * n)
    return PureState.from_amplitudes(psi / np.linalg.norm(psi), n)


def random_density(n: int, rank: int, seed) -> DensityMatrix:
    if rank < 1 or rank > n * n:
        raise BadRank(f"rank must be in [1, {n * n}], got {rank}")
    g = _complex_gaussian(rng_for(seed), (n * n, rank))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    return DensityMatrix.from_matrix(0.5 * (rho + rho.conj().T), n)


def random_single_density(n: int, seed, rank: int | None = None) -> np.ndarray:
    """Random n x n density matrix (one subsystem), full rank by default."""
    g = _complex_gaussian(rng_for(seed), (n, rank or n))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary (QR of a complex Gaussian with phase correction)."""
    q, r = np.linalg.qr(_complex_gaussian(rng, (n, n)))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_hou_params(seed) -> HouParams:
    w = rng_for(seed).exponential(size=4)
    w = w / w.sum()
    w[3] = 1.0 - w[0] - w[1] - w[2]
    if w[3] < 0:
        w[3] = 0.0
    return HouParams(*map(float, w))
