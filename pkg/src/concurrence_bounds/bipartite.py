"""Bipartite N x N states: validated density matrices, pure states, Schmidt form.

Composite basis label (a, b) maps to index ``a * N + b`` (zero-based, first
factor major). Every reshape in this module goes through that convention:
``rho.reshape(N, N, N, N)[a, b, a2, b2] == rho[a*N + b, a2*N + b2]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidStateError, NormViolation
from .linalg import cmatrix, eigvalsh, hermiticity_defect, singular_values

STATE_TOL = 1e-10
PURE_NORM_TOL = 1e-12
SCHMIDT_TOL = 1e-12


def _subsystem_dim(size: int) -> int:
    n = math.isqrt(size)
    if n * n != size or n < 1:
        raise InvalidStateError(
            f"size {size} is not N^2; only equal N x N subsystems are supported", "shape"
        )
    return n


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """An N^2 x N^2 bipartite density matrix.

    Construct through :meth:`from_matrix`, which checks Hermiticity, unit
    trace and positive semidefiniteness within ``tol``.
    """

    dim: int
    matrix: np.ndarray

    @classmethod
    def from_matrix(cls, matrix, dim: int | None = None, tol: float = STATE_TOL) -> "DensityMatrix":
        try:
            m = cmatrix(matrix)
        except ValueError as exc:
            raise InvalidStateError(str(exc), "finite") from exc
        if m.shape[0] != m.shape[1]:
            raise InvalidStateError(f"density matrix must be square, got {m.shape}", "shape")
        n = _subsystem_dim(m.shape[0])
        if dim is not None and dim != n:
            raise InvalidStateError(f"declared dim {dim} but matrix is {m.shape[0]}x{m.shape[0]}", "shape")
        defect = hermiticity_defect(m)
        if defect > tol:
            raise InvalidStateError(f"not Hermitian: max|rho - rho^dagger| = {defect:.3e}", "hermitian")
        tr = np.trace(m)
        if abs(tr - 1.0) > tol:
            raise InvalidStateError(f"trace is {tr.real:.12g}{tr.imag:+.3g}j, expected 1", "unit_trace")
        lam_min = eigvalsh(m)[0]
        if lam_min < -tol:
            raise InvalidStateError(f"not positive semidefinite: min eigenvalue {lam_min:.3e}", "psd")
        m.setflags(write=False)
        return cls(n, m)

    def blocks(self) -> np.ndarray:
        """View as a 4-index array ``[a, b, a', b']``."""
        n = self.dim
        return self.matrix.reshape(n, n, n, n)


@dataclass(frozen=True, eq=False)
class PureState:
    dim: int
    amplitudes: np.ndarray

    @classmethod
    def from_amplitudes(cls, amplitudes, dim: int | None = None) -> "PureState":
        psi = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        if not np.all(np.isfinite(psi)):
            raise InvalidStateError("amplitudes are not finite", "finite")
        n = _subsystem_dim(psi.size)
        if dim is not None and dim != n:
            raise InvalidStateError(f"declared dim {dim} but {psi.size} amplitudes", "shape")
        norm = np.linalg.norm(psi)
        if abs(norm - 1.0) > PURE_NORM_TOL:
            raise NormViolation(f"state norm is {norm:.15g}, expected 1")
        psi.setflags(write=False)
        return cls(n, psi)

    def coefficients(self) -> np.ndarray:
        """N x N matrix C with C[a, b] = amplitude of |a>|b>."""
        return self.amplitudes.reshape(self.dim, self.dim)


@dataclass(frozen=True, eq=False)
class SchmidtVector:
    """Schmidt coefficients, nonnegative, descending, squares summing to one."""

    alphas: np.ndarray

    @classmethod
    def from_values(cls, values, tol: float = SCHMIDT_TOL) -> "SchmidtVector":
        a = np.array(values, dtype=float).reshape(-1)
        if a.size < 1 or not np.all(np.isfinite(a)):
            raise InvalidStateError("Schmidt coefficients must be a finite non-empty sequence", "finite")
        if np.any(a < 0) or np.any(a > 1 + tol):
            raise InvalidStateError("Schmidt coefficients must lie in [0, 1]", "range")
        total = float(np.sum(a * a))
        if abs(total - 1.0) > tol:
            raise NormViolation(f"sum of squared Schmidt coefficients is {total:.15g}")
        a = np.sort(a)[::-1].copy()
        a.setflags(write=False)
        return cls(a)

    @property
    def dim(self) -> int:
        return self.alphas.size


def density_from_pure(psi: PureState) -> DensityMatrix:
    v = psi.amplitudes
    if abs(np.linalg.norm(v) - 1.0) > PURE_NORM_TOL:
        raise NormViolation("pure state is not normalized")
    return DensityMatrix.from_matrix(np.outer(v, v.conj()), psi.dim)


def partial_trace_second(rho: DensityMatrix) -> np.ndarray:
    """Reduced state on the first factor, (rho_1)[a, a'] = sum_b rho[(a,b),(a',b)]."""
    return np.einsum("abcb->ac", rho.blocks())


def partial_transpose_first(rho: DensityMatrix) -> np.ndarray:
    """Transpose on the first factor: [(a,b),(a',b')] <- [(a',b),(a,b')]."""
    n = rho.dim
    return rho.blocks().transpose(2, 1, 0, 3).reshape(n * n, n * n)


def realign(rho: DensityMatrix) -> np.ndarray:
    """Realigned matrix, rho~[(a,a'),(b,b')] = rho[(a,b),(a',b')]."""
    n = rho.dim
    return rho.blocks().transpose(0, 2, 1, 3).reshape(n * n, n * n)


def schmidt_decompose(psi: PureState) -> SchmidtVector:
    s = singular_values(psi.coefficients())
    # renormalize away eigensolver rounding so the SchmidtVector invariant is exact
    return SchmidtVector.from_values(s / np.linalg.norm(s), tol=1e-10)


def pure_from_schmidt(alpha: SchmidtVector) -> PureState:
    """Diagonal embedding sum_i alpha_i |i>|i>."""
    n = alpha.dim
    psi = np.zeros(n * n, dtype=np.complex128)
    psi[np.arange(n) * (n + 1)] = alpha.alphas
    return PureState.from_amplitudes(psi, n)
