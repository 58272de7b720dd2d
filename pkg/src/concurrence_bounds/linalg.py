"""Dense complex matrix routines: Hermitian eigensolver, singular values, trace norm.

Matrices are plain ``numpy`` arrays of dtype ``complex128`` (row-major). The
eigensolver is a cyclic Jacobi iteration compiled with numba; it is accurate
to a few ulps of the matrix norm for the dimensions used here (<= 64).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from .errors import NoConvergenceError, NonHermitianError

HERMITIAN_TOL = 1e-8
JACOBI_REL_TOL = 1e-13
MAX_SWEEPS = 100


def cmatrix(data) -> np.ndarray:
    """Coerce ``data`` to a 2-D complex128 array with finite entries."""
    a = np.array(data, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; block (i, j) of the result is ``a[i, j] * b``."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def dagger(a: np.ndarray) -> np.ndarray:
    return np.asarray(a).conj().T


def hermiticity_defect(a: np.ndarray) -> float:
    """max |a - a^dagger| entrywise (inf for non-square input)."""
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return math.inf
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None
    sweeps: int = 0


@numba.njit(cache=True)
def _jacobi_kernel(a, want_vectors, rel_tol, max_sweeps):
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    norm_f = 0.0
    for i in range(n):
        for j in range(n):
            norm_f += a[i, j].real ** 2 + a[i, j].imag ** 2
    norm_f = math.sqrt(norm_f)
    threshold = rel_tol * norm_f

    sweeps = 0
    converged = False
    while True:
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j].real ** 2 + a[i, j].imag ** 2
        if math.sqrt(off) <= threshold:
            converged = True
            break
        if sweeps >= max_sweeps:
            break
        sweeps += 1

        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                elif tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # G = diag(1, conj(phase)) @ [[c, s], [-s, c]] on coordinates (p, q)
                g_pp = complex(c, 0.0)
                g_pq = complex(s, 0.0)
                g_qp = -s * phase.conjugate()
                g_qq = c * phase.conjugate()
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp * g_pp + akq * g_qp
                    a[k, q] = akp * g_pq + akq * g_qq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = g_pp.conjugate() * apk + g_qp.conjugate() * aqk
                    a[q, k] = g_pq.conjugate() * apk + g_qq.conjugate() * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                if want_vectors:
                    for k in range(n):
                        vkp = v[k, p]
                        vkq = v[k, q]
                        v[k, p] = vkp * g_pp + vkq * g_qp
                        v[k, q] = vkp * g_pq + vkq * g_qq

    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    return w, v, sweeps, converged


def hermitian_eigs(a, want_vectors: bool = False, tol: float = HERMITIAN_TOL) -> Spectrum:
    """Eigenvalues (ascending) and optionally unit eigenvectors of a Hermitian matrix.

    Raises NonHermitianError when ``max|A - A^dagger| > tol`` and
    NoConvergenceError when the Jacobi sweep cap is hit.
    """
    a = cmatrix(a)
    if a.shape[0] != a.shape[1]:
        raise NonHermitianError(f"matrix is not square: {a.shape}")
    defect = hermiticity_defect(a)
    if defect > tol:
        raise NonHermitianError(f"max|A - A^dagger| = {defect:.3e} exceeds {tol:.1e}")
    work = 0.5 * (a + a.conj().T)
    w, v, sweeps, converged = _jacobi_kernel(work, want_vectors, JACOBI_REL_TOL, MAX_SWEEPS)
    if not converged:
        raise NoConvergenceError(f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")
    order = np.argsort(w, kind="stable")
    return Spectrum(w[order], v[:, order] if want_vectors else None, sweeps)


def eigvalsh(a, tol: float = HERMITIAN_TOL) -> np.ndarray:
    return hermitian_eigs(a, False, tol).eigenvalues


def singular_values(a) -> np.ndarray:
    """Singular values in descending order, ``min(rows, cols)`` of them.

    Computed from the Hermitian dilation [[0, A], [A^dagger, 0]], whose
    eigenvalues are +-sigma_i. Equivalent to sqrt(eig(A^dagger A)) but keeps
    small singular values at full absolute accuracy.
    """
    a = cmatrix(a)
    m, n = a.shape
    dil = np.zeros((m + n, m + n), dtype=np.complex128)
    dil[:m, m:] = a
    dil[m:, :m] = a.conj().T
    w = eigvalsh(dil)
    sv = w[::-1][: min(m, n)]
    return np.maximum(sv, 0.0)


def trace_norm(a) -> float:
    """Sum of singular values; Hermitian inputs use sum |eigenvalues|."""
    a = cmatrix(a)
    if hermiticity_defect(a) <= HERMITIAN_TOL:
        return float(np.sum(np.abs(eigvalsh(a))))
    return float(np.sum(singular_values(a)))
