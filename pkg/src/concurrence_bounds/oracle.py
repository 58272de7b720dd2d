"""Ground-truth quantities and property checks for the positive-map bound.

For a pure state with Schmidt vector alpha, T = (I (x) Phi)|psi><psi| has
N^2 - 2N zero singular values, the N values alpha_i^2, and the N singular
values of the real symmetric matrix

    B[i, i] = (N - 2) alpha_i^2,   B[i, j] = -alpha_i alpha_j.

The checks below test that structure, the coefficient pattern of det(xI - B),
the root sum/product relations, the lower bound on the single negative root,
and the resulting pure-state inequality, each on concrete alpha.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import bounds
from .bipartite import DensityMatrix, SchmidtVector, density_from_pure, pure_from_schmidt
from .errors import NumericalFailure
from .linalg import eigvalsh, hermitian_eigs, singular_values, trace_norm
from .states import rng_for


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed


def _pair_sum(x: np.ndarray) -> float:
    """sum_{i<j} x_i x_j."""
    x = np.asarray(x, dtype=float)
    return float(np.sum(np.triu(np.outer(x, x), k=1)))


def pure_concurrence(alpha: SchmidtVector) -> float:
    sq = alpha.alphas**2
    return 2.0 * math.sqrt(max(_pair_sum(sq), 0.0))


def concurrence_from_amplitudes(amplitudes, n: int) -> np.ndarray:
    """sqrt(2 (p^2 - tr rho_1^2)) for (possibly unnormalized) amplitude vectors.

    For a unit vector this is the pure-state concurrence; for a vector of norm
    sqrt(p) it is p times the concurrence of the normalized vector. Accepts a
    single vector of length N^2 or a stack with trailing axis N^2.
    """
    psi = np.asarray(amplitudes, dtype=np.complex128)
    c = psi.reshape(psi.shape[:-1] + (n, n))
    rho1 = c @ np.swapaxes(c.conj(), -1, -2)
    purity = np.sum(np.abs(rho1) ** 2, axis=(-2, -1))
    p = np.sum(np.abs(psi) ** 2, axis=-1)
    return np.sqrt(2.0 * np.maximum(p * p - purity, 0.0))


def b_matrix(alpha: SchmidtVector) -> np.ndarray:
    a = alpha.alphas
    n = a.size
    b = -np.outer(a, a)
    np.fill_diagonal(b, (n - 2) * a**2)
    return b.astype(np.complex128)


def _t_matrix(alpha: SchmidtVector) -> np.ndarray:
    return bounds.apply_id_phi(density_from_pure(pure_from_schmidt(alpha)))


def t_structure_check(alpha: SchmidtVector, tol: float = 1e-9) -> CheckResult:
    n = alpha.dim
    try:
        got = np.sort(singular_values(_t_matrix(alpha)))
        expected = np.sort(
            np.concatenate([np.zeros(n * n - 2 * n), alpha.alphas**2, singular_values(b_matrix(alpha))])
        )
    except ArithmeticError as exc:
        raise NumericalFailure(str(exc)) from exc
    err = float(np.max(np.abs(got - expected)))
    return CheckResult(
        "t_structure",
        err <= tol,
        {"alphas": alpha.alphas.tolist(), "max_abs_error": err, "trace_norm": float(got.sum())},
    )


def elementary_symmetric(values) -> np.ndarray:
    """[e_0, e_1, ..., e_n] by expanding prod_i (1 + v_i t)."""
    e = np.zeros(len(values) + 1)
    e[0] = 1.0
    for v in values:
        e[1:] = e[1:] + v * e[:-1]
    return e


def predicted_charpoly(alpha: SchmidtVector) -> np.ndarray:
    """Coefficients [c_0, ..., c_N] of x^N, x^{N-1}, ..., x^0 in det(xI - B).

    c_k = (-1)^k (N - 1 - k) (N - 1)^(k - 1) e_k(alpha^2) for k >= 1; the x^1
    coefficient (k = N - 1) vanishes.
    """
    n = alpha.dim
    e = elementary_symmetric(alpha.alphas**2)
    c = np.empty(n + 1)
    c[0] = 1.0
    for k in range(1, n + 1):
        c[k] = (-1) ** k * (n - 1 - k) * float(n - 1) ** (k - 1) * e[k]
    return c


def charpoly_by_expansion(m) -> np.ndarray:
    """det(xI - M) by the permutation (Leibniz) expansion; intended for N <= 6."""
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    total = np.zeros(n + 1)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = np.array([1.0])
        for i, j in enumerate(perm):
            entry = np.array([1.0, -m[i, j]]) if i == j else np.array([-m[i, j]])
            term = np.polymul(term, entry)
        term = np.concatenate([np.zeros(n + 1 - term.size), term])
        total += -term if inversions % 2 else term
    return total


@functools.lru_cache(maxsize=None)
def confirm_charpoly_pattern(max_n: int = 5, samples: int = 20, seed: int = 7) -> bool:
    """Compare the general coefficient formula against direct expansion of det(xI - B)."""
    for n in range(2, max_n + 1):
        for s in range(samples):
            g = np.abs(rng_for([seed, n, s]).standard_normal(n))
            alpha = SchmidtVector.from_values(g / np.linalg.norm(g))
            direct = charpoly_by_expansion(b_matrix(alpha).real)
            if np.max(np.abs(direct - predicted_charpoly(alpha))) > 1e-12:
                return False
    return True


def charpoly_check(alpha: SchmidtVector, tol: float = 1e-7) -> CheckResult:
    """Coefficients rebuilt from the numeric eigenvalues of B vs the predicted pattern.

    Error per coefficient is measured as |got - predicted| / max(1, |predicted|).
    """
    if not confirm_charpoly_pattern():
        raise NumericalFailure("coefficient pattern disagrees with direct determinant expansion")
    roots = eigvalsh(b_matrix(alpha))
    e = elementary_symmetric(roots)
    got = np.array([(-1) ** k * e[k] for k in range(alpha.dim + 1)])
    pred = predicted_charpoly(alpha)
    err = float(np.max(np.abs(got - pred) / np.maximum(1.0, np.abs(pred))))
    return CheckResult(
        "charpoly",
        err <= tol,
        {"alphas": alpha.alphas.tolist(), "max_rel_error": err, "coefficients": got.tolist()},
    )


@dataclass
class RootReport:
    alphas: SchmidtVector
    b_eigenvalues: np.ndarray
    sum_roots: float
    prod_roots: float
    min_root: float
    negative_roots: int = 0
    pair_sum: float = 0.0
    sum_ok: bool = True
    prod_ok: bool = True
    single_negative_ok: bool = True
    min_root_ok: bool = True

    @property
    def passed(self) -> bool:
        return self.sum_ok and self.prod_ok and self.single_negative_ok and self.min_root_ok


NEGATIVE_ROOT_EPS = 1e-12


def root_relations_check(alpha: SchmidtVector) -> RootReport:
    n = alpha.dim
    roots = eigvalsh(b_matrix(alpha))
    sum_roots = float(np.sum(roots))
    prod_roots = float(np.prod(roots))
    beta = float(np.prod(alpha.alphas**2))
    prod_expected = -float(n - 1) ** (n - 1) * beta
    pair = _pair_sum(alpha.alphas)
    negatives = int(np.sum(roots < -NEGATIVE_ROOT_EPS))
    return RootReport(
        alphas=alpha,
        b_eigenvalues=roots,
        sum_roots=sum_roots,
        prod_roots=prod_roots,
        min_root=float(roots[0]),
        negative_roots=negatives,
        pair_sum=pair,
        sum_ok=abs(sum_roots - (n - 2)) <= 1e-9,
        # relative 1e-7 with an absolute floor at the rounding level of the smallest root
        prod_ok=abs(prod_roots - prod_expected) <= 1e-7 * abs(prod_expected) + 1e-15,
        single_negative_ok=negatives <= 1,
        min_root_ok=float(roots[0]) >= -pair - 1e-9,
    )


def functional_property_check(alpha: SchmidtVector, tol: float = 1e-9) -> CheckResult:
    """||T||_1 - (N - 1) <= 2 sum_{i<j} alpha_i alpha_j, by two routes that must agree."""
    n = alpha.dim
    rhs = 2.0 * _pair_sum(alpha.alphas)
    lhs_trace = trace_norm(_t_matrix(alpha)) - (n - 1)
    lhs_roots = float(np.sum(np.abs(eigvalsh(b_matrix(alpha))))) - (n - 2)
    agree = abs(lhs_trace - lhs_roots) <= tol
    return CheckResult(
        "functional_property",
        agree and lhs_trace <= rhs + tol and lhs_roots <= rhs + tol,
        {
            "alphas": alpha.alphas.tolist(),
            "lhs_trace_norm_route": lhs_trace,
            "lhs_root_route": lhs_roots,
            "rhs": rhs,
        },
    )


def chen_inequality_check(alpha: SchmidtVector) -> CheckResult:
    n = alpha.dim
    lhs = _pair_sum(alpha.alphas**2)
    rhs = 2.0 / (n * (n - 1)) * _pair_sum(alpha.alphas) ** 2 if n > 1 else 0.0
    return CheckResult("chen_inequality", lhs >= rhs - 1e-12, {"alphas": alpha.alphas.tolist(), "lhs": lhs, "rhs": rhs})


def _random_isometries(rng, count: int, rows: int, cols: int) -> np.ndarray:
    g = rng.standard_normal((count, rows, cols)) + 1j * rng.standard_normal((count, rows, cols))
    q, _ = np.linalg.qr(g)
    return q


def convex_roof_upper(
    rho: DensityMatrix,
    n_samples: int = 200,
    seed=0,
    refine_steps: int | None = None,
) -> float:
    """Sampled upper estimate of the convex-roof concurrence.

    Writes rho = W W^dagger from its eigendecomposition, then evaluates the
    ensembles psi_i = sum_k U[i, k] w_k for random isometries U (rank + 2 rows,
    capped at N^2) and keeps the smallest average concurrence. A short random
    local search then mixes the best ensemble with near-identity unitaries.
    Every value evaluated is the average over a genuine decomposition of rho,
    so the result never undercuts the true concurrence.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    n = rho.dim
    try:
        spec = hermitian_eigs(rho.matrix, want_vectors=True)
    except ArithmeticError as exc:
        raise NumericalFailure(str(exc)) from exc
    keep = spec.eigenvalues > 1e-13
    w = spec.eigenvectors[:, keep] * np.sqrt(spec.eigenvalues[keep])
    rank = w.shape[1]
    if rank == 0:
        raise NumericalFailure("density matrix has no positive eigenvalues")

    def average(ensembles: np.ndarray) -> np.ndarray:
        # ensembles: (..., N^2, m) with columns the subnormalized ensemble vectors
        return concurrence_from_amplitudes(np.swapaxes(ensembles, -1, -2), n).sum(axis=-1)

    best = float(average(w))
    if rank == 1:
        return best

    rng = rng_for(seed)
    m = max(rank, min(rank + 2, n * n))
    u = _random_isometries(rng, n_samples, m, rank)
    vals = average(w @ np.swapaxes(u, -1, -2))
    i = int(np.argmin(vals))
    best_ens = w @ u[i].T
    if vals[i] < best:
        best = float(vals[i])
    else:
        pad = np.zeros((n * n, m - rank), dtype=np.complex128)
        best_ens = np.concatenate([w, pad], axis=1)

    steps = n_samples if refine_steps is None else refine_steps
    scale = 0.3
    batch = 8
    for _ in range(max(steps // batch, 0)):
        g = rng.standard_normal((batch, m, m)) + 1j * rng.standard_normal((batch, m, m))
        q, _ = np.linalg.qr(np.eye(m) + scale * g)
        cand = best_ens @ np.swapaxes(q, -1, -2)
        cvals = average(cand)
        j = int(np.argmin(cvals))
        if cvals[j] < best:
            best = float(cvals[j])
            best_ens = cand[j]
        else:
            scale = max(scale * 0.7, 1e-3)
    return best
