"""Concurrence lower bounds from the positive map Phi, PPT and realignment.

Every bound has the form ``sqrt(2 / (N (N - 1))) * f(rho)`` for a convex
functional ``f`` that is dominated on pure states by twice the sum of
pairwise Schmidt-coefficient products:

* ``f_phi(rho) = ||(I (x) Phi) rho||_1 - (N - 1)``
* ``f_ppt(rho) = ||rho^{T_1}||_1 - 1``
* ``f_r(rho)   = ||realign(rho)||_1 - 1``

Values are reported signed; a bound "detects" entanglement when it exceeds
the detection tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bipartite import DensityMatrix, partial_transpose_first, realign
from .errors import BadDimension, ShapeMismatch
from .linalg import trace_norm

DETECTION_TOL = 1e-9
CRITERIA = ("phi", "ppt", "realign")


def phi_map(a, n: int) -> np.ndarray:
    """Apply Phi to an N x N matrix (or a stack of them on the last two axes).

    Off-diagonal entries are negated; diagonal entry i becomes
    ``(N - 2) a[i, i] + a[i+1, i+1]`` with the index taken mod N.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim < 2 or a.shape[-2:] != (n, n):
        raise ShapeMismatch(f"phi_map expects trailing shape ({n}, {n}), got {a.shape}")
    out = -a
    diag = np.diagonal(a, axis1=-2, axis2=-1)
    new_diag = (n - 2) * diag + np.roll(diag, -1, axis=-1)
    idx = np.arange(n)
    out[..., idx, idx] = new_diag
    return out


def apply_id_phi(rho: DensityMatrix) -> np.ndarray:
    """(I_N (x) Phi) rho: Phi applied to each N x N block rho[(a,.),(a',.)]."""
    n = rho.dim
    blocks = rho.blocks().transpose(0, 2, 1, 3)  # [a, a', b, b']
    mapped = phi_map(blocks, n)
    return mapped.transpose(0, 2, 1, 3).reshape(n * n, n * n)


def bound_from_functional(f_value: float, n: int) -> float:
    if n < 2:
        raise BadDimension(f"subsystem dimension must be >= 2, got {n}")
    return math.sqrt(2.0 / (n * (n - 1))) * f_value


def phi_trace_norm(rho: DensityMatrix) -> float:
    return trace_norm(apply_id_phi(rho))


def ppt_trace_norm(rho: DensityMatrix) -> float:
    return trace_norm(partial_transpose_first(rho))


def realign_trace_norm(rho: DensityMatrix) -> float:
    return trace_norm(realign(rho))


def phi_functional(rho: DensityMatrix) -> float:
    return phi_trace_norm(rho) - (rho.dim - 1)


def ppt_functional(rho: DensityMatrix) -> float:
    return ppt_trace_norm(rho) - 1.0


def realign_functional(rho: DensityMatrix) -> float:
    return realign_trace_norm(rho) - 1.0


def phi_bound(rho: DensityMatrix) -> float:
    return bound_from_functional(phi_functional(rho), rho.dim)


def ppt_bound(rho: DensityMatrix) -> float:
    return bound_from_functional(ppt_functional(rho), rho.dim)


def realign_bound(rho: DensityMatrix) -> float:
    return bound_from_functional(realign_functional(rho), rho.dim)


@dataclass(frozen=True)
class BoundReport:
    n: int
    phi_trace_norm: float
    ppt_trace_norm: float
    realign_trace_norm: float
    phi_bound: float
    ppt_bound: float
    realign_bound: float
    witness_bound: float | None = None
    detected_by: frozenset[str] = field(default_factory=frozenset)

    def bound(self, name: str) -> float | None:
        return getattr(self, f"{name}_bound")

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "phi_trace_norm": self.phi_trace_norm,
            "ppt_trace_norm": self.ppt_trace_norm,
            "realign_trace_norm": self.realign_trace_norm,
            "phi_bound": self.phi_bound,
            "ppt_bound": self.ppt_bound,
            "realign_bound": self.realign_bound,
            "witness_bound": self.witness_bound,
            "detected_by": sorted(self.detected_by),
        }


def bound_report(
    rho: DensityMatrix,
    detection_tol: float = DETECTION_TOL,
    witness_bound: float | None = None,
) -> BoundReport:
    """Evaluate all three numeric bounds; ``witness_bound`` is passed through
    for states where a closed-form witness value is known."""
    n = rho.dim
    norms = {
        "phi": phi_trace_norm(rho),
        "ppt": ppt_trace_norm(rho),
        "realign": realign_trace_norm(rho),
    }
    offsets = {"phi": n - 1, "ppt": 1.0, "realign": 1.0}
    values = {k: bound_from_functional(norms[k] - offsets[k], n) for k in CRITERIA}
    if witness_bound is not None:
        values["witness"] = witness_bound
    detected = frozenset(k for k, v in values.items() if v > detection_tol)
    return BoundReport(
        n=n,
        phi_trace_norm=norms["phi"],
        ppt_trace_norm=norms["ppt"],
        realign_trace_norm=norms["realign"],
        phi_bound=values["phi"],
        ppt_bound=values["ppt"],
        realign_bound=values["realign"],
        witness_bound=witness_bound,
        detected_by=detected,
    )
