"""Analytic lower bounds of concurrence for N x N bipartite states."""

from .bipartite import DensityMatrix, PureState, SchmidtVector
from .bounds import BoundReport, bound_report, phi_bound, ppt_bound, realign_bound
from .states import HouParams, ThetaSlice

__all__ = [
    "BoundReport",
    "DensityMatrix",
    "HouParams",
    "PureState",
    "SchmidtVector",
    "ThetaSlice",
    "bound_report",
    "phi_bound",
    "ppt_bound",
    "realign_bound",
]
