"""Quadric models ``Re w_j = zbar^T A_j z``: small solution, series and jet criteria."""

from .analysis import JetReport, analyze_jet
from .geometry import (
    DSearch,
    LeviSearch,
    OrbitSpan,
    PseudoconvexSearch,
    d_nondegenerate,
    orbit_span,
    stationary_minimal,
    strong_levi_nondegenerate,
    strongly_pseudoconvex_search,
)
from .model import JetParameters, QuadricModel
from .series import (
    all_diff_X,
    all_K,
    d_matrix,
    da_matrix,
    diff_X_re_a,
    jet1_middle,
    jet_jacobian_block,
    stein_K,
    stein_residual,
)
from .solver import SmallSolution, equation_residual, solve_small_X

__all__ = [
    "DSearch",
    "JetParameters",
    "JetReport",
    "LeviSearch",
    "OrbitSpan",
    "PseudoconvexSearch",
    "QuadricModel",
    "SmallSolution",
    "all_K",
    "all_diff_X",
    "analyze_jet",
    "d_matrix",
    "d_nondegenerate",
    "da_matrix",
    "diff_X_re_a",
    "equation_residual",
    "jet1_middle",
    "jet_jacobian_block",
    "orbit_span",
    "solve_small_X",
    "stationary_minimal",
    "stein_K",
    "stein_residual",
    "strong_levi_nondegenerate",
    "strongly_pseudoconvex_search",
]
