from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..numerics import DEFAULT_CONFIG, ToleranceConfig, is_invertible
from .geometry import orbit_span, compressed_independent
from .model import JetParameters, QuadricModel
from .series import all_diff_X, all_K, da_matrix, jet_jacobian_block, stein_residual
from .solver import SmallSolution, solve_small_X


@dataclass(frozen=True, eq=False)
class JetReport:
    X: SmallSolution
    K: list[np.ndarray]
    K_residuals: list[float]
    dX: list[np.ndarray]
    Da_matrix: np.ndarray
    jet_block: np.ndarray
    orbit_real_dim: int
    orbit_complex_dim: int
    stationary_minimal: bool
    da_nondegenerate: bool
    jet_block_invertible: bool
    determinants: tuple[float, float]


def analyze_jet(model: QuadricModel, params: JetParameters, cfg: ToleranceConfig = DEFAULT_CONFIG) -> JetReport:
    """Run the full small-solution pipeline at (a, b, V)."""
    params.check(model)
    sol = solve_small_X(model, params, cfg)
    K = all_K(model, sol.X, cfg)
    dX = all_diff_X(model, params, cfg, sol)
    Da = da_matrix(model, params, cfg, sol)
    C = jet_jacobian_block(model, params, cfg, sol, K=K, dX=dX)
    orbit = orbit_span(sol.X, params.V, cfg)
    minimal = orbit.real_dim > 0 and compressed_independent(model, orbit.basis, cfg)
    return JetReport(
        X=sol,
        K=K,
        K_residuals=[stein_residual(Kj, sol.X, Aj) for Kj, Aj in zip(K, model.A)],
        dX=dX,
        Da_matrix=Da,
        jet_block=C,
        orbit_real_dim=orbit.real_dim,
        orbit_complex_dim=orbit.complex_dim,
        stationary_minimal=bool(minimal),
        da_nondegenerate=is_invertible(Da),
        jet_block_invertible=is_invertible(C),
        determinants=(float(np.linalg.det(Da)), float(np.linalg.det(C))),
    )
