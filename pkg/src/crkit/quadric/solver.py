"""Small solution of the quadratic matrix equation ``P X^2 + A X + P^H = 0``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NoContraction, NormTooLarge, NotConverged, Singular, SingularA
from ..numerics import DEFAULT_CONFIG, ToleranceConfig, dagger, solve_linear, spectral_norm
from .model import JetParameters, QuadricModel

NORM_MARGIN = 1e-9


@dataclass(frozen=True, eq=False)
class SmallSolution:
    X: np.ndarray
    residual: float
    iterations: int
    norm: float
    contraction_bound: float


def equation_residual(P: np.ndarray, A: np.ndarray, X: np.ndarray) -> float:
    return spectral_norm(P @ X @ X + A @ X + dagger(P))


def contraction_data(model: QuadricModel, params: JetParameters, cfg: ToleranceConfig = DEFAULT_CONFIG):
    """Return (A^{-1}P, A^{-1}P^H, p*q) where p, q are their spectral norms."""
    params.check(model)
    A = params.A(model)
    P = params.P(model)
    try:
        left = solve_linear(A, np.hstack([P, dagger(P)]), cfg)
    except Singular as exc:
        raise SingularA(str(exc)) from exc
    n = model.n
    AiP, AiPh = left[:, :n], left[:, n:]
    return AiP, AiPh, spectral_norm(AiP) * spectral_norm(AiPh)


def solve_small_X(
    model: QuadricModel,
    params: JetParameters,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    x0: np.ndarray | None = None,
) -> SmallSolution:
    """Fixed-point iteration ``X <- -A^{-1}(P X^2 + P^H)``.

    The map is certified contractive on the ball ``||X|| <= rho`` with
    ``rho = (1 - sqrt(1 - 4pq)) / (2p)``, where p = ||A^{-1}P|| and
    q = ||A^{-1}P^H||; that needs ``2pq < 1/2``.
    """
    AiP, AiPh, pq = contraction_data(model, params, cfg)
    if not 2.0 * pq < 0.5:
        raise NoContraction(f"2*||A^-1 P||*||A^-1 P^H|| = {2 * pq:.4g} is not below 1/2")
    n = model.n
    X = np.zeros((n, n), dtype=complex) if x0 is None else np.array(x0, dtype=complex)
    scale = max(1.0, spectral_norm(AiPh))
    it = 0
    for it in range(1, cfg.max_iterations + 1):
        X_new = -(AiP @ X @ X + AiPh)
        step = spectral_norm(X_new - X)
        X = X_new
        if step <= 64 * np.finfo(float).eps * scale:
            break
    else:
        raise NotConverged(f"no fixed point after {cfg.max_iterations} iterations (last step {step:.3e})")
    P = params.P(model)
    A = params.A(model)
    residual = equation_residual(P, A, X)
    norm = spectral_norm(X)
    rho = 2 * spectral_norm(AiPh) / (1 + np.sqrt(1 - 4 * pq))
    if norm >= 1.0 - NORM_MARGIN:
        raise NormTooLarge(f"converged to ||X|| = {norm:.6g}, not below 1")
    if residual > cfg.residual_tol:
        raise NotConverged(f"equation residual {residual:.3e} exceeds {cfg.residual_tol:.1e}")
    return SmallSolution(X=X, residual=residual, iterations=it, norm=norm, contraction_bound=float(rho))
