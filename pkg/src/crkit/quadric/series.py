"""Matrix series built on the small solution X.

Every series is summed term by term and truncated once the Frobenius norm of
the current term drops below ``cfg.series_tail_tol``; terms decay
geometrically at rate ``||X||`` (or ``||M|| ||X||`` for the derivative
series), so the truncation error is bounded by ``term / (1 - rate)``.
"""

from __future__ import annotations

import numpy as np

from ..errors import Diverged, Singular
from ..numerics import DEFAULT_CONFIG, ToleranceConfig, dagger, solve_linear
from .model import JetParameters, QuadricModel
from .solver import SmallSolution, solve_small_X

_BLOWUP = 1e150


def _fro(m) -> float:
    return float(np.linalg.norm(m))


def _sum_series(first, step, cfg: ToleranceConfig, what: str):
    """Sum ``first + step(first) + step(step(first)) + ...``; ``step`` maps term r to r+1."""
    term = first
    total = np.zeros_like(first)
    for _ in range(cfg.max_iterations):
        total = total + term
        size = _fro(term)
        if size < cfg.series_tail_tol:
            return total
        if not np.isfinite(size) or size > _BLOWUP:
            break
        term = step(term)
    raise Diverged(f"{what}: term norm still {size:.3e} after {cfg.max_iterations} terms")


def _solution(model, params, cfg, solution):
    return solution if solution is not None else solve_small_X(model, params, cfg)


def stein_K(model: QuadricModel, X: np.ndarray, j: int, cfg: ToleranceConfig = DEFAULT_CONFIG) -> np.ndarray:
    """K_j = sum_r (X^H)^r A_j X^r, the fixed point of K -> A_j + X^H K X.  ``j`` is 0-based."""
    X = np.asarray(X, dtype=complex)
    Xh = dagger(X)
    K = _sum_series(model.A[j].astype(complex), lambda T: Xh @ T @ X, cfg, f"K_{j + 1}")
    return 0.5 * (K + dagger(K))


def stein_residual(K: np.ndarray, X: np.ndarray, Aj: np.ndarray) -> float:
    return float(np.linalg.norm(K - dagger(X) @ K @ X - Aj, 2))


def all_K(model: QuadricModel, X: np.ndarray, cfg: ToleranceConfig = DEFAULT_CONFIG) -> list[np.ndarray]:
    return [stein_K(model, X, j, cfg) for j in range(model.d)]


def _derivative_operators(model, params, X, cfg):
    """N = (I + A^{-1} P X)^{-1} A^{-1} and M = N P."""
    n = model.n
    A = params.A(model)
    P = params.P(model)
    Ai = solve_linear(A, np.eye(n, dtype=complex), cfg)
    try:
        N = solve_linear(np.eye(n) + Ai @ P @ X, Ai, cfg)
    except Singular as exc:
        raise Singular(f"I + A^-1 P X is singular: {exc}") from exc
    return N, N @ P


def diff_X_re_a(
    model: QuadricModel,
    params: JetParameters,
    s: int,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    solution: SmallSolution | None = None,
) -> np.ndarray:
    """Partial derivative of X with respect to Re a_s (``s`` 0-based).

    Sums ``sum_r (-1)^(r+1) M^r T X^r`` with ``T = N A_s (I - X)^2``.
    """
    sol = _solution(model, params, cfg, solution)
    X = sol.X
    N, M = _derivative_operators(model, params, X, cfg)
    I = np.eye(model.n)
    T0 = -(N @ model.A[s] @ (I - X) @ (I - X))
    return _sum_series(T0, lambda T: -(M @ T @ X), cfg, f"dX/dRe a_{s + 1}")


def all_diff_X(model, params, cfg: ToleranceConfig = DEFAULT_CONFIG, solution=None) -> list[np.ndarray]:
    sol = _solution(model, params, cfg, solution)
    return [diff_X_re_a(model, params, s, cfg, sol) for s in range(model.d)]


def _krylov_sum(left0, right0, X, pair_value, cfg, what):
    """Sum over r of ``pair_value(X^r left0, X^r right0)`` (a d x d block per r)."""
    left, right = left0, right0
    total = None
    for _ in range(cfg.max_iterations):
        block = pair_value(left, right)
        total = block if total is None else total + block
        size = _fro(block)
        if size < cfg.series_tail_tol:
            return total
        if not np.isfinite(size) or size > _BLOWUP:
            break
        left, right = X @ left, X @ right
    raise Diverged(f"{what}: term norm still {size:.3e} after {cfg.max_iterations} terms")


def da_matrix(
    model: QuadricModel,
    params: JetParameters,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    solution: SmallSolution | None = None,
) -> np.ndarray:
    """Real d x d matrix ``Re sum_r V^H (X^H)^r A_j A^{-1} A_s X^r V``."""
    params.check(model)
    sol = _solution(model, params, cfg, solution)
    A = params.A(model)
    stack = np.stack(model.A)

    def pair(_, w):
        D = np.einsum("jkl,l->kj", stack, w)  # column j is A_j w
        return dagger(D) @ solve_linear(A, D, cfg)

    total = _krylov_sum(params.V, params.V, sol.X, pair, cfg, "D(a) series")
    return np.real(total)


def d_matrix(model: QuadricModel, b, V, cfg: ToleranceConfig = DEFAULT_CONFIG) -> np.ndarray:
    """``Re(D^H (sum b_j A_j)^{-1} D)`` with columns ``D_j = A_j V``."""
    V = np.asarray(V, dtype=complex)
    D = np.stack([Aj @ V for Aj in model.A], axis=1)
    return np.real(dagger(D) @ solve_linear(model.combination(b), D, cfg))


def jet_jacobian_block(
    model: QuadricModel,
    params: JetParameters,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    solution: SmallSolution | None = None,
    K: list[np.ndarray] | None = None,
    dX: list[np.ndarray] | None = None,
) -> np.ndarray:
    """``Re sum_r V^H (I - X^H)^2 (X^H)^r K_j X_{Re a_s} X^r V``, rows j, columns s.

    The derivative of the middle 1-jet block with respect to Re a equals -2
    times this matrix.
    """
    params.check(model)
    sol = _solution(model, params, cfg, solution)
    X = sol.X
    K = all_K(model, X, cfg) if K is None else K
    dX = all_diff_X(model, params, cfg, sol) if dX is None else dX
    I = np.eye(model.n)
    Ks = np.stack(K)
    dXs = np.stack(dX)

    def pair(left, right):
        KL = np.einsum("jkl,k->jl", Ks, np.conj(left))  # row j: left^H K_j
        DR = np.einsum("skl,l->ks", dXs, right)  # column s: X_s right
        return KL @ DR

    left0 = (I - X) @ (I - X) @ params.V
    return np.real(_krylov_sum(left0, params.V, X, pair, cfg, "jet block series"))


def jet1_middle(
    model: QuadricModel,
    params: JetParameters,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    solution: SmallSolution | None = None,
) -> np.ndarray:
    """The d real numbers ``V'^H K_j V'`` with ``V' = (I - X) V``."""
    params.check(model)
    sol = _solution(model, params, cfg, solution)
    Vp = (np.eye(model.n) - sol.X) @ params.V
    return np.array([np.real(np.conj(Vp) @ K @ Vp) for K in all_K(model, sol.X, cfg)])
