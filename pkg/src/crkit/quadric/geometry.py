"""Orbit spaces, minimality and the seeded nondegeneracy searches."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import Singular, SingularA
from ..numerics import DEFAULT_CONFIG, INVERTIBLE_RTOL, ToleranceConfig, dagger, is_invertible, rank_with_tol
from .model import QuadricModel
from .series import d_matrix


@dataclass(frozen=True, eq=False)
class OrbitSpan:
    real_dim: int
    complex_dim: int
    basis: np.ndarray  # n x real_dim complex columns, orthonormal as vectors of R^{2n}
    vectors: np.ndarray  # the generated X^r V, as columns


def _realify(v: np.ndarray) -> np.ndarray:
    return np.concatenate([v.real, v.imag])


def orbit_span(X, V, cfg: ToleranceConfig = DEFAULT_CONFIG) -> OrbitSpan:
    """Real and complex dimensions of span{V, XV, X^2 V, ...}.

    Gram-Schmidt over R^{2n}; the iteration stops at the first X^r V already in
    the real span of its predecessors (the span is then X-invariant), and never
    generates more than 2n + 1 vectors.
    """
    X = np.asarray(X, dtype=complex)
    V = np.asarray(V, dtype=complex).reshape(-1)
    n = V.shape[0]
    basis: list[np.ndarray] = []
    generated: list[np.ndarray] = []
    v = V.copy()
    for _ in range(2 * n + 1):
        size = np.linalg.norm(v)
        if size == 0.0:
            break
        generated.append(v)
        x = _realify(v) / size
        r = x.copy()
        for _ in range(2):  # re-orthogonalize once
            for q in basis:
                r -= (q @ r) * q
        if np.linalg.norm(r) <= cfg.rank_tol:
            break
        basis.append(r / np.linalg.norm(r))
        if len(basis) == 2 * n:
            break
        v = X @ v
    real_dim = len(basis)
    if generated:
        normalized = np.stack([g / np.linalg.norm(g) for g in generated], axis=1)
        complex_dim = rank_with_tol(normalized, cfg.rank_tol)
    else:
        normalized = np.zeros((n, 0), dtype=complex)
        complex_dim = 0
    B = np.stack([q[:n] + 1j * q[n:] for q in basis], axis=1) if basis else np.zeros((n, 0), dtype=complex)
    return OrbitSpan(real_dim=real_dim, complex_dim=complex_dim, basis=B, vectors=normalized)


def compressed_independent(model: QuadricModel, B: np.ndarray, cfg: ToleranceConfig = DEFAULT_CONFIG) -> bool:
    """Are the compressions B^H A_j B R-linearly independent?"""
    rows = []
    for Aj in model.A:
        M = dagger(B) @ Aj @ B
        rows.append(np.concatenate([M.real.ravel(), M.imag.ravel()]))
    stacked = np.stack(rows)
    return rank_with_tol(stacked, cfg.rank_tol) == model.d


def stationary_minimal(model: QuadricModel, X, V, cfg: ToleranceConfig = DEFAULT_CONFIG, orbit: OrbitSpan | None = None) -> bool:
    orbit = orbit_span(X, V, cfg) if orbit is None else orbit
    if orbit.real_dim == 0:
        return False
    return compressed_independent(model, orbit.basis, cfg)


@dataclass(frozen=True, eq=False)
class LeviSearch:
    b: np.ndarray | None
    probabilistic: bool
    draws: int


def _unit_sphere(rng: np.random.Generator, count: int, d: int) -> np.ndarray:
    x = rng.standard_normal((count, d))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def strong_levi_nondegenerate(model: QuadricModel, seed: int = 0, draws: int = 200) -> LeviSearch:
    """Find b with sum b_j A_j invertible: coordinate directions first, then seeded sphere draws."""
    d = model.d
    candidates = np.vstack([np.eye(d), _unit_sphere(np.random.default_rng(seed), draws, d)])
    for b in candidates:
        if is_invertible(model.combination(b)):
            return LeviSearch(b=b.copy(), probabilistic=False, draws=len(candidates))
    return LeviSearch(b=None, probabilistic=True, draws=len(candidates))


@dataclass(frozen=True, eq=False)
class PseudoconvexSearch:
    b: np.ndarray | None
    best_lambda_min: float
    best_b: np.ndarray
    restarts: int


def _lambda_min_batch(stack: np.ndarray, bs: np.ndarray) -> np.ndarray:
    mats = np.einsum("rj,jkl->rkl", bs.astype(complex), stack)
    mats = 0.5 * (mats + np.conj(np.swapaxes(mats, -1, -2)))
    return np.linalg.eigvalsh(mats)[:, 0]


def strongly_pseudoconvex_search(
    model: QuadricModel,
    restarts: int = 100,
    seed: int = 0,
    iterations: int = 100,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
) -> PseudoconvexSearch:
    """Maximize lambda_min(sum b_j A_j) over the unit sphere.

    Seeded random restarts, each refined by coordinate ascent: try b +/- h e_k
    (renormalized) for every k, accept the best improvement, halve h when none
    improves.  All restarts advance together as one batch.  A ``None`` result is
    a search bound, not an infeasibility proof.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    d = model.d
    stack = np.stack(model.A)
    rng = np.random.default_rng(seed)
    b = _unit_sphere(rng, restarts, d)
    val = _lambda_min_batch(stack, b)
    h = np.full(restarts, 0.5)
    eye = np.eye(d)
    for _ in range(iterations):
        best_val = val.copy()
        best_b = b.copy()
        for k in range(d):
            for sign in (1.0, -1.0):
                cand = b + sign * h[:, None] * eye[k]
                norms = np.linalg.norm(cand, axis=1, keepdims=True)
                norms[norms == 0] = 1.0
                cand = cand / norms
                cv = _lambda_min_batch(stack, cand)
                better = cv > best_val
                best_val = np.where(better, cv, best_val)
                best_b[better] = cand[better]
        improved = best_val > val
        h = np.where(improved, h, h / 2)
        b, val = best_b, best_val
    i = int(np.argmax(val))
    best = float(val[i])
    found = b[i].copy() if best > cfg.rank_tol else None
    return PseudoconvexSearch(b=found, best_lambda_min=best, best_b=b[i].copy(), restarts=restarts)


@dataclass(frozen=True, eq=False)
class DSearch:
    V: np.ndarray | None
    reason: str  # "found", "dimension", "not-found"
    trials: int


def d_nondegenerate(model: QuadricModel, b, trials: int = 200, seed: int = 0, cfg: ToleranceConfig = DEFAULT_CONFIG) -> DSearch:
    """Search V with Re(D^H (sum b_j A_j)^{-1} D) invertible, D = [A_1 V, ..., A_d V].

    Returns immediately with reason "dimension" when d > 2n: the matrix has
    real rank at most 2n then.
    """
    n, d = model.n, model.d
    if d > 2 * n:
        return DSearch(V=None, reason="dimension", trials=0)
    Ab = model.combination(b)
    if not is_invertible(Ab, cfg.rank_tol):
        raise SingularA("sum b_j A_j is not invertible")
    rng = np.random.default_rng(seed)
    fixed = [np.ones(n, dtype=complex)] + [e.astype(complex) for e in np.eye(n)]
    tried = 0
    for k in range(len(fixed) + trials):
        V = fixed[k] if k < len(fixed) else rng.standard_normal(n) + 1j * rng.standard_normal(n)
        tried += 1
        try:
            M = d_matrix(model, b, V, cfg)
        except Singular:
            continue
        if is_invertible(M, INVERTIBLE_RTOL):
            return DSearch(V=V, reason="found", trials=tried)
    return DSearch(V=None, reason="not-found", trials=tried)
