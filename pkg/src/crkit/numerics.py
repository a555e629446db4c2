"""Dense complex linear-algebra kernel.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; every function
here is pure and deterministic (LAPACK drivers only, no randomized pivoting).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

import numpy as np
from scipy import linalg

from .errors import NotHermitian, Singular

CMatrix = np.ndarray


@dataclass(frozen=True)
class ToleranceConfig:
    residual_tol: float = 1e-12
    rank_tol: float = 1e-9
    series_tail_tol: float = 1e-14
    max_iterations: int = 10000

    def __post_init__(self) -> None:
        for name in ("residual_tol", "rank_tol", "series_tail_tol"):
            value = getattr(self, name)
            if not (value > 0 and np.isfinite(value)):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        if int(self.max_iterations) < 1:
            raise ValueError("max_iterations must be >= 1")

    @classmethod
    def from_env(cls, env: dict[str, str] | None = None) -> "ToleranceConfig":
        """Default config, with ``CRKIT_TOL`` overriding ``residual_tol``."""
        env = os.environ if env is None else env
        cfg = cls()
        raw = env.get("CRKIT_TOL")
        if raw:
            cfg = replace(cfg, residual_tol=float(raw))
        return cfg

    def as_dict(self) -> dict:
        return {
            "residual_tol": self.residual_tol,
            "rank_tol": self.rank_tol,
            "series_tail_tol": self.series_tail_tol,
            "max_iterations": self.max_iterations,
        }


DEFAULT_CONFIG = ToleranceConfig()

# "Invertible" for the d x d verdict matrices: sigma_min > INVERTIBLE_RTOL * sigma_max.
INVERTIBLE_RTOL = 1e-8


def as_cmatrix(m, *, name: str = "matrix") -> CMatrix:
    arr = np.array(m, dtype=complex)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def dagger(m: CMatrix) -> CMatrix:
    """Conjugate transpose."""
    return np.conj(np.swapaxes(m, -1, -2))


def spectral_norm(m: CMatrix) -> float:
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    return float(linalg.svdvals(m)[0])


def hermitian_eigen(m: CMatrix, cfg: ToleranceConfig = DEFAULT_CONFIG) -> tuple[np.ndarray, CMatrix]:
    """Ascending eigenvalues and orthonormal eigenvectors (columns) of a Hermitian matrix."""
    m = as_cmatrix(m)
    if m.shape[0] != m.shape[1]:
        raise NotHermitian(f"matrix is not square: {m.shape}")
    defect = spectral_norm(m - dagger(m)) if m.size else 0.0
    if defect > cfg.residual_tol:
        raise NotHermitian(f"||m - m^H|| = {defect:.3e} exceeds {cfg.residual_tol:.1e}")
    herm = 0.5 * (m + dagger(m))
    w, v = linalg.eigh(herm)
    return w, v


def rank_with_tol(m: CMatrix, tol: float) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    s = linalg.svdvals(m)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def is_invertible(m: CMatrix, rtol: float = INVERTIBLE_RTOL) -> bool:
    m = np.asarray(m)
    if m.size == 0 or m.shape[0] != m.shape[1]:
        return False
    s = linalg.svdvals(m)
    return bool(s[0] > 0.0 and s[-1] > rtol * s[0])


def solve_linear(m: CMatrix, rhs: CMatrix, cfg: ToleranceConfig = DEFAULT_CONFIG) -> CMatrix:
    """Solve ``m x = rhs``; raises :class:`Singular` when m is numerically rank deficient."""
    m = as_cmatrix(m, name="m")
    rhs_arr = np.asarray(rhs, dtype=complex)
    if m.shape[0] != m.shape[1]:
        raise Singular(f"matrix is not square: {m.shape}")
    s = linalg.svdvals(m)
    if s[0] == 0.0 or s[-1] <= cfg.rank_tol * s[0]:
        raise Singular(f"smallest singular value {s[-1]:.3e} <= rank_tol * {s[0]:.3e}")
    return linalg.solve(m, rhs_arr)


def real_nullspace(m, tol: float) -> np.ndarray:
    """Orthonormal basis (columns) of the numerical null space of a real matrix."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2:
        raise ValueError("real_nullspace expects a 2-d array")
    cols = m.shape[1]
    if m.size == 0 or not np.any(m):
        return np.eye(cols)
    _, s, vh = linalg.svd(m, full_matrices=True)
    rank = int(np.count_nonzero(s > tol * s[0]))
    return vh[rank:].T.copy()
