"""Levi form of ``Im w = Q``: exact entries, numeric negativity scan, determinant identity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..polyalg.model import ModelHypersurface
from ..polyalg.poly import HermPoly


def levi_form(model: ModelHypersurface | HermPoly) -> list[list[HermPoly]]:
    """Entry (i, k) is Q_{z_i zbar_k}."""
    Q = model.Q if isinstance(model, ModelHypersurface) else model
    return [[Q.diff_z(i).diff_zbar(k) for k in range(Q.n)] for i in range(Q.n)]


def levi_matrices(model: ModelHypersurface | HermPoly, points: np.ndarray) -> np.ndarray:
    """Levi matrices at each row of ``points``; shape (N, n, n)."""
    L = levi_form(model)
    pts = np.atleast_2d(np.asarray(points, dtype=complex))
    n = len(L)
    out = np.empty((pts.shape[0], n, n), dtype=complex)
    for i in range(n):
        for k in range(n):
            out[:, i, k] = L[i][k].evaluate_many(pts)
    return out


@dataclass(frozen=True, eq=False)
class ScanVerdict:
    witness: np.ndarray | None
    lambda_min: float  # at the witness, or the smallest relative value seen
    samples_used: int
    seed: int

    @property
    def found(self) -> bool:
        return self.witness is not None


def sample_points(n: int, samples: int, seed: int) -> np.ndarray:
    """Seeded points on complex spheres of radii 2^-(i mod 8)."""
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    radii = 2.0 ** -(np.arange(samples) % 8)
    return x * radii[:, None]


def pseudoconvexity_scan(
    model: ModelHypersurface | HermPoly,
    samples: int = 10_000,
    seed: int = 0,
    tol: float = 1e-9,
    chunk: int = 2048,
) -> ScanVerdict:
    """First sample where lambda_min < -tol * max|lambda| of the Levi matrix.

    Finding a witness proves the model is not pseudoconvex; ``witness=None`` is
    only evidence of pseudoconvexity.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    Q = model.Q if isinstance(model, ModelHypersurface) else model
    pts = sample_points(Q.n, samples, seed)
    worst = np.inf
    for start in range(0, samples, chunk):
        block = pts[start : start + chunk]
        mats = levi_matrices(Q, block)
        mats = 0.5 * (mats + np.conj(np.swapaxes(mats, -1, -2)))
        ev = np.linalg.eigvalsh(mats)
        scale = np.maximum(np.abs(ev).max(axis=1), np.finfo(float).tiny)
        rel = ev[:, 0] / scale
        bad = np.nonzero(rel < -tol)[0]
        if bad.size:
            i = int(bad[0])
            return ScanVerdict(witness=block[i].copy(), lambda_min=float(ev[i, 0]), samples_used=start + i + 1, seed=seed)
        worst = min(worst, float(rel.min()))
    return ScanVerdict(witness=None, lambda_min=worst, samples_used=samples, seed=seed)


def levi_determinant_identity_check(P: HermPoly, Q: HermPoly) -> bool:
    """det Levi(P Qbar + Q Pbar) == -|P_z1 Q_z2 - P_z2 Q_z1|^2, exactly."""
    if P.n != 2 or Q.n != 2:
        raise ValueError("the identity is stated for n = 2")
    if not (P.is_holomorphic() and Q.is_holomorphic()):
        raise ValueError("P and Q must be holomorphic")
    F = P * Q.conjugate() + Q * P.conjugate()
    L = levi_form(F)
    det = L[0][0] * L[1][1] - L[0][1] * L[1][0]
    J = P.diff_z(0) * Q.diff_z(1) - P.diff_z(1) * Q.diff_z(0)
    return (det + J * J.conjugate()).is_zero()
