"""Jordan-Chevalley split of the linear part of a rotation field."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..polyalg.fields import GradedVectorField

CLUSTER_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class RotationClassification:
    linear_map: np.ndarray
    real_diag_part: np.ndarray
    imag_diag_part: np.ndarray
    nilpotent_part: np.ndarray
    eigenvalues: np.ndarray
    real_diagonal_present: bool
    imaginary_diagonal_present: bool
    nilpotent_present: bool


def _clusters(eigs: np.ndarray, tol: float) -> list[tuple[complex, int]]:
    """Group eigenvalues closer than ``tol``; returns (mean, multiplicity) pairs."""
    groups: list[list[complex]] = []
    for lam in sorted(eigs, key=lambda x: (x.real, x.imag)):
        for g in groups:
            if abs(lam - np.mean(g)) <= tol:
                g.append(lam)
                break
        else:
            groups.append([lam])
    return [(complex(np.mean(g)), len(g)) for g in groups]


def split_linear_map(M: np.ndarray, tol: float = CLUSTER_TOL):
    """Return (S_re, S_im, N, eigenvalues) with M = S_re + S_im + N.

    S = S_re + S_im is diagonalizable, N nilpotent, [S, N] = 0.  Each cluster's
    generalized eigenspace is taken as the ``k`` smallest right singular
    vectors of (M - lambda I)^k, k the cluster size.
    """
    M = np.asarray(M, dtype=complex)
    n = M.shape[0]
    eigs = np.linalg.eigvals(M)
    scale = max(1.0, float(np.linalg.norm(M, 2)))
    # defective eigenvalues split by roughly sqrt(eps) * scale
    groups = _clusters(eigs, max(tol, 1e-6) * scale)
    cols, lam_re, lam_im = [], [], []
    for lam, k in groups:
        B = np.linalg.matrix_power(M - lam * np.eye(n), k)
        _, _, vh = np.linalg.svd(B)
        cols.append(vh[-k:].conj().T)
        lam_re += [lam.real] * k
        lam_im += [lam.imag] * k
    T = np.hstack(cols)
    Tinv = np.linalg.inv(T)
    S_re = T @ np.diag(lam_re).astype(complex) @ Tinv
    S_im = T @ np.diag(1j * np.asarray(lam_im)) @ Tinv
    N = M - S_re - S_im
    return S_re, S_im, N, eigs


def classify_rotation(field: GradedVectorField, tol: float = CLUSTER_TOL) -> RotationClassification:
    if field.weight != 0:
        raise ValueError("rotation fields have weight 0")
    if field.coefficient_degrees() - {1}:
        raise ValueError("rotation fields have linear coefficients")
    M = field.linear_part()
    S_re, S_im, N, eigs = split_linear_map(M, tol)
    scale = max(1.0, float(np.linalg.norm(M, 2)))
    return RotationClassification(
        linear_map=M,
        real_diag_part=S_re,
        imag_diag_part=S_im,
        nilpotent_part=N,
        eigenvalues=eigs,
        real_diagonal_present=bool(np.any(np.abs(eigs.real) > tol * scale)),
        imaginary_diagonal_present=bool(np.any(np.abs(eigs.imag) > tol * scale)),
        nilpotent_present=bool(np.linalg.norm(N, 2) > 1e-8 * scale),
    )
