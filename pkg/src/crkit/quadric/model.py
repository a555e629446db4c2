from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ..errors import InvariantViolation
from ..numerics import DEFAULT_CONFIG, ToleranceConfig, dagger, rank_with_tol

HERMITIAN_TOL = 1e-12


class DependentMatricesWarning(UserWarning):
    pass


@dataclass(frozen=True, eq=False)
class QuadricModel:
    """The quadric ``Re w_j = zbar^T A_j z`` (j = 1..d) in C^{n+d}."""

    matrices: tuple[np.ndarray, ...]

    def __post_init__(self):
        if not self.matrices:
            raise InvariantViolation("a quadric needs at least one matrix")
        mats = []
        n = None
        for j, m in enumerate(self.matrices):
            arr = np.array(m, dtype=complex)
            if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
                raise InvariantViolation(f"A_{j + 1} is not square: shape {arr.shape}")
            if n is None:
                n = arr.shape[0]
            elif arr.shape[0] != n:
                raise InvariantViolation(f"A_{j + 1} has size {arr.shape[0]}, expected {n}")
            if not np.all(np.isfinite(arr)):
                raise InvariantViolation(f"A_{j + 1} has non-finite entries")
            diff = np.abs(arr - dagger(arr))
            if diff.max(initial=0.0) > HERMITIAN_TOL:
                r, c = np.unravel_index(int(np.argmax(diff)), diff.shape)
                raise InvariantViolation(
                    f"A_{j + 1} is not Hermitian at (j={j + 1}, row={r + 1}, col={c + 1}): "
                    f"{arr[r, c]} vs conj {np.conj(arr[c, r])}"
                )
            arr.setflags(write=False)
            mats.append(arr)
        object.__setattr__(self, "matrices", tuple(mats))
        if not self.linearly_independent():
            warnings.warn("the matrices A_j are not R-linearly independent", DependentMatricesWarning, stacklevel=3)

    @property
    def n(self) -> int:
        return self.matrices[0].shape[0]

    @property
    def d(self) -> int:
        return len(self.matrices)

    @property
    def A(self) -> tuple[np.ndarray, ...]:
        return self.matrices

    def combination(self, coeffs) -> np.ndarray:
        coeffs = np.asarray(coeffs)
        return np.einsum("j,jkl->kl", coeffs.astype(complex), np.stack(self.matrices))

    def linearly_independent(self, cfg: ToleranceConfig = DEFAULT_CONFIG) -> bool:
        stacked = np.stack([np.concatenate([m.real.ravel(), m.imag.ravel()]) for m in self.matrices])
        return rank_with_tol(stacked, cfg.rank_tol) == self.d


@dataclass(frozen=True, eq=False)
class JetParameters:
    b: np.ndarray
    a: np.ndarray
    V: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.b, dtype=float).reshape(-1)
        a = np.asarray(self.a, dtype=complex).reshape(-1)
        V = np.asarray(self.V, dtype=complex).reshape(-1)
        if b.shape != a.shape:
            raise ValueError(f"b and a must both have length d, got {b.shape[0]} and {a.shape[0]}")
        for arr in (b, a, V):
            arr.setflags(write=False)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "V", V)

    def check(self, model: QuadricModel) -> None:
        if self.b.shape[0] != model.d:
            raise ValueError(f"parameters have d={self.b.shape[0]}, model has d={model.d}")
        if self.V.shape[0] != model.n:
            raise ValueError(f"V has length {self.V.shape[0]}, model has n={model.n}")

    def P(self, model: QuadricModel) -> np.ndarray:
        """P = sum a_j A_j."""
        return model.combination(self.a)

    def A(self, model: QuadricModel) -> np.ndarray:
        """A = sum (b_j - a_j - conj(a_j)) A_j."""
        return model.combination(self.b - 2.0 * self.a.real)

    def with_a(self, a) -> "JetParameters":
        return JetParameters(self.b, a, self.V)
