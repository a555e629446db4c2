"""Symmetric pairs of Y-chains and annihilators of a vector field."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..errors import LengthMismatch, PreconditionError
from ..polyalg.fields import GradedVectorField
from ..polyalg.gaussian import GaussianRational
from ..polyalg.model import ModelHypersurface
from ..polyalg.poly import HermPoly
from ._linear import Layout, solution_space


@dataclass(frozen=True)
class ChainSpec:
    """U^1..U^N and V^1..V^N with Y(U^j) = c_j U^{j+1}, Y(V^j) = d_j V^{j+1}, Y(U^N) = Y(V^N) = 0."""

    Y: GradedVectorField
    U: tuple[HermPoly, ...]
    V: tuple[HermPoly, ...]
    c: tuple[GaussianRational, ...] = field(default=())
    d: tuple[GaussianRational, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "U", tuple(self.U))
        object.__setattr__(self, "V", tuple(self.V))
        object.__setattr__(self, "c", tuple(GaussianRational.coerce(x) for x in self.c))
        object.__setattr__(self, "d", tuple(GaussianRational.coerce(x) for x in self.d))
        N = len(self.U)
        if N == 0 or len(self.V) != N:
            raise LengthMismatch(f"U and V must have the same positive length, got {len(self.U)} and {len(self.V)}")
        if len(self.c) != N - 1 or len(self.d) != N - 1:
            raise LengthMismatch(f"need {N - 1} chain constants c and d, got {len(self.c)} and {len(self.d)}")
        if self.Y.is_zero():
            raise PreconditionError("the chain field Y must be nonzero")
        if not all(self.c) or not all(self.d):
            raise PreconditionError("chain constants must be nonzero")

    @property
    def N(self) -> int:
        return len(self.U)

    def T(self) -> HermPoly:
        """Re sum_k U^k conj(V^{N-k+1})."""
        N = self.N
        acc = HermPoly.zero(self.U[0].n)
        for k in range(N):
            acc = acc + self.U[k] * self.V[N - 1 - k].conjugate()
        return acc.real_part()


def chain_residuals(model: ModelHypersurface, specs: ChainSpec | Sequence[ChainSpec]) -> dict[str, HermPoly]:
    """Named residual polynomials; the chain data is valid iff all vanish."""
    specs = [specs] if isinstance(specs, ChainSpec) else list(specs)
    n = model.n
    out: dict[str, HermPoly] = {}
    total = HermPoly.zero(n)
    for s, spec in enumerate(specs):
        Y, N = spec.Y, spec.N
        for name, seq, consts in (("U", spec.U, spec.c), ("V", spec.V, spec.d)):
            for j in range(N - 1):
                out[f"chain{s}.Y({name}{j + 1})"] = Y.apply(seq[j]) - seq[j + 1].scale(consts[j])
            out[f"chain{s}.Y({name}{N})"] = Y.apply(seq[N - 1])
        for j in range(N - 1):
            gap = spec.c[j] + spec.d[N - 2 - j].conjugate()
            out[f"chain{s}.c{j + 1}+conj(d{N - 1 - j})"] = HermPoly.constant(n, gap)
        YQ = Y.apply(model.Q)
        out[f"chain{s}.tangency"] = YQ + YQ.conjugate()
        total = total + spec.T()
    out["Q-sum(T)"] = model.Q - total
    return out


def verify_chain(model: ModelHypersurface, specs: ChainSpec | Sequence[ChainSpec]) -> bool:
    return all(r.is_zero() for r in chain_residuals(model, specs).values())


def _check_annihilator_field(Y: GradedVectorField) -> int:
    if Y.n != 2:
        raise PreconditionError("annihilators are computed for n = 2")
    if Y.is_zero() or Y.f_w_linear or Y.f_uses_w or (Y.g is not None and not Y.g.is_zero()):
        raise PreconditionError("Y must be a nonzero z-field")
    degs = Y.coefficient_degrees()
    if len(degs) != 1:
        raise PreconditionError("Y must have homogeneous coefficients")
    k = degs.pop()
    if k == 1:
        M = Y.linear_part()
        if np.linalg.norm(np.linalg.matrix_power(M, 2)) > 1e-12:
            raise PreconditionError("a linear Y must be nilpotent (positive weight)")
    elif k < 1:
        raise PreconditionError("Y must have positive weight")
    return k


def annihilator_dimension(Y: GradedVectorField, nu: int | Fraction) -> int:
    """Complex dimension of {p homogeneous of degree nu : Y(p) = 0}."""
    _check_annihilator_field(Y)
    nu = Fraction(nu)
    if nu.denominator != 1 or nu < 0:
        return 0
    lay = Layout(Y.n)
    lay.complex_poly("p", int(nu))
    real_dim = len(solution_space(lay, lambda u: [Y.apply(u["p"])]))
    return real_dim // 2
