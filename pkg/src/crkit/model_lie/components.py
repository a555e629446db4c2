"""Graded components of the symmetry algebra of ``Im w = Q(z, zbar)``.

Weights and their field templates (m = deg Q, all polynomials homogeneous):

  -1       a d/dw,                                       a real
  -1/m     sum a_j d/dz_j + g(z) d/dw,                   deg g = m-1
  0        sum f_j(z) d/dz_j + a w d/dw,                 deg f_j = 1, a real
  tau/m    sum f_j(z) d/dz_j,                            deg f_j = tau+1, 1 <= tau <= m-2
  1-1/m    sum (f_j(z) + a_j w) d/dz_j + g(z) w d/dw,    deg f_j = m, deg g = m-1
  1        sum f_j(z) w d/dz_j + a w^2 d/dw,             deg f_j = 1, a real

Each component is the exact real solution space of its tangency identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import BadWeight
from ..polyalg.fields import GradedVectorField
from ..polyalg.gaussian import GaussianRational
from ..polyalg.model import ModelHypersurface
from ..polyalg.poly import HermPoly
from ._linear import Layout, integer_normalize, solution_space

I_UNIT = GaussianRational(0, 1)

# Coefficient of i*Q*(a_j Q_zj - conj) in the weight 1-1/m identity.  Direct
# expansion of Re(Y(w - wbar)/(2i) - Y Q) on the model gives 2; "doubled"
# keeps the alternative reading with 4 for comparison.
ITEM5_FACTORS = {"derived": 2, "doubled": 4}


@dataclass(frozen=True)
class GradedComponentBasis:
    weight: Fraction
    basis: tuple[GradedVectorField, ...]
    vectors: tuple[tuple[Fraction, ...], ...] = field(repr=False, default=())

    @property
    def real_dimension(self) -> int:
        return len(self.basis)


def allowed_weights(m: int) -> list[Fraction]:
    ws = [Fraction(-1), Fraction(-1, m), Fraction(0)]
    ws += [Fraction(t, m) for t in range(1, m - 1)]
    ws += [Fraction(m - 1, m), Fraction(1)]
    return sorted(set(ws))


def gc_weights(m: int) -> list[Fraction]:
    return [Fraction(t, m) for t in range(1, m - 1)]


class _Derivs:
    def __init__(self, Q: HermPoly):
        self.Q = Q
        self.Qz = [Q.diff_z(j) for j in range(Q.n)]
        self.Qzb = [Q.diff_zbar(j) for j in range(Q.n)]

    def real_action(self, f: list[HermPoly]) -> HermPoly:
        """sum_j (f_j Q_zj + conj(f_j) Q_zbarj)."""
        out = HermPoly.zero(self.Q.n)
        for fj, qz, qzb in zip(f, self.Qz, self.Qzb):
            if not fj.is_zero():
                out = out + fj * qz + fj.conjugate() * qzb
        return out

    def holo_action(self, f: list[HermPoly]) -> HermPoly:
        out = HermPoly.zero(self.Q.n)
        for fj, qz in zip(f, self.Qz):
            if not fj.is_zero():
                out = out + fj * qz
        return out

    def translation_action(self, a: list[GaussianRational], sign: int) -> HermPoly:
        """sum_j (a_j Q_zj + sign * conj(a_j) Q_zbarj)."""
        out = HermPoly.zero(self.Q.n)
        for aj, qz, qzb in zip(a, self.Qz, self.Qzb):
            if aj:
                out = out + qz.scale(aj) + qzb.scale(aj.conjugate() * sign)
        return out


def _check_weight(model: ModelHypersurface, weight) -> Fraction:
    w = Fraction(weight)
    if w not in allowed_weights(model.m):
        raise BadWeight(f"weight {w} is not a grading weight for m = {model.m}: {[str(x) for x in allowed_weights(model.m)]}")
    return w


def _layout_and_residual(model: ModelHypersurface, w: Fraction, item5: str, rigid: bool = False):
    n, m = model.n, model.m
    dv = _Derivs(model.Q)
    Q = model.Q
    lay = Layout(n)
    if w == -1:
        lay.real_scalar("s")
        return lay, lambda u: []
    if w == Fraction(-1, m) and w != Fraction(m - 1, m):
        lay.complex_scalars("a", n)
        lay.complex_poly("g", m - 1)

        def res(u):
            return [_item2(dv, u["a"], u["g"])]

        return lay, res
    if w == 0:
        for j in range(n):
            lay.complex_poly(f"f{j}", 1)
        if not rigid:
            lay.real_scalar("s")

        def res(u):
            f = [u[f"f{j}"] for j in range(n)]
            s = u.get("s", Fraction(0))
            return [dv.real_action(f) - Q.scale(s)]

        return lay, res
    if w == 1:
        for j in range(n):
            lay.complex_poly(f"f{j}", 1)
        lay.real_scalar("s")

        def res(u):
            f = [u[f"f{j}"] for j in range(n)]
            return [dv.holo_action(f) - Q.scale(u["s"])]

        return lay, res
    if w == Fraction(m - 1, m):
        factor = ITEM5_FACTORS[item5]
        for j in range(n):
            lay.complex_poly(f"f{j}", m)
        lay.complex_scalars("a", n)
        lay.complex_poly("g", m - 1)

        def res(u):
            f = [u[f"f{j}"] for j in range(n)]
            a, g = u["a"], u["g"]
            lhs = dv.real_action(f).scale(2) + (Q * dv.translation_action(a, -1)).scale(I_UNIT * factor)
            return [_item2(dv, a, g), lhs - Q * (g + g.conjugate())]

        return lay, res
    # tau/m
    tau = int(w * m)
    for j in range(n):
        lay.complex_poly(f"f{j}", tau + 1)

    def res(u):
        return [dv.real_action([u[f"f{j}"] for j in range(n)])]

    return lay, res


def _item2(dv: _Derivs, a, g: HermPoly) -> HermPoly:
    """2i sum(a_j Q_zj + conj(a_j) Q_zbarj) - (g - conj g)."""
    return dv.translation_action(a, +1).scale(GaussianRational(0, 2)) - (g - g.conjugate())


def _to_field(model: ModelHypersurface, w: Fraction, u: dict) -> GradedVectorField:
    n, m = model.n, model.m
    zeros = tuple(HermPoly.zero(n) for _ in range(n))
    if w == -1:
        return GradedVectorField(n=n, f=zeros, w_part_scalar=u["s"], weight=w, w_power=0)
    if w == Fraction(-1, m) and w != Fraction(m - 1, m):
        f = tuple(HermPoly.constant(n, aj) for aj in u["a"])
        return GradedVectorField(n=n, f=f, g=u["g"], weight=w)
    f = tuple(u[f"f{j}"] for j in range(n))
    if w == 0:
        return GradedVectorField(n=n, f=f, w_part_scalar=u.get("s", Fraction(0)), weight=w, w_power=1)
    if w == 1:
        return GradedVectorField(n=n, f=f, f_uses_w=True, w_part_scalar=u["s"], weight=w, w_power=2)
    if w == Fraction(m - 1, m):
        return GradedVectorField(n=n, f=f, f_w_linear=tuple(u["a"]), g=u["g"], g_uses_w=True, weight=w)
    return GradedVectorField(n=n, f=f, weight=w)


def graded_component(model: ModelHypersurface, weight, item5: str = "derived") -> GradedComponentBasis:
    """Exact real basis of the weight-``weight`` component."""
    w = _check_weight(model, weight)
    if item5 not in ITEM5_FACTORS:
        raise ValueError(f"item5 must be one of {sorted(ITEM5_FACTORS)}")
    lay, res = _layout_and_residual(model, w, item5)
    if w == -1:
        vecs = [[Fraction(1)]]
    else:
        vecs = [integer_normalize(v) for v in solution_space(lay, res)]
    basis = tuple(_to_field(model, w, lay.decode(v)) for v in vecs)
    return GradedComponentBasis(weight=w, basis=basis, vectors=tuple(tuple(v) for v in vecs))


def all_components(model: ModelHypersurface, item5: str = "derived") -> dict[Fraction, GradedComponentBasis]:
    return {w: graded_component(model, w, item5) for w in allowed_weights(model.m)}


def rigid_rotations(model: ModelHypersurface) -> list[GradedVectorField]:
    """Basis of the weight-0 fields with zero dilation part."""
    lay, res = _layout_and_residual(model, Fraction(0), "derived", rigid=True)
    return [_to_field(model, Fraction(0), lay.decode(integer_normalize(v))) for v in solution_space(lay, res)]


def tangency_residuals(model: ModelHypersurface, Y: GradedVectorField, item5: str = "derived") -> list[HermPoly]:
    """Residual polynomials of the defining identity for ``Y`` at its weight (all zero iff tangent)."""
    w = _check_weight(model, Y.weight)
    m, n = model.m, model.n
    dv = _Derivs(model.Q)
    Q = model.Q
    g = Y.g if Y.g is not None else HermPoly.zero(n)
    if w == -1:
        return []
    if w == Fraction(-1, m) and w != Fraction(m - 1, m):
        a = [GaussianRational.coerce(p.coeff((0,) * n)) for p in Y.f]
        return [_item2(dv, a, g)]
    f = list(Y.f)
    if w == 0:
        return [dv.real_action(f) - Q.scale(Y.w_part_scalar)]
    if w == 1:
        return [dv.holo_action(f) - Q.scale(Y.w_part_scalar)]
    if w == Fraction(m - 1, m):
        a = list(Y.f_w_linear) or [GaussianRational(0)] * n
        lhs = dv.real_action(f).scale(2) + (Q * dv.translation_action(a, -1)).scale(I_UNIT * ITEM5_FACTORS[item5])
        return [_item2(dv, a, g), lhs - Q * (g + g.conjugate())]
    return [dv.real_action(f)]
