"""Weighted-homogeneous holomorphic vector fields on C^{n+1} = {(z, w)}.

A ``GradedVectorField`` follows the component templates of the graded symmetry
algebra of a model ``Im w = Q(z, zbar)``::

    sum_j (f_j(z) + a_j w) d/dz_j + (g(z) [* w]) d/dw + a * w^k d/dw

The ``w`` power attached to the scalar ``a`` is 0 for weight -1 (``a d/dw``),
1 for weight 0 (``a w d/dw``) and 2 for weight 1 (``a w^2 d/dw``).  For weight 1
the ``f_j`` carry an extra factor ``w`` (``f_j(z) w d/dz_j``), recorded by
``f_uses_w``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .gaussian import GaussianRational
from .poly import HermPoly


@dataclass(frozen=True)
class GradedVectorField:
    n: int
    f: tuple[HermPoly, ...]
    f_w_linear: tuple[GaussianRational, ...] = ()
    g: HermPoly | None = None
    g_uses_w: bool = False
    w_part_scalar: Fraction = Fraction(0)
    weight: Fraction = Fraction(0)
    f_uses_w: bool = False
    w_power: int = 1

    def __post_init__(self):
        if len(self.f) != self.n:
            raise ValueError(f"need {self.n} coefficient polynomials, got {len(self.f)}")
        for p in self.f:
            if p.n != self.n or not p.is_holomorphic():
                raise ValueError("field coefficients must be holomorphic polynomials in z")
        if self.f_w_linear and len(self.f_w_linear) != self.n:
            raise ValueError("f_w_linear must have length n")
        if self.g is not None and (self.g.n != self.n or not self.g.is_holomorphic()):
            raise ValueError("g must be a holomorphic polynomial in z")
        if self.g is not None and self.g.is_zero():
            object.__setattr__(self, "g", None)
        object.__setattr__(self, "weight", Fraction(self.weight))
        object.__setattr__(self, "w_part_scalar", Fraction(self.w_part_scalar))
        object.__setattr__(
            self, "f_w_linear", tuple(GaussianRational.coerce(a) for a in self.f_w_linear)
        )

    @classmethod
    def z_field(cls, f, weight=0) -> "GradedVectorField":
        """Pure z-field ``sum_j f_j d/dz_j``."""
        f = tuple(f)
        return cls(n=f[0].n, f=f, weight=Fraction(weight))

    @property
    def a_scalar(self) -> Fraction:
        return self.w_part_scalar

    def is_zero(self) -> bool:
        return (
            all(p.is_zero() for p in self.f)
            and not any(self.f_w_linear)
            and (self.g is None or self.g.is_zero())
            and self.w_part_scalar == 0
        )

    def apply(self, p: HermPoly) -> HermPoly:
        """``sum_j f_j * dp/dz_j`` (the z-part acting on a holomorphic polynomial)."""
        if p.n != self.n:
            raise ValueError("variable count mismatch")
        out = HermPoly.zero(self.n)
        for j, fj in enumerate(self.f):
            if not fj.is_zero():
                out = out + fj * p.diff_z(j)
        return out

    def linear_part(self) -> np.ndarray:
        """Matrix M with ``f_j = sum_k M[j, k] z_k`` (degree-1 part of the z coefficients)."""
        m = np.zeros((self.n, self.n), dtype=complex)
        for j, fj in enumerate(self.f):
            for (a, _), c in fj.terms.items():
                if sum(a) == 1:
                    m[j, a.index(1)] += complex(c)
        return m

    def coefficient_degrees(self) -> set[int]:
        return {sum(a) for p in self.f for (a, _) in p.terms}

    def to_polynomial_field(self) -> tuple[HermPoly, ...]:
        """Coefficients in variables (z_1..z_n, w) as n+1 holomorphic polynomials."""
        N = self.n + 1
        w = HermPoly.z(N, self.n)
        comps = []
        for j in range(self.n):
            c = _embed(self.f[j], N)
            if self.f_uses_w:
                c = c * w
            if self.f_w_linear:
                c = c + w.scale(self.f_w_linear[j])
            comps.append(c)
        last = HermPoly.zero(N)
        if self.g is not None:
            gg = _embed(self.g, N)
            last = last + (gg * w if self.g_uses_w else gg)
        if self.w_part_scalar:
            last = last + (w**self.w_power).scale(GaussianRational(self.w_part_scalar))
        comps.append(last)
        return tuple(comps)

    def __str__(self) -> str:
        names = [f"d/dz{j + 1}" for j in range(self.n)] + ["d/dw"]
        parts = [f"({c})*{name}" for c, name in zip(self.to_polynomial_field(), names) if not c.is_zero()]
        return " + ".join(parts) if parts else "0"


def _embed(p: HermPoly, N: int) -> HermPoly:
    """View a holomorphic polynomial in z as one in (z, w)."""
    pad = N - p.n
    return HermPoly(N, {(a + (0,) * pad, b + (0,) * pad): c for (a, b), c in p.terms.items()})


def bracket(X: tuple[HermPoly, ...], Y: tuple[HermPoly, ...]) -> tuple[HermPoly, ...]:
    """Lie bracket of holomorphic polynomial vector fields given by their coefficient tuples."""
    N = len(X)
    out = []
    for k in range(N):
        acc = HermPoly.zero(X[0].n)
        for i in range(N):
            if not X[i].is_zero():
                acc = acc + X[i] * Y[k].diff_z(i)
            if not Y[i].is_zero():
                acc = acc - Y[i] * X[k].diff_z(i)
        out.append(acc)
    return tuple(out)


def apply_field(Y: GradedVectorField, p: HermPoly) -> HermPoly:
    return Y.apply(p)
