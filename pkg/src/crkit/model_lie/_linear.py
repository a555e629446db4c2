"""Exact real solution spaces of real-linear polynomial identities.

An unknown is a real number; the unknowns are grouped into named holomorphic
polynomials with complex coefficients, complex scalars and real scalars.  A
residual function maps decoded unknowns to polynomials that must vanish
identically.  Because residuals are real-linear, evaluating them on unit
vectors yields the columns of the coefficient system exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from ..polyalg import exact
from ..polyalg.gaussian import GaussianRational
from ..polyalg.poly import HermPoly, holomorphic_monomials


class Layout:
    def __init__(self, n: int):
        self.n = n
        self._groups: list[tuple[str, str, object, int]] = []  # (name, kind, meta, offset)
        self.size = 0

    def complex_poly(self, name: str, degree: int) -> None:
        monos = holomorphic_monomials(self.n, degree)
        self._groups.append((name, "poly", monos, self.size))
        self.size += 2 * len(monos)

    def complex_scalars(self, name: str, count: int) -> None:
        self._groups.append((name, "cscalars", count, self.size))
        self.size += 2 * count

    def real_scalar(self, name: str) -> None:
        self._groups.append((name, "real", None, self.size))
        self.size += 1

    def decode(self, vec) -> dict:
        out = {}
        zero = (0,) * self.n
        for name, kind, meta, off in self._groups:
            if kind == "poly":
                terms = {}
                for i, alpha in enumerate(meta):
                    re, im = vec[off + 2 * i], vec[off + 2 * i + 1]
                    if re or im:
                        terms[(alpha, zero)] = GaussianRational(re, im)
                out[name] = HermPoly(self.n, terms)
            elif kind == "cscalars":
                out[name] = [GaussianRational(vec[off + 2 * i], vec[off + 2 * i + 1]) for i in range(meta)]
            else:
                out[name] = Fraction(vec[off])
        return out

    def unit(self, k: int) -> list[Fraction]:
        v = [Fraction(0)] * self.size
        v[k] = Fraction(1)
        return v


Residual = Callable[[dict], list[HermPoly]]


def coefficient_rows(layout: Layout, residual: Residual) -> list[dict[int, Fraction]]:
    rows: dict[tuple, dict[int, Fraction]] = {}
    for k in range(layout.size):
        for e, poly in enumerate(residual(layout.decode(layout.unit(k)))):
            for mono, c in poly.terms.items():
                if c.re:
                    rows.setdefault((e, mono, 0), {})[k] = c.re
                if c.im:
                    rows.setdefault((e, mono, 1), {})[k] = c.im
    # deterministic row order
    return [rows[key] for key in sorted(rows)]


def solution_space(layout: Layout, residual: Residual) -> list[list[Fraction]]:
    """Exact basis of the real unknown vectors for which every residual vanishes."""
    if layout.size == 0:
        return []
    return exact.nullspace(coefficient_rows(layout, residual), layout.size)


def integer_normalize(vec: list[Fraction]) -> list[Fraction]:
    """Scale a rational vector to coprime integers (keeps the direction and sign)."""
    from math import gcd, lcm

    den = 1
    for v in vec:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return vec
    return [Fraction(v // g) for v in ints]
