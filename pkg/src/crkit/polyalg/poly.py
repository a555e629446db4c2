"""Sparse polynomials in (z_1..z_n, zbar_1..zbar_n) with Gaussian-rational coefficients.

A term is keyed by ``(alpha, beta)``: the exponent tuples of ``z`` and ``zbar``.
Holomorphic polynomials are the ones with every ``beta == (0,)*n``; they share
the same class (``HoloPoly`` is an alias used for documentation only).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

from .gaussian import GaussianRational

Monomial = tuple[tuple[int, ...], tuple[int, ...]]


class HermPoly:
    __slots__ = ("n", "_terms", "_compiled")

    def __init__(self, n: int, terms: Mapping[Monomial, object] | None = None):
        if n < 1:
            raise ValueError("polynomials need at least one variable")
        self.n = int(n)
        clean: dict[Monomial, GaussianRational] = {}
        for (alpha, beta), coeff in (terms or {}).items():
            alpha, beta = tuple(int(a) for a in alpha), tuple(int(b) for b in beta)
            if len(alpha) != n or len(beta) != n:
                raise ValueError(f"multi-index length mismatch for n={n}: {alpha}, {beta}")
            if min(alpha + beta) < 0:
                raise ValueError("negative exponent")
            c = GaussianRational.coerce(coeff)
            if c:
                key = (alpha, beta)
                if key in clean:
                    c = clean[key] + c
                    if not c:
                        del clean[key]
                        continue
                clean[key] = c
        self._terms = clean
        self._compiled = None

    # constructors -------------------------------------------------------
    @classmethod
    def _raw(cls, n: int, terms: dict) -> "HermPoly":
        # terms already canonical: no zero coefficients, tuple keys
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        obj._compiled = None
        return obj

    @classmethod
    def zero(cls, n: int) -> "HermPoly":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c) -> "HermPoly":
        zero = (0,) * n
        return cls(n, {(zero, zero): c})

    @classmethod
    def monomial(cls, alpha: Iterable[int], beta: Iterable[int] | None = None, coeff=1) -> "HermPoly":
        alpha = tuple(alpha)
        beta = tuple(beta) if beta is not None else (0,) * len(alpha)
        return cls(len(alpha), {(alpha, beta): coeff})

    @classmethod
    def z(cls, n: int, j: int) -> "HermPoly":
        """The coordinate ``z_j`` (0-based index)."""
        e = tuple(1 if k == j else 0 for k in range(n))
        return cls(n, {(e, (0,) * n): 1})

    @classmethod
    def zbar(cls, n: int, j: int) -> "HermPoly":
        e = tuple(1 if k == j else 0 for k in range(n))
        return cls(n, {((0,) * n, e): 1})

    @classmethod
    def variables(cls, n: int) -> tuple[list["HermPoly"], list["HermPoly"]]:
        return [cls.z(n, j) for j in range(n)], [cls.zbar(n, j) for j in range(n)]

    # basic protocol -------------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, GaussianRational]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, alpha, beta=None) -> GaussianRational:
        alpha = tuple(alpha)
        beta = tuple(beta) if beta is not None else (0,) * self.n
        return self._terms.get((alpha, beta), GaussianRational(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, HermPoly):
            return self.n == other.n and self._terms == other._terms
        try:
            return self == HermPoly.constant(self.n, GaussianRational.coerce(other))
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._terms.items())))

    def _check(self, other: "HermPoly") -> None:
        if other.n != self.n:
            raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")

    def _lift(self, other) -> "HermPoly":
        if isinstance(other, HermPoly):
            self._check(other)
            return other
        return HermPoly.constant(self.n, GaussianRational.coerce(other))

    # ring operations -------------------------------------------------------
    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for key, c in o._terms.items():
            s = out.get(key)
            if s is None:
                out[key] = c
            else:
                s = s + c
                if s:
                    out[key] = s
                else:
                    del out[key]
        return HermPoly._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return HermPoly._raw(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "HermPoly":
        c = GaussianRational.coerce(c)
        if not c:
            return HermPoly.zero(self.n)
        return HermPoly._raw(self.n, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, HermPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        out: dict[Monomial, GaussianRational] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (
                    tuple(x + y for x, y in zip(a1, a2)),
                    tuple(x + y for x, y in zip(b1, b2)),
                )
                prod = c1 * c2
                s = out.get(key)
                out[key] = prod if s is None else s + prod
        return HermPoly._raw(self.n, {k: v for k, v in out.items() if v})

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        c = GaussianRational.coerce(other)
        return self.scale(GaussianRational(1) / c)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = HermPoly.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "HermPoly":
        """Complex conjugate as a function: swaps z and zbar exponents."""
        return HermPoly._raw(self.n, {(b, a): c.conjugate() for (a, b), c in self._terms.items()})

    def real_part(self) -> "HermPoly":
        return (self + self.conjugate()) * GaussianRational(Fraction(1, 2))

    # calculus -------------------------------------------------------------
    def diff_z(self, j: int) -> "HermPoly":
        out = {}
        for (a, b), c in self._terms.items():
            if a[j]:
                a2 = a[:j] + (a[j] - 1,) + a[j + 1 :]
                out[(a2, b)] = c * a[j]
        return HermPoly._raw(self.n, out)

    def diff_zbar(self, j: int) -> "HermPoly":
        out = {}
        for (a, b), c in self._terms.items():
            if b[j]:
                b2 = b[:j] + (b[j] - 1,) + b[j + 1 :]
                out[(a, b2)] = c * b[j]
        return HermPoly._raw(self.n, out)

    def differentiate(self, variable: str | tuple[str, int], j: int | None = None) -> "HermPoly":
        """``differentiate("z", 0)`` or ``differentiate(("zbar", 1))``."""
        if j is None:
            variable, j = variable
        if variable == "z":
            return self.diff_z(j)
        if variable in ("zbar", "zb", "z̄"):
            return self.diff_zbar(j)
        raise ValueError(f"unknown variable kind {variable!r}")

    # structure --------------------------------------------------------------
    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(a) + sum(b) for a, b in self._terms)

    def bidegrees(self) -> set[tuple[int, int]]:
        return {(sum(a), sum(b)) for a, b in self._terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(a) + sum(b) for a, b in self._terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def is_holomorphic(self) -> bool:
        return all(not any(b) for _, b in self._terms)

    def is_real_valued(self) -> bool:
        for (a, b), c in self._terms.items():
            if self._terms.get((b, a)) != c.conjugate():
                return False
        return True

    def pluriharmonic_terms(self) -> list[Monomial]:
        return [(a, b) for a, b in self._terms if not any(a) or not any(b)]

    def homogeneous_part(self, degree: int) -> "HermPoly":
        return HermPoly._raw(
            self.n, {k: c for k, c in self._terms.items() if sum(k[0]) + sum(k[1]) == degree}
        )

    # numerics ---------------------------------------------------------------
    def _compile(self):
        if self._compiled is None:
            keys = list(self._terms)
            coeffs = np.array([complex(self._terms[k]) for k in keys], dtype=complex)
            alpha = np.array([k[0] for k in keys], dtype=np.int64).reshape(len(keys), self.n)
            beta = np.array([k[1] for k in keys], dtype=np.int64).reshape(len(keys), self.n)
            self._compiled = (coeffs, alpha, beta)
        return self._compiled

    def evaluate(self, z) -> complex:
        z = np.asarray(z, dtype=complex).reshape(-1)
        if z.shape[0] != self.n:
            raise ValueError(f"expected a point in C^{self.n}, got length {z.shape[0]}")
        return complex(self.evaluate_many(z[None, :])[0])

    def evaluate_many(self, points) -> np.ndarray:
        """Vectorized evaluation at the rows of ``points`` (shape (N, n))."""
        pts = np.asarray(points, dtype=complex)
        coeffs, alpha, beta = self._compile()
        if coeffs.size == 0:
            return np.zeros(pts.shape[0], dtype=complex)
        zp = np.prod(pts[:, None, :] ** alpha[None, :, :], axis=2)
        zbp = np.prod(np.conj(pts)[:, None, :] ** beta[None, :, :], axis=2)
        return (zp * zbp) @ coeffs

    # display ----------------------------------------------------------------
    def __repr__(self) -> str:
        return f"HermPoly(n={self.n}, {self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self._terms.items()):
            mono = "".join(
                [f"z{j + 1}^{e}" if e > 1 else f"z{j + 1}" for j, e in enumerate(a) if e]
                + [f"zb{j + 1}^{e}" if e > 1 else f"zb{j + 1}" for j, e in enumerate(b) if e]
            )
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


HoloPoly = HermPoly


def holomorphic_monomials(n: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of total degree ``degree`` in n variables, in a fixed order."""
    out = []
    for combo in combinations_with_replacement(range(n), degree):
        e = [0] * n
        for j in combo:
            e[j] += 1
        out.append(tuple(e))
    return out


def holo_monomial(alpha: tuple[int, ...], coeff=1) -> HermPoly:
    return HermPoly.monomial(alpha, None, coeff)


def circle_mean(p: HermPoly, z0, radius: float, quadrature_points: int) -> complex:
    """Trapezoidal mean of ``lam -> p(lam*z0)`` over the circle ``|lam| = radius``."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    deg = max(p.total_degree(), 0)
    if quadrature_points < 2 * deg + 1:
        raise ValueError(f"need at least {2 * deg + 1} quadrature points for degree {deg}")
    z0 = np.asarray(z0, dtype=complex).reshape(-1)
    theta = 2 * np.pi * np.arange(quadrature_points) / quadrature_points
    lam = radius * np.exp(1j * theta)
    values = p.evaluate_many(lam[:, None] * z0[None, :])
    return complex(values.mean())


def is_real_valued(p: HermPoly) -> bool:
    return p.is_real_valued()


def multiply(p: HermPoly, q: HermPoly) -> HermPoly:
    return p * q


def differentiate(p: HermPoly, variable: str, j: int) -> HermPoly:
    return p.differentiate(variable, j)


def evaluate(p: HermPoly, z) -> complex:
    return p.evaluate(z)
