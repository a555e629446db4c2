"""Reference models with hand-derived closed forms.

The codimension-7 quadric in C^10 below is strongly Levi nondegenerate, not
strongly pseudoconvex, and has d = 7 > 2n.  At b = (1+2e, 2e, 0, ...),
a = (e, e, 0, ...) and V = (1, 1, 1) the small solution is diagonal,
X = diag(alpha, 0, gamma) with

    2e alpha^2 + alpha + 2e = 0,    e gamma^2 + gamma + e = 0,

and every series in the jet analysis has a closed form in (e, alpha, gamma).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .model_lie.chains import ChainSpec
from .polyalg.fields import GradedVectorField
from .polyalg.gaussian import GaussianRational
from .polyalg.model import ModelHypersurface
from .polyalg.poly import HermPoly
from .quadric.model import JetParameters, QuadricModel

DEFAULT_EPS = 0.2
EPS_SWEEP = (0.01, 0.05, 0.1, 0.2)

_I = 1j


def codim7_matrices() -> list[np.ndarray]:
    return [
        np.diag([1, 1, -1]).astype(complex),
        np.diag([1, -1, 0]).astype(complex),
        np.array([[0, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=complex),
        np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]], dtype=complex),
        np.array([[0, 0, _I], [0, 0, 0], [-_I, 0, 0]]),
        np.array([[0, 0, 0], [0, 0, _I], [0, -_I, 0]]),
        np.array([[0, _I, 0], [-_I, 0, 0], [0, 0, 0]]),
    ]


def codim7_model() -> QuadricModel:
    return QuadricModel(codim7_matrices())


def codim7_params(eps: float = DEFAULT_EPS) -> JetParameters:
    b = np.zeros(7)
    b[0], b[1] = 1 + 2 * eps, 2 * eps
    a = np.zeros(7, dtype=complex)
    a[0] = a[1] = eps
    return JetParameters(b=b, a=a, V=np.ones(3))


def codim7_roots(eps: float = DEFAULT_EPS) -> tuple[float, float]:
    """Small roots of 2e x^2 + x + 2e and e x^2 + x + e, in cancellation-free form."""
    alpha = -4 * eps / (1 + np.sqrt(1 - 16 * eps**2))
    gamma = -2 * eps / (1 + np.sqrt(1 - 4 * eps**2))
    return float(alpha), float(gamma)


def codim7_closed_forms(eps: float = DEFAULT_EPS) -> dict[str, object]:
    """X, K_j, X_{Re a_s}, the D(a) blocks B1, B2 and the jet blocks C1, C2.

    ``C2_variant`` keeps the (1,1) and (2,1) entries with 1 + 2e(alpha+gamma)
    in place of 1 + e(alpha+gamma); ``C2`` is the value implied by the closed
    form of X_{Re a_5} and confirmed by finite differences.
    """
    e = eps
    al, ga = codim7_roots(eps)
    a2, g2, ag = al * al, ga * ga, al * ga
    u, v = (1 - al) ** 2, (1 - ga) ** 2
    X = np.diag([al, 0, ga]).astype(complex)
    K = [
        np.diag([1 / (1 - a2), 1, -1 / (1 - g2)]).astype(complex),
        np.diag([1 / (1 - a2), -1, 0]).astype(complex),
        np.array([[0, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=complex),
        np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]], dtype=complex),
        np.array([[0, 0, _I / (1 - ag)], [0, 0, 0], [-_I / (1 - ag), 0, 0]]),
        np.array([[0, 0, 0], [0, 0, _I], [0, -_I, 0]]),
        np.array([[0, _I, 0], [-_I, 0, 0], [0, 0, 0]]),
    ]
    dX = [
        np.diag([-u / (1 + 4 * e * al), -1, -v / (1 + 2 * e * ga)]).astype(complex),
        np.diag([-u / (1 + 4 * e * al), 1, 0]).astype(complex),
        np.array([[0, 0, 0], [0, 0, -v], [0, 1 / (1 + e * ga), 0]], dtype=complex),
        np.array([[0, -1 / (1 + 2 * e * al), 0], [-u, 0, 0], [0, 0, 0]], dtype=complex),
        np.array(
            [[0, 0, -_I * v / (1 + 2 * e * (al + ga))], [0, 0, 0], [-_I * u / (1 + e * (al + ga)), 0, 0]]
        ),
        np.array([[0, 0, 0], [0, 0, -_I * v], [0, -_I / (1 + e * ga), 0]]),
        np.array([[0, -_I / (1 + 2 * e * al), 0], [_I * u, 0, 0], [0, 0, 0]]),
    ]
    B1 = np.array(
        [
            [1 + a2 / (1 - a2) - g2 / (1 - g2), a2 / (1 - a2), 2, 2],
            [a2 / (1 - a2), 2 + a2 / (1 - a2), -1, 0],
            [2, -1, g2 / (1 - g2), 1 + ag / (1 - ag)],
            [2, 0, 1 + ag / (1 - ag), 2 + a2 / (1 - a2)],
        ]
    )
    B2 = np.array(
        [
            [1 / (1 - g2) - 1 / (1 - a2), -1, 1],
            [-1, -1 + 1 / (1 - g2), -1 / (1 - ag)],
            [1, -1 / (1 - ag), 1 + 1 / (1 - a2)],
        ]
    )
    r1 = u / ((1 + 4 * e * al) * (1 + al) ** 2)
    C1 = np.array(
        [
            [-1 - r1 + v / ((1 + ga) ** 2 * (1 + 2 * e * ga)), 1 - r1, -2 * (1 - ga) / (1 + ga), -2 * (1 - al) / (1 + al)],
            [1 - r1, -1 - r1, v, 4 * e * al * (1 - al) / ((1 + al) * (1 + 2 * e * al))],
            [-2 * v * (1 + e * ga) / (1 + 2 * e * ga), v, 1 / (1 + e * ga) - (1 - ga) ** 3 / (1 + ga), -u * v / (1 - ag)],
            [-2 * u * (1 + 2 * e * al) / (1 + 4 * e * al), 4 * u * e * al / (1 + 4 * e * al), -u * v / (1 - ag), -1 / (1 + 2 * e * al) - (1 - al) ** 3 / (1 + al)],
        ]
    )
    s1, s2 = 1 + e * (al + ga), 1 + 2 * e * (al + ga)
    ca, cg = (1 - al) ** 3 / (1 + al), (1 - ga) ** 3 / (1 + ga)
    tail = [
        [u / ((1 + e * ga) * (1 - ag)), -v / ((1 - ag) * (1 + 2 * e * al))],
        [1 / (1 + e * ga) - cg, u * v / (1 - ag)],
        [u * v / (1 - ag), -1 / (1 + 2 * e * al) - ca],
    ]
    first_variant = [(ca - cg) / ((1 - ag) * s2), u / s2, -v / s2]
    first = [ca / ((1 - ag) * s1) - cg / ((1 - ag) * s2), u / s1, -v / s2]
    C2_variant = np.array([[first_variant[i]] + tail[i] for i in range(3)])
    C2 = np.array([[first[i]] + tail[i] for i in range(3)])
    return {
        "alpha": al,
        "gamma": ga,
        "X": X,
        "K": K,
        "dX": dX,
        "B1": B1,
        "B2": B2,
        "C1": C1,
        "C2": C2,
        "C2_variant": C2_variant,
    }


def block_diag(*blocks: np.ndarray) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=np.result_type(*blocks))
    k = 0
    for b in blocks:
        out[k : k + b.shape[0], k : k + b.shape[1]] = b
        k += b.shape[0]
    return out


# ---------------------------------------------------------------- hypersurfaces

_HALF = Fraction(1, 2)


def _re(z: HermPoly, zb: HermPoly) -> HermPoly:
    return (z + zb).scale(_HALF)


def lewy_model() -> ModelHypersurface:
    """Im w = |z|^2."""
    z, zb = HermPoly.variables(1)
    return ModelHypersurface(z[0] * zb[0])


def sphere_model(n: int = 2) -> ModelHypersurface:
    """Im w = |z_1|^2 + ... + |z_n|^2."""
    z, zb = HermPoly.variables(n)
    Q = HermPoly.zero(n)
    for j in range(n):
        Q = Q + z[j] * zb[j]
    return ModelHypersurface(Q)


def octic_c2_model() -> ModelHypersurface:
    """Im w = |z|^8 + |z|^6 (Re z)^2: pseudoconvex, not a sum of squares."""
    z, zb = HermPoly.variables(1)
    r = z[0] * zb[0]
    return ModelHypersurface(r**4 + r**3 * _re(z[0], zb[0]) ** 2)


def octic_c3_model() -> ModelHypersurface:
    """Im w = |z1|^8 + |z1|^6 (Re z1)^2 + |z2|^8."""
    z, zb = HermPoly.variables(2)
    r1, r2 = z[0] * zb[0], z[1] * zb[1]
    return ModelHypersurface(r1**4 + r1**3 * _re(z[0], zb[0]) ** 2 + r2**4)


def chain_polynomials() -> tuple[HermPoly, HermPoly, GradedVectorField]:
    """P = i z1^2 z2^3 (z1 - z2), Q = 3 z1^3 z2^5 (z1 - z2) and the field Y with Y(P) = iQ, Y(Q) = 0."""
    z, _ = HermPoly.variables(2)
    z1, z2 = z
    P = (z1**2 * z2**3 * (z1 - z2)).scale(GaussianRational(0, 1))
    Q = (z1**3 * z2**5 * (z1 - z2)).scale(3)
    Y = GradedVectorField.z_field(
        [z1 * z2**2 * (z1.scale(5) - z2.scale(6)), -(z2**3 * (z1.scale(4) - z2.scale(3)))],
        weight=Fraction(3, 15),
    )
    return P, Q, Y


def chain_model() -> ModelHypersurface:
    """Im w = P Qbar + Q Pbar for the pair of ``chain_polynomials``."""
    P, Q, _ = chain_polynomials()
    return ModelHypersurface(P * Q.conjugate() + Q * P.conjugate())


def chain_spec() -> ChainSpec:
    P, Q, Y = chain_polynomials()
    i = GaussianRational(0, 1)
    return ChainSpec(Y=Y, U=(P, Q), V=(P, Q), c=(i,), d=(i,))
