"""Sum-of-squares test for Hermitian forms via the Gram matrix."""

from __future__ import annotations

import numpy as np

from ..errors import NotBihomogeneous, NotConverged
from ..polyalg.gaussian import GaussianRational
from ..polyalg.model import ModelHypersurface
from ..polyalg.poly import HermPoly

PSD_RTOL = 1e-10
RECONSTRUCTION_TOL = 1e-10


def gram_matrix(Q: HermPoly, require_bihomogeneous: bool = True) -> tuple[list[tuple[int, ...]], np.ndarray]:
    """Monomial index list and the Hermitian C with Q = sum C[a, b] z^a zbar^b.

    The representation is unique because the monomials z^a zbar^b are
    independent, so Q is a sum of |P_l|^2 exactly when C is PSD.
    """
    if require_bihomogeneous:
        bideg = Q.bidegrees()
        if len(bideg) != 1 or (lambda b: b[0] != b[1])(next(iter(bideg))):
            raise NotBihomogeneous(f"expected a single bidegree (k, k), found {sorted(bideg)}")
    monos = sorted({a for a, _ in Q.terms} | {b for _, b in Q.terms}, key=lambda a: (sum(a), tuple(-x for x in a)))
    index = {a: i for i, a in enumerate(monos)}
    C = np.zeros((len(monos), len(monos)), dtype=complex)
    for (a, b), c in Q.terms.items():
        C[index[a], index[b]] = complex(c)
    return monos, C


def sos_decompose(model: ModelHypersurface | HermPoly, require_bihomogeneous: bool = True) -> list[HermPoly] | None:
    """Holomorphic P_l with Q = sum P_l conj(P_l), or None if the Gram matrix is indefinite.

    Factor coefficients are the float values of sqrt(lambda) * u written as
    exact binary rationals; the reconstruction is checked exactly.
    """
    Q = model.Q if isinstance(model, ModelHypersurface) else model
    monos, C = gram_matrix(Q, require_bihomogeneous)
    if not monos:
        return []
    lam, U = np.linalg.eigh(0.5 * (C + C.conj().T))
    scale = max(float(np.abs(lam).max()), np.finfo(float).tiny)
    if lam[0] < -PSD_RTOL * scale:
        return None
    n = Q.n
    zero = (0,) * n
    factors = []
    for k in range(len(lam) - 1, -1, -1):
        if lam[k] <= PSD_RTOL * scale:
            continue
        vec = np.sqrt(lam[k]) * U[:, k]
        terms = {(a, zero): GaussianRational.from_complex(complex(v)) for a, v in zip(monos, vec) if v != 0}
        factors.append(HermPoly(n, terms))
    err = reconstruction_error(Q, factors)
    if err > RECONSTRUCTION_TOL * max(1.0, scale):
        raise NotConverged(f"SOS reconstruction error {err:.3e} above tolerance")
    return factors


def reconstruction_error(Q: HermPoly, factors: list[HermPoly]) -> float:
    """Largest coefficient modulus of Q - sum P_l conj(P_l), computed exactly."""
    R = Q
    for P in factors:
        R = R - P * P.conjugate()
    return max((abs(complex(c)) for c in R.terms.values()), default=0.0)
