from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvariantViolation
from .poly import HermPoly


@dataclass(frozen=True)
class ModelHypersurface:
    """The model ``Im w = Q(z, zbar)`` with Q real-valued and homogeneous of degree m."""

    Q: HermPoly
    allow_pluriharmonic: bool = False

    def __post_init__(self):
        Q = self.Q
        if Q.is_zero():
            raise InvariantViolation("Q must be nonzero")
        if not Q.is_real_valued():
            for (a, b), c in sorted(Q.terms.items()):
                if Q.coeff(b, a) != c.conjugate():
                    raise InvariantViolation(
                        f"Q is not real-valued: coefficient of (alpha={a}, beta={b}) is {c} "
                        f"but the mirrored term has {Q.coeff(b, a)}"
                    )
        if not Q.is_homogeneous():
            raise InvariantViolation(f"Q is not homogeneous (degrees {sorted({x + y for x, y in Q.bidegrees()})})")
        if not self.allow_pluriharmonic:
            bad = sorted(Q.pluriharmonic_terms())
            if bad:
                a, b = bad[0]
                raise InvariantViolation(
                    f"Q has a pluriharmonic term (alpha={a}, beta={b}); pass allow_pluriharmonic to admit it"
                )

    @property
    def n(self) -> int:
        return self.Q.n

    @property
    def m(self) -> int:
        return self.Q.total_degree()
