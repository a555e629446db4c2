from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..polyalg.fields import GradedVectorField
from ..polyalg.model import ModelHypersurface
from ..polyalg.poly import HermPoly
from ._linear import Layout, integer_normalize, solution_space


@dataclass(frozen=True)
class NondegeneracyResult:
    nondegenerate: bool
    witness: GradedVectorField | None
    degree_bound: int

    def __bool__(self) -> bool:
        return self.nondegenerate


def _non_holomorphic(p: HermPoly) -> HermPoly:
    return HermPoly(p.n, {k: c for k, c in p.terms.items() if any(k[1])})


def holomorphically_nondegenerate(model: ModelHypersurface, degree_bound: int | None = None) -> NondegeneracyResult:
    """Look for polynomial f with sum f_j Q_zj holomorphic, degree by degree.

    Q is homogeneous, so the condition splits over the homogeneous parts of f
    and it suffices to scan each degree 0..degree_bound separately.
    """
    bound = model.m if degree_bound is None else degree_bound
    if bound < 1:
        raise ValueError("degree_bound must be >= 1")
    n = model.n
    Qz = [model.Q.diff_z(j) for j in range(n)]
    for k in range(bound + 1):
        lay = Layout(n)
        for j in range(n):
            lay.complex_poly(f"f{j}", k)

        def res(u):
            acc = HermPoly.zero(n)
            for j in range(n):
                if not u[f"f{j}"].is_zero():
                    acc = acc + u[f"f{j}"] * Qz[j]
            return [_non_holomorphic(acc)]

        sols = solution_space(lay, res)
        if sols:
            u = lay.decode(integer_normalize(sols[0]))
            witness = GradedVectorField.z_field([u[f"f{j}"] for j in range(n)], weight=Fraction(k - 1, model.m))
            return NondegeneracyResult(False, witness, bound)
    return NondegeneracyResult(True, None, bound)
