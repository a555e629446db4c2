from __future__ import annotations

from fractions import Fraction

import pytest

from crkit.errors import LengthMismatch, PreconditionError
from crkit.fixtures import chain_model, chain_polynomials, chain_spec
from crkit.model_lie import ChainSpec, annihilator_dimension, chain_residuals, verify_chain
from crkit.polyalg.fields import GradedVectorField
from crkit.polyalg.gaussian import GaussianRational
from crkit.polyalg.poly import HermPoly

I = GaussianRational(0, 1)


def test_reference_chain_verifies():
    res = chain_residuals(chain_model(), chain_spec())
    assert res and all(r.is_zero() for r in res.values())
    assert verify_chain(chain_model(), [chain_spec()])


def test_perturbed_constant_fails():
    P, Q, Y = chain_polynomials()
    spec = ChainSpec(Y=Y, U=(P, Q), V=(P, Q), c=(GaussianRational(0, 2),), d=(I,))
    assert not verify_chain(chain_model(), spec)


def test_chain_validation():
    P, Q, Y = chain_polynomials()
    with pytest.raises(LengthMismatch):
        ChainSpec(Y=Y, U=(P, Q), V=(P,), c=(I,), d=(I,))
    with pytest.raises(LengthMismatch):
        ChainSpec(Y=Y, U=(P, Q), V=(P, Q), c=(), d=(I,))
    zero = GradedVectorField.z_field([HermPoly.zero(2)] * 2, weight=Fraction(3, 15))
    with pytest.raises(PreconditionError):
        ChainSpec(Y=zero, U=(P, Q), V=(P, Q), c=(I,), d=(I,))
    with pytest.raises(PreconditionError):
        ChainSpec(Y=Y, U=(P, Q), V=(P, Q), c=(GaussianRational(0),), d=(I,))


def test_annihilator_of_chain_field():
    P, Q, Y = chain_polynomials()
    assert Y.apply(Q).is_zero()
    assert [annihilator_dimension(Y, k) for k in range(11)] == [1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0]
    assert annihilator_dimension(Y, Fraction(1, 2)) == 0


def test_annihilator_of_nilpotent_shift():
    z, _ = HermPoly.variables(2)
    Y = GradedVectorField.z_field([z[1], HermPoly.zero(2)], weight=Fraction(1, 2))
    assert [annihilator_dimension(Y, k) for k in range(5)] == [1, 1, 1, 1, 1]


def test_annihilator_preconditions():
    z, _ = HermPoly.variables(2)
    with pytest.raises(PreconditionError):
        annihilator_dimension(GradedVectorField.z_field([z[0], HermPoly.zero(2)]), 2)
    z3, _ = HermPoly.variables(3)
    with pytest.raises(PreconditionError):
        annihilator_dimension(GradedVectorField.z_field([z3[1], z3[2], HermPoly.zero(3)]), 2)
