"""Exact polynomial algebra in (z, zbar) over the Gaussian rationals."""

from .fields import GradedVectorField, apply_field, bracket
from .gaussian import GaussianRational
from .model import ModelHypersurface
from .poly import (
    HermPoly,
    HoloPoly,
    circle_mean,
    differentiate,
    evaluate,
    holo_monomial,
    holomorphic_monomials,
    is_real_valued,
    multiply,
)

__all__ = [
    "GaussianRational",
    "GradedVectorField",
    "HermPoly",
    "HoloPoly",
    "ModelHypersurface",
    "apply_field",
    "bracket",
    "circle_mean",
    "differentiate",
    "evaluate",
    "holo_monomial",
    "holomorphic_monomials",
    "is_real_valued",
    "multiply",
]
