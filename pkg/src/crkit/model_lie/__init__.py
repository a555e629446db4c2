"""Symmetry algebra of polynomial models ``Im w = Q(z, zbar)``."""

from .chains import ChainSpec, annihilator_dimension, chain_residuals, verify_chain
from .components import (
    GradedComponentBasis,
    all_components,
    allowed_weights,
    gc_weights,
    graded_component,
    rigid_rotations,
    tangency_residuals,
)
from .levi import (
    ScanVerdict,
    levi_determinant_identity_check,
    levi_form,
    levi_matrices,
    pseudoconvexity_scan,
)
from .nondegeneracy import NondegeneracyResult, holomorphically_nondegenerate
from .rotations import RotationClassification, classify_rotation, split_linear_map
from .sos import gram_matrix, reconstruction_error, sos_decompose

__all__ = [
    "ChainSpec",
    "GradedComponentBasis",
    "NondegeneracyResult",
    "RotationClassification",
    "ScanVerdict",
    "all_components",
    "allowed_weights",
    "annihilator_dimension",
    "chain_residuals",
    "classify_rotation",
    "gc_weights",
    "graded_component",
    "gram_matrix",
    "holomorphically_nondegenerate",
    "levi_determinant_identity_check",
    "levi_form",
    "levi_matrices",
    "pseudoconvexity_scan",
    "reconstruction_error",
    "rigid_rotations",
    "sos_decompose",
    "split_linear_map",
    "tangency_residuals",
    "verify_chain",
]
