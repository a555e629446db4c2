from __future__ import annotations

import numpy as np
import pytest

from crkit.errors import SingularA
from crkit.quadric.model import DependentMatricesWarning
from crkit.fixtures import codim7_model, codim7_params
from crkit.quadric import (
    QuadricModel,
    analyze_jet,
    d_matrix,
    d_nondegenerate,
    orbit_span,
    solve_small_X,
    stationary_minimal,
    strong_levi_nondegenerate,
    strongly_pseudoconvex_search,
)
from crkit.quadric.geometry import compressed_independent

MODEL = codim7_model()
PARAMS = codim7_params(0.2)
X = solve_small_X(MODEL, PARAMS).X


def test_orbit_of_zero_map():
    o = orbit_span(np.zeros((3, 3)), np.ones(3))
    assert (o.real_dim, o.complex_dim) == (1, 1)


def test_orbit_codim7():
    o = orbit_span(X, PARAMS.V)
    assert o.complex_dim == 3
    assert o.real_dim == 3


def test_orbit_real_vs_complex():
    t = 0.3
    o = orbit_span(np.diag([1j * t, 0]), np.ones(2))
    assert o.real_dim == 3
    assert o.complex_dim == 2


def test_stationary_minimal_examples():
    assert stationary_minimal(MODEL, X, PARAMS.V)
    pair = QuadricModel([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])
    assert not stationary_minimal(pair, np.zeros((2, 2)), np.array([1.0, 0.0]))


def test_minimality_invariant_under_basis_change(rng):
    o = orbit_span(X, PARAMS.V)
    for _ in range(5):
        R = rng.standard_normal((o.real_dim, o.real_dim))
        # real recombination of the real basis vectors
        assert compressed_independent(MODEL, o.basis @ R) == compressed_independent(MODEL, o.basis)


def test_strong_levi_examples():
    found = strong_levi_nondegenerate(MODEL)
    assert np.allclose(found.b, np.eye(7)[0])
    with pytest.warns(DependentMatricesWarning):
        assert strong_levi_nondegenerate(QuadricModel([np.zeros((2, 2))])).b is None
    pair = QuadricModel([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])
    assert strong_levi_nondegenerate(pair).b is not None


def test_pseudoconvex_search_examples():
    res = strongly_pseudoconvex_search(MODEL, restarts=50)
    assert res.b is None and res.best_lambda_min <= 1e-9
    ident = strongly_pseudoconvex_search(QuadricModel([np.eye(2)]), restarts=3)
    assert ident.b is not None and ident.best_lambda_min == pytest.approx(1.0)
    assert strongly_pseudoconvex_search(QuadricModel([np.diag([1.0, -1.0])]), restarts=3).b is None


def test_pseudoconvex_search_is_seeded():
    a = strongly_pseudoconvex_search(MODEL, restarts=10, seed=4)
    b = strongly_pseudoconvex_search(MODEL, restarts=10, seed=4)
    assert a.best_lambda_min == b.best_lambda_min and np.array_equal(a.best_b, b.best_b)


def test_d_nondegenerate_examples():
    assert d_nondegenerate(MODEL, PARAMS.b).reason == "dimension"
    one = QuadricModel([np.eye(1)])
    res = d_nondegenerate(one, [1.0])
    assert res.reason == "found" and np.allclose(res.V, [1])
    with pytest.raises(SingularA):
        d_nondegenerate(QuadricModel([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])]), [1.0, 0.0])


def test_d_nondegenerate_against_grid():
    # A = (I, diag(1,-1)), b = e_1: det Re(D^H D) = 4 |v1|^2 |v2|^2
    model = QuadricModel([np.eye(2), np.diag([1.0, -1.0])])
    assert d_nondegenerate(model, [1.0, 0.0]).reason == "found"
    for r in np.linspace(0.0, 1.0, 6):
        for t in np.linspace(0.0, 2 * np.pi, 7):
            V = np.array([r, np.sqrt(1 - r * r) * np.exp(1j * t)])
            det = np.linalg.det(d_matrix(model, [1.0, 0.0], V))
            assert det == pytest.approx(4 * r**2 * (1 - r * r), abs=1e-12)


def test_analyze_jet_report():
    rep = analyze_jet(MODEL, PARAMS)
    assert rep.da_nondegenerate and rep.jet_block_invertible and rep.stationary_minimal
    assert rep.orbit_complex_dim == 3
    assert max(rep.K_residuals) <= 1e-12
