from __future__ import annotations

import numpy as np
import pytest

from crkit.errors import NotHermitian, Singular
from crkit.fixtures import codim7_matrices
from crkit.numerics import (
    DEFAULT_CONFIG,
    ToleranceConfig,
    dagger,
    hermitian_eigen,
    is_invertible,
    rank_with_tol,
    real_nullspace,
    solve_linear,
    spectral_norm,
)


def _unitary(rng, n):
    q, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    return q


def test_default_config_values():
    cfg = ToleranceConfig()
    assert (cfg.residual_tol, cfg.rank_tol, cfg.series_tail_tol, cfg.max_iterations) == (1e-12, 1e-9, 1e-14, 10000)


@pytest.mark.parametrize("kwargs", [{"residual_tol": 0.0}, {"rank_tol": -1.0}, {"max_iterations": 0}])
def test_config_rejects_nonpositive(kwargs):
    with pytest.raises(ValueError):
        ToleranceConfig(**kwargs)


def test_config_env_override():
    assert ToleranceConfig.from_env({"CRKIT_TOL": "1e-8"}).residual_tol == 1e-8
    assert ToleranceConfig.from_env({}) == DEFAULT_CONFIG


def test_spectral_norm_examples():
    assert spectral_norm(np.eye(3)) == pytest.approx(1.0)
    assert spectral_norm(np.diag([-0.5, 0, (np.sqrt(21) - 5) / 2])) == pytest.approx(0.5)
    assert spectral_norm(np.zeros((2, 2))) == 0.0


def test_spectral_norm_submultiplicative(rng):
    for _ in range(20):
        a = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        b = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        assert spectral_norm(a @ b) <= spectral_norm(a) * spectral_norm(b) * (1 + 1e-12)


@pytest.mark.parametrize(
    "m, expected",
    [
        (np.diag([1.0, 1, -1]), [-1, 1, 1]),
        (np.array([[0.0, 1], [1, 0]]), [-1, 1]),
        (codim7_matrices()[0], [-1, 1, 1]),
    ],
)
def test_hermitian_eigen_examples(m, expected):
    lam, vecs = hermitian_eigen(m)
    assert np.allclose(lam, expected)
    assert np.allclose(dagger(vecs) @ vecs, np.eye(len(expected)), atol=1e-10)


def test_hermitian_eigen_reconstruction(rng):
    for _ in range(10):
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        h = g + dagger(g)
        lam, v = hermitian_eigen(h)
        assert np.all(np.diff(lam) >= 0)
        assert np.linalg.norm(h - v @ np.diag(lam) @ dagger(v)) <= 1e-9 * np.linalg.norm(h, 2)


def test_hermitian_eigen_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eigen(np.array([[0, 1], [0, 0]], dtype=complex))


def test_rank_examples(rng):
    assert rank_with_tol(np.eye(4), 1e-9) == 4
    v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    assert rank_with_tol(np.outer(v, v.conj()), 1e-9) == 1
    assert rank_with_tol(np.zeros((3, 3)), 1e-9) == 0
    stacked = np.stack([np.concatenate([a.real.ravel(), a.imag.ravel()]) for a in codim7_matrices()])
    assert rank_with_tol(stacked, 1e-9) == 7


def test_rank_unitary_invariance(rng):
    for _ in range(10):
        m = rng.standard_normal((5, 3)) @ rng.standard_normal((3, 5))
        assert rank_with_tol(_unitary(rng, 5) @ m @ _unitary(rng, 5), 1e-9) == rank_with_tol(m, 1e-9) == 3


def test_solve_linear_examples():
    rhs = np.arange(3.0)
    assert np.allclose(solve_linear(np.eye(3), rhs), rhs)
    assert np.allclose(solve_linear(np.diag([1.0, 1, -1]), np.array([0, 0, 1.0])), [0, 0, -1])
    assert np.allclose(solve_linear(np.diag([2.0, 1, 3]), np.array([2.0, 1, 3])), [1, 1, 1])


def test_solve_linear_singular():
    with pytest.raises(Singular):
        solve_linear(np.diag([1.0, 0.0]), np.ones(2))


def test_is_invertible_relative():
    assert is_invertible(np.diag([1e-3, 1.0]))
    assert not is_invertible(np.diag([1e-12, 1.0]))


def test_real_nullspace_examples():
    assert real_nullspace(np.zeros((2, 3)), 1e-9).shape[1] == 3
    assert real_nullspace(np.eye(3), 1e-9).shape[1] == 0
    ns = real_nullspace(np.array([[1.0, -1.0]]), 1e-9)
    assert ns.shape[1] == 1
    assert np.allclose(np.abs(ns[:, 0]), [2**-0.5, 2**-0.5])
