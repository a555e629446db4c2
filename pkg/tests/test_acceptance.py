"""Acceptance criteria, one PASS/FAIL line each.

Run directly (``python3 tests/test_acceptance.py``) for the summary lines, or
through pytest where each criterion is its own test.  The reference second jet
block with 1 + 2e(alpha+gamma) disagrees with the computed one in two entries;
that criterion is kept at its stated form and marked as an expected failure.
"""

from __future__ import annotations

import itertools
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

if __package__ in (None, ""):
    sys.path.insert(0, str(Path(__file__).resolve().parent))
    from strategies import random_holo
else:
    from .strategies import random_holo

from crkit.fixture_cases import finite_difference_dX, finite_difference_jet, relative_gap
from crkit.fixtures import (
    block_diag,
    chain_model,
    chain_polynomials,
    chain_spec,
    codim7_closed_forms,
    codim7_model,
    codim7_params,
    lewy_model,
    octic_c2_model,
    octic_c3_model,
)
from crkit.model_lie import (
    all_components,
    annihilator_dimension,
    chain_residuals,
    classify_rotation,
    gc_weights,
    graded_component,
    holomorphically_nondegenerate,
    levi_determinant_identity_check,
    pseudoconvexity_scan,
    reconstruction_error,
    rigid_rotations,
    sos_decompose,
    verify_chain,
)
from crkit.numerics import ToleranceConfig
from crkit.polyalg import GaussianRational, HermPoly, circle_mean
from crkit.polyalg.fields import GradedVectorField
from crkit.polyalg.model import ModelHypersurface
from crkit.quadric import (
    d_nondegenerate,
    da_matrix,
    diff_X_re_a,
    jet1_middle,
    jet_jacobian_block,
    orbit_span,
    solve_small_X,
    stationary_minimal,
    stein_K,
    stein_residual,
    strongly_pseudoconvex_search,
)

EPS = 0.2
CFG = ToleranceConfig()
PROPERTY_CASES = 50


def _codim7():
    model, params = codim7_model(), codim7_params(EPS)
    return model, params, codim7_closed_forms(EPS)


def _max_abs(a) -> float:
    return float(np.max(np.abs(a)))


# --------------------------------------------------------------- quadric fixture


def criterion_1():
    model, params, _ = _codim7()
    t0 = time.perf_counter()
    sol = solve_small_X(model, params)
    elapsed = time.perf_counter() - t0
    # oracle: quadratic formula, standard form
    e = EPS
    al = (-1 + np.sqrt(1 - 16 * e * e)) / (4 * e)
    ga = (-1 + np.sqrt(1 - 4 * e * e)) / (2 * e)
    expected = np.diag([al, 0.0, ga])
    err = _max_abs(sol.X - expected)
    P, A = params.P(model), params.A(model)
    res = _max_abs(P @ sol.X @ sol.X + A @ sol.X + P.conj().T)
    norm = float(np.linalg.norm(sol.X, 2))
    ok = err <= 1e-12 and res <= 1e-12 and abs(norm - 0.5) <= 1e-12 and elapsed < 1.0
    ok = ok and abs(ga - (np.sqrt(21) - 5) / 2) <= 1e-15 and abs(al + 0.5) <= 1e-15
    return ok, f"|X - closed form| = {err:.1e}, residual = {res:.1e}, ||X|| = {norm:.15f}, {elapsed:.3f} s"


def criterion_2():
    model, params, cf = _codim7()
    X = solve_small_X(model, params).X
    errs, ress = [], []
    for j in range(7):
        K = stein_K(model, X, j)
        errs.append(_max_abs(K - cf["K"][j]))
        ress.append(stein_residual(K, X, model.A[j]))
    ok = max(errs) <= 1e-12 and max(ress) <= 1e-12
    return ok, f"max |K - closed form| = {max(errs):.1e}, max Stein residual = {max(ress):.1e}"


def criterion_3():
    model, params, cf = _codim7()
    sol = solve_small_X(model, params)
    errs, gaps = [], []
    for s in range(7):
        dX = diff_X_re_a(model, params, s, solution=sol)
        errs.append(_max_abs(dX - cf["dX"][s]))
        gaps.append(relative_gap(dX, finite_difference_dX(model, params, s, CFG, h=1e-5)))
    ok = max(errs) <= 1e-10 and max(gaps) <= 1e-6
    return ok, f"max |dX - closed form| = {max(errs):.1e}, max FD relative gap = {max(gaps):.1e}"


def criterion_4():
    model, params, cf = _codim7()
    D = da_matrix(model, params)
    err = _max_abs(D - block_diag(cf["B1"], cf["B2"]))
    d1, d2 = np.linalg.det(cf["B1"]), np.linalg.det(cf["B2"])
    ok = err <= 1e-10 and abs(d1) > 1e-6 and abs(d2) > 1e-6
    return ok, f"|D(a) - diag(B1, B2)| = {err:.1e}, det B1 = {d1:.4f}, det B2 = {d2:.4f}"


def criterion_5():
    model, params, cf = _codim7()
    C = jet_jacobian_block(model, params)
    reference = block_diag(cf["C1"], cf["C2_variant"])
    err = _max_abs(C - reference)
    err_corrected = _max_abs(C - block_diag(cf["C1"], cf["C2"]))
    d1, d2 = np.linalg.det(C[:4, :4]), np.linalg.det(C[4:, 4:])
    gap = relative_gap(-2 * C, finite_difference_jet(model, params, CFG, h=1e-5))
    ok = err <= 1e-8 and abs(d1) > 1e-6 and abs(d2) > 1e-6 and gap <= 1e-5
    return ok, (
        f"|C - reference blocks| = {err:.3f}, |C - corrected blocks| = {err_corrected:.1e}, "
        f"det C1 = {d1:.4f}, det C2 = {d2:.4f}, FD relative gap = {gap:.1e}"
    )


def criterion_6():
    model, params, _ = _codim7()
    dn = d_nondegenerate(model, params.b)
    ps = strongly_pseudoconvex_search(model, restarts=1000, seed=0)
    X = solve_small_X(model, params).X
    orbit = orbit_span(X, params.V)
    sm = stationary_minimal(model, X, params.V)
    ok = dn.reason == "dimension" and dn.V is None and ps.b is None
    ok = ok and ps.best_lambda_min <= 1e-9 and orbit.complex_dim == 3 and bool(sm)
    return ok, (
        f"D-nondegeneracy: {dn.reason}, best lambda_min over 1000 restarts = {ps.best_lambda_min:.3e}, "
        f"orbit complex dim = {orbit.complex_dim}, stationary minimal = {bool(sm)}"
    )


# --------------------------------------------------------- independent Lie oracle


def _weighted_monomials(n: int, m: int, target: Fraction):
    """(alpha, k) with |alpha|/m + k == target, z of weight 1/m and w of weight 1."""
    out = []
    for k in range(int(target) + 1):
        deg = (target - k) * m
        if deg.denominator != 1 or deg < 0:
            continue
        for alpha in itertools.product(range(int(deg) + 1), repeat=n):
            if sum(alpha) == deg:
                out.append((alpha, k))
    return out


def brute_force_dimension(model: ModelHypersurface, weight: Fraction, samples: int = 200, seed: int = 3) -> int:
    """Real dimension of weight-``weight`` tangent fields by floating-point sampling.

    Every complex coefficient of every admissible monomial in (z, w) is an
    unknown; tangency Re(Y^w/(2i) - sum Y^j Q_zj) = 0 is imposed at random
    points of the model and the kernel dimension read off an SVD.
    """
    n, m = model.n, model.m
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
    Qv = model.Q.evaluate_many(z).real
    w = rng.standard_normal(samples) + 1j * Qv
    Qz = np.stack([model.Q.diff_z(j).evaluate_many(z) for j in range(n)], axis=1)
    cols = []
    for comp in range(n + 1):
        target = weight + (1 if comp == n else Fraction(1, m))
        for alpha, k in _weighted_monomials(n, m, target):
            mono = np.prod(z ** np.array(alpha), axis=1) * w**k
            for unit in (1.0, 1j):
                val = unit * mono
                cols.append((val / 2j).real if comp == n else -(val * Qz[:, comp]).real)
    if not cols:
        return 0
    M = np.stack(cols, axis=1)
    sv = np.linalg.svd(M, compute_uv=False)
    rank = int(np.sum(sv > 1e-9 * sv[0])) if sv.size and sv[0] > 0 else 0
    return M.shape[1] - rank


def criterion_7():
    model = lewy_model()
    t0 = time.perf_counter()
    comps = all_components(model)
    elapsed = time.perf_counter() - t0
    weights = [Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1)]
    dims = tuple(comps[w].real_dimension for w in weights)
    oracle = tuple(brute_force_dimension(model, w) for w in weights)
    ok = dims == (1, 2, 2, 2, 1) and oracle == dims and sum(dims) == 8
    ok = ok and gc_weights(model.m) == [] and list(comps) == weights and elapsed < 1.0
    return ok, f"dimensions {dims} (oracle {oracle}), total {sum(dims)}, g_c weights {gc_weights(model.m)}, {elapsed:.3f} s"


# ------------------------------------------------------------ hypersurface cases


def criterion_8():
    model = chain_model()
    res = chain_residuals(model, chain_spec())
    exact = all(r.is_zero() for r in res.values())
    g1 = graded_component(model, 1).real_dimension
    _, Qc, Y = chain_polynomials()
    top = Qc.total_degree()
    ann = annihilator_dimension(Y, top)
    scan = pseudoconvexity_scan(model, samples=10_000, seed=0)
    ok = verify_chain(model, chain_spec()) and exact and g1 == 0 and ann == 1 and scan.found
    return ok, (
        f"chain residuals zero = {exact}, dim g_1 = {g1}, annihilator dim at degree {top} = {ann}, "
        f"negative Levi witness found = {scan.found} (lambda_min {scan.lambda_min:.3e})"
    )


def criterion_9():
    parts, ok = [], True
    for name, model in (("octic_c3", octic_c3_model()), ("octic_c2", octic_c2_model())):
        nd = holomorphically_nondegenerate(model)
        g1 = graded_component(model, 1).real_dimension
        scan = pseudoconvexity_scan(model, samples=10_000, seed=0)
        ok = ok and bool(nd) and g1 == 0 and not scan.found
        parts.append(f"{name}: nondegenerate = {bool(nd)}, dim g_1 = {g1}, witness = {scan.found}")
    return ok, "; ".join(parts)


# -------------------------------------------------------------- property suites


def _sos_model(rng, case: int) -> tuple[HermPoly, list[HermPoly]]:
    """Sum of |P_l|^2 over two or three P_l; even cases use pure monomials."""
    n, deg = 2, int(rng.integers(1, 3))
    count = int(rng.integers(2, 4))
    if case % 2 == 0:
        monos = [HermPoly.monomial(a) for a in _holo_exponents(n, deg)]
        idx = rng.choice(len(monos), size=min(count, len(monos)), replace=False)
        Ps = [monos[i].scale(int(rng.integers(1, 4))) for i in idx]
    else:
        Ps = [random_holo(rng, n, deg, density=0.8) for _ in range(count)]
    Q = HermPoly.zero(n)
    for P in Ps:
        Q = Q + P * P.conjugate()
    return Q, Ps


def _holo_exponents(n: int, deg: int):
    return [a for a in itertools.product(range(deg + 1), repeat=n) if sum(a) == deg]


def property_a(rng):
    fails = 0
    for _ in range(PROPERTY_CASES):
        P = random_holo(rng, 2, int(rng.integers(1, 4)))
        Q = random_holo(rng, 2, int(rng.integers(1, 4)))
        fails += not levi_determinant_identity_check(P, Q)
    return fails == 0, f"{PROPERTY_CASES - fails}/{PROPERTY_CASES} exact identities"


def property_b(rng):
    worst, fails = 0.0, 0
    for case in range(PROPERTY_CASES):
        Q, _ = _sos_model(rng, case)
        fs = sos_decompose(Q)
        if fs is None:
            fails += 1
            continue
        worst = max(worst, reconstruction_error(Q, fs))
    return fails == 0 and worst <= 1e-10, f"{PROPERTY_CASES - fails}/{PROPERTY_CASES} decomposed, max coefficient error {worst:.1e}"


def property_c(rng):
    checked = bad = 0
    for case in range(PROPERTY_CASES):
        Q, _ = _sos_model(rng, case)
        model = ModelHypersurface(Q)
        if not holomorphically_nondegenerate(model):
            continue
        checked += 1
        for R in rigid_rotations(model):
            c = classify_rotation(R)
            bad += c.real_diagonal_present or c.nilpotent_present
    return bad == 0 and checked > 0, f"{checked} nondegenerate SOS models, {bad} real-diagonal or nilpotent rotations"


def property_d(rng):
    worst, no_sign_change = 0.0, 0
    for _ in range(PROPERTY_CASES):
        a = int(rng.integers(0, 4))
        b = int(rng.integers(0, 4))
        if a == b:
            b = a + 1
        F, G = random_holo(rng, 2, a), random_holo(rng, 2, b)
        p = (F * G.conjugate() + G * F.conjugate()).scale(Fraction(1, 2))
        z0 = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        z0 /= np.linalg.norm(z0)
        r = float(rng.uniform(0.5, 1.0))
        worst = max(worst, abs(circle_mean(p, z0, r, 2 * (a + b) + 1)))
        vals = p.evaluate_many(r * np.exp(2j * np.pi * np.arange(256) / 256)[:, None] * z0[None, :]).real
        if not np.allclose(vals, 0, atol=1e-12) and not (vals.min() < 0 < vals.max()):
            no_sign_change += 1
    return worst <= 1e-12 and no_sign_change == 0, f"max |circle mean| = {worst:.1e}, missing sign changes = {no_sign_change}"


def _random_positive_field(rng, case: int) -> GradedVectorField:
    if case % 5 == 0:
        # nilpotent linear field: conjugate of a shift by a random Gaussian-integer matrix
        z, _ = HermPoly.variables(2)
        s = GaussianRational(int(rng.integers(1, 4)), int(rng.integers(-2, 3)))
        f = [z[1].scale(s), HermPoly.zero(2)] if case % 2 == 0 else [HermPoly.zero(2), z[0].scale(s)]
        return GradedVectorField.z_field(f, weight=Fraction(1, 2))
    deg = int(rng.integers(2, 5))
    f = [random_holo(rng, 2, deg, density=0.6, nonzero=False) for _ in range(2)]
    if all(p.is_zero() for p in f):
        f[0] = random_holo(rng, 2, deg)
    return GradedVectorField.z_field(f, weight=Fraction(deg - 1, 4))


def property_e(rng):
    worst = 0
    for case in range(PROPERTY_CASES):
        Y = _random_positive_field(rng, case)
        worst = max(worst, max(annihilator_dimension(Y, nu) for nu in range(13)))
    return worst <= 1, f"max annihilator dimension over {PROPERTY_CASES} fields and degrees 0..12 = {worst}"


def criterion_10():
    t0 = time.perf_counter()
    parts, ok = [], True
    for label, prop, seed in (
        ("a", property_a, 101),
        ("b", property_b, 102),
        ("c", property_c, 103),
        ("d", property_d, 104),
        ("e", property_e, 105),
    ):
        good, detail = prop(np.random.default_rng(seed))
        ok = ok and good
        parts.append(f"({label}) {'ok' if good else 'FAILED'}: {detail}")
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 60.0
    return ok, "; ".join(parts) + f"; {elapsed:.1f} s"


CRITERIA = {
    1: ("small solution of the matrix equation", criterion_1),
    2: ("Stein series closed forms", criterion_2),
    3: ("X derivatives against closed forms and finite differences", criterion_3),
    4: ("D(a) blocks", criterion_4),
    5: ("jet block against the reference blocks", criterion_5),
    6: ("D-nondegeneracy, pseudoconvexity, orbit and minimality", criterion_6),
    7: ("Lewy graded components", criterion_7),
    8: ("symmetric chain model", criterion_8),
    9: ("octic models", criterion_9),
    10: ("seeded property suites", criterion_10),
}

# reference C2 has 1 + 2e(alpha+gamma) in two entries where the computed block has 1 + e(alpha+gamma)
KNOWN_RED = {5}


def report_line(k: int) -> tuple[bool, str]:
    title, fn = CRITERIA[k]
    try:
        ok, detail = fn()
    except Exception as exc:  # report, do not hide
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return ok, f"{'PASS' if ok else 'FAIL'} criterion {k:2d} ({title}): {detail}"


def _run(k: int, capsys) -> None:
    ok, line = report_line(k)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


@pytest.mark.parametrize("k", [k for k in CRITERIA if k not in KNOWN_RED])
def test_criterion(k, capsys):
    _run(k, capsys)


@pytest.mark.xfail(strict=True, reason="reference C2 entries (1,1), (2,1) disagree with the computed block by 1.737")
def test_criterion_5(capsys):
    _run(5, capsys)


def test_criterion_5_computed_block_is_sound():
    # the parts of criterion 5 that do not depend on the reference entries
    model, params, cf = _codim7()
    C = jet_jacobian_block(model, params)
    assert _max_abs(C - block_diag(cf["C1"], cf["C2"])) <= 1e-8
    assert abs(np.linalg.det(C[:4, :4])) > 1e-6 and abs(np.linalg.det(C[4:, 4:])) > 1e-6
    assert relative_gap(-2 * C, finite_difference_jet(model, params, CFG, h=1e-5)) <= 1e-5


def test_jet1_middle_is_real():
    model, params, _ = _codim7()
    assert np.isrealobj(jet1_middle(model, params))


def test_brute_force_oracle_on_sphere():
    from crkit.fixtures import sphere_model

    model = sphere_model(2)
    comps = all_components(model)
    assert tuple(brute_force_dimension(model, w) for w in comps) == tuple(c.real_dimension for c in comps.values())


def main() -> int:
    results = [report_line(k) for k in CRITERIA]
    for _, line in results:
        print(line)
    return 0 if all(ok for ok, _ in results) else 1


if __name__ == "__main__":
    sys.exit(main())
