"""Command-line interface.

Reports go to stdout as one JSON document; progress and summaries go to
stderr.  Exit status: 0 success, 1 analysis or assertion failure, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .errors import CrkitError, InvariantViolation, ParseError
from .fixture_cases import finite_difference_jet, relative_gap, run_fixtures
from .fixtures import DEFAULT_EPS, EPS_SWEEP
from .model_lie import (
    ChainSpec,
    all_components,
    chain_residuals,
    classify_rotation,
    graded_component,
    gram_matrix,
    holomorphically_nondegenerate,
    pseudoconvexity_scan,
    rigid_rotations,
    sos_decompose,
)
from .numerics import ToleranceConfig, is_invertible
from .polyalg.codec import field_from_json, field_to_json, gaussian_from_json, model_from_json, poly_from_json, poly_to_json
from .polyalg.model import ModelHypersurface
from .quadric import (
    JetParameters,
    QuadricModel,
    analyze_jet,
    d_nondegenerate,
    jet_jacobian_block,
    solve_small_X,
    strong_levi_nondegenerate,
    strongly_pseudoconvex_search,
)
from .report import AnalysisReport, digest_bytes, digest_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ------------------------------------------------------------------- loading


def _entry(value, where: str) -> complex:
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a number")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, list) and len(value) == 2 and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
        return complex(value[0], value[1])
    raise ParseError(f"{where}: expected a number or [re, im], got {value!r}")


def quadric_from_json(obj) -> QuadricModel:
    mats = obj.get("matrices")
    if not isinstance(mats, list) or not mats:
        raise ParseError("quadric model needs a non-empty 'matrices' list")
    arrays = []
    for j, m in enumerate(mats):
        if not isinstance(m, list) or not all(isinstance(r, list) for r in m):
            raise ParseError(f"matrix {j + 1} must be a list of rows")
        arrays.append(np.array([[_entry(v, f"matrix {j + 1}, row {r + 1}") for v in row] for r, row in enumerate(m)], dtype=complex))
    model = QuadricModel(arrays)
    for key, actual in (("n", model.n), ("d", model.d)):
        if key in obj and obj[key] != actual:
            raise ParseError(f"declared {key} = {obj[key]} but the matrices give {actual}")
    return model


def quadric_to_json(model: QuadricModel) -> dict:
    return {
        "kind": "quadric",
        "n": model.n,
        "d": model.d,
        "matrices": [[[[float(v.real), float(v.imag)] for v in row] for row in Aj] for Aj in model.A],
    }


def read_json(path: str | Path) -> tuple[object, bytes]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(data), data
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def load_model(path: str | Path, allow_pluriharmonic: bool | None = None) -> QuadricModel | ModelHypersurface:
    """Read a quadric (``"kind": "quadric"``) or a hypersurface model from JSON."""
    obj, _ = read_json(path)
    return model_from_obj(obj, allow_pluriharmonic)


def model_from_obj(obj, allow_pluriharmonic: bool | None = None) -> QuadricModel | ModelHypersurface:
    if not isinstance(obj, dict):
        raise ParseError("model file must hold a JSON object")
    if obj.get("kind") == "quadric":
        return quadric_from_json(obj)
    return model_from_json(obj, allow_pluriharmonic)


def _hypersurface(path: str, allow: bool) -> tuple[ModelHypersurface, str]:
    obj, data = read_json(path)
    model = model_from_obj(obj, allow or None)
    if not isinstance(model, ModelHypersurface):
        raise UsageError(f"{path} holds a quadric model; this command needs Im w = Q(z, zbar)")
    return model, digest_bytes(data)


def _quadric(path: str) -> tuple[QuadricModel, str]:
    obj, data = read_json(path)
    model = model_from_obj(obj)
    if not isinstance(model, QuadricModel):
        raise UsageError(f"{path} holds a hypersurface model; this command needs a quadric")
    return model, digest_bytes(data)


def parse_vector(text: str | None, kind=complex) -> np.ndarray | None:
    """Comma-separated numbers; fractions like 1/5 and Python complex literals like 1+2j are accepted."""
    if text is None:
        return None
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            out.append(complex(Fraction(tok)) if "/" in tok else complex(tok.replace("i", "j")))
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"cannot parse number {tok!r}") from exc
    arr = np.array(out, dtype=complex)
    if kind is float:
        if np.any(arr.imag != 0):
            raise UsageError("b must be real")
        return arr.real
    return arr


def parse_eps(text: str) -> float:
    try:
        v = float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"invalid eps {text!r}") from exc
    if not 0 < v < 0.25:
        raise argparse.ArgumentTypeError("eps must lie in (0, 1/4)")
    return v


# ------------------------------------------------------------------ commands


def _emit(report: AnalysisReport | dict) -> None:
    text = report.to_json() if isinstance(report, AnalysisReport) else json.dumps(report, sort_keys=True, indent=2)
    sys.stdout.write(text + "\n")


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _params(model: QuadricModel, args, report: AnalysisReport) -> JetParameters:
    b = parse_vector(args.b, float)
    if b is None:
        search = strong_levi_nondegenerate(model, seed=args.seed)
        if search.b is None:
            raise CrkitError("no b with sum b_j A_j invertible was found; pass --b")
        b = search.b
        report.parameters["b_source"] = "strong Levi search"
    a = parse_vector(args.a)
    a = np.zeros(model.d, dtype=complex) if a is None else a
    V = parse_vector(args.V)
    V = np.ones(model.n, dtype=complex) if V is None else V
    try:
        params = JetParameters(b=b, a=a, V=V)
        params.check(model)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report.parameters.update({"b": b, "a": a, "V": V})
    return params


def cmd_quadric_analyze(args, cfg: ToleranceConfig) -> int:
    model, digest = _quadric(args.file)
    report = AnalysisReport("quadric analyze", digest, cfg)
    report.parameters["seed"] = args.seed
    params = _params(model, args, report)
    levi = strong_levi_nondegenerate(model, seed=args.seed)
    report.verdict("strongly_levi_nondegenerate", levi.b is not None, "strong_levi_nondegenerate", seed=args.seed)
    if levi.b is not None:
        report.witnesses["levi_b"] = levi.b
    ps = strongly_pseudoconvex_search(model, restarts=args.restarts, seed=args.seed, cfg=cfg)
    report.verdict("strongly_pseudoconvex", ps.b is not None, "strongly_pseudoconvex_search", restarts=args.restarts, seed=args.seed)
    report.numerics["pseudoconvex_best_lambda_min"] = ps.best_lambda_min
    if ps.b is not None:
        report.witnesses["pseudoconvex_b"] = ps.b
    try:
        ds = d_nondegenerate(model, params.b, seed=args.seed, cfg=cfg)
        report.verdict("d_nondegenerate", {"found": "true", "dimension": "none-by-dimension", "not-found": "none"}[ds.reason], "d_nondegenerate", seed=args.seed)
        if ds.V is not None:
            report.witnesses["d_nondegenerate_V"] = ds.V
    except CrkitError as exc:
        report.error("d_nondegenerate", exc)
    try:
        jr = analyze_jet(model, params, cfg)
    except CrkitError as exc:
        report.error("small_solution", exc)
        _emit(report)
        _note(f"analysis stopped: {type(exc).__name__}: {exc}")
        return EXIT_FAIL
    report.numerics.update(
        {
            "X": jr.X.X,
            "X_norm": jr.X.norm,
            "X_residual": jr.X.residual,
            "X_iterations": jr.X.iterations,
            "contraction_bound": jr.X.contraction_bound,
            "K_residuals": jr.K_residuals,
            "da_matrix": jr.Da_matrix,
            "da_determinant": jr.determinants[0],
            "jet_block": jr.jet_block,
            "jet_block_determinant": jr.determinants[1],
            "orbit_real_dim": jr.orbit_real_dim,
            "orbit_complex_dim": jr.orbit_complex_dim,
        }
    )
    report.verdict("stationary_minimal", jr.stationary_minimal, "stationary_minimal")
    report.verdict("da_nondegenerate", jr.da_nondegenerate, "da_matrix")
    report.verdict("jet_block_invertible", jr.jet_block_invertible, "jet_jacobian_block")
    _emit(report)
    _note(
        f"||X|| = {jr.X.norm:.6g}, det D(a) = {jr.determinants[0]:.6g}, det jet block = {jr.determinants[1]:.6g}, "
        f"orbit dims (real, complex) = ({jr.orbit_real_dim}, {jr.orbit_complex_dim})"
    )
    return EXIT_OK


def cmd_quadric_jet_check(args, cfg: ToleranceConfig) -> int:
    model, digest = _quadric(args.file)
    report = AnalysisReport("quadric jet-check", digest, cfg)
    params = _params(model, args, report)
    try:
        sol = solve_small_X(model, params, cfg)
        C = jet_jacobian_block(model, params, cfg, sol)
        J = finite_difference_jet(model, params, cfg, h=args.step)
    except CrkitError as exc:
        report.error("jet_block", exc)
        _emit(report)
        _note(f"jet check failed: {type(exc).__name__}: {exc}")
        return EXIT_FAIL
    gap = relative_gap(-2 * C, J)
    report.numerics.update({"jet_block": C, "determinant": float(np.linalg.det(C)), "finite_difference_gap": gap, "step": args.step})
    report.verdict("jet_block_invertible", is_invertible(C), "jet_jacobian_block")
    report.verdict("matches_finite_differences", gap <= 1e-5, "finite_difference_jet", step=args.step, rtol=1e-5)
    _emit(report)
    _note(f"det = {np.linalg.det(C):.6g}, relative finite-difference gap = {gap:.3g}")
    return EXIT_OK if gap <= 1e-5 else EXIT_FAIL


def cmd_model_lie(args, cfg: ToleranceConfig) -> int:
    model, digest = _hypersurface(args.file, args.allow_pluriharmonic)
    report = AnalysisReport("model lie", digest, cfg)
    report.parameters.update({"weight": args.weight, "item5": args.item5})
    if args.weight == "all":
        comps = list(all_components(model, args.item5).values())
    else:
        try:
            w = Fraction(args.weight)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"invalid weight {args.weight!r}") from exc
        comps = [graded_component(model, w, args.item5)]
    report.numerics["dimensions"] = {str(c.weight): c.real_dimension for c in comps}
    report.witnesses["bases"] = {str(c.weight): [field_to_json(f) for f in c.basis] for c in comps}
    hn = holomorphically_nondegenerate(model)
    report.verdict("holomorphically_nondegenerate", hn.nondegenerate, "holomorphically_nondegenerate", degree_bound=hn.degree_bound)
    if hn.witness is not None:
        report.witnesses["degenerate_field"] = field_to_json(hn.witness)
    rigid = rigid_rotations(model)
    classes = [classify_rotation(r) for r in rigid]
    report.numerics["rigid_rotations"] = len(rigid)
    report.verdict("real_diagonal_rotation", any(c.real_diagonal_present for c in classes), "classify_rotation")
    report.verdict("nilpotent_rotation", any(c.nilpotent_present for c in classes), "classify_rotation")
    _emit(report)
    _note("dimensions: " + ", ".join(f"{k}: {v}" for k, v in report.numerics["dimensions"].items()))
    return EXIT_OK


def cmd_model_pseudoconvex(args, cfg: ToleranceConfig) -> int:
    model, digest = _hypersurface(args.file, args.allow_pluriharmonic)
    report = AnalysisReport("model pseudoconvex", digest, cfg)
    scan = pseudoconvexity_scan(model, samples=args.samples, seed=args.seed, tol=args.tol)
    report.parameters.update({"samples": args.samples, "seed": args.seed, "tol": args.tol})
    report.verdict("levi_witness", "witness" if scan.found else "no_witness", "pseudoconvexity_scan", samples=args.samples, seed=args.seed, tol=args.tol)
    report.numerics.update({"lambda_min": scan.lambda_min, "samples_used": scan.samples_used})
    if scan.found:
        report.witnesses["point"] = scan.witness
    _emit(report)
    _note("not pseudoconvex: negative Levi eigenvalue found" if scan.found else "no negative Levi eigenvalue found (evidence, not proof)")
    return EXIT_OK


def cmd_model_sos(args, cfg: ToleranceConfig) -> int:
    model, digest = _hypersurface(args.file, args.allow_pluriharmonic)
    report = AnalysisReport("model sos", digest, cfg)
    strict = not args.mixed_degrees
    report.parameters["require_bihomogeneous"] = strict
    monos, C = gram_matrix(model.Q, strict)
    eig = np.linalg.eigvalsh(0.5 * (C + C.conj().T)) if len(monos) else np.zeros(0)
    report.numerics["gram_eigenvalues"] = eig
    factors = sos_decompose(model, require_bihomogeneous=strict)
    report.verdict("sum_of_squares", factors is not None, "sos_decompose", require_bihomogeneous=strict)
    if factors is not None:
        report.witnesses["factors"] = [poly_to_json(p) for p in factors]
    _emit(report)
    _note(f"sum of {len(factors)} squares" if factors is not None else "Gram matrix is indefinite: not a sum of squares")
    return EXIT_OK


def chain_from_json(obj) -> list[ChainSpec]:
    items = obj if isinstance(obj, list) else [obj]
    specs = []
    for k, item in enumerate(items):
        if not isinstance(item, dict):
            raise ParseError(f"chain {k + 1} must be an object")
        try:
            specs.append(
                ChainSpec(
                    Y=field_from_json(item["Y"]),
                    U=tuple(poly_from_json(p) for p in item["U"]),
                    V=tuple(poly_from_json(p) for p in item["V"]),
                    c=tuple(gaussian_from_json(c) for c in item.get("c", [])),
                    d=tuple(gaussian_from_json(c) for c in item.get("d", [])),
                )
            )
        except KeyError as exc:
            raise ParseError(f"chain {k + 1} is missing {exc}") from exc
    return specs


def cmd_model_chain_verify(args, cfg: ToleranceConfig) -> int:
    model, digest = _hypersurface(args.model, args.allow_pluriharmonic)
    chain_obj, chain_data = read_json(args.chain)
    specs = chain_from_json(chain_obj)
    report = AnalysisReport("model chain-verify", digest_json([digest, digest_bytes(chain_data)]), cfg)
    residuals = chain_residuals(model, specs)
    failed = sorted(k for k, r in residuals.items() if not r.is_zero())
    report.verdict("chain_valid", not failed, "verify_chain", chains=len(specs))
    report.numerics["nonzero_residuals"] = {k: len(residuals[k]) for k in failed}
    _emit(report)
    _note("chain relations hold exactly" if not failed else "failed relations: " + ", ".join(failed))
    return EXIT_OK if not failed else EXIT_FAIL


def cmd_fixtures_run(args, cfg: ToleranceConfig) -> int:
    eps_values = EPS_SWEEP if args.sweep else (args.eps,)
    try:
        rc, summary = run_fixtures(args.name, cfg, eps_values=eps_values, restarts=args.restarts)
    except KeyError:
        raise UsageError(f"unknown fixture {args.name!r}")
    summary["config"] = cfg.as_dict()
    summary["tool_version"] = __version__
    summary["eps"] = list(eps_values)
    _emit(summary)
    for case in summary["cases"]:
        status = "PASS" if case["passed"] else "FAIL"
        _note(f"{status} {case['name']}: {case['description']}")
        if case["error"]:
            _note(f"    error: {case['error']}")
        for o in case["outcomes"]:
            if not o["passed"]:
                _note(f"    failed: {o['name']} (actual {o['actual']}, expected {o['expected']})")
    return rc


# -------------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="crkit", description="Symmetry and jet analysis of polynomial CR models.")
    p.add_argument("--version", action="version", version=f"crkit {__version__}")
    top = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    q = top.add_parser("quadric", help="quadric models Re w_j = zbar^T A_j z").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name, fn in (("analyze", cmd_quadric_analyze), ("jet-check", cmd_quadric_jet_check)):
        s = q.add_parser(name)
        s.add_argument("file")
        s.add_argument("--b", help="comma-separated real b (default: strong Levi search)")
        s.add_argument("--a", help="comma-separated complex a (default 0)")
        s.add_argument("--V", help="comma-separated complex V (default all ones)")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--restarts", type=int, default=100)
        if name == "jet-check":
            s.add_argument("--step", type=float, default=1e-5)
        s.set_defaults(func=fn)

    m = top.add_parser("model", help="hypersurface models Im w = Q(z, zbar)").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    s = m.add_parser("lie")
    s.add_argument("file")
    s.add_argument("--weight", default="all")
    s.add_argument("--item5", choices=["derived", "doubled"], default="derived")
    s.set_defaults(func=cmd_model_lie)
    s = m.add_parser("pseudoconvex")
    s.add_argument("file")
    s.add_argument("--samples", type=int, default=10_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tol", type=float, default=1e-9)
    s.set_defaults(func=cmd_model_pseudoconvex)
    s = m.add_parser("sos")
    s.add_argument("file")
    s.add_argument("--mixed-degrees", action="store_true", help="allow forms that are not bihomogeneous")
    s.set_defaults(func=cmd_model_sos)
    s = m.add_parser("chain-verify")
    s.add_argument("model")
    s.add_argument("chain")
    s.set_defaults(func=cmd_model_chain_verify)
    for sub in m.choices.values():
        sub.add_argument("--allow-pluriharmonic", action="store_true")

    f = top.add_parser("fixtures", help="built-in reference cases").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    s = f.add_parser("run")
    s.add_argument("name", nargs="?", default="all")
    s.add_argument("--eps", type=parse_eps, default=DEFAULT_EPS)
    s.add_argument("--sweep", action="store_true", help="run the quadric case for eps in 1/100, 1/20, 1/10, 1/5")
    s.add_argument("--restarts", type=int, default=100)
    s.set_defaults(func=cmd_fixtures_run)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = ToleranceConfig.from_env(os.environ)
    except UsageError as exc:
        _note(str(exc))
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except ValueError as exc:
        _note(f"bad CRKIT_TOL: {exc}")
        return EXIT_USAGE
    try:
        return args.func(args, cfg)
    except UsageError as exc:
        _note(str(exc))
        return EXIT_USAGE
    except (ParseError, InvariantViolation) as exc:
        _note(f"invalid input: {exc}")
        return EXIT_USAGE
    except CrkitError as exc:
        _note(f"{type(exc).__name__}: {exc}")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
