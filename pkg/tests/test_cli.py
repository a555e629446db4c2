from __future__ import annotations

import json

import pytest

from crkit.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, chain_from_json, main, parse_eps, parse_vector, quadric_to_json
from crkit.fixtures import chain_model, chain_spec, codim7_model, lewy_model, octic_c3_model
from crkit.polyalg.codec import field_to_json, model_to_json, poly_to_json, gaussian_to_json


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)

    spec = chain_spec()
    chain = {
        "Y": field_to_json(spec.Y),
        "U": [poly_to_json(p) for p in spec.U],
        "V": [poly_to_json(p) for p in spec.V],
        "c": [gaussian_to_json(c) for c in spec.c],
        "d": [gaussian_to_json(c) for c in spec.d],
    }
    return {
        "quadric": write("q.json", quadric_to_json(codim7_model())),
        "lewy": write("lewy.json", model_to_json(lewy_model())),
        "octic": write("octic.json", model_to_json(octic_c3_model())),
        "chain_model": write("cm.json", model_to_json(chain_model())),
        "chain": write("chain.json", chain),
        "bad": write("bad.json", {"kind": "hypersurface", "Q": {"n": 1, "terms": [{"alpha": [1], "beta": [1], "re": [1, 1], "im": [0, 1]}, {"alpha": [2], "beta": [0], "re": [1, 1], "im": [0, 1]}, {"alpha": [0], "beta": [2], "re": [1, 1], "im": [0, 1]}]}}),
        "garbage": str(tmp_path / "garbage.json"),
        "tmp": tmp_path,
    }


def run(capsys, argv):
    rc = main(argv)
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_help_and_version(capsys):
    assert main(["--help"]) == EXIT_OK
    assert main(["--version"]) == EXIT_OK
    assert main([]) == EXIT_USAGE


def test_parse_helpers():
    assert parse_vector("1, 1/2, 2i").tolist() == [1, 0.5, 2j]
    assert parse_vector(None) is None
    assert parse_eps("1/5") == pytest.approx(0.2)
    for bad in ("0", "0.25", "x"):
        with pytest.raises(Exception):
            parse_eps(bad)


def test_quadric_analyze(capsys, files):
    rc, out, _ = run(capsys, ["quadric", "analyze", files["quadric"], "--b", "1.4,0.4,0,0,0,0,0", "--a", "0.2,0.2,0,0,0,0,0", "--restarts", "20"])
    rep = json.loads(out)
    assert rc == EXIT_OK and rep["errors"] == []
    assert rep["verdicts"]["stationary_minimal"]["value"] is True
    assert rep["input_digest"].startswith("sha256:")


def test_quadric_analyze_reports_no_contraction(capsys, files):
    rc, out, _ = run(capsys, ["quadric", "analyze", files["quadric"], "--b", "1,0,0,0,0,0,0", "--a", "3,0,0,0,0,0,0", "--restarts", "5"])
    assert rc == EXIT_FAIL
    assert json.loads(out)["errors"][0]["type"] == "NoContraction"


def test_jet_check(capsys, files):
    rc, out, _ = run(capsys, ["quadric", "jet-check", files["quadric"], "--b", "1.4,0.4,0,0,0,0,0", "--a", "0.2,0.2,0,0,0,0,0"])
    assert rc == EXIT_OK
    assert json.dumps(json.loads(out)).count("sha256") == 1


def test_output_is_deterministic(capsys, files):
    argv = ["model", "pseudoconvex", files["octic"], "--samples", "300"]
    a = run(capsys, argv)
    b = run(capsys, argv)
    assert a == b and a[0] == EXIT_OK


def test_model_lie(capsys, files):
    rc, out, _ = run(capsys, ["model", "lie", files["lewy"]])
    assert rc == EXIT_OK
    assert "1/2" in out
    assert run(capsys, ["model", "lie", files["lewy"], "--weight", "1/3"])[0] == EXIT_FAIL


def test_model_sos(capsys, files):
    assert run(capsys, ["model", "sos", files["lewy"]])[0] == EXIT_OK
    assert run(capsys, ["model", "sos", files["octic"]])[0] == EXIT_FAIL
    assert run(capsys, ["model", "sos", files["octic"], "--mixed-degrees"])[0] == EXIT_OK


def test_chain_verify(capsys, files):
    rc, out, _ = run(capsys, ["model", "chain-verify", files["chain_model"], files["chain"]])
    assert rc == EXIT_OK
    assert len(chain_from_json(json.loads(open(files["chain"]).read()))) == 1


def test_input_errors(capsys, files):
    assert run(capsys, ["model", "lie", files["garbage"]])[0] == EXIT_USAGE
    assert run(capsys, ["model", "lie", files["bad"]])[0] == EXIT_USAGE
    assert run(capsys, ["model", "lie", files["bad"], "--allow-pluriharmonic"])[0] == EXIT_OK
    assert run(capsys, ["quadric", "analyze", files["lewy"]])[0] == EXIT_USAGE
    assert run(capsys, ["model", "lie", files["quadric"]])[0] == EXIT_USAGE
    (files["tmp"] / "junk.json").write_text("{")
    assert run(capsys, ["model", "lie", str(files["tmp"] / "junk.json")])[0] == EXIT_USAGE


def test_fixtures_command(capsys):
    assert run(capsys, ["fixtures", "run", "lewy"])[0] == EXIT_OK
    assert run(capsys, ["fixtures", "run", "nope"])[0] == EXIT_USAGE
    assert run(capsys, ["fixtures", "run", "c10", "--eps", "0.3"])[0] == EXIT_USAGE


def test_env_tolerance(capsys, files, monkeypatch):
    monkeypatch.setenv("CRKIT_TOL", "1e-8")
    rc, out, _ = run(capsys, ["model", "pseudoconvex", files["lewy"], "--samples", "50"])
    assert rc == EXIT_OK and json.loads(out)["config"]["residual_tol"] == 1e-8
    monkeypatch.setenv("CRKIT_TOL", "tight")
    assert run(capsys, ["model", "lie", files["lewy"]])[0] == EXIT_USAGE
