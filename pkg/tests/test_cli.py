import json
import math
import subprocess
import sys

import pytest

from fockdl import cli
from fockdl.gauge import default_ab_geometry


@pytest.fixture
def model_file(tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps({"n_modes": 2}))
    return str(p)


@pytest.fixture
def scenario_file(tmp_path):
    f, i_pt, j_pt, out, back = default_ab_geometry(math.pi)
    p = tmp_path / "s.json"
    p.write_text(
        json.dumps(
            {
                "defects": [{"pos": [0, 0], "flux": math.pi}],
                "i": list(i_pt),
                "j": list(j_pt),
                "outbound": [list(v) for v in out.vertices],
                "return": [list(v) for v in back.vertices],
            }
        )
    )
    return str(p)


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_truth_table(model_file, capsys):
    code, out, _ = run(["check", "--model", model_file, "--formula", "<h(a(0))>T", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    vals = data["formulas"][0]["values"]
    assert vals == {"00": False, "10": True, "01": False, "11": True, "zero": False}
    assert data["states"] == ["00", "10", "01", "11", "zero"]


def test_check_text(model_file, capsys):
    code, out, _ = run(["check", "--model", model_file, "--formula", "<h(a(0))>T"], capsys)
    assert code == 0 and "formula <h(a(0))>T" in out and "valid: no" in out


def test_assert_valid(model_file, capsys):
    assert run(["check", "--model", model_file, "--formula", "T", "--assert-valid"], capsys)[0] == 0
    assert run(["check", "--model", model_file, "--formula", "<h(a(0))>T", "--assert-valid"], capsys)[0] == 1


def test_malformed_formula(model_file, capsys):
    code, _, err = run(["check", "--model", model_file, "--formula", "<h(a(0)>T"], capsys)
    assert code == 2 and "position 7" in err


def test_missing_model(tmp_path, capsys):
    code, _, err = run(["check", "--model", str(tmp_path / "nope.json"), "--formula", "T"], capsys)
    assert code == 2 and "cannot read" in err


@pytest.mark.parametrize(
    "expr, expected",
    [
        ("a(0) adag(0)", "id + (-1) adag(0) a(0)"),
        ("a(0) a(0)", "zero"),
        ("adag(1) a(0) + a(0) adag(1)", "zero"),
    ],
)
def test_expand(expr, expected, capsys):
    code, out, _ = run(["expand", expr], capsys)
    assert code == 0 and out.strip() == expected


def test_expand_json(capsys):
    code, out, _ = run(["expand", "2i adag(1) a(0)", "--format", "json"], capsys)
    data = json.loads(out)
    assert data["terms"] == [{"annihilators": [0], "coefficient": [0.0, 2.0], "creators": [1]}]


def test_expand_parse_error(capsys):
    assert run(["expand", "a(0) +"], capsys)[0] == 2


def test_model_build(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"n_modes": 2, "seeds": [{"00": [1, 0]}], "alphabet": ["adag(0)", "adag(1)"], "depth": 2}))
    out_path = tmp_path / "model.json"
    code, out, _ = run(["model-build", "--spec", str(spec), "--out", str(out_path)], capsys)
    assert code == 0 and "wrote 4 states" in out
    built = json.loads(out_path.read_text())
    assert [s["name"] for s in built["states"]] == ["00", "10", "01", "11"]
    # a built file is itself a valid model file
    code, out, _ = run(["check", "--model", str(out_path), "--formula", "<h(a(1))>T", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["formulas"][0]["values"]["01"] is True


def test_json_is_deterministic(model_file, capsys):
    argv = ["check", "--model", model_file, "--formula", "~<h(a(0))>T", "--formula", "T", "--format", "json"]
    assert run(argv, capsys)[1] == run(argv, capsys)[1]


def test_tolerance_env(model_file, capsys, monkeypatch):
    monkeypatch.setenv("FOCKDL_TOL", "bogus")
    assert run(["check", "--model", model_file, "--formula", "T"], capsys)[0] == 2
    monkeypatch.setenv("FOCKDL_TOL", "1e-8")
    assert cli.ray_tolerance() == 1e-8
    assert cli.ray_tolerance(1e-5) == 1e-5
    with pytest.raises(cli.UsageError):
        cli.ray_tolerance(-1.0)


def test_holonomy(scenario_file, capsys):
    code, out, _ = run(["holonomy", "--scenario", scenario_file], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["holonomy"]["windings"] == [1]
    assert abs(data["holonomy"]["deviation_from_1"] - 2) < 1e-9
    assert data["ab"]["surviving_term_executable"] is True


@pytest.mark.parametrize("name", ["vacuum", "zero", "projective", "lagrangian", "seriality", "transition-chain", "ab"])
def test_demos_pass(name, capsys):
    code, out, _ = run(["demo", name], capsys)
    assert code == 0 and "FAIL" not in out


def test_demo_transition_chain_verdicts(capsys):
    code, out, _ = run(["demo", "transition-chain", "--format", "json"], capsys)
    data = json.loads(out)
    terms = data["info"]["monomials"]
    assert len(terms) == 4 and len(data["info"]["executable terms"]) == 1


def test_demo_ab_flux(capsys):
    code, out, _ = run(["demo", "ab", "--flux", "3.14159", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0
    assert abs(data["info"]["holonomy"]["deviation_from_1"] - 2) < 1e-6


def test_demo_modes(capsys):
    assert run(["demo", "vacuum", "--modes", "3"], capsys)[0] == 0


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["frobnicate"])
    assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fockdl", "expand", "a(0) a(0)"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "zero"
