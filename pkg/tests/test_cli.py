import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from foliated_scenes import cli

from .conftest import INVALID_SCENES, SCENES, VALID_SCENES

SNAPSHOTS = Path(__file__).parent / "snapshots"
SUBCOMMANDS = ["validate", "analyze", "resonance", "theta", "fatten", "oracle"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


# ---------------------------------------------------------------- documented examples


def test_validate_three_lunes(capsys):
    code, out, _ = run(capsys, "validate", str(SCENES / "three_lunes.json"))
    assert code == 0
    assert "5/5 hypotheses hold" in out


def test_resonance_flags_the_chain(capsys):
    code, doc = run_json(capsys, "resonance", str(SCENES / "resonant_chain.json"))
    assert code == 1
    (chain,) = doc["resonant_chains"]
    assert chain["trace"]


def test_oracle_transition(capsys):
    code, doc = run_json(capsys, "oracle", "--model", "-1,1,2", "--rho", "3/1")
    assert code == 0
    assert doc["report"]["formula"] == "1/1"
    assert abs(doc["report"]["measured"] - 1) < 1e-6


def test_oracle_other_kinds(capsys):
    code, doc = run_json(capsys, "oracle", "--model", "1,-1,-2", "--kind", "trace")
    assert code == 0 and doc["report"]["formula"] == "2/1"
    code, doc = run_json(capsys, "oracle", "--model", "-1,1,2", "--rho", "2", "--kind", "blowup")
    assert code == 0 and doc["eigenvalues"][2] == "0/1"


def test_bundled_name_resolves(capsys):
    code, out, _ = run(capsys, "validate", "three_lunes")
    assert code == 0 and out.startswith("three_lunes")


# ---------------------------------------------------------------- exit codes


@pytest.mark.parametrize("name", VALID_SCENES)
def test_valid_scenes_validate(capsys, name):
    assert run(capsys, "validate", str(SCENES / f"{name}.json"))[0] == 0


@pytest.mark.parametrize("name", INVALID_SCENES)
def test_invalid_scenes_fail(capsys, name):
    code, doc = run_json(capsys, "validate", str(SCENES / f"{name}.json"))
    assert code == 1
    assert doc["passed"] is False and doc["violations"]


def test_injected_conflict_fails_fatten(capsys):
    code, doc = run_json(capsys, "fatten", "three_lunes_injected_conflict", "--check-ds")
    assert code == 1
    assert doc["good_saturations"]["passed"] is False


def test_fatten_three_lunes(capsys):
    code, doc = run_json(capsys, "fatten", "three_lunes")
    assert code == 0
    assert len(doc["frontier"]["discs"]) == 6


@pytest.mark.parametrize(
    "argv",
    [
        ["validate"],
        ["validate", "three_lunes", "--bogus"],
        ["nonsense"],
        ["validate", "no/such/file.json"],
        ["oracle", "--model", "1,2"],
        ["oracle", "--model", "-1,1,2"],
        ["oracle", "--model", "-1,1,2", "--rho", "x"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_bad_json_is_a_usage_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "validate", str(bad))[0] == 2


def test_module_errors_become_diagnostics(capsys, three_lunes_doc, tmp_path):
    doc = json.loads(json.dumps(three_lunes_doc))
    doc["edges"][0]["omega"] = "ghost"
    path = tmp_path / "dangling.json"
    path.write_text(json.dumps(doc))
    code, out, err = run(capsys, "analyze", str(path), "--format", "json")
    assert code == 1
    assert json.loads(out)["diagnostic"]["error"] == "dangling-reference"
    assert "error:" in err


def test_oracle_domain_error(capsys):
    code, _, err = run(capsys, "oracle", "--model", "1,1,2", "--rho", "3")
    assert code == 1 and "error:" in err


# ---------------------------------------------------------------- determinism


@pytest.mark.parametrize("command", ["validate", "analyze", "resonance", "theta", "fatten"])
@pytest.mark.parametrize("name", ["three_lunes", "random_2"])
def test_json_is_byte_identical(capsys, command, name):
    first = run(capsys, command, name, "--format", "json")[1]
    second = run(capsys, command, name, "--format", "json")[1]
    assert first == second
    assert json.loads(first)["schema"] == 1


def test_json_identical_across_processes():
    argv = [sys.executable, "-m", "foliated_scenes", "theta", "three_lunes", "--format", "json"]
    env = {**os.environ, "PYTHONHASHSEED": "1"}
    a = subprocess.run(argv, capture_output=True, env=env, check=True).stdout
    env["PYTHONHASHSEED"] = "2"
    b = subprocess.run(argv, capture_output=True, env=env, check=True).stdout
    assert a == b


# ---------------------------------------------------------------- help snapshots


def help_text(capsys, monkeypatch, *argv):
    monkeypatch.setenv("COLUMNS", "80")
    code = cli.main([*argv, "--help"])
    assert code == 0
    return capsys.readouterr().out


@pytest.mark.parametrize("sub", [None, *SUBCOMMANDS])
def test_help_snapshot(capsys, monkeypatch, sub):
    text = help_text(capsys, monkeypatch, *([sub] if sub else []))
    snap = SNAPSHOTS / f"help_{sub or 'main'}.txt"
    if os.environ.get("UPDATE_SNAPSHOTS") or not snap.exists():
        snap.write_text(text)
    assert text == snap.read_text()
