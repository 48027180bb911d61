import json
import subprocess
import sys

import numpy as np
import pytest

from ergame import dirac_fixed_point, uniform_bernoulli
from ergame.cli import main
from ergame.games import dirac_profile, two_fixed_point_game
from ergame.io import (
    dumps_canonical,
    game_to_dict,
    measure_to_dict,
    profile_to_dict,
    write_report,
)
from ergame.measures import measure_to_dict


@pytest.fixture()
def files(tmp_path):
    game = two_fixed_point_game("ergodic")
    paths = {}

    def put(name, doc):
        p = tmp_path / name
        write_report(str(p), doc)
        paths[name] = str(p)

    put("game.json", game_to_dict(game))
    put("profile00.json", profile_to_dict(dirac_profile(game, 0, 0)))
    put("profile11.json", profile_to_dict(dirac_profile(game, 1, 1)))
    put("dirac0.json", measure_to_dict(dirac_fixed_point(game.spec_x, 0)))
    put("uniform.json", measure_to_dict(uniform_bernoulli(game.spec_x)))
    paths["dir"] = str(tmp_path)
    return paths


def run_cli(args):
    return main(args)


def read(path):
    with open(path) as fh:
        return json.load(fh)


def test_verify_equilibrium_profile(files, tmp_path):
    out = str(tmp_path / "verify.json")
    code = run_cli(["verify", "--game", files["game.json"], "--profile", files["profile00.json"], "--out", out])
    assert code == 0
    doc = read(out)
    assert doc["results"]["eps1"] == 0
    assert doc["results"]["eps2"] == 0
    assert doc["results"]["payoff1"] == 2
    assert doc["version"]


def test_eval_payoffs(files, tmp_path):
    out = str(tmp_path / "eval.json")
    assert run_cli(["eval", "--game", files["game.json"], "--profile", files["profile11.json"], "--out", out]) == 0
    doc = read(out)
    assert doc["results"]["payoff1"] == 3
    assert doc["results"]["payoff2"] == 2


def test_wasserstein_identical_measures(files, tmp_path):
    out = str(tmp_path / "w.json")
    code = run_cli([
        "wasserstein", "--mu", files["uniform.json"], "--nu", files["uniform.json"],
        "--depth", "4", "--out", out,
    ])
    assert code == 0
    doc = read(out)
    assert doc["results"]["lo"] == 0
    assert doc["results"]["hi"] == 0.0625


def test_br_command_ergodic(files, tmp_path):
    out = str(tmp_path / "br.json")
    code = run_cli([
        "br", "--game", files["game.json"], "--player", "1",
        "--opponent", files["dirac0.json"], "--out", out,
    ])
    assert code == 0
    doc = read(out)
    assert doc["results"]["value"] == 2
    assert doc["results"]["multiplicity_flag"] is False


def test_nash_thermo_end_to_end(files, tmp_path):
    out = str(tmp_path / "nash.json")
    trace = str(tmp_path / "trace.csv")
    code = run_cli([
        "nash", "--game", files["game.json"], "--mode", "thermodynamic",
        "--out", out, "--trace-csv", trace,
    ])
    assert code == 0
    doc = read(out)
    assert len(doc["results"]["runs"]) == 2  # two canonical starts
    for run in doc["results"]["runs"]:
        assert run["converged"] is True
        assert max(run["eps1"], run["eps2"]) <= run["eps_tol"]
    # library-level agreement
    from ergame.games import br_iteration, two_fixed_point_game, uniform_profile

    game = two_fixed_point_game("thermodynamic")
    lib = br_iteration(game, init=uniform_profile(game))
    got = doc["results"]["runs"][0]["profile"]["mu"]["pi"]["0"]
    assert got == pytest.approx(lib.profile.mu.pi[0], abs=1e-12)
    header = open(trace).readline().strip().split(",")
    assert header == ["run", "step", "w1hi_mu", "w1hi_nu", "payoff1", "payoff2"]


def test_zerosum_requires_antisymmetry(files, tmp_path):
    # the two-fixed-point game is not zero-sum: validation exit code
    code = run_cli(["zerosum", "--game", files["game.json"], "--out", str(tmp_path / "z.json")])
    assert code == 2


def test_transport_command(files, tmp_path):
    out = str(tmp_path / "t.json")
    code = run_cli([
        "transport", "--game", files["game.json"], "--measure", files["uniform.json"],
        "--depth", "2", "--out", out,
    ])
    assert code == 0
    doc = read(out)
    assert doc["results"]["value"] >= doc["results"]["benchmark"] - 1e-9


def test_missing_file_exit_code(files, tmp_path):
    assert run_cli(["verify", "--game", str(tmp_path / "nope.json"), "--profile", files["profile00.json"]]) == 1


def test_invalid_document_exit_code(files, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"mode": "ergodic"}')
    assert run_cli(["verify", "--game", str(bad), "--profile", files["profile00.json"]]) == 2


def test_invalid_measure_exit_code(files, tmp_path):
    doc = read(files["dirac0.json"])
    doc["pi"] = {"0": 0.7, "1": 0.7}
    bad = tmp_path / "badm.json"
    write_report(str(bad), doc)
    assert run_cli([
        "wasserstein", "--mu", str(bad), "--nu", files["uniform.json"], "--depth", "2",
    ]) == 2


def test_reports_are_byte_identical(files, tmp_path):
    out1, out2 = str(tmp_path / "r1.json"), str(tmp_path / "r2.json")
    args = ["nash", "--game", files["game.json"], "--mode", "thermodynamic", "--seed", "7"]
    assert run_cli(args + ["--out", out1]) == 0
    assert run_cli(args + ["--out", out2]) == 0
    assert open(out1, "rb").read() == open(out2, "rb").read()


def test_cli_subprocess_determinism(files, tmp_path):
    out1, out2 = str(tmp_path / "s1.json"), str(tmp_path / "s2.json")
    # common-payoff command requires A1 == A2; build such a game file
    game_doc = read(files["game.json"])
    game_doc["A2"] = game_doc["A1"]
    common_path = tmp_path / "common_game.json"
    write_report(str(common_path), game_doc)
    base = [
        sys.executable, "-m", "ergame", "common",
        "--game", str(common_path), "--seed", "3",
    ]
    r1 = subprocess.run(base + ["--out", out1], capture_output=True)
    r2 = subprocess.run(base + ["--out", out2], capture_output=True)
    assert r1.returncode == 0, r1.stderr
    assert r2.returncode == 0, r2.stderr
    assert open(out1, "rb").read() == open(out2, "rb").read()


def test_word_cap_env_override(files, tmp_path, monkeypatch):
    monkeypatch.setenv("ERGAME_WORD_CAP", "8")
    code = run_cli([
        "wasserstein", "--mu", files["uniform.json"], "--nu", files["uniform.json"],
        "--depth", "6", "--out", str(tmp_path / "w.json"),
    ])
    assert code == 2  # cap exceeded is a validation failure


def test_canonical_json_formatting():
    text = dumps_canonical({"b": 1.5, "a": [0.1, 2], "c": {"x": True, "y": None}})
    assert text == (
        '{\n  "a": [\n    0.10000000000000001,\n    2\n  ],\n'
        '  "b": 1.5,\n  "c": {\n    "x": true,\n    "y": null\n  }\n}\n'
    )