import json
import subprocess
import sys

import pytest

from sympullback.cli import (SCHEMAS, CommandRequest, ValidationError, default_dps, dispatch, main,
                             validate)

EXAMPLES = {
    "euler-factor": ["--n", "1", "--c", "1", "--alpha", "2"],
    "volume-series": ["--n", "1", "--q", "2", "--order", "3"],
    "volume-discrepancy": ["--n", "1", "--q", "2", "--order", "3"],
    "verify-rationality": ["--n", "2", "--q", "3", "--c", "1/2", "--alpha", "2,5/3"],
    "gamma-n": ["--n", "2", "--z", "4"],
    "a-k": ["--k", "6,4", "--t", "1"],
    "b-lambda": ["--n", "2", "--k", "6"],
    "arch-gamma": ["--n", "2", "--k", "6,4", "--eps", "1", "--s", "23/10"],
    "kak-constant": ["--n", "2"],
    "zeta-mc": ["--n", "1", "--k", "4", "--s", "0.5", "--samples", "20000", "--seed", "5"],
    "structure-check": ["--name", "cayley-jacobian", "--n", "2"],
    "ktype-mult": ["--lam", "4,3", "--m", "2"],
    "critical-set": ["--ell", "5", "--parity", "even"],
    "sym4-params": ["--k", "2"],
    "normalization-constant": ["--n", "2", "--k", "4", "--r", "2"],
    "cn-prefactor": ["--k", "6", "--r", "2"],
    "sp-order": ["--n", "2", "--p", "2"],
    "siegel-volume": ["--n", "2"],
    "gauss-sum": ["--modulus", "4"],
}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_every_subcommand_has_an_example():
    assert set(EXAMPLES) == set(SCHEMAS)


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_subcommand_runs(capsys, name):
    code, out = run(capsys, name, *EXAMPLES[name])
    env = json.loads(out)
    assert code == 0, env
    assert env["status"] == "ok"
    assert "routine" in env["provenance"]


def test_known_values(capsys):
    _, out = run(capsys, "normalization-constant", "--n", "2", "--k", "4,4", "--r", "2")
    assert json.loads(out)["value"]["rational"] == "9/4"
    _, out = run(capsys, "gauss-sum", "--modulus", "4")
    # zeta_4 - zeta_4^3 = 2i
    assert json.loads(out)["value"]["gauss_sum"] == {"level": 4, "coeffs": ["0", "1", "0", "-1"]}
    _, out = run(capsys, "sp-order", "--n", "1", "--p", "3")
    assert json.loads(out)["value"]["order"] == 24
    _, out = run(capsys, "critical-set", "--sym4", "4")
    assert json.loads(out)["value"]["right_points"] == [1, 3]


def test_same_seed_gives_identical_bytes(capsys):
    argv = ["zeta-mc", "--n", "2", "--k", "6", "--s", "1", "--samples", "5000", "--seed", "42"]
    _, a = run(capsys, *argv)
    _, b = run(capsys, *argv)
    assert a == b
    _, c = run(capsys, *argv[:-1], "43")
    assert a != c


def test_missing_seed_is_invalid(capsys):
    code, out = run(capsys, "zeta-mc", "--n", "1", "--k", "4", "--s", "0.5")
    assert code == 2
    assert json.loads(out)["error"]["type"] == "validation"


def test_seed_range():
    with pytest.raises(ValidationError):
        validate(CommandRequest("zeta-mc", {"n": 1, "k": 4, "s": 0.5, "seed": 2 ** 64}))
    with pytest.raises(ValidationError):
        validate(CommandRequest("kak-constant", {"n": 1}, seed=3))


def test_non_dominant_weight_is_invalid(capsys):
    assert run(capsys, "a-k", "--k", "4,5")[0] == 2


def test_unknown_parameter_is_invalid():
    env = dispatch(CommandRequest("kak-constant", {"n": 1, "bogus": 2}))
    assert env.exit_code == 2 and "bogus" in env.error["message"]
    assert dispatch(CommandRequest("nope")).exit_code == 2
    assert dispatch(CommandRequest("kak-constant", {"n": "x"})).exit_code == 2


@pytest.mark.parametrize("argv", [
    ["gamma-n", "--n", "2", "--z", "0.5"],
    ["normalization-constant", "--n", "2", "--k", "6", "--r", "3"],
    ["zeta-mc", "--n", "2", "--k", "3", "--s", "-1", "--seed", "1"],
    ["gauss-sum", "--modulus", "2"],
])
def test_math_errors_exit_3(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 3, out
    assert json.loads(out)["error"]["type"] == "math"


def test_failed_verification_exits_4(capsys):
    code, out = run(capsys, "structure-check", "--name", "cone-measure", "--tol", "1e-300")
    assert code == 4
    env = json.loads(out)
    assert env["error"]["type"] == "verification" and "detail" in env


def test_out_of_range_warning_is_reported(capsys):
    code, out = run(capsys, "a-k", "--k", "4,4", "--t", "5")
    assert code == 0
    assert json.loads(out)["value"]["warnings"]


def test_factored_level(capsys):
    a = run(capsys, "normalization-constant", "--n", "2", "--k", "4", "--r", "2", "--N", "6")[1]
    b = run(capsys, "normalization-constant", "--n", "2", "--k", "4", "--r", "2", "--N", "2:1,3:1")[1]
    assert a == b
    code, _ = run(capsys, "normalization-constant", "--n", "2", "--k", "4", "--r", "2", "--N", "4:1")
    assert code == 2


def test_plain_format(capsys):
    code, out = run(capsys, "--format", "plain", "critical-set", "--ell", "5")
    assert code == 0
    assert "right_points: [1, 3]" in out


def test_dps_environment(monkeypatch):
    monkeypatch.setenv("SYMPULLBACK_DPS", "50")
    assert default_dps() == 50
    monkeypatch.setenv("SYMPULLBACK_DPS", "5")
    with pytest.raises(ValidationError):
        default_dps()
    env = dispatch(CommandRequest("arch-gamma", {"n": 1, "k": [4], "s": "23/10"}))
    assert env.exit_code == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "sympullback", "siegel-volume", "--n", "1"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["value"] == {"i_pow": 0, "pi_exp": 1, "rational": "1/3",
                                               "two_exp": ["0", "0"]}
