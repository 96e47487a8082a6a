"""End-to-end tests for the charderiv command line."""

import json

import pytest

import charderiv.main as main_mod
from charderiv import config as config_module
from charderiv.core.errors import CrossCheckError, NotDivisibleError


@pytest.fixture(autouse=True)
def _no_user_config(tmp_path, monkeypatch):
    monkeypatch.delenv(config_module.USER_CONFIG_ENV_VAR, raising=False)
    monkeypatch.delenv(config_module.THREADS_ENV_VAR, raising=False)
    monkeypatch.setattr(config_module, "DEFAULT_USER_CONFIG_PATH", tmp_path / "missing.json")


def _run_json(tmp_path, *argv):
    out = tmp_path / "out.json"
    code = main_mod.run([*argv, "--format", "json", "--out", str(out)])
    assert code == 0
    return json.loads(out.read_text(encoding="utf-8"))


def test_kostka_prints_the_number(capsys):
    assert main_mod.run(["kostka", "--shape", "3,1", "--weight", "2,1,1"]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_dop_renders_the_operator(capsys):
    assert main_mod.run(["dop", "--k", "4"]) == 0
    out = capsys.readouterr().out
    assert "∂u1^4 + 6∂u2∂u1^2 + 3∂u2^2 + 4∂u3∂u1 + ∂u4" in out


def test_dop_json(tmp_path):
    assert _run_json(tmp_path, "dop", "--k", "2") == {"k": 2, "operator": "∂u1^2 + ∂u2"}


def test_schur_json(tmp_path):
    # s_(1)(x, y) = x + y
    assert _run_json(tmp_path, "schur", "--shape", "1", "--points", "1/2,1/3") == "5/6"


def test_ginibre_general_json(tmp_path):
    payload = _run_json(tmp_path, "ginibre", "--k", "2", "--alpha", "0,0")
    assert payload["poly_t"] == [["0", "1/1"]]
    assert payload["prefactor"] == {"exp_coeff": 2, "one_minus_t_power": 0, "pi_power": -2}


def test_ginibre_first_derivative_json(tmp_path):
    payload = _run_json(tmp_path, "ginibre", "--k", "2", "--h", "0")
    assert payload["poly_t"] == [["0", "2/3"], ["1", "2/1"], ["2", "1/1"]]


def test_ginibre_grid_csv(tmp_path):
    out = tmp_path / "grid.csv"
    assert main_mod.run(["ginibre", "--grid", "--max-k", "1", "--format", "csv", "--out", str(out)]) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "k,alpha,h,exp_coeff,pi_power,one_minus_t_power,poly_t"
    assert len(lines) == 3


def test_cue_circle_limit_json(tmp_path):
    payload = _run_json(tmp_path, "cue", "--k", "1", "--h1", "1", "--circle")
    assert payload["limit"] == "1/3"


def test_cue_circle_finite_json(tmp_path):
    payload = _run_json(tmp_path, "cue", "--k", "1", "--h1", "0", "--circle", "--N", "5")
    assert payload["value"] == "6/1"


def test_cue_inside_disc_json(tmp_path):
    payload = _run_json(tmp_path, "cue", "--k", "1", "--h1", "1")
    assert payload["h"] == [0, 1]
    assert payload["prefactor"]["one_minus_t_power"] == -3


def test_eval_job_file(tmp_path):
    job = tmp_path / "job.json"
    job.write_text(
        json.dumps(
            {
                "spec": {"points": ["1/2"], "exponents": [[1]]},
                "spec_y": {"points": ["0"], "exponents": [[1]]},
                "kernel": {"vars": ["u", "v"], "terms": [[[1, 1], "3/1"], [[2, 0], "1/1"]]},
                "routes": ["oracle", "operator", "kostka", "multinomial", "borel"],
            }
        ),
        encoding="utf-8",
    )
    # d_u d_v (3uv + u^2) = 3
    payload = _run_json(tmp_path, "eval", "--job", str(job))
    assert payload == {route: "3/1" for route in ("borel", "kostka", "multinomial", "operator", "oracle")}


def test_eval_rejects_malformed_job(tmp_path):
    job = tmp_path / "job.json"
    job.write_text(json.dumps({"spec": {"points": ["0"], "exponents": [[0]]}}), encoding="utf-8")
    assert main_mod.run(["eval", "--job", str(job)]) == 1


def test_eval_missing_job_file(tmp_path):
    assert main_mod.run(["eval", "--job", str(tmp_path / "nope.json")]) == 1


def test_eval_named_kernel_needs_chi():
    assert main_mod.run(["eval", "--kernel", "ginibre", "--k", "1"]) == 1


def test_usage_errors_exit_one():
    assert main_mod.run(["kostka", "--shape", "3,1"]) == 1
    assert main_mod.run(["kostka", "--shape", "x", "--weight", "1"]) == 1
    assert main_mod.run(["frobnicate"]) == 1


def test_precondition_errors_exit_one():
    assert main_mod.run(["dop", "--k", "0"]) == 1
    assert main_mod.run(["ginibre", "--k", "1", "--alpha", "1,1"]) == 1


@pytest.mark.parametrize("error", [CrossCheckError, NotDivisibleError])
def test_invariant_breaches_exit_two(monkeypatch, error):
    def _boom(args, config):
        raise error("identity failed")

    monkeypatch.setitem(main_mod._HANDLERS, "kostka", _boom)
    assert main_mod.run(["kostka", "--shape", "1", "--weight", "1"]) == 2


def test_help_exits_zero(capsys):
    assert main_mod.run(["--help"]) == 0
    assert "verify" in capsys.readouterr().out


def test_verify_small_cross_suite(tmp_path):
    results = _run_json(tmp_path, "verify", "--suite", "cross", "--seed", "3", "--max-k", "2", "--cases", "4")
    assert len(results) == 4
    assert all(r["passed"] for r in results)


def test_verify_text_output(capsys):
    code = main_mod.run(["verify", "--suite", "ginibre", "--max-k", "2"])
    out = capsys.readouterr().out
    assert code == 0
    assert "PASS" in out
    assert "cases passed" in out
