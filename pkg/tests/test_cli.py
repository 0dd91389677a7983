import json
import subprocess
import sys

import pytest
from click.testing import CliRunner

from acm.cli import cli


@pytest.fixture
def runner():
    return CliRunner()


def _json_tail(output: str) -> dict:
    """Parse the JSON block that _emit appends after the human lines."""
    idx = output.index("{")
    return json.loads(output[idx:])


def test_hilbert_arrangement_json_envelope(runner):
    res = runner.invoke(cli, ["hilbert", "arrangement", "--lambda", "2,1",
                              "--max-deg", "4", "--json", "-"])
    assert res.exit_code == 0
    payload = _json_tail(res.output)
    assert set(payload) >= {"target", "lambda", "field", "dims",
                            "denominator_degrees", "numerator", "verdict",
                            "certificate", "seed"}
    assert payload["target"] == "X_lambda"
    assert payload["lambda"] == [2, 1]
    assert payload["dims"][0] == 1 and payload["dims"][1] == 3
    assert payload["field"] == "q"


def test_hilbert_subalgebra_numerator(runner):
    res = runner.invoke(cli, ["hilbert", "subalgebra", "--a", "3", "--b", "2",
                              "--max-deg", "10", "--json", "-"])
    assert res.exit_code == 0
    payload = _json_tail(res.output)
    assert payload["numerator"] == [1, 0, 0, 0, 1, 1, 1, 0, 1, 1, 1]
    assert payload["denominator_degrees"] == [2, 3]


def test_hilbert_deformed_compare_closed_form(runner):
    res = runner.invoke(cli, ["hilbert", "deformed", "--r", "2", "--s", "1",
                              "--a", "7/3", "--max-deg", "8",
                              "--compare-closed-form", "--json", "-"])
    assert res.exit_code == 0
    payload = _json_tail(res.output)
    assert payload["matches_closed_form"] is True
    assert payload["dims"] == payload["closed_form"]
    assert "matches closed form" in res.output


def test_classify_output(runner):
    res = runner.invoke(cli, ["classify", "--lambda", "3,2,1", "--json", "-"])
    assert res.exit_code == 0
    payload = _json_tail(res.output)
    assert payload["verdict"]["status"] == "notCM"
    assert payload["quotient_verdict"]["status"] == "notCM"
    assert "rule " in res.output
    # unknown verdicts still exit 0
    res2 = runner.invoke(cli, ["classify", "--lambda", "3,3,2,2"])
    assert res2.exit_code == 0
    assert "unknown" in res2.output


def test_cm_check_seed_reproducible(runner):
    args = ["cm-check", "--lambda", "2,1", "--seed", "11", "--json", "-"]
    res1 = runner.invoke(cli, args)
    res2 = runner.invoke(cli, args)
    assert res1.exit_code == 0
    assert res1.output == res2.output  # byte-for-byte
    assert "seed = 11" in res1.output
    payload = _json_tail(res1.output)
    assert payload["verdict"]["status"] == "CM"
    assert payload["seed"] == 11


def test_acm_seed_env(runner):
    res = runner.invoke(cli, ["cm-check", "--lambda", "2,1"],
                        env={"ACM_SEED": "7"})
    assert res.exit_code == 0
    assert "seed = 7" in res.output


def test_freeness_certificate_command(runner):
    res = runner.invoke(cli, ["freeness", "--family", "bplus1", "--b", "7",
                              "--json", "-"])
    assert res.exit_code == 0
    payload = _json_tail(res.output)
    cert = payload["certificate"]
    assert cert["rank"] == 6
    assert cert["verified"] is True
    assert "verified = True" in res.output


def test_module_hilbert_command(runner):
    res = runner.invoke(cli, ["module-hilbert", "--beta", "5/3",
                              "--max-deg", "8", "--json", "-"])
    assert res.exit_code == 0
    payload = _json_tail(res.output)
    assert payload["dims"] == [0, 1, 1, 2, 3, 5, 7, 10, 11]
    assert payload["numerator_sum"] == 13
    assert payload["module_rank"] == 12
    assert "not free => not CM" in res.output


def test_bset_report_command(runner):
    res = runner.invoke(cli, ["bset-report", "--r", "1", "--s", "1",
                              "--max-deg", "8", "--seed", "3", "--json", "-"])
    assert res.exit_code == 0
    assert "agrees = True" in res.output


def test_sweep_deformed_command(runner):
    res = runner.invoke(cli, ["sweep", "--family", "deformed", "--r", "1",
                              "--s", "1", "--candidates", "1,3,1/2",
                              "--max-deg", "8", "--seed", "0", "--json", "-"])
    assert res.exit_code == 0
    payload = _json_tail(res.output)
    assert "1" in payload["sweep"]["drop_set"]


def test_bad_partition_exits_one(runner):
    res = runner.invoke(cli, ["hilbert", "arrangement", "--lambda", "2,x"])
    assert res.exit_code == 1
    res2 = runner.invoke(cli, ["hilbert", "arrangement", "--lambda", "1,2"])
    assert res2.exit_code == 1
    assert "descending" in res2.output


def test_nonfinite_parameter_exits_one(runner):
    res = runner.invoke(cli, ["hilbert", "deformed", "--r", "1", "--s", "1",
                              "--a", "0"])
    assert res.exit_code == 1


def _run_main(*args, env=None):
    import os
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run([sys.executable, "-m", "acm.cli", *args],
                          capture_output=True, text=True, env=full_env,
                          timeout=120)


def test_exit_code_zero_subprocess():
    p = _run_main("classify", "--lambda", "4,2,2")
    assert p.returncode == 0
    assert "CM" in p.stdout


def test_exit_code_one_subprocess():
    p = _run_main("hilbert", "arrangement", "--lambda", "nope")
    assert p.returncode == 1


def test_exit_code_two_on_certification_failure():
    # the (3,2) slice algebra is not free, so certification must fail
    # with the internal-inconsistency exit code and stderr diagnostics
    p = _run_main("freeness", "--family", "slice-newton", "--a", "3",
                  "--b", "2")
    assert p.returncode == 2
    assert "inconsistency" in p.stderr


def test_acm_prime_env_subprocess():
    p = _run_main("hilbert", "arrangement", "--lambda", "2,1",
                  "--max-deg", "3", "--field", "gfp", "--json", "-",
                  env={"ACM_PRIME": "32003"})
    assert p.returncode == 0
    assert _json_tail(p.stdout)["field"] == "gfp:32003"
