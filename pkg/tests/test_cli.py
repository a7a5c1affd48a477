import json
import subprocess
import sys
from pathlib import Path

import pytest

from obstruct.certs import dumps
from obstruct.cli import main, run_job

JOBS = Path(__file__).resolve().parents[1] / "scripts" / "jobs"


def run_main(argv, capsys):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


class TestRunJob:
    def test_check_point_zero(self):
        r = run_job({"command": "check-point", "ctx": {"field": "q"},
                     "inputs": {"point": ["0", "0", "0", "0", "0"]}, "seed": 0})
        assert r["status"] == "ok" and r["schema_version"] == "1"
        assert r["certificate"]["kind"] == "point"

    def test_reduce_fixture(self):
        r = run_job({"command": "reduce", "inputs": {"point": ["0", "1", "0", "1", "0"]}})
        assert r["status"] == "ok" and len(r["certificate"]["word"]) == 2
        assert isinstance(r["replay"]["seed"], int)

    def test_chain_verify_base(self):
        r = run_job({"command": "chain-verify", "inputs": {"base_point_chain": 2}, "seed": 1})
        assert r["status"] == "ok"

    def test_invalid_point(self):
        r = run_job({"command": "check-point", "inputs": {"point": ["0", "1", "0", "1", "0"]}})
        assert r["status"] == "invalid" and "NotOnQuadric" in r["diagnostics"][0]

    def test_syntax_error_is_usage(self):
        r = run_job({"command": "check-point", "inputs": {"point": ["0", "1 +", "0", "1", "0"]}})
        assert r["status"] == "error"

    def test_budget_is_resource_error(self):
        job = {"command": "orient", "action": "lift", "ctx": {"vars": ["x", "y"]},
               "inputs": {"orientation": {"ideal": ["x", "y"], "row": ["x+x^2", "y+y^2"]}},
               "budgets": {"pairs": 1}}
        assert run_job(job)["status"] == "error"

    def test_unknown_command(self):
        assert run_job({"command": "frobnicate"})["status"] == "error"

    @pytest.mark.parametrize("job", sorted(JOBS.glob("*.json")), ids=lambda p: p.stem)
    def test_example_jobs_replay(self, job):
        r1 = run_job(json.loads(job.read_text()))
        assert r1["status"] == "ok", r1["diagnostics"]
        r2 = run_job(r1["replay"])
        assert dumps(r1["certificate"]) == dumps(r2["certificate"])

    def test_diff_replay_with_auto_seed(self):
        job = {"command": "orient", "action": "diff", "ctx": {"vars": ["x", "y"]},
               "inputs": {"left": {"ideal": ["x", "y"], "row": ["x", "y"]},
                          "right": {"ideal": ["x-1", "y"], "row": ["x-1", "y"]}}}
        r1 = run_job(job)
        r2 = run_job(r1["replay"])
        assert r1["status"] == "ok" and dumps(r1) == dumps(r2)


class TestMain:
    def test_exit_codes(self, capsys):
        assert run_main(["check-point", "--point", "0;0,0;0,0"], capsys)[0] == 0
        assert run_main(["check-point", "--point", "0;1,0;1,0"], capsys)[0] == 1
        code, rep = run_main(["suite", "unknown-suite"], capsys)
        assert code == 2 and "UnknownSuite" in rep["diagnostics"][0]

    def test_bad_flags(self, capsys):
        assert main(["check-point", "--nope"]) == 2

    def test_suite_involution(self, capsys):
        code, rep = run_main(["suite", "involution", "--seed", "0"], capsys)
        assert code == 0 and rep["diagnostics"][0].startswith("[PASS] involution")

    def test_verify_roundtrip(self, capsys, tmp_path):
        out = tmp_path / "r.json"
        assert main(["reduce", "--point", "0;1,0;1,0", "--seed", "1", "--out", str(out)]) == 0
        code, rep = run_main(["verify", str(out)], capsys)
        assert code == 0 and rep["status"] == "ok"
        data = json.loads(out.read_text())
        data["certificate"]["word"][0]["lambda"] = "2"
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(data))
        code, rep = run_main(["verify", str(bad)], capsys)
        assert code == 1 and "first failing check" in rep["diagnostics"][0]

    def test_missing_file(self, capsys):
        code, rep = run_main(["verify", "/nonexistent/cert.json"], capsys)
        assert code == 2 and rep["status"] == "error"

    def test_orient_flags(self, capsys):
        code, rep = run_main(["orient", "star", "--vars", "x,y", "--left", "x,y | x,y",
                              "--right", "x-1,y | x-1,y"], capsys)
        assert code == 0 and rep["certificate"]["kind"] == "sumrep"

    def test_deterministic_output(self, capsys):
        main(["chain", "-n", "3", "--seed", "4"])
        a = capsys.readouterr().out
        main(["chain", "-n", "3", "--seed", "4"])
        assert capsys.readouterr().out == a


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "obstruct", "gamma", "--point", "0;0,0;0,0", "--seed", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["certificate"]["coords"][0] == "1"
