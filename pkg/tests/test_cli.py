import io
import json
import subprocess
import sys

import pytest

from matineq import harness
from matineq.cli import EXIT_FAIL, EXIT_IO, EXIT_OK, EXIT_USAGE, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), stdout=out)
    return code, out.getvalue()


VERIFY = ("verify", "--ineq", "minkowski", "--dims", "2", "--trials", "5", "--seed", "7")


class TestList:
    def test_rows(self):
        code, out = run("list")
        assert code == EXIT_OK
        rows = [line for line in out.splitlines()[2:] if line.split()[0] in harness.REGISTRY]
        assert len(rows) >= 20


class TestVerify:
    def test_deterministic_report(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert run(*VERIFY, "--out", str(a))[0] == EXIT_OK
        assert run(*VERIFY, "--out", str(b))[0] == EXIT_OK
        assert a.read_bytes() == b.read_bytes()
        assert json.loads(a.read_text())["config"]["seed"] == 7

    def test_human_table_by_default(self):
        code, out = run(*VERIFY)
        assert code == EXIT_OK and "minkowski" in out and out.rstrip().endswith("PASS")

    def test_machine_output_only_with_format(self):
        code, out = run(*VERIFY, "--format", "json")
        assert code == EXIT_OK
        assert json.loads(out)["results"][0]["descriptor"] == "minkowski"
        code, out = run(*VERIFY, "--format", "csv")
        assert out.splitlines()[0] == ",".join(harness.CSV_HEADER)
        assert len(out.splitlines()) == 1 + 5 * 6  # five trials in each of the six profiles

    def test_dims_range_and_list(self):
        _, out = run("verify", "--ineq", "fan", "--dims", "1-3", "--trials", "1", "--format", "json")
        assert json.loads(out)["config"]["dims"] == [1, 2, 3]
        _, out = run("verify", "--ineq", "fan", "--dims", "2,4", "--trials", "1", "--format", "json")
        assert json.loads(out)["config"]["dims"] == [2, 4]

    def test_env_seed(self, monkeypatch):
        monkeypatch.setenv("MATINEQ_SEED", "11")
        _, out = run("verify", "--ineq", "fan", "--dims", "2", "--trials", "1", "--format", "json")
        assert json.loads(out)["config"]["seed"] == 11
        _, out = run("verify", "--ineq", "fan", "--dims", "2", "--trials", "1", "--seed", "3", "--format", "json")
        assert json.loads(out)["config"]["seed"] == 3

    def test_fn_and_norm(self):
        code, out = run("verify", "--ineq", "cor-reversed-ui", "--dims", "3", "--trials", "2",
                        "--fn", "pow:0.5", "--norm", "kf:2", "--format", "json")
        cfg = json.loads(out)["config"]
        assert code == EXIT_OK and cfg["fn"] == "pow:0.5" and cfg["norm"] == "kf:2"

    def test_failure_exit_code(self, monkeypatch):
        def fake_suite(*args, **kwargs):
            rep = harness.run_suite(["minkowski"], [1], ["generic"], 1)
            rep.results[0].failures = 1
            return rep
        monkeypatch.setattr("matineq.cli.run_suite", fake_suite)
        assert run("verify", "--ineq", "minkowski")[0] == EXIT_FAIL


class TestUsage:
    @pytest.mark.parametrize("argv", [
        ("verify", "--bogus"),
        ("verify", "--ineq", "nope"),
        ("verify", "--profiles", "weird"),
        ("verify", "--dims", "0"),
        ("verify", "--dims", "a-b"),
        ("verify", "--trials", "0"),
        ("verify", "--tol", "-1"),
        ("verify", "--fn", "cube"),
        ("verify", "--norm", "kf:0"),
        ("verify", "--format", "xml"),
        ("replay", "--ineq", "fan", "--dim", "2"),
        ("frobnicate",),
        (),
    ])
    def test_exit_2(self, argv):
        assert run(*argv)[0] == EXIT_USAGE

    def test_bad_env_seed(self, monkeypatch):
        monkeypatch.setenv("MATINEQ_SEED", "x")
        assert run(*VERIFY[:-2])[0] == EXIT_USAGE


class TestIO:
    def test_unwritable_out(self, tmp_path):
        target = tmp_path / "missing" / "r.json"
        assert run(*VERIFY, "--out", str(target))[0] == EXIT_IO


class TestReplay:
    def test_matches_suite(self):
        code, out = run(*VERIFY, "--format", "csv")
        row = out.splitlines()[1].split(",")
        code, text = run("replay", "--ineq", "minkowski", "--dim", "2", "--profile", row[2],
                         "--seed", row[3], "--format", "csv")
        assert code == EXIT_OK
        assert text.splitlines()[1].split(",")[4:] == row[4:]

    def test_human_output(self):
        code, out = run("replay", "--ineq", "fan", "--dim", "3", "--profile", "generic", "--seed", "1")
        assert code == EXIT_OK and "status:" in out


class TestDemo:
    def test_all_pass(self):
        code, out = run("demo")
        assert code == EXIT_OK
        assert "FAIL" not in out

    def test_json(self):
        code, out = run("demo", "--format", "json")
        obj = json.loads(out)
        assert obj["ok"] and any(r["name"].lower().startswith("haynsworth") for r in obj["fixtures"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "matineq", "list"], capture_output=True, text=True)
    assert proc.returncode == 0 and "minkowski" in proc.stdout
