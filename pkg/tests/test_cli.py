import json
import subprocess
import sys

import pytest

from springer_lab import cli
from springer_lab.report import SCHEMA, SuiteReport, check, finding


def load(path):
    data = json.loads(path.read_text())
    data.pop("run_info")
    return data


def run(tmp_path, *argv):
    return cli.run(["--out", str(tmp_path), *argv])


# -- exit codes -----------------------------------------------------------------


def test_tableaux_lists_components(tmp_path, capsys):
    assert run(tmp_path, "tableaux", "--type", "A", "--n", "4", "--r", "1") == 0
    out = capsys.readouterr().out
    assert out.count("second column") == 3
    data = json.loads((tmp_path / "tableaux.json").read_text())
    assert data["schema"] == SCHEMA and len(data["checks"]) == 3


def test_fiber_classify(tmp_path, capsys):
    assert run(tmp_path, "fiber", "--type", "A", "--n", "3", "--r", "1", "--p", "2", "--classify", "--samples", "1") == 0
    data = json.loads((tmp_path / "fiber.json").read_text())
    counts = [c["detail"]["count"] for c in data["checks"] if c["name"].startswith("class")]
    assert sorted(counts) == [2, 3]
    assert "fiber count: 5" in capsys.readouterr().out


def test_fiber_type_d(tmp_path):
    assert run(tmp_path, "fiber", "--type", "D", "--n", "2", "--r", "1", "--p", "3", "--classify") == 0
    data = json.loads((tmp_path / "fiber.json").read_text())
    assert data["parameters"]["omega"]


@pytest.mark.parametrize("argv", [
    ["verify", "--suite", "vertical-tiles", "--type", "D", "--n", "3", "--r", "1"],
    ["verify", "--suite", "coro-comp", "--type", "A", "--n", "4", "--r", "1"],
    ["verify", "--suite", "descrip", "--type", "D", "--n", "2", "--r", "1"],
    ["verify", "--suite", "fibration", "--type", "A", "--n", "4", "--r", "2"],
    ["verify", "--suite", "subword", "--type", "A", "--n", "4", "--r", "1"],
    ["verify", "--suite", "birational", "--type", "A", "--n", "4", "--r", "2", "--primes", "2,3,5,7"],
])
def test_suites_pass(tmp_path, argv):
    assert run(tmp_path, *argv) == 0


@pytest.mark.parametrize("argv", [
    ["verify", "--suite", "descrip", "--type", "A", "--n", "3", "--r", "1"],
    ["verify", "--suite", "coro-comp", "--type", "D", "--n", "3", "--r", "2"],
    ["verify", "--suite", "coro-comp", "--type", "D", "--n", "2", "--r", "1", "--primes", "2,3"],
    ["verify", "--suite", "coro-comp", "--type", "A", "--n", "3", "--r", "1", "--primes", "4"],
    ["fiber", "--type", "A", "--n", "3", "--r", "2", "--p", "2"],
    ["pointcount", "--target", "component:9", "--type", "A", "--n", "3", "--r", "1"],
    ["pointcount", "--target", "bogus", "--type", "A", "--n", "3", "--r", "1"],
    ["words", "--n", "4", "--r", "1", "--tableau", "0", "--primes", "2,3", "--holdout", "3"],
])
def test_usage_errors_exit_two(tmp_path, argv):
    assert run(tmp_path, *argv) == 2


def test_argparse_errors_exit_two(tmp_path):
    with pytest.raises(SystemExit) as exc:
        run(tmp_path, "verify", "--suite", "nope", "--n", "3", "--r", "1")
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.run(["--jobs", "0", "tableaux", "--n", "2", "--r", "1"])
    assert exc.value.code == 2


def test_failure_exits_one(tmp_path):
    # the reducible F_w at n = 5 has no Bruhat maximum
    assert run(tmp_path, "words", "--n", "5", "--r", "2", "--tableau", "3") == 1
    data = json.loads((tmp_path / "words.json").read_text())
    assert data["passed"] is False


# -- pointcount and words ---------------------------------------------------------


def test_pointcount_fiber(tmp_path, capsys):
    assert run(tmp_path, "pointcount", "--target", "fiber", "--type", "A", "--n", "4", "--r", "2",
               "--primes", "2,3,5", "--holdout", "7") == 0
    assert "1 + 3q + 2q^2" in capsys.readouterr().out
    rows = (tmp_path / "pointcount.csv").read_text().splitlines()
    assert rows[0] == "label,prime,count" and rows[1] == "fiber,2,15"


def test_pointcount_all_xhat(tmp_path):
    assert run(tmp_path, "pointcount", "--target", "xhat", "--type", "A", "--n", "4", "--r", "1",
               "--primes", "2,3,5,7", "--holdout", "11") == 0
    data = json.loads((tmp_path / "pointcount.json").read_text())
    assert len(data["parameters"]["targets"]) == 3


def test_words(tmp_path, capsys):
    assert run(tmp_path, "words", "--n", "4", "--r", "1", "--tableau", "2") == 0
    out = capsys.readouterr().out
    assert "w = [3, 2, 1, 4]" in out and "(2,3,1,2,1)" in out


# -- reports --------------------------------------------------------------------


def test_reports_are_deterministic_modulo_run_info(tmp_path):
    argv = ["verify", "--suite", "coro-comp", "--type", "A", "--n", "4", "--r", "2"]
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(a, *argv) == 0 and run(b, *argv) == 0
    assert load(a / "verify-coro-comp.json") == load(b / "verify-coro-comp.json")
    assert "timestamp" in json.loads((a / "verify-coro-comp.json").read_text())["run_info"]


def test_jobs_do_not_change_report(tmp_path):
    argv = ["verify", "--suite", "fibration", "--type", "A", "--n", "4", "--r", "1", "--primes", "2,3"]
    a, b = tmp_path / "a", tmp_path / "b"
    assert cli.run(["--out", str(a), "--jobs", "1", *argv]) == 0
    assert cli.run(["--out", str(b), "--jobs", "2", *argv]) == 0
    assert load(a / "verify-fibration.json") == load(b / "verify-fibration.json")


def test_report_schema_and_statuses():
    rep = SuiteReport("x", "anchor", {"n": 1})
    rep.checks += [check("a", True), finding("b", note=1)]
    data = rep.to_json()
    assert data["schema"] == SCHEMA and data["passed"] is True
    assert [c["status"] for c in data["checks"]] == ["pass", "report"]
    rep.checks.append(check("c", False))
    assert not rep.passed and [c.name for c in rep.failures()] == ["c"]
    rep.checks.append(check("c", True))
    with pytest.raises(ValueError):
        rep.to_json()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "springer_lab", "tableaux", "--n", "3", "--r", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "second column" in proc.stdout


def test_non_polynomial_fit_is_reported_not_failed(tmp_path, capsys):
    # the flag variety of F^3 has a cubic count, above the requested degree bound
    code = run(tmp_path, "pointcount", "--target", "fiber", "--type", "A", "--n", "3", "--r", "0",
               "--primes", "2,3,5,7", "--holdout", "11", "--bound", "1")
    data = json.loads((tmp_path / "pointcount.json").read_text())
    statuses = {c["name"]: c["status"] for c in data["checks"]}
    assert code == 0 and statuses == {"fiber: integral fit": "report"}
    assert "no integer polynomial fit" in capsys.readouterr().out
