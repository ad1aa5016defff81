import csv
import json
import subprocess
import sys

import pytest

from regwide.cli import main, parse_roots


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_roots():
    assert parse_roots("") == []
    assert parse_roots("[1,0];[1,1]") == [[1, 0], [1, 1]]
    assert parse_roots("[[1,0],[0,1]]") == [[1, 0], [0, 1]]


@pytest.mark.parametrize("roots,expected", [
    ("[1,0];[1,1]", "Wide"),
    ("", "Narrow"),
    ("[1,0];[0,1];[1,1];[-1,0];[0,-1];[-1,-1]", "Wide"),
])
def test_classify_examples(capsys, roots, expected):
    code, out, _ = run(capsys, "classify", "--type", "A", "--rank", "2", "--roots", roots)
    assert code == 0
    assert json.loads(out)["verdicts"][0]["classification"] == expected


def test_classify_verify_and_report_fields(capsys):
    code, out, _ = run(capsys, "classify", "--type", "A", "--rank", "2", "--roots", "[1,0]", "--verify")
    rep = json.loads(out)
    assert code == 0
    assert set(rep) >= {"tool_version", "root_system", "inputs", "verdicts", "oracle_failures", "timing"}
    assert rep["timing"] == {} and rep["oracle_failures"] == []
    assert rep["verdicts"][0]["oracle_agreement"] is True


def test_classify_non_type_a_uses_adjoint(capsys):
    code, out, _ = run(capsys, "classify", "--type", "B", "--rank", "2", "--roots", "[1,0]", "--verify")
    rep = json.loads(out)
    assert code == 0 and rep["inputs"]["adjoint_only"]
    assert rep["verdicts"][0]["classification"] == "Narrow"


def test_input_errors(capsys):
    assert run(capsys, "classify", "--type", "A", "--rank", "2", "--roots", "[1,0];[0,1]")[0] == 2
    assert run(capsys, "classify", "--type", "A", "--rank", "2", "--roots", "[1,0")[0] == 2
    assert run(capsys, "classify", "--type", "A", "--rank", "2", "--roots", "[2,0]")[0] == 2
    assert run(capsys, "rootsys", "--type", "E", "--rank", "6")[0] == 2
    assert run(capsys, "fflv", "--rank", "2", "--lambda", "1,-1")[0] == 2
    code, _, err = run(capsys, "classify", "--type", "A", "--rank", "2", "--roots", "[1,0]", "--lambda", "1")
    assert code == 2 and "coordinates" in err


def test_cap_exit(capsys, monkeypatch):
    monkeypatch.setenv("REGWIDE_MAX_DIM", "3")
    code, _, err = run(capsys, "classify", "--type", "A", "--rank", "2", "--roots", "", "--verify")
    assert code == 3 and "cap" in err


def test_census_a1(capsys):
    code, out, _ = run(capsys, "census", "--type", "A", "--rank", "1")
    rep = json.loads(out)
    assert code == 0
    assert rep["census"]["closed_subsets"] == 4
    got = {json.dumps(v["subalgebra"]["T"]): v["classification"] for v in rep["verdicts"]}
    assert got == {"[]": "Narrow", "[[-1]]": "Wide", "[[1]]": "Wide", "[[-1], [1]]": "Wide"}


def test_census_files_resume_and_jobs(capsys, tmp_path):
    out = tmp_path / "run"
    code, first, _ = run(capsys, "census", "--type", "A", "--rank", "2", "--verify", "--out", str(out))
    assert code == 0
    rep = json.loads(first)
    assert rep["census"]["closed_subsets"] == 29 and rep["census"]["conjugacy_classes"] == 9
    assert rep["oracle_failures"] == []
    lines = (out / "census.jsonl").read_text().splitlines()
    assert len(lines) == 29
    rows = list(csv.reader((out / "summary.csv").open()))
    assert rows[0][0] == "index" and len(rows) == 30
    code, second, _ = run(capsys, "census", "--type", "A", "--rank", "2", "--verify", "--out", str(out), "--resume")
    assert json.loads(second)["census"]["resumed"] == 29
    parallel = tmp_path / "par"
    code, third, _ = run(capsys, "census", "--type", "A", "--rank", "2", "--verify", "--jobs", "2", "--out", str(parallel))
    assert (parallel / "census.jsonl").read_text() == (out / "census.jsonl").read_text()
    assert json.loads(third)["verdicts"] == rep["verdicts"]


def test_census_adjoint_only_g2(capsys):
    code, out, _ = run(capsys, "census", "--type", "G", "--rank", "2", "--adjoint-only", "--verify")
    rep = json.loads(out)
    assert code == 0 and rep["oracle_failures"] == []
    assert rep["census"]["closed_subsets"] == 168


def test_report_byte_stable(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run(capsys, "classify", "--type", "A", "--rank", "2", "--roots", "[1,0]", "--verify", "--out", str(a))
    run(capsys, "classify", "--type", "A", "--rank", "2", "--roots", "[1,0]", "--verify", "--out", str(b))
    assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()


def test_timing_flag(capsys):
    _, out, _ = run(capsys, "fflv", "--rank", "2", "--lambda", "1,1", "--timing")
    assert "enumerate" in json.loads(out)["timing"]


@pytest.mark.parametrize("n,lam,size", [("2", "1,1", 8), ("1", "3", 4), ("2", "0,0", 1)])
def test_fflv(capsys, n, lam, size):
    code, out, _ = run(capsys, "fflv", "--rank", n, "--lambda", lam)
    f = json.loads(out)["fflv"]
    assert code == 0 and f["size"] == size and f["check"] == "PASS"


def test_rootsys_and_enumerate(capsys):
    code, out, _ = run(capsys, "rootsys", "--type", "G", "--rank", "2")
    assert code == 0 and len(json.loads(out)["roots"]) == 12
    code, out, _ = run(capsys, "enumerate", "--type", "A", "--rank", "2")
    assert code == 0 and len(out.splitlines()) == 29


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "regwide", "fflv", "--rank", "1", "--lambda", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["fflv"]["size"] == 3
