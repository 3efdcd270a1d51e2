import csv
import dataclasses
import io
import json
import subprocess
import sys
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from collostab.cli import main
from collostab.collocation import method_from_nodes
from collostab.worked_examples import FIXTURES, run_fixture_suite
from collostab.report import ReportDocument, build_document
from collostab.stability import classify

from conftest import node_sets


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_analyze_lobatto_json():
    code, text = run("analyze", "--nodes", "0,1", "--format", "json")
    assert code == 0
    doc = json.loads(text)
    assert doc["schema_version"] == "1"
    assert doc["verdicts"]["A_hat"]["holds"]
    assert doc["stability_function"]["text"] == "(-λ - 2)/(λ - 2)"
    assert doc["method"]["tableau"]["A"] == [["0", "0"], ["1/2", "1/2"]]
    assert doc["method"]["chi_A"] == ["0", "-1/2", "1"]


def test_analyze_gauss_and_not_a():
    code, text = run("analyze", "--gauss", "2", "--format", "json")
    doc = json.loads(text)
    assert code == 0 and doc["verdicts"]["A_hat"]["criterion"] == "gauss-theorem"
    code, text = run("analyze", "--nodes", "1/4,1/3", "--format", "json")
    doc = json.loads(text)
    assert code == 0 and not doc["verdicts"]["A"]["holds"] and not doc["verdicts"]["I"]["holds"]


@pytest.mark.parametrize(
    "argv",
    [
        ("analyze", "--nodes", "1/2,1/2"),
        ("analyze", "--nodes", "1/2,zz"),
        ("analyze",),
        ("analyze", "--gauss", "0"),
        ("analyze", "--pi", "1,0,1"),
        ("analyze", "--nodes", "0,1", "--gauss", "2"),
        ("sample-R", "--nodes", "0,1", "--num", "1"),
        ("sample-R", "--nodes", "0,1", "--xmin", "2", "--xmax", "1"),
        ("analyze", "--nodes", "0,1", "--dahlquist", "1,2"),
        ("bogus",),
    ],
)
def test_input_errors_exit_2(argv, capsys):
    code, _ = run(*argv)
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_text_and_json_agree():
    for nodes in ("0,1", "1/4,1/3", "1/4,1/3,1/2,2/3,3/4"):
        _, text = run("analyze", "--nodes", nodes)
        _, js = run("analyze", "--nodes", nodes, "--format", "json")
        doc = json.loads(js)
        for k, v in doc["verdicts"].items():
            line = next(ln for ln in text.splitlines() if ln.strip().startswith(k + " "))
            assert ("yes" in line.split()[1]) == v["holds"]


def test_json_roundtrip_with_samples_and_checks():
    code, js = run("analyze", "--pi=-9/448,27/112,-247/224,269/112,-5/2,1", "--format", "json",
                   "--num", "5", "--laplace", "--dahlquist=-1,0,0.5,20")
    assert code == 0
    doc = ReportDocument.from_json(js)
    assert ReportDocument.from_json(doc.to_json()) == doc
    assert doc.checks["dahlquist_deviation"] < 1e-10 and doc.checks["laplace_deviation"] < 1e-12
    assert not doc.verdicts["AS"]["exact"]
    assert doc.method["nodes"][1] == "1/2 - 1/14*sqrt(7)"


@settings(max_examples=15)
@given(node_sets(max_size=4))
def test_roundtrip_property(nodes):
    doc = build_document(classify(method_from_nodes(nodes)))
    assert ReportDocument.from_json(doc.to_json()) == doc
    # exact values never leak out as floats
    for row in doc.method["tableau"]["A"]:
        assert all(isinstance(v, str) for v in row)
    assert all(F(c) is not None for c in doc.method["pi"])


def test_wrong_schema_rejected():
    with pytest.raises(ValueError):
        ReportDocument.from_json('{"schema_version": "0"}')


def test_tableau_command():
    code, text = run("tableau", "--nodes", "0,1/3,2/3,1")
    assert code == 0
    lines = text.splitlines()
    assert lines[1].split("|")[1].split() == ["1/8", "19/72", "-5/72", "1/72"]
    assert lines[-1].split("|")[1].split() == ["1/8", "3/8", "3/8", "1/8"]
    code, text = run("tableau", "--nodes", "1/2", "--format", "json")
    assert json.loads(text)["A"] == [["1/2"]] and json.loads(text)["b"] == ["1"]
    code, text = run("tableau", "--nodes", "1/4,1/3", "--format", "json")
    assert json.loads(text)["b"] == ["-2", "3"]


def test_sample_R_csv():
    code, text = run("sample-R", "--nodes", "1/3,2/3", "--xmin", "-4", "--xmax", "4", "--num", "9")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["x", "abs_R", "deficit"]
    xs = [float(r[0]) for r in rows[1:]]
    assert xs == sorted(xs) and len(xs) == 9
    assert all(abs(float(r[1]) - 1) < 1e-12 for r in rows[1:])
    code, text = run("sample-R", "--nodes", "1/4,1/3", "--xmin", "-2", "--xmax", "2", "--num", "5")
    rows = list(csv.reader(io.StringIO(text)))[1:]
    assert any(float(r[1]) > 1 for r in rows)
    assert float(rows[2][0]) == 0.0 and float(rows[2][1]) == 1.0


def test_sample_R_to_file(tmp_path):
    out = tmp_path / "r.csv"
    code, _ = run("sample-R", "--gauss", "3", "--num", "3", "-o", str(out))
    assert code == 0 and out.read_text().startswith("x,abs_R,deficit\n")


def test_batch_preserves_order(tmp_path):
    f = tmp_path / "batch.txt"
    specs = ["--nodes 1/4,1/3", "--gauss 3", "# comment", "--nodes 0,1 --force-full", "--uniform-open 3"]
    f.write_text("\n".join(specs) + "\n")
    code, js = run("analyze", "--batch", str(f), "--format", "json", "--workers", "2")
    assert code == 0
    out = json.loads(js)
    assert [r["input"] for r in out["batch"]] == [s for s in specs if not s.startswith("#")]
    assert [r["document"]["verdicts"]["A"]["holds"] for r in out["batch"]] == [False, True, True, True]
    assert out["batch"][2]["document"]["verdicts"]["A"]["criterion"] == "full-decision"


def test_batch_bad_line_exit_2(tmp_path):
    f = tmp_path / "batch.txt"
    f.write_text("--nodes 0,1\n--nodes 1,1\n")
    code, _ = run("analyze", "--batch", str(f))
    assert code == 2


def test_verify_paper_passes():
    code, text = run("verify-paper")
    assert code == 0 and "7/7 fixtures passed" in text


def test_mutated_fixture_fails():
    fx = next(f for f in FIXTURES if f.name.startswith("uniform-4"))
    A, b = fx.tableau
    A = (A[0], (F(1, 8), F(19, 72), F(-5, 72), F(1, 71)), A[2], A[3])
    bad = dataclasses.replace(fx, tableau=(A, b))
    (res,) = run_fixture_suite([bad])
    assert not res.ok and "tableau A differs" in res.failures
    fx = next(f for f in FIXTURES if f.name.startswith("I-not-A"))
    bad = dataclasses.replace(fx, char_poly=(34560, (-6, 71, -642, 4164, -17280, 34561)))
    (res,) = run_fixture_suite([bad])
    assert not res.ok


def test_verify_paper_exit_1_on_failure(monkeypatch):
    import collostab.cli as cli

    fx = FIXTURES[0]
    broken = dataclasses.replace(fx, verdicts={"A": False})
    monkeypatch.setattr(cli, "run_fixture_suite", lambda: run_fixture_suite([broken]))
    code, text = run("verify-paper")
    assert code == 1 and "FAIL" in text


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "collostab.cli", "analyze", "--nodes", "1/2,1/2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2
    proc = subprocess.run([sys.executable, "-m", "collostab.cli", "verify-paper"], capture_output=True, text=True)
    assert proc.returncode == 0
