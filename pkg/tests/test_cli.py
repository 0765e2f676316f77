from __future__ import annotations

import json

import pytest

from kcompletion.cli import emit_report, main, parse_datum_file, run_command
from kcompletion.report import VerificationReport
from kcompletion.rootdatum import datum_from_preset


def test_tau_command():
    code, rep = run_command(["tau", "--preset", "SL2", "--q", "1/4", "--weight", "1", "--order", "3"])
    assert code == 0
    assert rep["result"]["tau"] == "2*z4*t + 1/3*z4*t^3"
    assert rep["schema"] == 1


def test_char_command():
    code, rep = run_command(["char", "--preset", "SL2", "--weight", "0"])
    assert code == 0 and rep["result"]["character"] == "1"


def test_verify_reciprocity():
    code, rep = run_command(["verify", "--preset", "SL2", "--suite", "reciprocity", "--height", "3"])
    assert code == 0
    suite = rep["result"]["suites"][0]
    assert suite["status"] == "PASS" and suite["n_cases"] >= 30
    assert b"[   0] ok" in emit_report(rep, "text")


def test_other_verbs():
    assert run_command(["push", "--preset", "SL2", "--poly", "x^-1"])[1]["result"]["pushforward"] == "x^-1 + x"
    assert run_command(["ind", "--preset", "SL2", "--weight", "2"])[1]["result"]["induced"] == "x^-2 + x^2"
    code, rep = run_command(["res", "--preset", "SL3", "--sub", "levi:0", "--weight", "1,0"])
    assert code == 0 and rep["result"]["restricted"] == "x1^-1*x2 + x2^-1 + x1"
    code, rep = run_command(["info", "--preset", "G2"])
    assert code == 0 and rep["result"]["weyl_order"] == 12


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate", "--preset", "SL2"],
        ["char", "--preset", "E8", "--weight", "0"],
        ["char", "--preset", "SL2", "--weight", "-1"],
        ["char", "--preset", "SL2", "--weight", "1,2"],
        ["tau", "--preset", "SL2", "--q", "x", "--weight", "1"],
        ["ind", "--preset", "SL3", "--sub", "levi:1", "--poly", "x2"],
        ["ind", "--preset", "SL3", "--sub", "levi:7", "--weight", "1,0"],
        ["verify", "--preset", "SL2", "--suite", "nonsense"],
    ],
)
def test_usage_errors_exit_2(argv):
    code, rep = run_command(argv)
    assert code == 2 and "error" in rep


def test_empty_suite_is_vacuous_pass():
    code, rep = run_command(["verify", "--preset", "SL2", "--suite", "reciprocity", "--height", "-1"])
    assert code == 0
    assert b"0 cases, PASS (vacuous)" in emit_report(rep, "text")


def test_inconclusive_exits_3():
    code, rep = run_command(["verify", "--preset", "SL2", "--suite", "crt", "--box", "1"])
    assert code == 3


def test_json_is_deterministic_and_matches_text():
    argv = ["verify", "--preset", "GL2", "--suite", "crt,indres,graded_iso", "--format", "json"]
    a = emit_report(run_command(argv)[1], "json")
    b = emit_report(run_command(argv)[1], "json")
    assert a == b
    doc = json.loads(a)
    text = emit_report(run_command(argv[:-2])[1], "text").decode()
    for suite in doc["result"]["suites"]:
        assert f"{suite['n_cases']} cases, {suite['n_failed']} failed, {suite['status']}" in text


def test_timing_is_opt_in():
    assert "duration_s" not in run_command(["info", "--preset", "SL2"])[1]
    assert "duration_s" in run_command(["info", "--preset", "SL2", "--timing"])[1]


def test_failing_case_shows_both_sides():
    rep = VerificationReport("demo")
    rep.add({"a": "x"}, "x + 1", "x")
    text = rep.render_text(verbose=False)
    assert "FAIL" in text and "lhs: x + 1" in text and "rhs: x" in text
    again = VerificationReport.from_json(json.loads(json.dumps(rep.to_json())))
    assert again.to_json() == rep.to_json()


def write(tmp_path, doc, name="d.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


def test_datum_file_roundtrip(tmp_path):
    d = datum_from_preset("SL2")
    assert parse_datum_file(write(tmp_path, d.to_json())) == d


def test_gl3_file_is_accepted(tmp_path):
    d = parse_datum_file(write(tmp_path, datum_from_preset("GL3").to_json()))
    assert d.simply_connected_commutator
    code, rep = run_command(["info", "--file", write(tmp_path, d.to_json(), "g.json")])
    assert code == 0


def test_bad_pairing_file_names_axiom(tmp_path):
    doc = {"name": "bad", "rank": 1, "roots": [[3], [-3]], "coroots": [[1], [-1]], "simple_indices": [0]}
    code, rep = run_command(["info", "--file", write(tmp_path, doc)])
    assert code == 2
    assert any("pairing" in p for p in rep["error"]["problems"])


def test_malformed_file_reports_line(tmp_path):
    code, rep = run_command(["info", "--file", write(tmp_path, '{"name": "x",\n "rank": 1,\n roots: []}')])
    assert code == 2 and rep["error"]["problems"][0].startswith("line 3")
    doc = {"name": "x", "rank": 1, "roots": [[2], [-2]]}
    code, rep = run_command(["info", "--file", write(tmp_path, doc)])
    assert code == 2 and rep["error"]["problems"] == ["field 'coroots': missing", "field 'simple_indices': missing"]


def test_main_writes_report(capsys):
    assert main(["char", "--preset", "SL3", "--weight", "1,1", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"]["dimension"] == "8"
