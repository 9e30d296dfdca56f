from __future__ import annotations

import csv
import io
import json

import pytest

from quadtile.cli import main


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_f36_rational(capsys):
    code, out, _ = run(capsys, "classify", "--f", "36", "--branch", "rational")
    assert code == 0
    recs = json.loads(out)
    by_tiling = {r["tiling"]: r for r in recs}
    assert {"S5", "S6"} <= set(by_tiling)
    s5 = by_tiling["S5"]
    assert s5["angles_pi"] == {"alpha": "4/9", "beta": "7/9", "gamma": "1/3", "delta": "5/9"}
    assert s5["counting_feasible"] is True
    assert s5["realization"]["realizable"] is True
    assert float(s5["realization"]["closure_residual"]) < 1e-9


def test_classify_f20_infeasible(capsys):
    code, out, _ = run(capsys, "classify", "--f", "20", "--branch", "rational")
    assert code == 0
    plain = [r for r in json.loads(out) if r["branch"] == "rational"]
    assert plain and all(r["counting_feasible"] is False for r in plain)


def test_classify_f6(capsys):
    code, out, _ = run(capsys, "classify", "--f", "6")
    assert code == 0
    (rec,) = json.loads(out)
    assert sorted(rec["avc"]) == sorted(["αγδ", "β³"])
    assert rec["realization"]["realizable"] is True


def test_batching_does_not_change_output(capsys):
    _, both, _ = run(capsys, "classify", "--f", "8,10")
    _, a, _ = run(capsys, "classify", "--f", "8")
    _, b, _ = run(capsys, "classify", "--f", "10")
    assert json.loads(both) == json.loads(a) + json.loads(b)
    _, ranged, _ = run(capsys, "classify", "--f", "8..10")
    assert ranged == both


def test_generate_then_verify(capsys, tmp_path):
    path = tmp_path / "e6.json"
    assert run(capsys, "generate", "--family", "E", "--f", "6", "--out", str(path))[0] == 0
    code, out, _ = run(capsys, "verify", "--tiling", str(path), "--avc", "agd,b3")
    assert code == 0
    assert out.startswith("PASS")
    assert "6 αγδ, 2 β³" in out


def test_verify_failures(capsys, tmp_path):
    path = tmp_path / "e8.json"
    run(capsys, "generate", "--family", "E", "--f", "8", "--out", str(path))
    code, out, _ = run(capsys, "verify", "--tiling", str(path), "--avc", "agd,b3")
    assert code == 1 and out.startswith("FAIL")
    broken = tmp_path / "broken.json"
    broken.write_text("{}")
    assert run(capsys, "verify", "--tiling", str(broken))[0] == 1
    code, _, err = run(capsys, "verify", "--tiling", str(tmp_path / "missing.json"))
    assert code == 2 and "cannot read" in err


@pytest.mark.parametrize(
    "argv",
    [
        ("generate", "--family", "Ep", "--f", "12", "--flip", "2@0,2,4"),
        ("generate", "--family", "Epp", "--f", "18", "--flip", "4@0,4"),
        ("generate", "--family", "Eppp", "--f", "16"),
        ("generate", "--family", "E", "--f", "10", "--kind", "a2bc"),
        ("generate", "--family", "fixture:S5"),
    ],
)
def test_generated_documents_verify(capsys, tmp_path, argv):
    path = tmp_path / "m.json"
    assert run(capsys, *argv, "--out", str(path))[0] == 0
    assert run(capsys, "verify", "--tiling", str(path))[0] == 0


def test_tables_s4_row(capsys):
    code, out, _ = run(capsys, "tables")
    assert code == 0
    rows = [r for r in csv.DictReader(io.StringIO(out)) if r["name"] == "S4"]
    by_q = {r["quantity"]: r for r in rows}
    assert by_q["a"]["exact_pi"] == "1/4"
    assert abs(float(by_q["b"]["value_pi"]) - 0.35) < 5e-3
    assert by_q["b"]["approx_pi"] == "0.35"
    assert all(float(r["closure"]) < 1e-9 for r in rows)


def test_tables_json_matches_csv(capsys):
    _, text, _ = run(capsys, "tables")
    _, js, _ = run(capsys, "tables", "--format", "json")
    assert json.loads(js) == list(csv.DictReader(io.StringIO(text)))


def test_realize(capsys):
    code, out, _ = run(capsys, "realize", "--angles", "4/9,7/9,1/3,5/9")
    assert code == 0
    rec = json.loads(out)
    assert rec["simple"] is True
    code, _, err = run(capsys, "realize", "--angles", "1/2,1/2,1/2,1/2")
    assert code == 1 and err.startswith("not realizable:")
    assert run(capsys, "realize", "--angles", "1/2,1/2")[0] == 2


def test_render(capsys, tmp_path):
    src, svg = tmp_path / "m.json", tmp_path / "m.svg"
    run(capsys, "generate", "--family", "fixture:QP6", "--out", str(src))
    assert run(capsys, "render", "--tiling", str(src), "--out", str(svg))[0] == 0
    assert svg.read_text().startswith("<svg")


def test_usage_errors(capsys):
    assert run(capsys, "classify", "--f", "7")[0] == 2
    assert run(capsys, "classify", "--f", "x")[0] == 2
    assert run(capsys, "generate", "--family", "Nope", "--f", "8")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


@pytest.mark.parametrize("value", ["5", "0", "-1e-9", "abc"])
def test_tolerance_from_environment_is_validated(capsys, monkeypatch, value):
    monkeypatch.setenv("QUADTILE_TOL", value)
    code, _, err = run(capsys, "classify", "--f", "8")
    assert code == 2 and "quadtile: error:" in err


def test_tolerance_flag(capsys, monkeypatch):
    monkeypatch.setenv("QUADTILE_TOL", "1e-10")
    assert run(capsys, "realize", "--angles", "4/9,7/9,1/3,5/9")[0] == 0
    assert run(capsys, "realize", "--angles", "4/9,7/9,1/3,5/9", "--tol", "0.5")[0] == 2


def test_output_is_deterministic(capsys):
    first = run(capsys, "classify", "--f", "16")[1]
    assert run(capsys, "classify", "--f", "16")[1] == first
    assert run(capsys, "tables", "--f", "12")[1] == run(capsys, "tables", "--f", "12")[1]
