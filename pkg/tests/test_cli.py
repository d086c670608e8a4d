import json
import subprocess
from pathlib import Path

import pytest
from jsonschema import Draft202012Validator

from conftest import DATA, cli
from loctrop.cli import run
from loctrop.io import load_schema

GOLDEN = Path(__file__).parent / "golden"
OUTPUT = Draft202012Validator(load_schema("output.schema.json"))

GOLDENS = [
    ("staircase_example_paper.json", ["staircase", "example_paper.json", "--format", "json"]),
    ("staircase_example_paper_stratum1.txt", ["staircase", "example_paper.json", "--stratum", "1"]),
    ("tropvar_example_paper.json", ["tropvar", "example_paper.json", "--format", "json"]),
    ("tropvar_example_paper.svg", ["tropvar", "example_paper.json", "--format", "svg"]),
    ("lgf_example_paper_exact.json", ["lgf", "example_paper_exact.json", "--format", "json"]),
    ("tropbasis_two_lines.json", ["tropbasis", "two_lines.json", "--format", "json"]),
    ("trophyp_cusp.json", ["trophyp", "cusp.json", "--format", "json"]),
]


def _run(capsys, *argv):
    code = run([str(DATA / a) if a.endswith(".json") and "/" not in a else a for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name, argv", GOLDENS, ids=[g[0] for g in GOLDENS])
def test_golden(capsys, name, argv):
    code, out, _ = _run(capsys, *argv)
    assert code == 0
    assert out == (GOLDEN / name).read_text(encoding="utf-8")


JSON_RUNS = [
    ["staircase", "example_paper.json"],
    ["staircase", "cusp.json", "--stratum", "1"],
    ["initial", "example_paper_exact.json", "-w", "1,1"],
    ["trophyp", "example_paper.json", "--origin", "monomial-test"],
    ["tropvar", "node.json"],
    ["tropvar", "two_lines.json", "--method", "groebner"],
    ["prevariety", "two_lines.json"],
    ["stdbasis", "cusp.json", "-w", "1,2"],
    ["lgf", "unit.json"],
    ["tropbasis", "ideal_n3.json"],
    ["verify", "node.json", "--samples", "20"],
]


@pytest.mark.parametrize("argv", JSON_RUNS, ids=[" ".join(a) for a in JSON_RUNS])
def test_json_output_validates(capsys, argv):
    code, out, _ = _run(capsys, *argv, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert not list(OUTPUT.iter_errors(doc))
    assert doc["metadata"]["command"] == argv[0]


def test_worked_example_staircase_values(capsys):
    _, out, _ = _run(capsys, "staircase", "example_paper.json", "--format", "json")
    strata = {s["stratum"]: s for s in json.loads(out)["result"]["strata"]}
    assert sorted(map(json.dumps, strata["0"]["hat"])) == sorted(
        map(json.dumps, [{"c": "1", "e": [1, 1]}, {"c": "-1", "e": [2, 0]}]))
    assert strata["1"]["hat"] == [{"c": "-1", "e": [2, 0]}]
    assert strata["2"]["hat"] == [{"c": "1", "e": [1, 1]}]
    assert strata["12"]["hat"] == []


def test_unit_ideal_warning(capsys):
    code, out, err = _run(capsys, "lgf", "unit.json", "--format", "json")
    assert code == 0 and "unit ideal" in err
    doc = json.loads(out)
    assert any("unit ideal" in w for w in doc["metadata"]["warnings"])
    assert {c["verdict"] for c in doc["result"]["cones"]} == {"monomial"}
    # the origin convention keeps the origin under definition semantics only
    _, out, _ = _run(capsys, "tropvar", "unit.json", "--format", "json", "--origin", "monomial-test")
    assert json.loads(out)["result"]["cones"] == []
    _, out, _ = _run(capsys, "tropvar", "unit.json", "--format", "json")
    assert [c["dim"] for c in json.loads(out)["result"]["cones"]] == [0]


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vars": ["x"], "terms": [{"c": "1/0", "e": [1]}], "exact": true}')
    code, _, err = _run(capsys, "trophyp", str(bad))
    assert code == 1 and "bad.json" in err and "zero denominator" in err
    code, _, err = _run(capsys, "trophyp", "ideal_n3.json")
    assert code == 1 and "single series" in err
    code, _, err = _run(capsys, "tropvar", "node.json", "--method", "groebner", "--bound", "0", "--strict")
    assert code == 2 and "--strict" in err
    code, _, _ = _run(capsys, "tropvar", "node.json", "--method", "groebner", "--bound", "0")
    assert code == 0
    code, _, _ = _run(capsys, "plot", "ideal_n3.json")
    assert code == 1


def test_usage_error_exits_one():
    p = subprocess.run(cli("tropvar"), capture_output=True, text=True)
    assert p.returncode == 1 and "usage" in p.stderr


def test_output_file(capsys, tmp_path):
    target = tmp_path / "fan.svg"
    code, out, _ = _run(capsys, "plot", "cusp.json", "-o", str(target))
    assert code == 0 and out == ""
    svg = target.read_text()
    assert svg.startswith("<svg") and "(2,3)" in svg


def test_console_script_matches_module():
    a = subprocess.run(["loctrop", "trophyp", str(DATA / "cusp.json"), "--format", "json"],
                       capture_output=True, check=True).stdout
    b = subprocess.run(cli("trophyp", str(DATA / "cusp.json"), "--format", "json"),
                       capture_output=True, check=True).stdout
    assert a == b
