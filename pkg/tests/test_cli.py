import json
from pathlib import Path

import pytest

from newtonhodge import cli
from newtonhodge.errors import InconsistentError

GOLDEN = Path(__file__).parent / "golden"
CASES = {
    "A": (["--ambient", "torus", "--n", "1"], {"jordan": ["--all"], "hodge": ["--all", "--refined"]}),
    "B": (["--ambient", "affine", "--n", "1"], {"jordan": ["--all"], "hodge": ["--all"]}),
}


def invoke(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(CASES))
@pytest.mark.parametrize("command", ["analyze", "jordan", "multiplicity", "hodge"])
def test_golden_documents(capsys, monkeypatch, name, command):
    monkeypatch.chdir(GOLDEN)
    flags, extra = CASES[name]
    code, out, _ = invoke(capsys, command, *extra.get(command, []), *flags, "--poly", f"{name}.txt")
    assert code == 0
    expected = json.loads((GOLDEN / f"{name}_{command}.json").read_text())
    assert json.loads(out) == expected


def test_analyze_fields(capsys):
    code, out, _ = invoke(capsys, "analyze", "--n", "1", "--expr", "1 - t*x1^3")
    doc = json.loads(out)
    assert code == 0 and doc["schema_version"] == cli.SCHEMA_VERSION
    assert doc["newton"]["R_f"] == [1]
    assert doc["newton"]["spectrum"] == ["0/1", "1/3", "2/3"]
    assert sorted(c["m_F"] for c in doc["newton"]["cells"]) == [1, 1, 3]
    assert json.loads(json.dumps(doc)) == doc


def test_jordan_single_lambda(capsys):
    code, out, _ = invoke(capsys, "jordan", "--lambda", "1/3", "--n", "1", "--expr", "1 - t*x1^3")
    row = json.loads(out)["jordan"][0]
    assert code == 0 and row["agree"] and row["via_E"] == row["via_formula"] == {"1": 1}


def test_multiplicity_text(capsys):
    code, out, _ = invoke(capsys, "multiplicity", "--ambient", "affine", "--n", "1", "--expr", "x1^2 - t")
    assert code == 0 and json.loads(out)["multiplicity"]["text"] == "(t^2-1)^1"


@pytest.mark.parametrize("argv, status, message", [
    (["analyze", "--ambient", "affine", "--n", "1", "--expr", "x1^-1"], 2, "E_NEGATIVE_EXPONENT"),
    (["analyze", "--n", "1", "--expr", "1 + * x1"], 2, "E_SYNTAX"),
    (["analyze", "--n", "1", "--expr", "x1"], 3, "E_DEGENERATE"),
    (["jordan", "--lambda", "0/1", "--n", "1", "--expr", "1 - t*x1^3"], 4, "R_f"),
    (["hodge", "--lambda", "1+i", "--n", "1", "--expr", "1 - t*x1^3"], 4, "E_BAD_LAMBDA"),
])
def test_exit_codes(capsys, argv, status, message):
    code, out, err = invoke(capsys, *argv)
    assert code == status
    assert message in err
    assert "assumption:" in err
    assert out == ""


def test_internal_failure_exits_five(capsys, monkeypatch):
    def broken(*args):
        raise InconsistentError("forced")
    monkeypatch.setattr(cli, "jordan_via_formula", broken)
    code, _, err = invoke(capsys, "jordan", "--lambda", "1/3", "--n", "1", "--expr", "1 - t*x1^3")
    assert code == 5 and "E_INCONSISTENT" in err


def test_table_output(capsys):
    code, out, _ = invoke(capsys, "jordan", "--all", "--output", "table", "--n", "1", "--expr", "1 - t*x1^3")
    assert code == 0
    assert "1/3" in out and "2/3" in out


def test_json_input(capsys, tmp_path):
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"n": 1, "ambient": "affine",
                                "terms": [{"exp": [2], "coeff": [[0, "1"]]}, {"exp": [0], "coeff": [[1, "-1"]]}]}))
    code, out, _ = invoke(capsys, "multiplicity", "--json", str(path))
    assert code == 0 and json.loads(out)["multiplicity"]["text"] == "(t^2-1)^1"


def test_complete_intersection_input(capsys, tmp_path):
    (tmp_path / "g.txt").write_text("x1 + x2 + 1")
    code, out, _ = invoke(capsys, "jordan", "--all", "--n", "2",
                          "--expr", "x1^2 + x2^2 + x1^-2*x2^-2 + t^-1", "--ci", str(tmp_path / "g.txt"))
    doc = json.loads(out)
    assert code == 0
    assert all(row["agree"] for row in doc["jordan"])


def test_selfcheck_on_instance(capsys):
    code, out, _ = invoke(capsys, "selfcheck", "--n", "1", "--expr", "1 - t*x1^3")
    doc = json.loads(out)
    assert code == 0 and doc["selfcheck"]["passed"]


def test_selfcheck_random_and_fault(capsys):
    code, out, _ = invoke(capsys, "selfcheck", "--seed", "3", "--random", "3")
    assert code == 0 and json.loads(out)["selfcheck"]["passed"]
    code, out, _ = invoke(capsys, "selfcheck", "--inject-fault", "--n", "2",
                          "--expr", "x1^2 + x2^2 + x1^-2*x2^-2 + t^-1")
    assert code == 0
    assert json.loads(out)["selfcheck"]["runs"][0]["fault_injection"]["detected"] is True
