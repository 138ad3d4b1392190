import json

import pytest

from fanoforge.catalog import DEFAULT_PATH, ENV_VAR
from fanoforge.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_a_known_base(capsys):
    code, out, _ = call(capsys, "enumerate", "--variety", "2-34")
    assert code == 0
    assert sum(1 for line in out.splitlines() if line.startswith("| 2-34 |")) == 37


def test_enumerate_a_surface(capsys):
    code, out, _ = call(capsys, "enumerate", "--variety", "P1xP1", "--format", "csv")
    assert code == 0
    assert len(out.strip().splitlines()) == 2 + 7


def test_invariants_of_one_construction(capsys):
    code, out, _ = call(capsys, "invariants", "--variety", "3-27", "--A", "0,0,1", "--D", "1,1,1", "--format", "json")
    assert code == 0
    row = json.loads(out)["tables"][0]["rows"][0]
    assert (row["c1_4"], row["c1sq_c2"], row["h0"]) == (394, 196, 83)


def test_bad_input_exits_with_two(capsys):
    assert call(capsys, "invariants", "--variety", "9-99", "--A", "1", "--D", "0")[0] == 2
    assert call(capsys, "invariants", "--variety", "2-34", "--A", "1,x", "--D", "0,0")[0] == 2
    assert call(capsys, "invariants", "--variety", "2-34", "--A", "1", "--D", "0,0")[0] == 2
    assert call(capsys, "no-such-command")[0] == 2
    assert call(capsys, "reproduce", "--scope", "rho9")[0] == 2


def test_check_b(capsys):
    code, out, _ = call(capsys, "check-b", "--variety", "P1xP1", "--A", "1,1", "--split", "2,0", "--split", "2,0",
                        "--format", "json")
    assert code == 0
    row = json.loads(out)["tables"][0]["rows"][0]
    assert (row["verdict"], row["I"], row["II"], row["III"]) == ("inconclusive", "holds", "fails", "holds")
    assert call(capsys, "check-b", "--variety", "P1xP1", "--A", "1,1", "--split", "2,0")[0] == 2


def test_validate(capsys, tmp_path, monkeypatch):
    code, out, _ = call(capsys, "validate")
    assert code == 0 and "23/23" in out
    data = json.loads(DEFAULT_PATH.read_text())
    data["records"][5]["degree"] += 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    monkeypatch.setenv(ENV_VAR, str(bad))
    code, out, _ = call(capsys, "validate")
    assert code == 1 and "FAIL" in out


def test_list_catalog_shows_bases(capsys):
    code, out, _ = call(capsys, "list-catalog", "--format", "csv")
    assert code == 0
    assert "3-25,blow-up of P3 along two disjoint lines,3,3,H E1 E2" in out


def test_reproduce_and_diff_on_a_clean_scope(capsys, tmp_path):
    target = tmp_path / "r.json"
    assert call(capsys, "reproduce", "--scope", "rho6", "--format", "json", "--output", str(target))[0] == 0
    code, out, _ = call(capsys, "diff", "--input", str(target))
    assert code == 0 and out.startswith("0 difference")


def test_diff_reports_a_changed_cell(capsys, tmp_path):
    target = tmp_path / "r.json"
    call(capsys, "reproduce", "--scope", "threefolds", "--format", "json", "--output", str(target))
    data = json.loads(target.read_text())
    data["tables"][0]["rows"][0]["minusK3"] = 45
    target.write_text(json.dumps(data))
    code, out, _ = call(capsys, "diff", "--input", str(target))
    assert code == 1
    assert "F1 row 1 [minusK3]: expected '46', got '45'" in out


def test_output_is_byte_identical(capsys):
    first = call(capsys, "reproduce", "--scope", "rho5")[1]
    second = call(capsys, "reproduce", "--scope", "rho5")[1]
    assert first == second


@pytest.mark.parametrize("fmt", ["markdown", "csv", "json"])
def test_formats(capsys, fmt):
    code, out, _ = call(capsys, "reproduce", "--scope", "double", "--format", fmt)
    assert code == 0 and out
