import json
from fractions import Fraction as F

import pytest

from avgdist.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bounds_json(capsys):
    code, out, _ = call(capsys, "bounds", "--n", "8", "--m", "16", "--json")
    rec = json.loads(out)
    assert code == 0
    assert rec["lower_exact"] == "19/10"
    assert F(rec["lower_exact"]) == F(19, 10)
    assert rec["lower_decimal"] == "1.9"
    assert set(rec) == {"n", "M", "lower_exact", "lower_decimal", "upper_exact", "provenance"}


def test_search(capsys):
    code, out, _ = call(capsys, "search", "--n", "3", "--m", "4")
    assert code == 0
    assert "1/1" in out
    words = [line for line in out.splitlines() if line and set(line) <= {"0", "1"}]
    assert len(words) == 4


def test_search_budget_exit(capsys):
    code, _, err = call(capsys, "search", "--n", "4", "--m", "8", "--budget", "10")
    assert code == 2 and "budget" in err


def test_verify_vacuous(capsys):
    code, out, _ = call(capsys, "verify", "--lemma", "monotone-even", "--n-max", "10")
    assert code == 0 and "checked 0 pairs" in out


def test_verify_all_json(capsys):
    code, out, _ = call(capsys, "verify", "--n-max", "41", "--json")
    reports = json.loads(out)
    assert code == 0 and len(reports) == 6 and all(r["ok"] for r in reports)


def test_eval_code(tmp_path, capsys):
    f = tmp_path / "rep.txt"
    f.write_text("000\n111\n")
    code, out, _ = call(capsys, "eval-code", str(f))
    assert code == 0 and "3/2" in out
    f.write_text("# lonely\n0110\n")
    code, out, _ = call(capsys, "eval-code", str(f), "--json")
    assert json.loads(out)["average_distance"] == "0/1"


@pytest.mark.parametrize("argv, claim", [
    (["--kind", "two_n", "--n", "4"], "13/8"),
    (["--kind", "two_n", "--n", "10"], "53/25"),
    (["--kind", "constant_weight", "--n", "6", "--w", "2"], None),
])
def test_construct_roundtrip(tmp_path, capsys, argv, claim):
    code, out, _ = call(capsys, "construct", *argv)
    assert code == 0
    stated = [line.split()[-1] for line in out.splitlines() if line.startswith("# average distance")][0]
    if claim:
        assert stated == claim
    f = tmp_path / "c.txt"
    f.write_text(out)
    code, out2, _ = call(capsys, "eval-code", str(f), "--json")
    assert code == 0 and json.loads(out2)["average_distance"] == stated


def test_table_formats_agree(capsys):
    _, out_json, _ = call(capsys, "table", "--n", "4", "--json")
    _, out_csv, _ = call(capsys, "table", "--n", "4", "--csv")
    _, out_md, _ = call(capsys, "table", "--n", "4", "--md")
    rows = json.loads(out_json)
    assert len(rows) == 16
    csv_lines = out_csv.strip().splitlines()
    assert csv_lines[0] == "n,M,lower_exact,lower_decimal,upper_exact,provenance"
    for rec, line in zip(rows, csv_lines[1:]):
        assert line.split(",")[2] == rec["lower_exact"]
    assert len(out_md.strip().splitlines()) == 18


def test_table_byte_stable(capsys):
    _, a, _ = call(capsys, "table", "--n", "5", "--m-from", "3", "--m-to", "12", "--csv")
    _, b, _ = call(capsys, "table", "--n", "5", "--m-from", "3", "--m-to", "12", "--csv")
    assert a == b and len(a.splitlines()) == 11


def test_lp(capsys):
    code, out, _ = call(capsys, "lp", "--n", "4", "--m", "6", "--variant", "mod4", "--json")
    data = json.loads(out)
    assert code == 0 and data["bound"]["exact"] == "25/18" and data["ell"] is not None
    assert len(data["dual"]) == 5 and len(data["B"]) == 4


def test_certify(capsys):
    code, out, _ = call(capsys, "certify", "--family", "ALPHA_HALF_EVEN", "--n", "8", "--m", "16", "--json")
    data = json.loads(out)
    assert code == 0 and data["valid"] and data["bound"] == "19/10"
    code, _, err = call(capsys, "certify", "--family", "ALPHA_MOD4_1", "--n", "3")
    assert code == 1 and "mod 4" in err


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["bounds", "--n", "3"],
    ["bounds", "--n", "3", "--m", "4", "--frobnicate"],
    ["bounds", "--n", "3", "--m", "9"],
    ["table", "--n", "3", "--csv", "--json"],
    ["lp", "--n", "4", "--m", "6", "--variant", "odd"],
    ["construct", "--kind", "constant_weight", "--n", "4"],
    [],
])
def test_usage_errors(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 1 and err and not out


def test_help(capsys):
    code, out, _ = call(capsys, "--help")
    assert code == 0 and "eval-code" in out
