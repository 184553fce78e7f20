import json

import pytest

from picard.cli import main, render, report

MANIFOLD = "J R1^2 J,J^-1 R1 J^-1 R1^2 J R1 J^-1,J R1^-2 J R1 J R1^2 J^-1 R1"


def run_json(capsys, *argv):
    assert main(["--json", *argv]) == 0
    return json.loads(capsys.readouterr().out)


def test_lvalue(capsys):
    out = run_json(capsys, "lvalue", "-d", "3", "--terms", "2000")
    assert out["results"]["L(-2)"] == "-2/9"
    assert out["results"]["oracle"]["agrees"] is True


def test_lvalue_d7_is_flagged(capsys):
    out = run_json(capsys, "lvalue", "-d", "7", "--terms", "2000")
    assert out["results"]["L(-2)"] == "-16/7"
    assert out["results"]["chi_matches_quoted"] is False
    assert any(n.startswith("FLAG") and "3/7" in n for n in out["notes"])


def test_volume_candidate(capsys):
    r = run_json(capsys, "volume", "-d", "3")["results"]
    assert (r["mu"], r["candidate_chi"], r["candidate_volume"]) == ("1/216", "1/72", "1/27 * pi^2")


def test_volume_with_choices(capsys):
    r = run_json(capsys, "volume", "-d", "3", "--v1", "2")["results"]
    assert r["mu"] == "1/72"


def test_bound(capsys):
    r = run_json(capsys, "bound", "-d", "1")["results"]
    assert (r["min_covolume_bound"], r["quoted_constant"], r["formula_value"]) == ("1/32", True, "1/288")


def test_census_small(capsys):
    r = run_json(capsys, "census", "--list", "2,3", "--no-minimality")["results"]
    verdicts = {f["d"]: f["verdict"] for f in r["fields"]}
    assert verdicts == {2: "eliminated", 3: "possible"}


def test_homology_and_cusps(capsys):
    r = run_json(capsys, "homology", "--data", "falbel_parker", "--subgroup", MANIFOLD)["results"]
    assert (r["index"], r["homology"]) == (72, "Z^2")
    r = run_json(capsys, "cusps", "--data", "falbel_parker", "--subgroup", MANIFOLD)["results"]
    assert r["cusps"] == 2


def test_subgroups(capsys):
    r = run_json(capsys, "subgroups", "--data", "falbel_parker", "--index", "4")["results"]
    assert r["count"] >= 1
    assert all(s["index"] == 4 for s in r["subgroups"])


def test_witness(capsys):
    r = run_json(capsys, "witness")["results"]
    orders = {w["name"]: w["order"] for w in r["witnesses"]}
    assert orders["m2"] == "2" and orders["gauss-order3"] == "3"


def test_structured_output_is_deterministic():
    argv = ["subgroups", "--data", "falbel_parker", "--index", "3"]
    a, b = report(argv), report(argv)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert json.loads(json.dumps(a)) == a


def test_human_rendering(capsys):
    assert main(["volume", "-d", "2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("picard volume") and "mu: 1/16" in out
    assert render(report(["volume", "-d", "2"])) == out.rstrip("\n")


@pytest.mark.parametrize("argv", [
    ["volume", "-d", "4"],
    ["volume", "-d", "3", "--v2", "2"],
    ["homology", "--data", "nonexistent.grp", "--subgroup", "J"],
    ["homology", "--data", "falbel_parker", "--subgroup", "X"],
])
def test_validation_exit_code(capsys, argv):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_budget_exit_code(capsys):
    assert main(["subgroups", "--data", "falbel_parker", "--index", "12", "--max-nodes", "5"]) == 3
    assert main(["homology", "--data", "falbel_parker", "--subgroup", "J", "--max-cosets", "50"]) == 3
