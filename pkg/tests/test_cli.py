import json

import pytest

from algset.cli import FIXTURES, Record, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json", "--no-timing")
    return code, json.loads(out)


# -- exit-status rules -----------------------------------------------------------------

@pytest.mark.parametrize("expected,outcome,mismatch", [
    ("PASSED-SAMPLED", "REFUTED", True),
    ("PASSED-SAMPLED", "INCONCLUSIVE", False),
    ("REFUTED", "REFUTED", False),
    ("REFUTED", "PASSED-SAMPLED", True),
    ("fails", "holds", True),
    (None, "REFUTED", False),
    ("INCONCLUSIVE", "WITNESSED", False),
])
def test_mismatch_rule(expected, outcome, mismatch):
    assert Record("x", outcome, expected).mismatch is mismatch


# -- commands --------------------------------------------------------------------------

def test_check_axioms_for_monos(capsys):
    code, rep = run_json(capsys, "check-axioms", "--class", "mono", "--axioms", "A1,A4", "--budget", "3")
    assert code == 0
    outcomes = {r["id"]: r["outcome"] for r in rep["records"]}
    assert outcomes == {"A1": "PASSED-SAMPLED", "A4": "REFUTED"}


def test_check_axioms_fixture_matches(capsys):
    code, rep = run_json(capsys, "check-axioms", "--fixture", "mono", "--axioms", "A1,A2,A4,PS")
    assert code == 0 and all(r["matched"] for r in rep["records"])


def test_fixture_mismatch_exits_one(capsys, tmp_path):
    (tmp_path / "classes").mkdir()
    (tmp_path / "classes" / "wrong.json").write_text(json.dumps(
        {"class": "all", "budget": 2, "expected": {"A1": "REFUTED"}}))
    code, out, _ = run(capsys, "check-axioms", "--fixtures", str(tmp_path), "--fixture", "wrong")
    assert code == 1 and "MISMATCH" in out


def test_eval_fixtures(capsys):
    code, rep = run_json(capsys, "eval", "--fixture", "boolean")
    assert code == 0 and rep["records"][0]["outcome"] == "PARTIAL"
    assert rep["records"][0]["evidence"]["true_at"] == [[0], [1]]
    code, rep = run_json(capsys, "eval", "--fixture", "excluded-middle")
    assert code == 0 and rep["records"][0]["outcome"] == "TRUE"


def test_eval_inline_formula(capsys):
    code, rep = run_json(capsys, "eval", "--formula", "forall x. exists y. ~x = y", "--sort", "A=2")
    assert rep["records"][0]["outcome"] == "TRUE"
    code, rep = run_json(capsys, "eval", "--formula", "forall x. exists y. ~x = y", "--sort", "A=1")
    assert rep["records"][0]["outcome"] == "FALSE"


def test_eval_file(capsys, tmp_path):
    f = tmp_path / "phi.json"
    f.write_text(json.dumps({"sorts": {"A": 2}, "formula": "x = x", "context": [["x", "A"]],
                             "expected": "TRUE"}))
    code, rep = run_json(capsys, "eval", str(f))
    assert code == 0 and rep["records"][0]["matched"]


def test_build_v(capsys):
    code, rep = run_json(capsys, "build-v", "--rank", "4")
    ev = rep["records"][0]["evidence"]
    assert code == 0 and ev["size"] == 16 and ev["stages"] == [0, 1, 2, 4, 16]


def test_check_set_axiom_fixture(capsys):
    code, rep = run_json(capsys, "check-set-axiom", "--fixture", "set-axioms",
                         "Pairing", "Infinity", "EmptySet")
    assert code == 0
    assert {r["id"]: r["outcome"] for r in rep["records"]} == {
        "Pairing": "holds", "Infinity": "fails", "EmptySet": "holds"}


def test_check_set_axiom_samples(capsys):
    code, rep = run_json(capsys, "check-set-axiom", "StrongCollection", "--samples", "--rank", "3")
    assert [r["id"] for r in rep["records"]] == [f"StrongCollection[{i}]" for i in range(3)]


def test_validate_site_fixtures(capsys):
    code, rep = run_json(capsys, "validate-site", "dense-v", "broken-L")
    assert code == 0
    outcomes = {r["id"]: r["outcome"] for r in rep["records"]}
    assert outcomes["dense-v:T"] == "pass" and outcomes["broken-L:L"] == "REFUTED"


def test_validate_site_from_a_file(capsys, tmp_path):
    text = (FIXTURES / "sites" / "two-object.site").read_text()
    path = tmp_path / "mine.site"
    path.write_text(text)
    code, out, _ = run(capsys, "validate-site", str(path))
    assert code == 0 and "mine:L" in out


def test_sheafify_fixture_presheaf(capsys):
    code, rep = run_json(capsys, "sheafify", "two-object", "--presheaf",
                         str(FIXTURES / "presheaves" / "separated.json"))
    ev = rep["records"][0]["evidence"]
    assert code == 0 and ev["sheaf_sizes"] == [2, 2] and ev["idempotent"]


def test_sheafify_enumeration(capsys):
    code, rep = run_json(capsys, "sheafify", "dense-v", "--limit", "4")
    assert code == 0 and len(rep["records"]) == 4


def test_sheaf_suite(capsys):
    code, rep = run_json(capsys, "sheaf-suite", "two-object", "--axioms", "A1,US", "--budget", "2")
    assert code == 0 and all(r["outcome"] == "PASSED-SAMPLED" for r in rep["records"])


def test_ex_complete(capsys):
    code, rep = run_json(capsys, "ex-complete", "--class", "fibre<3", "--budget", "2")
    assert code == 0
    recs = {r["id"]: r for r in rep["records"]}
    assert recs["embedding"]["outcome"] == "pass"
    assert recs["base:A5"]["outcome"] == "REFUTED"


# -- output ----------------------------------------------------------------------------

def test_json_without_timing_is_deterministic(capsys):
    argv = ("check-axioms", "--class", "fibre<3", "--axioms", "A5", "--budget", "3", "--json", "--no-timing")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    rep = json.loads(first)
    assert rep["config"]["budget"] == 3 and "seconds" not in rep["records"][0]


def test_text_report(capsys):
    code, out, _ = run(capsys, "build-v", "--rank", "2")
    assert "V_2" in out and "exit status 0" in out


# -- input errors ----------------------------------------------------------------------

def test_missing_file_exits_two(capsys, tmp_path):
    code, _, err = run(capsys, "eval", str(tmp_path / "nope.json"))
    assert code == 2 and "does not exist" in err


def test_unknown_site_exits_two(capsys):
    code, out, _ = run(capsys, "validate-site", "nowhere")
    assert code == 2 and "error:" in out


def test_bad_json_exits_two(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    code, _, _ = run(capsys, "eval", str(f))
    assert code == 2


def test_unknown_class_exits_two(capsys):
    code, _, _ = run(capsys, "check-axioms", "--class", "huge")
    assert code == 2


def test_negative_budget_exits_two(capsys):
    code, _, err = run(capsys, "check-axioms", "--budget", "-1")
    assert code == 2 and "non-negative" in err


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
