import json
import os
import pathlib

import pytest

import balpair

CORPUS = pathlib.Path(os.environ.get("BALPAIR_CORPUS_DIR", pathlib.Path(__file__).parent.parent / "corpus"))


def test_parse_and_matrix():
    phi = balpair.Substitution.parse("1 -> 112\n2 -> 12\n")
    assert phi.tokens == ["1", "2"]
    assert phi.rules == ["112", "12"]
    assert phi.matrix == [[2, 1], [1, 1]]
    assert phi.is_primitive()
    assert phi.fixed_prefix(8) == "11211212"
    assert balpair.Substitution.parse(phi.to_text()) == phi


def test_parse_error_is_raised():
    with pytest.raises(balpair.ParseError):
        balpair.Substitution.parse("1 -> 12\n2 -> 13\n")
    assert issubclass(balpair.ParseError, balpair.Error)


def test_plain_run_terminates():
    phi = balpair.load(CORPUS / "ex1.sub")
    out = balpair.run_bpa(balpair.Relation.plain(phi), "1")
    assert out.terminated
    assert sorted(out.pairs) == [("1", "1"), ("12", "21"), ("2", "2")]
    assert out.closure_iteration == 2
    assert out.all_lead is True


def test_budget_outcome():
    phi = balpair.load(CORPUS / "const-len.sub")
    out = balpair.run_bpa(balpair.Relation.plain(phi), "1", max_iterations=5)
    assert not out.terminated
    assert out.exceeded == "max_iterations"
    assert out.all_lead is None


def test_relations():
    phi = balpair.load(CORPUS / "reducible3.sub")
    assert balpair.Relation.general(phi, "lambda").equivalent("11", "23")
    assert not balpair.Relation.general(phi, "1,1,2").equivalent("11", "23")
    with pytest.raises(balpair.InvalidLength):
        balpair.Relation.general(phi, "1,0,1")
    nc = balpair.load(CORPUS / "exnoncon.sub")
    assert balpair.letter_classes(nc) == [["1"], ["2", "3", "4"]]
    assert balpair.Relation.letters(nc).reduce("31412", "41231") == [("3", "4"), ("1", "1"), ("4", "2"), ("12", "31")]


def test_analyze_report():
    phi = balpair.load(CORPUS / "ex1.sub")
    rep = balpair.analyze(phi, prefix="1", lengths=["lambda", "ones"])
    assert [c["verdict"]["kind"] for c in rep["cells"]] == ["pure_discrete", "pure_discrete"]
    assert rep["corollary_consistent"] is True
    again = balpair.analyze(phi, prefix="1", lengths=["lambda", "ones"])
    assert json.dumps(rep, sort_keys=True) == json.dumps(again, sort_keys=True)
    info = balpair.describe(balpair.load(CORPUS / "mt-rewrite.sub"))
    assert info["substitution"]["l_lambda"]["integer_form"] == ["3", "2", "4", "3"]
