import json

import pytest

from lfcolor.cli import main
from lfcolor.coloring import is_legal_coloring, lf_coloring
from lfcolor.harness import (fixed_planar_graphs, gen_cnf_corpus, gen_planar_corpus, minimize_thm23,
                             verify_decomposition, verify_eq1, verify_pvariants, verify_selfred_suite,
                             verify_sigma, verify_thm23, verify_thm35_suite, _thm23_case)
from lfcolor.model import OrderedGraph, complete_graph, verify_embedding
from lfcolor.report import ExperimentReport, canonical_json
from lfcolor.satlex import CnfFormula, decide_odd_min_sat


# -- corpora


def test_planar_corpus_examples():
    five = gen_planar_corpus(5, 6, seed=1)
    assert len(five) == 5 and all(verify_embedding(g).planar and 1 <= g.n <= 6 for g in five)
    [one] = gen_planar_corpus(1, 1, seed=9)
    assert one.n == 1 and one.edges == ()
    assert [g.to_json() for g in five] == [g.to_json() for g in gen_planar_corpus(5, 6, seed=1)]
    with pytest.raises(ValueError):
        gen_planar_corpus(1, 13, 0)


def test_planar_corpus_is_varied():
    corpus = gen_planar_corpus(60, 7, seed=0)
    assert len({g.to_json() for g in corpus}) > 30  # tiny graphs repeat
    assert any(not lf_coloring(g, 3).colored for g in corpus)


def test_cnf_corpus_examples():
    ten = gen_cnf_corpus(10, 4, 4, 7)
    assert len(ten) == 10 and all(len(c) == 3 for f in ten for c in f.clauses)
    assert all(1 <= f.n <= 4 and 1 <= f.z <= 4 for f in ten)
    assert gen_cnf_corpus(0, 4, 4, 7) == []
    assert gen_cnf_corpus(10, 4, 4, 7) == ten


# -- reports


def test_report_invariants():
    rep = ExperimentReport("x", 3)
    rep.record("b", False, expected=1, computed=2)
    rep.record("a", True)
    rep.bump("k", 2)
    d = rep.to_dict()
    assert d["cases"] == 2 and d["agreements"] == 1 and len(d["violations"]) == 1
    assert rep.agreement_rate == 0.5 and not rep.passed
    assert canonical_json(d) == rep.to_json() and rep.to_json().endswith("\n")


# -- experiments


def test_pendant_pattern_examples():
    tri = verify_eq1([complete_graph(3)])
    assert tri.cases == 1 and tri.agreements == 1
    k4 = verify_eq1([complete_graph(4)])
    assert k4.cases == 1 and k4.agreements == 1 and k4.stats["colorable"] == 0
    assert verify_eq1([]).cases == 0


def test_pendant_pattern_and_decomposition_small():
    fixed = fixed_planar_graphs()
    corpus = list(fixed.values()) + gen_planar_corpus(20, 6, 5)
    assert verify_eq1(corpus).passed
    dec = verify_decomposition(corpus)
    assert dec.passed and dec.cases == sum(lf_coloring(g, 3).colored for g in corpus)


def test_sigma_suite_small():
    rep = verify_sigma(gen_cnf_corpus(8, 3, 3, 2))
    assert rep.passed and rep.cases == 8


def test_pipeline_experiment_examples():
    one = CnfFormula(1, ((1, 1, 1),))
    rep = verify_thm23([one])
    assert rep.cases == 1 and not rep.extra["integrity_failures"]
    unsat = CnfFormula(1, ((1, 1, 1), (-1, -1, -1)))
    c = _thm23_case(unsat)
    assert not c["side1"] and not c["side2"] and not c["integrity"]
    assert verify_thm23([]).cases == 0


def test_pipeline_bundles_recheck():
    corpus = gen_cnf_corpus(12, 3, 3, 0)
    rep = verify_thm23(corpus)
    assert not rep.extra["integrity_failures"]
    for v in rep.to_dict()["violations"]:
        b = v["artifacts"]
        small = CnfFormula.from_dict(b["minimized"])
        assert decide_odd_min_sat(small) == b["odd_min_sat"]
        c = _thm23_case(small)
        assert c["lf"].string == b["lf_pipeline"] and c["side1"] != c["side2"]
        assert is_legal_coloring(c["rho"].graph, b["lf_pipeline"])
        assert small.z <= CnfFormula.from_dict(b["formula"]).z
        assert minimize_thm23(small) == small


def test_selfred_and_widening_suites_small():
    assert verify_selfred_suite(0, n_max=4, count=10, prefix_count=10, prefix_n_max=6).passed
    for d in ("all", "prefix1"):
        rep = verify_thm35_suite(0, d=d, n_max=5, count=20, toy_len=5)
        assert rep.passed and rep.cases == 63 + 20


def test_pvariants_small():
    rep = verify_pvariants(1, count=15, n_max=8)
    assert rep.passed and rep.cases == 45


# -- CLI


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_solve_and_decide(tmp_path, capsys):
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 2 2\n-1 0\n1 2 0\n")
    assert _run(capsys, "solve", "lf-sat", "--in", str(cnf))[:2] == (0, "21\n")
    assert _run(capsys, "decide", "odd-min-sat", "--in", str(cnf))[:2] == (0, "member\n")
    g = tmp_path / "g.json"
    g.write_text(complete_graph(3).to_json())
    assert _run(capsys, "solve", "lf-color", "--k", "3", "--in", str(g))[:2] == (0, "012\n")
    k = tmp_path / "k.json"
    k.write_text(json.dumps({"sizes": [1, 2], "values": [3, 1], "k": 3, "b": 2}))
    assert _run(capsys, "solve", "p-knapsack", "--in", str(k))[:2] == (0, "10\n")


def test_cli_reduce_and_gen(tmp_path, capsys):
    g = tmp_path / "g.json"
    g.write_text(complete_graph(3).to_json())
    code, out, _ = _run(capsys, "reduce", "rho4", "--in", str(g))
    assert code == 0 and json.loads(out)["n"] == 6
    code, out, _ = _run(capsys, "gen", "cnf", "--count", "3", "--seed", "4")
    assert code == 0 and len(json.loads(out)) == 3
    f = tmp_path / "one.json"
    f.write_text(json.dumps(json.loads(out)[0]))
    code, out, _ = _run(capsys, "reduce", "sigma", "--in", str(f))
    assert code == 0 and verify_embedding(OrderedGraph.from_json(out)).planar


def test_cli_exit_codes(tmp_path, capsys):
    assert _run(capsys, "solve", "lf-sat", "--in", str(tmp_path / "missing"))[0] == 2
    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 1 1\n3 0\n")
    code, _, err = _run(capsys, "solve", "lf-sat", "--in", str(bad))
    assert code == 2 and "line 2" in err
    assert _run(capsys, "solve", "lf-color", "--in", str(bad))[0] == 2
    assert _run(capsys, "bogus")[0] == 2
    assert _run(capsys, "gen", "planar", "--n-max", "13")[0] == 2
    assert _run(capsys, "gadget", "verify", "--kind", "equality")[0] == 0


def test_cli_reports_are_byte_identical(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        code = main(["verify", "thm35", "--seed", "3", "--n-max", "4", "--count", "10", "--report", str(p)])
        assert code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    rep = json.loads(paths[0].read_text())
    assert rep["cases"] == rep["agreements"] + len(rep["violations"])
