"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import time

import pytest

from lfcolor.coloring import enumerate_legal_colorings, is_legal_coloring
from lfcolor.gadgets import load_gadget, verify_crossover_gadget, verify_equality_gadget, verify_or_gadget
from lfcolor.harness import (_thm23_case, fixed_planar_graphs, gen_cnf_corpus, gen_planar_corpus,
                             summary_json, verify_all, verify_decomposition, verify_eq1, verify_pvariants,
                             verify_selfred_suite, verify_sigma, verify_thm23, verify_thm35_suite)
from lfcolor.satlex import CnfFormula, decide_odd_min_sat, satisfying_assignments

SEED = 0


@pytest.fixture
def announce(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\nCRITERION {number}: {'PASS' if ok else 'FAIL'} ({detail})")
    return emit


@pytest.fixture(scope="module")
def planar_corpus():
    fixed = fixed_planar_graphs()
    graphs = list(fixed.values()) + gen_planar_corpus(200, 7, SEED)
    ids = list(fixed) + [f"graph-{i:04d}" for i in range(200)]
    return graphs, ids


@pytest.fixture(scope="module")
def cnf_corpus():
    corpus = gen_cnf_corpus(100, 4, 4, SEED)
    return corpus, [f"cnf-{i:04d}" for i in range(100)]


def test_criterion_1_gadgets(announce):
    t = time.perf_counter()
    reps = [verify_equality_gadget(load_gadget("equality")), verify_or_gadget(load_gadget("or")),
            verify_crossover_gadget(load_gadget("crossover"))]
    elapsed = time.perf_counter() - t
    ok = all(r.passed and not r.failures for r in reps) and elapsed < 60
    announce(1, ok, f"{sum(r.colorings for r in reps)} colorings checked, {elapsed:.1f}s")
    assert ok


def test_criterion_2_pendant_pattern(announce, planar_corpus):
    graphs, ids = planar_corpus
    t = time.perf_counter()
    rep = verify_eq1(graphs, ids, SEED)
    elapsed = time.perf_counter() - t
    ok = (rep.cases == 205 and rep.agreements == rep.cases and elapsed < 300
          and all(g.n <= 7 for g in graphs))
    announce(2, ok, f"{rep.agreements}/{rep.cases} agree, {rep.stats['colorable']} colorable, {elapsed:.1f}s")
    assert ok, rep.to_dict()["violations"]


def test_criterion_3_decomposition(announce, planar_corpus):
    graphs, ids = planar_corpus
    rep = verify_decomposition(graphs, ids, SEED)
    colorable = sum(bool(enumerate_legal_colorings(g, 3)) for g in graphs)
    ok = rep.passed and rep.cases == colorable > 0
    announce(3, ok, f"{rep.agreements}/{rep.cases} colorable graphs decompose exactly")
    assert ok, rep.to_dict()["violations"]


def test_criterion_4_sigma(announce, cnf_corpus):
    corpus, ids = cnf_corpus
    t = time.perf_counter()
    rep = verify_sigma(corpus, ids, SEED)
    elapsed = time.perf_counter() - t
    expected = sum(len(satisfying_assignments(f)) for f in corpus)
    ok = (rep.passed and rep.cases == 100 and rep.stats["assignments_checked"] == expected
          and all(f.n <= 4 and f.z <= 4 for f in corpus) and elapsed < 600)
    announce(4, ok, f"{rep.agreements}/{rep.cases} formulas, {expected} assignments, {elapsed:.1f}s")
    assert ok, rep.to_dict()["violations"]


def test_criterion_5_odd_min_pipeline(announce, cnf_corpus):
    corpus, ids = cnf_corpus
    rep = verify_thm23(corpus, ids, SEED)
    again = verify_thm23(corpus, ids, SEED)
    problems = list(rep.extra["integrity_failures"])
    if rep.to_json() != again.to_json():
        problems.append("report not deterministic")
    # every bundle must re-check from scratch
    for v in rep.to_dict()["violations"]:
        b = v["artifacts"]
        small = CnfFormula.from_dict(b["minimized"])
        c = _thm23_case(small)
        if not (small.z <= CnfFormula.from_dict(b["formula"]).z and c["side1"] != c["side2"]
                and c["lf"].string == b["lf_pipeline"] and decide_odd_min_sat(small) == b["odd_min_sat"]
                and is_legal_coloring(c["rho"].graph, b["lf_pipeline"])):
            problems.append(f"bundle {v['instance']} does not re-check")
    ok = not problems and "agreement_rate" in rep.to_dict()
    announce(5, ok, f"agreement rate {rep.agreement_rate:.2f} published (not gated), "
                    f"{len(rep.violations)} bundles re-checked")
    assert ok, problems


def test_criterion_6_self_reduction(announce):
    t = time.perf_counter()
    rep = verify_selfred_suite(SEED, n_max=6, count=50, prefix_count=100, prefix_n_max=10)
    elapsed = time.perf_counter() - t
    ok = rep.passed and rep.cases == 150 and elapsed < 120
    announce(6, ok, f"{rep.agreements}/{rep.cases} cases, peak oracle calls {rep.stats['max_oracle_calls']}, "
                    f"{elapsed:.1f}s")
    assert ok, rep.to_dict()["violations"]


def test_criterion_7_construction(announce):
    t = time.perf_counter()
    reps = [verify_thm35_suite(SEED, d=d, family="both", n_max=8, count=100, toy_len=8) for d in ("all", "prefix1")]
    elapsed = time.perf_counter() - t
    unsat = sum(not satisfying_assignments(f) for f in gen_cnf_corpus(100, 8, 18, SEED, z_min=0))
    ok = all(r.passed and r.cases == 511 + 100 for r in reps) and unsat > 0 and elapsed < 120
    announce(7, ok, f"{sum(r.agreements for r in reps)}/{sum(r.cases for r in reps)} cases over two D choices, "
                    f"{unsat} unsatisfiable formulas, {elapsed:.1f}s")
    assert ok, [r.to_dict()["violations"] for r in reps]


def test_criterion_8_p_variants(announce):
    t = time.perf_counter()
    rep = verify_pvariants(SEED, count=100, n_max=12)
    elapsed = time.perf_counter() - t
    members = {k: v for k, v in rep.stats.items() if k.endswith(".members")}
    ok = rep.passed and rep.cases == 300 and all(members.values()) and len(members) == 3 and elapsed < 120
    announce(8, ok, f"{rep.agreements}/{rep.cases} instances, members {members}, {elapsed:.1f}s")
    assert ok, rep.to_dict()["violations"]


def test_criterion_9_determinism(announce):
    first = summary_json(verify_all(SEED))
    second = summary_json(verify_all(SEED))
    ok = first == second and '"passed": true' in first
    announce(9, ok, f"{len(first.encode())} bytes, identical across runs")
    assert ok
