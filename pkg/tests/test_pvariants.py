import random

import pytest
from hypothesis import given, strategies as st

from lfcolor.coloring import CapExceeded
from lfcolor.harness import random_pclique, random_pknapsack, random_psat
from lfcolor.model import OrderedGraph, UsageError, complete_graph, empty_graph, path_graph
from lfcolor.pvariants import (PROBLEMS, PCliqueInstance, PKnapsackInstance, PSatInstance, characteristic,
                               embedded_witness, enumeration_min, pclique_lf, pclique_member, pknapsack_lf,
                               pknapsack_member, psat_lf, psat_member, psat_solution)
from lfcolor.satlex import CnfFormula


def test_psat_member_examples():
    assert psat_member(PSatInstance(CnfFormula(3, ((1, 2), (1, -3))), 1))
    assert not psat_member(PSatInstance(CnfFormula(3, ((1, 2), (-1, 3))), 1))
    assert psat_member(PSatInstance(CnfFormula(2, ()), 2))


def test_psat_lf_examples():
    inst = PSatInstance(CnfFormula(3, ((1, 2, 2), (1, -3, -3))), 1)
    assert psat_lf(inst) == "010"
    assert psat_solution(inst, psat_lf(inst))
    assert psat_lf(PSatInstance(CnfFormula(1, ((1,), (-1,))), 1)) is None


def test_psat_designated_range():
    with pytest.raises(UsageError):
        PSatInstance(CnfFormula(2, ()), 3)


def test_pclique_examples():
    tri = complete_graph(3)
    assert pclique_member(PCliqueInstance(tri, {0, 1}))
    assert not pclique_member(PCliqueInstance(path_graph(3), {0, 2}))
    assert pclique_member(PCliqueInstance(path_graph(3), set()))
    assert pclique_lf(PCliqueInstance(tri, {0})) == "001"
    assert pclique_lf(PCliqueInstance(tri, {0, 1, 2})) == "111"
    assert pclique_lf(PCliqueInstance(empty_graph(2), {0, 1})) is None
    with pytest.raises(UsageError):
        PCliqueInstance(tri, {3})


def test_pknapsack_examples():
    inst = PKnapsackInstance((1, 2), (3, 1), 3, 2)
    assert pknapsack_member(inst)
    assert not pknapsack_member(PKnapsackInstance((1, 2), (3, 1), 4, 2))
    assert not pknapsack_member(PKnapsackInstance((), (), 1, 1))
    assert pknapsack_lf(inst) == "10"
    assert pknapsack_lf(PKnapsackInstance((1, 2), (3, 1), 1, 100)) == "01"
    assert pknapsack_lf(PKnapsackInstance((5, 6), (3, 1), 1, 2)) is None


def test_pknapsack_rejects_nonpositive():
    with pytest.raises(UsageError):
        PKnapsackInstance((1,), (1,), 0, 1)
    with pytest.raises(UsageError):
        PKnapsackInstance((0,), (1,), 1, 1)


def test_characteristic_and_cap():
    assert characteristic(4, [1, 3]) == "0101"
    with pytest.raises(CapExceeded):
        enumeration_min(21, lambda s: True)


def test_round_trips():
    rng = random.Random(3)
    for make, cls in ((random_psat, PSatInstance), (random_pclique, PCliqueInstance),
                      (random_pknapsack, PKnapsackInstance)):
        inst = make(rng, 8)
        assert cls.from_dict(inst.to_dict()) == inst


MAKERS = {"p-sat": random_psat, "p-clique": random_pclique, "p-knapsack": random_pknapsack}


def _size(problem, inst):
    return {"p-sat": lambda: inst.formula.n, "p-clique": lambda: inst.graph.n,
            "p-knapsack": lambda: inst.n}[problem]()


@pytest.mark.parametrize("problem", sorted(MAKERS))
@given(seed=st.integers(0, 10**6))
def test_lf_is_enumeration_minimum(problem, seed):
    inst = MAKERS[problem](random.Random(seed), 10)
    member, is_solution, lf = PROBLEMS[problem]
    assert lf(inst) == enumeration_min(_size(problem, inst), lambda s: is_solution(inst, s))
    if member(inst):
        assert is_solution(inst, embedded_witness(problem, inst))
        assert lf(inst) is not None


@given(st.integers(1, 7), st.data())
def test_clique_lf_on_arbitrary_graphs(n, data):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = tuple(data.draw(st.lists(st.sampled_from(pairs), unique=True))) if pairs else ()
    g = OrderedGraph(n=n, edges=edges)
    C = data.draw(st.sets(st.integers(0, n - 1), max_size=n))
    inst = PCliqueInstance(g, C)
    _, is_solution, _ = PROBLEMS["p-clique"]
    assert pclique_lf(inst) == enumeration_min(n, lambda s: is_solution(inst, s))
