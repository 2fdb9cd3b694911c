import itertools

import pytest

from lfcolor.coloring import CapExceeded, is_legal_coloring
from lfcolor.gadgets import (GadgetSpec, embedding_ok, load_gadget, ports_on_common_face, verify_crossover_gadget,
                             verify_equality_gadget, verify_gadget, verify_or_gadget)
from lfcolor.model import OrderedGraph, drawn_graph, verify_embedding


def test_builtin_gadgets_pass():
    eq = verify_equality_gadget(load_gadget("equality"))
    assert eq.passed and eq.colorings == 6
    orr = verify_or_gadget(load_gadget("or"))
    assert orr.passed
    assert orr.table == {"TT": ["T"], "TF": ["F", "T"], "FT": ["F", "T"], "FF": ["F"]}
    cr = verify_crossover_gadget(load_gadget("crossover"))
    assert cr.passed and all(cr.table.values()) and len(cr.table) == 9


def test_builtin_sizes_and_embeddings():
    eq = load_gadget("equality")
    assert eq.fragment.labels == ("IN", "a", "b", "OUT")
    assert set(eq.fragment.edges) == {(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)}
    assert load_gadget("or").fragment.n <= 10
    assert load_gadget("crossover").fragment.n <= 16
    for kind in ("equality", "or", "crossover"):
        spec = load_gadget(kind)
        assert verify_embedding(spec.fragment).planar
        assert ports_on_common_face(spec)
    assert ports_on_common_face(load_gadget("crossover"), ("N", "E", "S", "W"))


def test_load_gadget_unknown():
    with pytest.raises(ValueError):
        load_gadget("xor")


def test_equality_counterexamples():
    edge = GadgetSpec("equality", drawn_graph([(0, 0), (1, 0)], [(0, 1)], ("IN", "OUT")), {"IN": 0, "OUT": 1})
    rep = verify_equality_gadget(edge)
    assert not rep.passed
    w = rep.failures[0]["witness"]
    assert w[0] != w[1] and is_legal_coloring(edge.fragment, w)
    loose = GadgetSpec("equality", drawn_graph([(0, 0), (1, 0)], [], ("IN", "OUT")), {"IN": 0, "OUT": 1})
    assert {f["condition"] for f in verify_equality_gadget(loose).failures} == {"equal-ports"}


def _or_variant(edges):
    labels = ("A", "B", "OUT", "PT", "PF", "PB")
    g = OrderedGraph(n=6, edges=tuple(edges), labels=labels)
    return GadgetSpec("or", g, {name: i for i, name in enumerate(labels)})


PALETTE = [(3, 4), (3, 5), (4, 5)]


def test_or_counterexamples():
    disconnected = verify_or_gadget(_or_variant(PALETTE + [(2, 5)]))
    assert any(f["condition"] == "soundness" for f in disconnected.failures)
    only_inputs = verify_or_gadget(_or_variant(PALETTE + [(0, 2), (1, 2), (2, 5)]))
    assert any(f["condition"] == "completeness" for f in only_inputs.failures)


def test_crossover_counterexamples():
    square = [(0, 1), (1, 0), (0, -1), (-1, 0)]
    ns = GadgetSpec("crossover", drawn_graph(square, [(0, 2)], ("N", "E", "S", "W")),
                    {"N": 0, "E": 1, "S": 2, "W": 3})
    rep = verify_crossover_gadget(ns)
    bad = [x for x in rep.failures if x["condition"] == "opposite-ports"]
    assert bad and bad[0]["witness"][0] != bad[0]["witness"][2]
    # the built-in gadget forces N = S, so adding the edge leaves no coloring at all
    base = load_gadget("crossover")
    f = base.fragment
    plus = GadgetSpec("crossover", f.replace(edges=f.edges + ((base.ports["N"], base.ports["S"]),),
                                             rotation=None), base.ports)
    assert verify_crossover_gadget(plus).colorings == 0
    # two diamonds drawn across each other: each is fine, but no face holds all four ports
    coords = [(0, 2), (-0.5, 0), (0.5, 0), (0, -2), (-2, 0), (0, 0.5), (0, -0.5), (2, 0)]
    edges = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (5, 7), (6, 7)]
    g = drawn_graph(coords, edges, ("N", "a", "b", "S", "W", "c", "d", "E"))
    two = GadgetSpec("crossover", g, {"N": 0, "S": 3, "W": 4, "E": 7})
    rep = verify_crossover_gadget(two)
    assert [x["condition"] for x in rep.failures] == ["planar-outer-ports"]
    assert not embedding_ok(two)


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        verify_gadget(load_gadget("crossover"), cap=10)


def _mutants(spec: GadgetSpec):
    f = spec.fragment
    present = set(f.edges)
    for pair in itertools.combinations(range(f.n), 2):
        edges = tuple(e for e in f.edges if e != pair) if pair in present else f.edges + (pair,)
        if spec.coords is not None:
            g = drawn_graph(spec.coords, edges, f.labels)
        else:
            g = OrderedGraph(n=f.n, edges=edges, labels=f.labels)
        yield pair, GadgetSpec(spec.kind, g, spec.ports, spec.coords)


@pytest.mark.parametrize("kind", ["equality", "or", "crossover"])
def test_single_edge_mutations_give_checkable_witnesses(kind):
    failing = 0
    for pair, m in _mutants(load_gadget(kind)):
        rep = verify_gadget(m)
        if rep.passed:
            continue
        failing += 1
        for f in rep.failures:
            if f.get("witness"):
                assert is_legal_coloring(m.fragment, f["witness"]), (pair, f)
    assert failing > 0
