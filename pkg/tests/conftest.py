import random

from hypothesis import HealthCheck, settings, strategies as st

from lfcolor.model import OrderedGraph
from lfcolor.satlex import CnfFormula

settings.register_profile("repo", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return OrderedGraph(n=n, edges=tuple(chosen))


@st.composite
def formulas(draw, max_n=5, max_z=6, width=3, exact=True):
    n = draw(st.integers(1, max_n))
    lit = st.integers(1, n).flatmap(lambda v: st.sampled_from([v, -v]))
    size = st.just(width) if exact else st.integers(1, width)
    clause = size.flatmap(lambda w: st.lists(lit, min_size=w, max_size=w).map(tuple))
    clauses = draw(st.lists(clause, max_size=max_z))
    return CnfFormula(n, tuple(clauses))


@st.composite
def planar_graphs(draw, max_n=8):
    from lfcolor.harness import random_planar_graph

    seed = draw(st.integers(0, 10**6))
    n = draw(st.integers(1, max_n))
    return random_planar_graph(n, random.Random(seed))
