"""Legal colorings and the lexicographically first k-coloring.

Three engines compute the same function:

* ``dfs``: chronological backtracking over the vertex order, colors tried in
  ascending order; the first complete leaf is the lex-minimum.
* ``csp``: prefix search, fixing one position at a time and keeping the
  smallest color for which the partial coloring still extends; extension is
  decided by a list-coloring search with propagation, component splitting
  and smallest-domain branching.
* ``sat``: the same prefix search, with extension decided by an incremental
  SAT solver.

The ``dfs`` engine is the reference; the other two only change how fast a
dead prefix is recognised.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .model import Coloring, OrderedGraph, UsageError, sentinel


class CapExceeded(UsageError):
    """An exhaustive enumeration would exceed its configured cap."""


@dataclass(frozen=True)
class LfColorResult:
    status: str  # "colored" | "uncolorable"
    coloring: Coloring | None
    sentinel: str | None
    nodes_expanded: int = 0

    @property
    def colored(self) -> bool:
        return self.status == "colored"

    @property
    def string(self) -> str:
        return self.coloring.digits if self.coloring is not None else self.sentinel

    def __eq__(self, other):
        if not isinstance(other, LfColorResult):
            return NotImplemented
        return (self.status, self.coloring, self.sentinel) == (other.status, other.coloring, other.sentinel)

    __hash__ = None


def _digits(c: Coloring | str | Sequence[int]) -> list[int]:
    if isinstance(c, Coloring):
        return [int(ch) for ch in c.digits]
    if isinstance(c, str):
        return [int(ch) for ch in c]
    return list(c)


def is_legal_coloring(g: OrderedGraph, c: Coloring | str | Sequence[int]) -> bool:
    col = _digits(c)
    if len(col) != g.n:
        raise UsageError(f"coloring has length {len(col)}, graph has {g.n} vertices")
    return all(col[i] != col[j] for i, j in g.edges)


def monochromatic_edges(g: OrderedGraph, c) -> list[tuple[int, int]]:
    col = _digits(c)
    return [(i, j) for i, j in g.edges if col[i] == col[j]]


def _palette(k: int, palette: Sequence[int] | None) -> list[int]:
    if k < 2:
        raise UsageError(f"k must be at least 2, got {k}")
    if palette is None:
        return list(range(k))
    pal = list(palette)
    if pal != sorted(set(pal)) or any(not 0 <= c < k for c in pal):
        raise UsageError(f"palette {pal} must be ascending and within 0..{k - 1}")
    return pal


# ---------------------------------------------------------------------------
# enumeration


def enumerate_legal_colorings(g: OrderedGraph, k: int, cap: int = 10**6,
                              palette: Sequence[int] | None = None) -> list[Coloring]:
    """Every legal coloring, in lex order, by filtering the full product space."""
    pal = _palette(k, palette)
    total = len(pal) ** g.n
    if total > cap:
        raise CapExceeded(f"enumeration needs {len(pal)}^{g.n} = {total} candidates, cap is {cap}")
    out = []
    for col in itertools.product(pal, repeat=g.n):
        if all(col[i] != col[j] for i, j in g.edges):
            out.append(Coloring.of(col, k))
    return out


def iter_legal_colorings(g: OrderedGraph, colors: Sequence[int],
                         fixed: Mapping[int, int] | None = None) -> Iterator[tuple[int, ...]]:
    """Yield all legal colorings over ``colors`` in lex order.

    Assignments are extended position by position and abandoned as soon as an
    edge to an earlier vertex is monochromatic, so the walk is exhaustive over
    legal colorings without visiting the whole product space.
    """
    n = g.n
    fixed = dict(fixed or {})
    earlier = [[w for w in g.adj[v] if w < v] for v in range(n)]
    choices = [[fixed[v]] if v in fixed else list(colors) for v in range(n)]
    col = [0] * n

    def rec(v):
        if v == n:
            yield tuple(col)
            return
        for c in choices[v]:
            if all(col[w] != c for w in earlier[v]):
                col[v] = c
                yield from rec(v + 1)

    yield from rec(0)


# ---------------------------------------------------------------------------
# list-coloring search (the "csp" engine)


def _bits(mask: int) -> Iterator[int]:
    c = 0
    while mask:
        if mask & 1:
            yield c
        mask >>= 1
        c += 1


class _ListColoring:
    """Complete search for a coloring inside per-vertex color lists."""

    def __init__(self, adj: Sequence[frozenset[int]]):
        self.adj = adj
        self.nodes = 0
        # conflict counts steer branching towards hard spots (dom/wdeg style)
        self.weight = [0] * len(adj)

    def _propagate(self, dom: list[int], queue: list[int]) -> bool:
        adj = self.adj
        while queue:
            v = queue.pop()
            bit = dom[v]
            for w in adj[v]:
                d = dom[w]
                if d & bit:
                    d &= ~bit
                    if not d:
                        self.weight[w] += 1
                        self.weight[v] += 1
                        return False
                    dom[w] = d
                    if d & (d - 1) == 0:
                        queue.append(w)
        return True

    def solve(self, dom: list[int]) -> list[int] | None:
        dom = list(dom)
        if any(d == 0 for d in dom):
            return None
        if not self._propagate(dom, [v for v, d in enumerate(dom) if d & (d - 1) == 0]):
            return None
        return self._solve(dom)

    def _peel(self, dom: list[int], open_: list[int]) -> tuple[list[int], list[int]]:
        # a vertex with more colors left than open neighbours can always be
        # colored last; peel those repeatedly and keep the core
        alive = set(open_)
        cnt = {v: sum(1 for w in self.adj[v] if w in alive) for v in open_}
        stack = [v for v in open_ if bin(dom[v]).count("1") > cnt[v]]
        peeled = []
        while stack:
            v = stack.pop()
            if v not in alive:
                continue
            alive.discard(v)
            peeled.append(v)
            for w in self.adj[v]:
                if w in alive:
                    cnt[w] -= 1
                    if bin(dom[w]).count("1") > cnt[w]:
                        stack.append(w)
        return [v for v in open_ if v in alive], peeled

    def _probe(self, dom: list[int], core: list[int]) -> bool:
        # failed-value probing: drop any color whose propagation wipes out a list
        changed = True
        while changed:
            changed = False
            for v in core:
                if dom[v] & (dom[v] - 1) == 0:
                    continue
                for c in _bits(dom[v]):
                    trial = list(dom)
                    trial[v] = 1 << c
                    if self._propagate(trial, [v]):
                        continue
                    dom[v] &= ~(1 << c)
                    if not self._propagate(dom, [v] if dom[v] & (dom[v] - 1) == 0 else []):
                        return False
                    changed = True
        return True

    def _solve(self, dom: list[int]) -> list[int] | None:
        open_ = [v for v, d in enumerate(dom) if d & (d - 1)]
        if not open_:
            return dom
        core, peeled = self._peel(dom, open_)
        if not self._probe(dom, core):
            return None
        core = [v for v in core if dom[v] & (dom[v] - 1)]
        for comp in self._components(dom, core):
            res = self._branch(dom, comp)
            if res is None:
                return None
            for v in comp:
                dom[v] = res[v]
        for v in reversed(peeled):
            used = 0
            for w in self.adj[v]:
                if dom[w] & (dom[w] - 1) == 0:
                    used |= dom[w]
            free = dom[v] & ~used
            dom[v] = free & -free
        return dom

    def _components(self, dom, open_):
        is_open = set(open_)
        seen = set()
        comps = []
        for s in open_:
            if s in seen:
                continue
            seen.add(s)
            stack, comp = [s], []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.adj[v]:
                    if w in is_open and w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(comp)
        return comps

    def _branch(self, dom: list[int], comp: list[int]) -> list[int] | None:
        self.nodes += 1
        wt = self.weight
        v = min(comp, key=lambda x: (bin(dom[x]).count("1"), -wt[x], x))
        # Two colors are interchangeable on this component when every list in
        # it holds both or neither.  Assigned neighbours are already propagated
        # into the lists and peeled vertices can always be colored afterwards,
        # so trying one color per class is enough.
        sig: dict[int, int] = {}
        options = []
        for c in _bits(dom[v]):
            key = sum(1 << i for i, u in enumerate(comp) if dom[u] >> c & 1)
            if key not in sig:
                sig[key] = c
                options.append(c)
        for c in options:
            trial = list(dom)
            trial[v] = 1 << c
            if not self._propagate(trial, [v]):
                continue
            res = self._solve(trial)
            if res is not None:
                return res
        return None


def list_coloring(g: OrderedGraph, lists: Sequence[Sequence[int]]) -> list[int] | None:
    """A legal coloring choosing each vertex color from its list, or None."""
    solver = _ListColoring(g.adj)
    dom = [sum(1 << c for c in set(lst)) for lst in lists]
    res = solver.solve(dom)
    if res is None:
        return None
    return [d.bit_length() - 1 for d in res]


# ---------------------------------------------------------------------------
# SAT oracle (the "sat" engine)


class SatColoringOracle:
    """Incremental SAT encoding of k-coloring; queries use assumptions."""

    def __init__(self, g: OrderedGraph, k: int, solver: str = "g4"):
        from pysat.solvers import Solver

        self.g, self.k = g, k
        self.calls = 0
        self._solver = Solver(name=solver)
        add = self._solver.add_clause
        for v in range(g.n):
            add([self.var(v, c) for c in range(k)])
            for c1 in range(k):
                for c2 in range(c1 + 1, k):
                    add([-self.var(v, c1), -self.var(v, c2)])
        for i, j in g.edges:
            for c in range(k):
                add([-self.var(i, c), -self.var(j, c)])

    def var(self, v: int, c: int) -> int:
        return v * self.k + c + 1

    def solve(self, fixed: Mapping[int, int] = {}, forbidden: Sequence[int] = ()) -> list[int] | None:
        """A coloring extending ``fixed`` and avoiding ``forbidden`` colors everywhere."""
        self.calls += 1
        assumptions = [self.var(v, c) for v, c in fixed.items()]
        assumptions += [-self.var(v, c) for c in forbidden for v in range(self.g.n) if fixed.get(v) != c]
        if not self._solver.solve(assumptions=assumptions):
            return None
        model = self._solver.get_model()
        out = [0] * self.g.n
        for lit in model:
            if lit > 0 and lit <= self.g.n * self.k:
                v, c = divmod(lit - 1, self.k)
                out[v] = c
        return out

    def close(self):
        self._solver.delete()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


# ---------------------------------------------------------------------------
# lexicographically first coloring


def _lf_dfs(g: OrderedGraph, pal: list[int], fixed: Mapping[int, int]) -> tuple[list[int] | None, int]:
    n = g.n
    earlier = [[w for w in g.adj[v] if w < v] for v in range(n)]
    col = [-1] * n
    nodes = 0
    v = 0
    idx = [0] * (n + 1)
    # explicit stack: idx[v] is the next palette slot to try at depth v
    while 0 <= v < n:
        opts = [fixed[v]] if v in fixed else pal
        placed = False
        while idx[v] < len(opts):
            c = opts[idx[v]]
            idx[v] += 1
            if all(col[w] != c for w in earlier[v]):
                col[v] = c
                nodes += 1
                placed = True
                break
        if placed:
            v += 1
            if v < n:
                idx[v] = 0
        else:
            col[v] = -1
            v -= 1
    if v < 0:
        return None, nodes
    return col, nodes


def _lf_prefix(n: int, pal: list[int], fixed: Mapping[int, int], extend) -> tuple[list[int] | None, int]:
    """Prefix search: ``extend(partial)`` returns a full coloring or None."""
    calls = 0
    partial = dict(fixed)
    calls += 1
    current = extend(partial)
    if current is None:
        return None, calls
    for v in range(n):
        if v in partial:
            continue
        for c in pal:
            if c >= current[v]:
                break
            calls += 1
            trial = extend({**partial, v: c})
            if trial is not None:
                current = trial
                break
        partial[v] = current[v]
    return [partial[v] for v in range(n)], calls


def lf_coloring(g: OrderedGraph, k: int, palette: Sequence[int] | None = None,
                method: str = "auto", fixed: Mapping[int, int] | None = None) -> LfColorResult:
    """Lex-minimum legal k-coloring over ``palette``, or the sentinel ``1 0^n``.

    ``fixed`` pins some positions; the result is then the lex-minimum among
    legal colorings agreeing with the pins.
    """
    pal = _palette(k, palette)
    fixed = dict(fixed or {})
    for v, c in fixed.items():
        if not 0 <= v < g.n or c not in pal:
            raise UsageError(f"pinned color {c} at vertex {v} is outside the palette or graph")
    if method == "auto":
        method = "csp" if g.n <= 120 else "sat"
    if method == "dfs":
        col, nodes = _lf_dfs(g, pal, fixed)
    elif method == "csp":
        solver = _ListColoring(g.adj)
        full = sum(1 << c for c in pal)

        def extend(partial):
            dom = [1 << partial[v] if v in partial else full for v in range(g.n)]
            res = solver.solve(dom)
            return None if res is None else [d.bit_length() - 1 for d in res]

        col, nodes = _lf_prefix(g.n, pal, fixed, extend)
    elif method == "sat":
        forbidden = [c for c in range(k) if c not in pal]
        with SatColoringOracle(g, k) as oracle:
            col, nodes = _lf_prefix(g.n, pal, fixed, lambda partial: oracle.solve(partial, forbidden))
    else:
        raise UsageError(f"unknown method {method!r}")
    if col is None:
        return LfColorResult("uncolorable", None, sentinel(g.n), nodes)
    return LfColorResult("colored", Coloring.of(col, k), None, nodes)


def is_k_colorable(g: OrderedGraph, k: int, method: str = "csp") -> bool:
    """Whether a legal k-coloring exists (same answer as ``lf_coloring(...).colored``)."""
    if method == "dfs":
        return lf_coloring(g, k, method="dfs").colored
    if method == "csp":
        return list_coloring(g, [range(k)] * g.n) is not None
    if method == "sat":
        with SatColoringOracle(g, k) as oracle:
            return oracle.solve() is not None
    raise UsageError(f"unknown method {method!r}")
