"""sigma (3-CNF to planar 3-colorability), rho4, their composition, and rho_k.

sigma lays out an abstract graph and planarizes it:

* literal row: x_i and ~x_i for every variable, adjacent to each other and
  to the palette vertex B, which sits above the row;
* palette strip: a band of triangles s_0 s_1 s_2 ... with s_0, s_1, s_2 =
  B, T, F; consecutive triples are triangles, so s_j has the color of
  s_{j mod 3}.  The strip runs down the left side and along the bottom,
  under the clause row, and hands out B- and F-colored copies;
* clause row: per clause two OR gadgets, OR(OR(l1, l2), l3), whose output is
  adjacent to a B copy and an F copy, hence forced to T's color.

Literal wires are straight edges; wherever they cross, a crossover gadget is
spliced in (see ``layout.planarize``).  The vertex order puts x_1..x_n first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .coloring import Coloring, SatColoringOracle, lf_coloring, list_coloring
from .gadgets import load_gadget
from .layout import DegenerateDrawing, Drawing, planarize
from .model import OrderedGraph, UsageError, attach_pendant_in_rotation
from .satlex import FALSE, TRUE, CnfFormula, satisfies


class NotSupportedError(UsageError):
    pass


class ContractError(UsageError):
    """A documented precondition on the semantic input does not hold."""


@dataclass(frozen=True)
class SigmaOutput:
    graph: OrderedGraph
    formula: CnfFormula
    m: int
    n: int
    z: int
    variable_positions: tuple[int, ...]
    negative_positions: tuple[int, ...]
    palette_positions: dict = field(compare=False)
    crossings: int = 0


@dataclass(frozen=True)
class RhoOutput:
    graph: OrderedGraph
    m: int
    k: int = 4
    prefix: str = ""
    meta: dict = field(default_factory=dict, compare=False)


TAIL_ORDERS = ("standard", "palette-last")


def _category(role: str | None, tail: str) -> int:
    if role == "variable-positive":
        return 0
    if tail == "palette-last":
        ranks = {"variable-negative": 1, "clause-internal": 2, "wire": 3, "crossover": 3,
                 "palette-B": 4, "palette-T": 4, "palette-F": 4}
    else:
        ranks = {"variable-negative": 1, "palette-B": 2, "palette-T": 2, "palette-F": 2,
                 "clause-internal": 3, "wire": 4, "crossover": 4}
    return ranks[role]


def _draw(f: CnfFormula, attempt: int = 0) -> Drawing:
    n, z = f.n, f.z
    jitter = Fraction(attempt, 97)
    # later attempts also nudge each clause vertex, which breaks collinearities
    # that a common shift of the clause would preserve
    rng = random.Random(attempt)

    def nudge():
        return Fraction(rng.randint(-40, 40), 400) if attempt else Fraction(0)

    d = Drawing()
    pos = [d.add(f"x{i}", "variable-positive", 40 * (i - 1), 0) for i in range(1, n + 1)]
    neg = [d.add(f"~x{i}", "variable-negative", 40 * (i - 1) + 20, 0) for i in range(1, n + 1)]

    def lit_vertex(lit: int) -> int:
        return pos[lit - 1] if lit > 0 else neg[-lit - 1]

    def lit_x(lit: int) -> int:
        return 40 * (abs(lit) - 1) + (0 if lit > 0 else 20)

    # clause placement: sorted by mean literal column, spaced 24 apart
    centers = sorted(range(z), key=lambda j: (sum(lit_x(l) for l in f.clauses[j]) / 3, j))
    width = max(40 * n - 20, 0)
    span = 24 * (z - 1)
    left = Fraction(width - span, 2)
    cx_of = {j: left + 24 * r + jitter * (r + 1) for r, j in enumerate(centers)}
    cy = -40
    bottom = -70  # strip inner rail

    # palette strip: even samples on the inner rail, odd on the outer one;
    # the corner of the L falls on an odd sample, i.e. on the outer rail
    top = 10
    right = max((cx_of[j] for j in range(z)), default=0) + 24
    vsteps = 3
    hsteps = 2 * ((int(right) + 40) // 16 + 1)
    inner = []
    outer = []
    for t in range(vsteps + 1):
        fr = Fraction(t, vsteps)
        inner.append((Fraction(-40), top + fr * (bottom - top)))
        outer.append((Fraction(-50), top + fr * (bottom - 10 - top)))
    for t in range(1, hsteps + 1):
        fr = Fraction(t, hsteps)
        inner.append((-40 + fr * (right + 40), Fraction(bottom)))
        outer.append((-50 + fr * (right + 50), Fraction(bottom - 10)))
    strip = []
    names = {0: ("B", "palette-B"), 1: ("T", "palette-T"), 2: ("F", "palette-F")}
    for j in range(len(inner)):
        rail = inner if j % 2 == 0 else outer
        label, role = names.get(j, (f"s{j}", "wire"))
        strip.append(d.add(label, role, *rail[j]))
    B = strip[0]
    for j in range(len(strip)):
        if j + 1 < len(strip):
            d.connect(strip[j], strip[j + 1])
        if j + 2 < len(strip):
            d.connect(strip[j], strip[j + 2])
    for i in range(n):
        d.connect(pos[i], neg[i])
        d.connect(pos[i], B)
        d.connect(neg[i], B)

    def strip_copy(color: int, x) -> int:
        # inner-rail sample (even index) of the given palette color nearest to x
        cands = [j for j in range(vsteps + 1, len(strip)) if j % 2 == 0 and j % 3 == color]
        j = min(cands, key=lambda j: (abs(d.coords[strip[j]][0] - x), j))
        return strip[j]

    # clause gadgets; vertex creation follows clause order
    or_spec = load_gadget("or")
    for j, clause in enumerate(f.clauses):
        cx = cx_of[j]
        l1, l2, l3 = sorted(clause, key=lambda l: (lit_x(l), l))
        a1 = d.add(f"c{j + 1}.a1", "clause-internal", cx - 6 + nudge(), cy + nudge())
        b1 = d.add(f"c{j + 1}.b1", "clause-internal", cx - 2 + nudge(), cy + nudge())
        o1 = d.add(f"c{j + 1}.o1", "clause-internal", cx - 4 + nudge(), cy - 4 + nudge())
        a2 = d.add(f"c{j + 1}.a2", "clause-internal", cx + 2 + nudge(), cy - 8 + nudge())
        b2 = d.add(f"c{j + 1}.b2", "clause-internal", cx + 6 + nudge(), cy + nudge())
        o2 = d.add(f"c{j + 1}.o2", "clause-internal", cx + 4 + nudge(), cy - 14 + nudge())
        pb1 = strip_copy(0, cx - 6)
        pb2 = strip_copy(0, cx + 4)
        pf2 = strip_copy(2, cx + 8)
        # edges of the verified OR fragment, instantiated twice
        for (A, Bp, OUT, a, b, PB) in ((lit_vertex(l1), lit_vertex(l2), o1, a1, b1, pb1),
                                       (o1, lit_vertex(l3), o2, a2, b2, pb2)):
            m = {"A": A, "B": Bp, "OUT": OUT, "a": a, "b": b, "PB": PB}
            for u, v in or_spec.fragment.edges:
                lu, lv = or_spec.fragment.labels[u], or_spec.fragment.labels[v]
                if lu in ("PT", "PF") or lv in ("PT", "PF"):
                    continue  # palette triangle edges already exist on the strip
                # literal wires run from the literal down to the gadget
                if lu in ("A", "B"):
                    d.connect(m[lu], m[lv])
                elif lv in ("A", "B"):
                    d.connect(m[lv], m[lu])
                else:
                    d.connect(m[lu], m[lv])
        d.connect(o2, pf2)
    return d


def sigma(f: CnfFormula, tail: str = "standard") -> SigmaOutput:
    """Planar graph that is 3-colorable iff ``f`` is satisfiable."""
    if any(len(c) != 3 for c in f.clauses):
        raise UsageError("sigma expects exactly three literals per clause")
    if tail not in TAIL_ORDERS:
        raise UsageError(f"unknown tail order {tail!r}")
    for attempt in range(50):
        try:
            drawing = _draw(f, attempt)
            pl = planarize(drawing, load_gadget("crossover"))
            break
        except DegenerateDrawing:
            continue
    else:
        raise AssertionError("could not find a non-degenerate drawing")
    g = pl.graph
    order = sorted(range(g.n), key=lambda v: (_category(g.roles[v], tail), pl.created[g.labels[v]]))
    g = g.reorder(order)
    n = f.n
    pal = {name: g.labels.index(name) for name in ("B", "T", "F")}
    variable_positions = tuple(range(n))
    negative_positions = tuple(g.labels.index(f"~x{i}") for i in range(1, n + 1))
    meta = {"m": g.n, "n": n, "z": f.z, "variable_positions": list(variable_positions),
            "palette_positions": pal, "crossings": pl.crossings, "tail": tail}
    g = g.replace(meta=meta)
    return SigmaOutput(graph=g, formula=f, m=g.n, n=n, z=f.z, variable_positions=variable_positions,
                       negative_positions=negative_positions, palette_positions=pal, crossings=pl.crossings)


def sigma_color_from_assignment(out: SigmaOutput, a: str, lex_first: bool = False,
                                method: str = "sat", oracle: SatColoringOracle | None = None) -> Coloring:
    """The 3-coloring (colors 1, 2, 3) induced by a satisfying assignment.

    Palette T, F, B gets 1, 2, 3, variable vertex i gets ``a[i]`` and its
    negation the other of {1, 2}.  The rest is any completion (found by the
    SAT oracle, or by list coloring with ``method="csp"``), or the lex-first
    one when ``lex_first`` is set.  Pass an open ``SatColoringOracle(graph, 4)``
    to reuse one solver across many assignments.
    """
    if len(a) != out.n or not satisfies(out.formula, a):
        raise ContractError(f"assignment {a!r} does not satisfy the formula")
    pal = out.palette_positions
    fixed = {pal["T"]: 1, pal["F"]: 2, pal["B"]: 3}
    for i in range(out.n):
        val = 1 if a[i] == TRUE else 2
        fixed[out.variable_positions[i]] = val
        fixed[out.negative_positions[i]] = 3 - val
    found: list[int] | None
    if lex_first:
        res = lf_coloring(out.graph, 4, palette=[1, 2, 3], method=method, fixed=fixed)
        found = [int(ch) for ch in res.string] if res.colored else None
    elif method == "csp":
        found = list_coloring(out.graph, [[fixed[v]] if v in fixed else [1, 2, 3] for v in range(out.graph.n)])
    elif oracle is not None:
        found = oracle.solve(fixed, forbidden=[0])
    else:
        with SatColoringOracle(out.graph, 4) as own:
            found = own.solve(fixed, forbidden=[0])
    if found is None:
        raise AssertionError("satisfying assignment did not extend; sigma is broken")
    return Coloring.of(found, 4)


def decode_assignment(out: SigmaOutput, c: Coloring | str) -> dict:
    """Read a 3-coloring of sigma's graph back as palette roles and an assignment."""
    digits = str(c)
    pal = out.palette_positions
    col = {name: digits[pos] for name, pos in pal.items()}
    role = {v: k for k, v in col.items()}
    assignment = "".join(TRUE if role.get(digits[p]) == "T" else FALSE for p in out.variable_positions)
    return {"palette": col, "assignment": assignment}


# ---------------------------------------------------------------------------
# rho4 and rho_k


def rho4(g: OrderedGraph) -> RhoOutput:
    """New pendant u_i for every old v_i; new vertices first, old ones after."""
    m = g.n
    h = g if g.rotation is not None else None
    if h is not None:
        for i in range(m):
            h = attach_pendant_in_rotation(h, i, f"u{i + 1}", "new-pendant")
    else:
        h = OrderedGraph(
            n=2 * m,
            edges=g.edges + tuple((i, m + i) for i in range(m)),
            labels=g.labels + tuple(f"u{i + 1}" for i in range(m)),
            roles=g.roles + ("new-pendant",) * m,
            meta=dict(g.meta),
        )
    order = list(range(m, 2 * m)) + list(range(m))
    h = h.reorder(order)
    roles = tuple(r if r is not None else ("old" if i >= m else "new-pendant") for i, r in enumerate(h.roles))
    h = h.replace(roles=roles, meta={"m": m, "k": 4, "source": dict(g.meta)})
    return RhoOutput(graph=h, m=m, k=4, prefix="0" * m, meta=dict(h.meta))


def _forcing_tree(color: int) -> list[tuple[int, list[int]]]:
    """Post-order nodes (forced color, child positions) of a tree forcing ``color``."""
    nodes: list[tuple[int, list[int]]] = []

    def build(c: int) -> int:
        kids = [build(j) for j in range(c)]
        nodes.append((c, kids))
        return len(nodes) - 1

    build(color)
    return nodes


def rho_k(g: OrderedGraph, k: int) -> RhoOutput:
    """Generalisation of rho4 to k >= 5 colors.

    Every old vertex gets neighbours whose lex-first colors are forced to
    0, 1, ..., k-4 by private trees placed earlier in the order (a vertex
    whose earlier neighbours carry 0..c-1 is forced to c).  Old vertices are
    then left with the colors k-3, k-2, k-1.  Trees keep the graph planar.
    """
    if k < 5:
        raise NotSupportedError(f"rho_k is provided for k >= 5 (use rho4 for k = 4), got k={k}")
    if g.rotation is None:
        raise NotSupportedError("rho_k needs a rotation system")
    m = g.n
    h = g
    prefix = []
    new_order = []
    for i in range(m):
        for c in range(k - 3):
            nodes = _forcing_tree(c)
            index_of = {}
            # attach the root to v_i first, then grow the tree under it
            for pos in reversed(range(len(nodes))):
                color, kids = nodes[pos]
                parent = i if pos == len(nodes) - 1 else index_of[_parent(nodes, pos)]
                h = attach_pendant_in_rotation(h, parent, f"t{i + 1}.{c}.{pos}", "new-pendant")
                index_of[pos] = h.n - 1
            for pos, (color, _) in enumerate(nodes):
                new_order.append(index_of[pos])
                prefix.append(str(color))
    h = h.reorder(new_order + list(range(m)))
    nn = len(new_order)
    roles = tuple(r if r is not None else ("old" if i >= nn else "new-pendant") for i, r in enumerate(h.roles))
    h = h.replace(roles=roles, meta={"m": m, "k": k, "source": dict(g.meta)})
    return RhoOutput(graph=h, m=m, k=k, prefix="".join(prefix), meta=dict(h.meta))


def _parent(nodes, pos):
    for p, (_, kids) in enumerate(nodes):
        if pos in kids:
            return p
    raise KeyError(pos)


def eq1_pattern(lf: str, rho: RhoOutput) -> bool:
    """LF(rho(G)) lies in prefix . {k-3, k-2, k-1}^m."""
    p = rho.prefix
    allowed = {str(c) for c in range(rho.k - 3, rho.k)}
    return len(lf) == len(p) + rho.m and lf.startswith(p) and set(lf[len(p):]) <= allowed


def thm23_pattern(lf: str, m: int, n: int) -> bool:
    """LF in 0^m w 1 y with w in {1,2}^(n-1), y in {1,2,3}^(m-n)."""
    if n < 1 or len(lf) != 2 * m:
        return False
    head, w, bit, y = lf[:m], lf[m:m + n - 1], lf[m + n - 1], lf[m + n:]
    return set(head) <= {"0"} and set(w) <= {"1", "2"} and bit == "1" and set(y) <= {"1", "2", "3"}


def pipeline_t(f: CnfFormula, tail: str = "standard") -> tuple[SigmaOutput, RhoOutput]:
    """rho4(sigma(F)) with F padded to exactly three literals per clause."""
    from .satlex import normalize_to_3cnf

    s = sigma(normalize_to_3cnf(f), tail)
    r = rho4(s.graph)
    m = s.m
    meta = dict(r.meta)
    meta.update({"n": s.n, "z": s.z,
                 "variable_positions": [m + p for p in s.variable_positions],
                 "palette_positions": {k: m + v for k, v in s.palette_positions.items()}})
    r = RhoOutput(graph=r.graph.replace(meta=meta), m=m, k=4, prefix=r.prefix, meta=meta)
    return s, r
