"""Value types shared by every other module.

Graphs carry an explicit vertex order (it fixes the positions of a coloring
string) and, optionally, a rotation system: for each vertex the cyclic
counterclockwise order of its neighbours.  Planarity is certified by face
tracing on the rotation system, never by a general planarity test.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class UsageError(ValueError):
    """Malformed input or violated precondition."""


class NoEmbeddingError(UsageError):
    """Raised when a planarity claim is requested for a graph without rotations."""


class Order(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


ROLE_TAGS = frozenset({
    "variable-positive", "variable-negative",
    "palette-B", "palette-T", "palette-F",
    "clause-internal", "wire", "crossover", "new-pendant", "old",
})


# ---------------------------------------------------------------------------
# strings and orders


def _ranks(s: str, alphabet: str | None) -> list[int]:
    if alphabet is None:
        return [ord(ch) for ch in s]
    try:
        return [alphabet.index(ch) for ch in s]
    except ValueError:
        bad = next(ch for ch in s if ch not in alphabet)
        raise UsageError(f"symbol {bad!r} not in alphabet {alphabet!r}") from None


def _cmp(x, y) -> Order:
    return Order.LESS if x < y else Order.GREATER if x > y else Order.EQUAL


def lex_compare(a: str, b: str, alphabet: str | None = None) -> Order:
    """Positional comparison of two equal-length strings.

    ``alphabet`` lists the symbols in ascending order; when omitted the
    character order is used, which is correct for digit alphabets.
    """
    if len(a) != len(b):
        raise UsageError(f"lex_compare needs equal lengths, got {len(a)} and {len(b)}")
    return _cmp(_ranks(a, alphabet), _ranks(b, alphabet))


def shortlex_compare(a: str, b: str, alphabet: str | None = None) -> Order:
    """Length first, then positional order."""
    ra, rb = _ranks(a, alphabet), _ranks(b, alphabet)
    if len(ra) != len(rb):
        return _cmp(len(ra), len(rb))
    return _cmp(ra, rb)


def shortlex_key(s: str, alphabet: str | None = None) -> tuple[int, list[int]]:
    return (len(s), _ranks(s, alphabet))


def sentinel(length: int) -> str:
    """``bin(2**length)``: a one followed by ``length`` zeros."""
    return "1" + "0" * length


@dataclass(frozen=True)
class Coloring:
    k: int
    digits: str

    def __post_init__(self):
        if self.k < 2:
            raise UsageError(f"need at least two colors, got k={self.k}")
        for ch in self.digits:
            if not ch.isdigit() or int(ch) >= self.k:
                raise UsageError(f"digit {ch!r} out of range for k={self.k}")

    def __str__(self) -> str:
        return self.digits

    def __len__(self) -> int:
        return len(self.digits)

    def __getitem__(self, i: int) -> int:
        return int(self.digits[i])

    @classmethod
    def of(cls, colors: Iterable[int], k: int) -> "Coloring":
        return cls(k, "".join(str(c) for c in colors))


@dataclass(frozen=True)
class PolynomialBound:
    """p(s) = sum(c_i * s**i) with nonnegative integer coefficients."""

    coeffs: tuple[int, ...] = (0, 1)

    def __post_init__(self):
        if any(c < 0 for c in self.coeffs):
            raise UsageError("polynomial coefficients must be nonnegative")

    def __call__(self, s: int) -> int:
        return sum(c * s**i for i, c in enumerate(self.coeffs))

    def shifted(self, by: int) -> "PolynomialBound":
        head = (self.coeffs[0] + by,) if self.coeffs else (by,)
        return PolynomialBound(head + tuple(self.coeffs[1:]))

    def __str__(self) -> str:
        terms = [f"{c}" if i == 0 else f"{c}*s^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class OrderedGraph:
    """Undirected simple graph whose vertex order is part of its identity."""

    n: int
    edges: tuple[tuple[int, int], ...] = ()
    labels: tuple[str, ...] = ()
    rotation: tuple[tuple[int, ...], ...] | None = None
    roles: tuple[str | None, ...] = ()
    meta: Mapping = field(default_factory=dict, compare=False)

    def __post_init__(self):
        n = self.n
        if n < 0:
            raise UsageError("vertex count must be nonnegative")
        norm = set()
        for e in self.edges:
            i, j = e
            if not (0 <= i < n and 0 <= j < n):
                raise UsageError(f"edge {e} references a vertex outside 0..{n - 1}")
            if i == j:
                raise UsageError(f"self-loop at vertex {i}")
            pair = (min(i, j), max(i, j))
            if pair in norm:
                raise UsageError(f"duplicate edge {pair}")
            norm.add(pair)
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"v{i + 1}" for i in range(n)))
        elif len(self.labels) != n:
            raise UsageError("labels length differs from vertex count")
        else:
            object.__setattr__(self, "labels", tuple(self.labels))
        if not self.roles:
            object.__setattr__(self, "roles", (None,) * n)
        elif len(self.roles) != n:
            raise UsageError("roles length differs from vertex count")
        else:
            object.__setattr__(self, "roles", tuple(self.roles))
        for r in self.roles:
            if r is not None and r not in ROLE_TAGS:
                raise UsageError(f"unknown role tag {r!r}")
        if self.rotation is not None:
            rot = tuple(tuple(r) for r in self.rotation)
            if len(rot) != n:
                raise UsageError("rotation must list every vertex")
            for v, cyc in enumerate(rot):
                if len(cyc) != len(set(cyc)) or set(cyc) != self.adj[v]:
                    raise UsageError(f"rotation at vertex {v} is not a permutation of its neighbours")
            object.__setattr__(self, "rotation", rot)

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for i, j in self.edges:
            nb[i].add(j)
            nb[j].add(i)
        return tuple(frozenset(s) for s in nb)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adj[i]

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def replace(self, **changes) -> "OrderedGraph":
        data = dict(n=self.n, edges=self.edges, labels=self.labels,
                    rotation=self.rotation, roles=self.roles, meta=dict(self.meta))
        data.update(changes)
        return OrderedGraph(**data)

    def reorder(self, order: Sequence[int]) -> "OrderedGraph":
        """Return the graph whose position ``i`` holds old vertex ``order[i]``."""
        if sorted(order) != list(range(self.n)):
            raise UsageError("reorder needs a permutation of the vertices")
        new_of = {old: new for new, old in enumerate(order)}
        rot = None
        if self.rotation is not None:
            rot = tuple(tuple(new_of[w] for w in self.rotation[old]) for old in order)
        return OrderedGraph(
            n=self.n,
            edges=tuple((new_of[i], new_of[j]) for i, j in self.edges),
            labels=tuple(self.labels[old] for old in order),
            rotation=rot,
            roles=tuple(self.roles[old] for old in order),
            meta=dict(self.meta),
        )

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        d: dict = {"n": self.n, "labels": list(self.labels), "edges": [list(e) for e in self.edges]}
        if self.rotation is not None:
            d["rotation"] = [list(r) for r in self.rotation]
        roles = {str(i): r for i, r in enumerate(self.roles) if r is not None}
        if roles:
            d["roles"] = roles
        if self.meta:
            d["meta"] = dict(self.meta)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: Mapping) -> "OrderedGraph":
        try:
            n = int(d["n"])
            roles_map = d.get("roles") or {}
            roles = tuple(roles_map.get(str(i)) for i in range(n)) if roles_map else ()
            return cls(
                n=n,
                edges=tuple(tuple(e) for e in d.get("edges", ())),
                labels=tuple(d.get("labels") or ()),
                rotation=d.get("rotation"),
                roles=roles,
                meta=dict(d.get("meta") or {}),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, UsageError):
                raise
            raise UsageError(f"malformed graph JSON: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "OrderedGraph":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise UsageError(f"graph JSON does not parse: {exc}") from exc


def rotation_from_coords(n: int, edges: Iterable[tuple[int, int]],
                         coords: Sequence[tuple[float, float]]) -> tuple[tuple[int, ...], ...]:
    """Counterclockwise neighbour order of a straight-line drawing."""
    nb: list[list[int]] = [[] for _ in range(n)]
    for i, j in edges:
        nb[i].append(j)
        nb[j].append(i)
    rot = []
    for v in range(n):
        x0, y0 = coords[v]
        rot.append(tuple(sorted(nb[v], key=lambda w: math.atan2(coords[w][1] - y0, coords[w][0] - x0))))
    return tuple(rot)


def drawn_graph(coords: Sequence[tuple[float, float]], edges: Iterable[tuple[int, int]],
                labels: Sequence[str] = ()) -> OrderedGraph:
    """Graph with the rotation system induced by a straight-line drawing."""
    edges = list(edges)
    return OrderedGraph(n=len(coords), edges=tuple(edges), labels=tuple(labels),
                        rotation=rotation_from_coords(len(coords), edges, coords))


# ---------------------------------------------------------------------------
# embeddings


@dataclass(frozen=True)
class EmbeddingReport:
    planar: bool
    genus: int
    faces: int
    components: int


def trace_faces(g: OrderedGraph) -> list[list[int]]:
    """Face boundary walks of the rotation system, as vertex sequences.

    A dart (u, v) is followed by (v, w) where w comes right after u in the
    rotation at v.  Isolated vertices contribute one single-vertex face.
    """
    if g.rotation is None:
        raise NoEmbeddingError("graph carries no rotation system")
    pos = [{w: i for i, w in enumerate(r)} for r in g.rotation]
    seen: set[tuple[int, int]] = set()
    faces = []
    for u in range(g.n):
        if not g.rotation[u]:
            faces.append([u])
            continue
        for v in g.rotation[u]:
            if (u, v) in seen:
                continue
            walk = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                walk.append(a)
                rb = g.rotation[b]
                a, b = b, rb[(pos[b][a] + 1) % len(rb)]
            faces.append(walk)
    return faces


def verify_embedding(g: OrderedGraph) -> EmbeddingReport:
    """Euler-characteristic check of the rotation system, per component."""
    faces = trace_faces(g)
    comp_of = [0] * g.n
    comps = g.components()
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    f_count = [0] * len(comps)
    for f in faces:
        f_count[comp_of[f[0]]] += 1
    genus = 0
    for ci, comp in enumerate(comps):
        v = len(comp)
        e = sum(g.degree(x) for x in comp) // 2
        chi = v - e + f_count[ci]
        if chi > 2 or chi % 2:
            raise UsageError(f"rotation system is malformed (component Euler characteristic {chi})")
        genus += (2 - chi) // 2
    return EmbeddingReport(planar=genus == 0, genus=genus, faces=len(faces), components=len(comps))


def face_with(g: OrderedGraph, vertices: Iterable[int]) -> list[int] | None:
    """First traced face whose boundary walk contains all given vertices."""
    want = set(vertices)
    for f in trace_faces(g):
        if want <= set(f):
            return f
    return None


def attach_pendant_in_rotation(g: OrderedGraph, at: int, new_label: str | None = None,
                               role: str | None = None) -> OrderedGraph:
    """Append a degree-one vertex adjacent to ``at``.

    The new vertex is placed in the rotation at ``at`` right after its
    lowest-index neighbour; a pendant sits inside a single face, so genus is
    unchanged.
    """
    if g.rotation is None:
        raise NoEmbeddingError("pendant attachment needs a rotation system")
    if not 0 <= at < g.n:
        raise UsageError(f"vertex {at} out of range 0..{g.n - 1}")
    w = g.n
    rot = [list(r) for r in g.rotation]
    cyc = rot[at]
    if cyc:
        i = cyc.index(min(cyc))
        cyc.insert(i + 1, w)
    else:
        cyc.append(w)
    rot.append([at])
    return OrderedGraph(
        n=g.n + 1,
        edges=g.edges + ((at, w),),
        labels=g.labels + (new_label or f"v{w + 1}",),
        rotation=tuple(tuple(r) for r in rot),
        roles=g.roles + (role,),
        meta=dict(g.meta),
    )


def contract_edge(g: OrderedGraph, keep: int, drop: int) -> OrderedGraph:
    """Merge ``drop`` into ``keep`` along their edge, preserving the embedding.

    The rotation at the merged vertex is ``keep``'s rotation with ``drop``
    replaced by ``drop``'s other neighbours, read cyclically from the slot
    after ``keep``.  Neighbourhoods must be disjoint apart from the edge.
    Vertex ``drop`` is removed and later indices shift down by one.
    """
    if not g.has_edge(keep, drop):
        raise UsageError(f"no edge {keep}-{drop} to contract")
    if (g.adj[keep] & g.adj[drop]):
        raise UsageError("contraction would create a parallel edge")
    if g.rotation is None:
        raise NoEmbeddingError("contraction needs a rotation system")
    rk, rd = list(g.rotation[keep]), list(g.rotation[drop])
    i = rd.index(keep)
    tail = rd[i + 1:] + rd[:i]
    j = rk.index(drop)
    merged = rk[:j] + tail + rk[j + 1:]
    rot = [list(r) for r in g.rotation]
    rot[keep] = merged
    for w in rd:
        if w != keep:
            rot[w] = [keep if x == drop else x for x in rot[w]]
    edges = []
    for a, b in g.edges:
        if {a, b} == {keep, drop}:
            continue
        a = keep if a == drop else a
        b = keep if b == drop else b
        edges.append((a, b))
    shift = lambda x: x - 1 if x > drop else x  # noqa: E731
    del rot[drop]
    return OrderedGraph(
        n=g.n - 1,
        edges=tuple((shift(a), shift(b)) for a, b in edges),
        labels=g.labels[:drop] + g.labels[drop + 1:],
        rotation=tuple(tuple(shift(x) for x in r) for r in rot),
        roles=g.roles[:drop] + g.roles[drop + 1:],
        meta=dict(g.meta),
    )


# ---------------------------------------------------------------------------
# small named graphs with planar drawings


def _polygon(k: int, r: float = 1.0, phase: float = math.pi / 2) -> list[tuple[float, float]]:
    return [(r * math.cos(phase - 2 * math.pi * i / k), r * math.sin(phase - 2 * math.pi * i / k)) for i in range(k)]


def complete_graph(k: int) -> OrderedGraph:
    """K1..K4 with a planar drawing (K4: triangle plus centre)."""
    if k > 4:
        raise UsageError("only K1..K4 are planar")
    if k == 4:
        coords = _polygon(3) + [(0.0, 0.0)]
    elif k == 2:
        coords = [(0.0, 0.0), (1.0, 0.0)]
    else:
        coords = _polygon(k) if k else []
    edges = [(i, j) for i in range(k) for j in range(i + 1, k)]
    return drawn_graph(coords, edges)


def cycle_graph(k: int) -> OrderedGraph:
    return drawn_graph(_polygon(k), [(i, (i + 1) % k) for i in range(k)])


def path_graph(k: int) -> OrderedGraph:
    return drawn_graph([(float(i), 0.0) for i in range(k)], [(i, i + 1) for i in range(k - 1)])


def empty_graph(k: int = 0) -> OrderedGraph:
    return drawn_graph([(float(i), 0.0) for i in range(k)], [])
