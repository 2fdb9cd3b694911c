"""Planarization of straight-line drawings with crossover gadgets.

An abstract graph is given with exact rational coordinates.  Every crossing
of two edges is replaced by a copy of the crossover gadget, affinely squeezed
into a small neighbourhood of the crossing point so that its ports point
along the two edges.  The pieces of an edge between gadgets are then
contracted, so that an edge u-v crossed c times becomes the chain
u = N1, S1 = N2, ..., S_c, with one genuine edge S_c - v at the far end.
The rotation system is read off the drawing before contraction and carried
through every contraction, so the result comes with a planarity certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .gadgets import GadgetSpec
from .model import OrderedGraph, UsageError, contract_edge, rotation_from_coords, verify_embedding

Point = tuple[Fraction, Fraction]


class DegenerateDrawing(UsageError):
    """The drawing has a vertex on an edge or three edges through one point."""


def _orient(a: Point, b: Point, c: Point) -> int:
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _on_open_segment(p: Point, a: Point, b: Point) -> bool:
    if _orient(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]) \
        and p != a and p != b


def _crossing(a: Point, b: Point, c: Point, d: Point) -> tuple[Fraction, Point] | None:
    """Proper crossing of segments ab and cd: (parameter along ab, point)."""
    if max(a[0], b[0]) < min(c[0], d[0]) or max(c[0], d[0]) < min(a[0], b[0]):
        return None
    if max(a[1], b[1]) < min(c[1], d[1]) or max(c[1], d[1]) < min(a[1], b[1]):
        return None
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    if o1 * o2 >= 0 or o3 * o4 >= 0:
        return None
    rx, ry = b[0] - a[0], b[1] - a[1]
    sx, sy = d[0] - c[0], d[1] - c[1]
    den = rx * sy - ry * sx
    t = ((c[0] - a[0]) * sy - (c[1] - a[1]) * sx) / den
    return t, (a[0] + t * rx, a[1] + t * ry)


@dataclass
class Drawing:
    """Abstract graph under construction: labelled vertices with coordinates."""

    labels: list[str] = field(default_factory=list)
    roles: list[str | None] = field(default_factory=list)
    coords: list[Point] = field(default_factory=list)
    edges: list[tuple[int, int]] = field(default_factory=list)

    def add(self, label: str, role: str | None, x, y) -> int:
        self.labels.append(label)
        self.roles.append(role)
        self.coords.append((Fraction(x), Fraction(y)))
        return len(self.labels) - 1

    def connect(self, u: int, v: int) -> None:
        """Edge u-v; if it gets crossed, the chain starts at u and ends with a real edge at v."""
        if u == v or (u, v) in self.edges or (v, u) in self.edges:
            raise UsageError(f"bad or repeated edge {self.labels[u]}-{self.labels[v]}")
        self.edges.append((u, v))

    def crossings(self) -> list[tuple[int, int, Fraction, Fraction, Point]]:
        """All proper crossings as (edge e, edge f, t along e, t along f, point).

        Raises DegenerateDrawing when a vertex lies inside an edge or two
        crossings coincide.
        """
        P = self.coords
        for ei, (u, v) in enumerate(self.edges):
            for w in range(len(P)):
                if w not in (u, v) and _on_open_segment(P[w], P[u], P[v]):
                    raise DegenerateDrawing(f"vertex {self.labels[w]} lies on edge {self.labels[u]}-{self.labels[v]}")
        out = []
        seen: set[Point] = set()
        for (ei, (a, b)), (fi, (c, d)) in combinations(enumerate(self.edges), 2):
            if len({a, b, c, d}) < 4:
                continue
            hit = _crossing(P[a], P[b], P[c], P[d])
            if hit is None:
                continue
            t, pt = hit
            if pt in seen:
                raise DegenerateDrawing(f"three edges meet at {pt}")
            seen.add(pt)
            s = _crossing(P[c], P[d], P[a], P[b])[0]
            out.append((ei, fi, t, s, pt))
        return out


def _float(p: Point) -> tuple[float, float]:
    return float(p[0]), float(p[1])


def _seg_dist(p, a, b) -> float:
    ax, ay = a
    bx, by = b
    px, py = p
    dx, dy = bx - ax, by - ay
    L = dx * dx + dy * dy
    t = 0.0 if L == 0 else max(0.0, min(1.0, ((px - ax) * dx + (py - ay) * dy) / L))
    return math.hypot(px - ax - t * dx, py - ay - t * dy)


@dataclass
class Planarized:
    graph: OrderedGraph
    crossings: int
    # label -> construction index, for stable ordering by the caller
    created: dict[str, int]


def planarize(drawing: Drawing, crossover: GadgetSpec, prefix: str = "X") -> Planarized:
    """Replace every crossing of ``drawing`` by a copy of ``crossover``."""
    if crossover.coords is None:
        raise UsageError("crossover gadget needs a straight-line drawing")
    cross = drawing.crossings()
    fcoords = [_float(p) for p in drawing.coords]
    labels = list(drawing.labels)
    roles = list(drawing.roles)
    coords = list(fcoords)
    edges: list[tuple[int, int]] = []
    contract: list[tuple[int, int]] = []

    # crossing points along each edge, ordered from the edge's first endpoint
    along: dict[int, list[tuple[Fraction, int]]] = {i: [] for i in range(len(drawing.edges))}
    gc = crossover.coords
    frag = crossover.fragment
    P = crossover.ports
    ports_of: list[dict[str, int]] = []

    fsegs = [(fcoords[a], fcoords[b]) for a, b in drawing.edges]
    cpoints = [_float(c[4]) for c in cross]
    order = sorted(range(len(cross)), key=lambda i: (cross[i][0], cross[i][1]))
    for num, ci in enumerate(order, 1):
        ei, fi, t, s, pt = cross[ci]
        X = cpoints[ci]
        # room around X: other vertices, other crossings, edges not through X
        room = min(
            [math.dist(X, q) for q in fcoords]
            + [math.dist(X, q) for j, q in enumerate(cpoints) if j != ci]
            + [_seg_dist(X, *fsegs[j]) for j in range(len(fsegs)) if j not in (ei, fi)]
        )
        eps = room / 40.0
        (u, v), (x, y) = drawing.edges[ei], drawing.edges[fi]
        du = _unit(X, fcoords[u])
        dy = _unit(X, fcoords[y])
        base = len(labels)
        for w in range(frag.n):
            gx, gy = gc[w]
            labels.append(f"{prefix}{num}.{frag.labels[w]}")
            roles.append("crossover")
            coords.append((X[0] + eps * (gx * dy[0] + gy * du[0]), X[1] + eps * (gx * dy[1] + gy * du[1])))
        for a, b in frag.edges:
            edges.append((base + a, base + b))
        ports_of.append({name: base + P[name] for name in ("N", "E", "S", "W")})
        along[ei].append((t, len(ports_of) - 1, "NS"))
        along[fi].append((s, len(ports_of) - 1, "WE"))

    for ei, (u, v) in enumerate(drawing.edges):
        hits = sorted(along[ei])
        if not hits:
            edges.append((u, v))
            continue
        prev = u
        for _, gi, axis in hits:
            a, b = ("N", "S") if axis == "NS" else ("W", "E")
            edges.append((prev, ports_of[gi][a]))
            contract.append((prev, ports_of[gi][a]))
            prev = ports_of[gi][b]
        edges.append((prev, v))

    rot = rotation_from_coords(len(labels), edges, coords)
    g = OrderedGraph(n=len(labels), edges=tuple(edges), labels=tuple(labels), rotation=rot, roles=tuple(roles))
    rep = verify_embedding(g)
    if not rep.planar:
        raise AssertionError(f"planarized drawing has genus {rep.genus}")
    # contract by label so that index shifts do not matter
    for keep, drop in contract:
        ki, di = g.labels.index(labels[keep]), g.labels.index(labels[drop])
        g = contract_edge(g, ki, di)
    created = {lab: i for i, lab in enumerate(labels)}
    return Planarized(graph=g, crossings=len(cross), created=created)


def _unit(a, b):
    dx, dy = b[0] - a[0], b[1] - a[1]
    L = math.hypot(dx, dy)
    return dx / L, dy / L
