"""3-coloring gadgets: equality (wire link), clause OR, and planar crossover.

Every gadget is judged only by its behaviour, obtained by enumerating all
legal 3-colorings (colors 1, 2, 3) of the fragment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .coloring import CapExceeded, iter_legal_colorings
from .model import NoEmbeddingError, OrderedGraph, drawn_graph, trace_faces, verify_embedding

COLORS = (1, 2, 3)
MAX_FRAGMENT = 16

PORTS = {
    "equality": ("IN", "OUT"),
    "or": ("A", "B", "OUT", "PT", "PF", "PB"),
    "crossover": ("N", "E", "S", "W"),
}


@dataclass(frozen=True)
class GadgetSpec:
    kind: str
    fragment: OrderedGraph
    ports: Mapping[str, int]
    # straight-line drawing used when the gadget is spliced into a layout
    coords: tuple[tuple[float, float], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in PORTS:
            raise ValueError(f"unknown gadget kind {self.kind!r}")
        missing = set(PORTS[self.kind]) - set(self.ports)
        if missing:
            raise ValueError(f"{self.kind} gadget lacks ports {sorted(missing)}")
        idx = list(self.ports.values())
        if len(set(idx)) != len(idx) or any(not 0 <= i < self.fragment.n for i in idx):
            raise ValueError("gadget ports must be distinct vertices of the fragment")

    def interior(self) -> list[int]:
        ports = set(self.ports.values())
        return [v for v in range(self.fragment.n) if v not in ports]


@dataclass
class GadgetReport:
    kind: str
    passed: bool
    failures: list[dict]
    table: dict
    colorings: int

    def to_dict(self) -> dict:
        return {"kind": self.kind, "passed": self.passed, "failures": self.failures,
                "table": self.table, "colorings": self.colorings}


def _legal(spec: GadgetSpec, cap: int) -> list[tuple[int, ...]]:
    if spec.fragment.n > cap:
        raise CapExceeded(f"fragment has {spec.fragment.n} vertices, enumeration cap is {cap}")
    return list(iter_legal_colorings(spec.fragment, COLORS))


def _word(col) -> str:
    return "".join(str(c) for c in col)


def verify_equality_gadget(spec: GadgetSpec, cap: int = MAX_FRAGMENT) -> GadgetReport:
    if spec.kind != "equality":
        raise ValueError("expected an equality gadget")
    i, o = spec.ports["IN"], spec.ports["OUT"]
    failures = []
    reach: dict[int, set[int]] = {c: set() for c in COLORS}
    cols = _legal(spec, cap)
    for col in cols:
        reach[col[i]].add(col[o])
        if col[i] != col[o] and not any(f["condition"] == "equal-ports" for f in failures):
            failures.append({"condition": "equal-ports", "witness": _word(col)})
    for c in COLORS:
        if not reach[c]:
            failures.append({"condition": "all-colors", "color": c, "witness": None})
    table = {str(c): sorted(reach[c]) for c in COLORS}
    return GadgetReport("equality", not failures, failures, table, len(cols))


def verify_or_gadget(spec: GadgetSpec, cap: int = MAX_FRAGMENT) -> GadgetReport:
    """Check the OR contract relative to the gadget's own palette ports.

    Rows are the input pairs over {T, F}; each row records which palette
    roles OUT can take.  PT, PF, PB must get three distinct colors.  Soundness: FF forces OUT = F.  Completeness: every
    row is extendable and rows other than FF can reach OUT = T.  OUT never
    takes the B color.
    """
    if spec.kind != "or":
        raise ValueError("expected an OR gadget")
    p = spec.ports
    failures = []
    rows: dict[str, set[str]] = {r: set() for r in ("TT", "TF", "FT", "FF")}
    cols = _legal(spec, cap)
    seen_fail = set()
    for col in cols:
        role = {col[p["PT"]]: "T", col[p["PF"]]: "F", col[p["PB"]]: "B"}
        if len(role) < 3:
            # the local palette must always show three distinct colors
            if "palette" not in seen_fail:
                seen_fail.add("palette")
                failures.append({"condition": "palette", "row": None, "witness": _word(col)})
            continue
        a, b = role[col[p["A"]]], role[col[p["B"]]]
        if "B" in (a, b):
            continue
        out = role[col[p["OUT"]]]
        rows[a + b].add(out)
        if a + b == "FF" and out != "F" and "soundness" not in seen_fail:
            seen_fail.add("soundness")
            failures.append({"condition": "soundness", "row": "FF", "witness": _word(col)})
        if out == "B" and "never-B" not in seen_fail:
            seen_fail.add("never-B")
            failures.append({"condition": "never-B", "row": a + b, "witness": _word(col)})
    for r, outs in rows.items():
        if not outs:
            failures.append({"condition": "completeness", "row": r, "witness": None})
        elif r != "FF" and "T" not in outs:
            failures.append({"condition": "completeness", "row": r, "witness": None})
    table = {r: sorted(outs) for r, outs in rows.items()}
    return GadgetReport("or", not failures, failures, table, len(cols))


def ports_on_common_face(spec: GadgetSpec, cyclic: tuple[str, ...] | None = None) -> bool:
    """Whether one face walk holds every port (in the given cyclic order, if any)."""
    if spec.fragment.rotation is None:
        return False
    want = [spec.ports[name] for name in (cyclic or spec.ports)]
    for f in trace_faces(spec.fragment):
        if not set(want) <= set(f):
            continue
        if cyclic is None:
            return True
        seq = [v for v in f if v in want]
        # a port visited twice on the walk makes the order ambiguous
        if len(seq) != len(want):
            continue
        k = seq.index(want[0])
        seq = seq[k:] + seq[:k]
        rev = [seq[0]] + seq[1:][::-1]
        if seq == want or rev == want:
            return True
    return False


def embedding_ok(spec: GadgetSpec) -> bool:
    try:
        planar = verify_embedding(spec.fragment).planar
    except NoEmbeddingError:
        return False
    order = PORTS["crossover"] if spec.kind == "crossover" else None
    return planar and ports_on_common_face(spec, order)


def verify_crossover_gadget(spec: GadgetSpec, cap: int = MAX_FRAGMENT) -> GadgetReport:
    if spec.kind != "crossover":
        raise ValueError("expected a crossover gadget")
    p = spec.ports
    failures = []
    pairs: set[tuple[int, int]] = set()
    cols = _legal(spec, cap)
    for col in cols:
        n_, e_, s_, w_ = col[p["N"]], col[p["E"]], col[p["S"]], col[p["W"]]
        if (n_ != s_ or e_ != w_) and "opposite-ports" not in {f["condition"] for f in failures}:
            failures.append({"condition": "opposite-ports", "witness": _word(col)})
        if n_ == s_ and e_ == w_:
            pairs.add((n_, e_))
    for c1 in COLORS:
        for c2 in COLORS:
            if (c1, c2) not in pairs:
                failures.append({"condition": "all-pairs", "pair": [c1, c2], "witness": None})
    if not embedding_ok(spec):
        failures.append({"condition": "planar-outer-ports", "witness": None})
    table = {f"{c1}{c2}": (c1, c2) in pairs for c1 in COLORS for c2 in COLORS}
    return GadgetReport("crossover", not failures, failures, table, len(cols))


VERIFIERS = {
    "equality": verify_equality_gadget,
    "or": verify_or_gadget,
    "crossover": verify_crossover_gadget,
}


def verify_gadget(spec: GadgetSpec, cap: int = MAX_FRAGMENT) -> GadgetReport:
    return VERIFIERS[spec.kind](spec, cap)


# ---------------------------------------------------------------------------
# built-in fragments


def _equality() -> GadgetSpec:
    coords = ((-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (1.0, 0.0))
    edges = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]
    g = drawn_graph(coords, edges, ("IN", "a", "b", "OUT"))
    return GadgetSpec("equality", g, {"IN": 0, "OUT": 3}, coords)


def _or() -> GadgetSpec:
    # a, b see the inputs; OUT closes the triangle a-b-OUT and avoids PB
    labels = ("A", "B", "OUT", "a", "b", "PT", "PF", "PB")
    coords = ((-2.0, 2.0), (2.0, 2.0), (0.0, 0.0), (-1.0, 1.0), (1.0, 1.0),
              (-1.5, -2.5), (1.5, -2.5), (0.0, -1.5))
    edges = [(0, 3), (1, 4), (3, 4), (3, 2), (4, 2), (2, 7), (5, 6), (5, 7), (6, 7)]
    g = drawn_graph(coords, edges, labels)
    ports = {name: labels.index(name) for name in PORTS["or"]}
    return GadgetSpec("or", g, ports, coords)


def _crossover() -> GadgetSpec:
    # Wheel W4 (centre plus rim r_N, r_E, r_S, r_W) inside an 8-cycle that
    # alternates ports and corners; each port and the corner clockwise after
    # it form a triangle with the rim vertex on their side.
    import math

    labels = ("N", "E", "S", "W", "k_NE", "k_ES", "k_SW", "k_WN", "r_N", "r_E", "r_S", "r_W", "c")

    def polar(r, deg):
        return (r * math.cos(math.radians(deg)), r * math.sin(math.radians(deg)))

    coords = (
        polar(3, 90), polar(3, 0), polar(3, -90), polar(3, 180),
        polar(3, 45), polar(3, -45), polar(3, -135), polar(3, 135),
        polar(1.4, 67.5), polar(1.4, -22.5), polar(1.4, -112.5), polar(1.4, 157.5),
        (0.0, 0.0),
    )
    N, E, S, W, kNE, kES, kSW, kWN, rN, rE, rS, rW, c = range(13)
    edges = [
        (N, kNE), (kNE, E), (E, kES), (kES, S), (S, kSW), (kSW, W), (W, kWN), (kWN, N),
        (N, rN), (kNE, rN), (E, rE), (kES, rE), (S, rS), (kSW, rS), (W, rW), (kWN, rW),
        (rN, rE), (rE, rS), (rS, rW), (rW, rN),
        (c, rN), (c, rE), (c, rS), (c, rW),
    ]
    g = drawn_graph(coords, edges, labels)
    return GadgetSpec("crossover", g, {"N": N, "E": E, "S": S, "W": W}, coords)


_BUILDERS = {"equality": _equality, "or": _or, "crossover": _crossover}
_CACHE: dict[str, GadgetSpec] = {}


def load_gadget(kind: str) -> GadgetSpec:
    if kind not in _BUILDERS:
        raise ValueError(f"unknown gadget kind {kind!r}; expected one of {sorted(_BUILDERS)}")
    if kind not in _CACHE:
        _CACHE[kind] = _BUILDERS[kind]()
    return _CACHE[kind]
