"""Three problems whose membership is easy but whose lex-first solution is not.

Each instance carries a trivial witness that makes membership a syntactic
check, while LF asks for the least solution overall.  Solutions are 0/1
strings (1 = true / chosen), so LF prefers leaving early positions unset.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .coloring import CapExceeded
from .model import OrderedGraph, UsageError
from .satlex import CnfFormula, satisfies_binary

MAX_ENUM = 20


@dataclass(frozen=True)
class PSatInstance:
    formula: CnfFormula
    designated: int

    def __post_init__(self):
        if not 1 <= self.designated <= max(self.formula.n, 1) or self.formula.n < 1:
            raise UsageError(f"designated variable {self.designated} outside 1..{self.formula.n}")

    def to_dict(self) -> dict:
        return {"formula": self.formula.to_dict(), "designated": self.designated}

    @classmethod
    def from_dict(cls, d) -> "PSatInstance":
        return cls(CnfFormula.from_dict(d["formula"]), int(d["designated"]))


@dataclass(frozen=True)
class PCliqueInstance:
    graph: OrderedGraph
    C: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "C", frozenset(self.C))
        if any(not 0 <= v < self.graph.n for v in self.C):
            raise UsageError("C must be a subset of the vertex set")

    def to_dict(self) -> dict:
        return {"graph": self.graph.to_dict(), "C": sorted(self.C)}

    @classmethod
    def from_dict(cls, d) -> "PCliqueInstance":
        return cls(OrderedGraph.from_dict(d["graph"]), frozenset(d["C"]))


@dataclass(frozen=True)
class PKnapsackInstance:
    sizes: tuple[int, ...]
    values: tuple[int, ...]
    k: int
    b: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.sizes) != len(self.values):
            raise UsageError("sizes and values must have one entry per element")
        if any(s < 1 for s in self.sizes) or any(v < 1 for v in self.values):
            raise UsageError("sizes and values must be positive")
        if self.k < 1 or self.b < 1:
            raise UsageError("k and b must be positive")
        if self.labels is not None and len(self.labels) != len(self.sizes):
            raise UsageError("one label per element")

    @property
    def n(self) -> int:
        return len(self.sizes)

    def to_dict(self) -> dict:
        d = {"sizes": list(self.sizes), "values": list(self.values), "k": self.k, "b": self.b}
        if self.labels is not None:
            d["labels"] = list(self.labels)
        return d

    @classmethod
    def from_dict(cls, d) -> "PKnapsackInstance":
        labels = tuple(d["labels"]) if d.get("labels") is not None else None
        return cls(tuple(d["sizes"]), tuple(d["values"]), int(d["k"]), int(d["b"]), labels)


def _guard(n: int, cap: int) -> None:
    if n > cap:
        raise CapExceeded(f"2^{n} candidate strings; enumeration is capped at n <= {cap}")


def _strings(n: int):
    # ascending lex order over {0,1}^n
    for t in itertools.product("01", repeat=n):
        yield "".join(t)


# -- P-SAT


def psat_member(inst: PSatInstance) -> bool:
    return all(inst.designated in c for c in inst.formula.clauses)


def psat_solution(inst: PSatInstance, a: str) -> bool:
    return len(a) == inst.formula.n and not set(a) - {"0", "1"} and satisfies_binary(inst.formula.clauses, a)


def psat_lf(inst: PSatInstance, cap: int = MAX_ENUM) -> str | None:
    """Least satisfying 0/1 assignment, by depth-first search with 0 first."""
    f = inst.formula
    _guard(f.n, cap)
    by_last: list[list[tuple[int, ...]]] = [[] for _ in range(f.n + 1)]
    for c in f.clauses:
        if not c:
            return None
        by_last[max(abs(x) for x in c)].append(c)
    a = [""] * f.n

    def ok(c) -> bool:
        return any((a[abs(x) - 1] == "1") == (x > 0) for x in c)

    def rec(i: int) -> bool:
        if i == f.n:
            return True
        for val in "01":
            a[i] = val
            if all(ok(c) for c in by_last[i + 1]) and rec(i + 1):
                return True
        return False

    return "".join(a) if rec(0) else None


# -- P-CLIQUE


def _is_clique(g: OrderedGraph, vs: Sequence[int]) -> bool:
    return all(g.has_edge(u, v) for u, v in itertools.combinations(vs, 2))


def pclique_member(inst: PCliqueInstance) -> bool:
    return _is_clique(inst.graph, sorted(inst.C))


def characteristic(n: int, subset) -> str:
    s = set(subset)
    return "".join("1" if i in s else "0" for i in range(n))


def pclique_solution(inst: PCliqueInstance, chi: str) -> bool:
    vs = [i for i, ch in enumerate(chi) if ch == "1"]
    return len(chi) == inst.graph.n and len(vs) >= len(inst.C) and _is_clique(inst.graph, vs)


def pclique_lf(inst: PCliqueInstance, cap: int = MAX_ENUM) -> str | None:
    """Least characteristic string of a clique with at least |C| vertices.

    Depth-first with 0 first; a branch is cut when the chosen vertices stop
    forming a clique or too few positions remain to reach |C|.
    """
    g, need, n = inst.graph, len(inst.C), inst.graph.n
    _guard(n, cap)
    chosen: list[int] = []
    bits = [""] * n

    def rec(i: int) -> bool:
        if len(chosen) + (n - i) < need:
            return False
        if i == n:
            return True
        bits[i] = "0"
        if rec(i + 1):
            return True
        if all(g.has_edge(u, i) for u in chosen):
            bits[i] = "1"
            chosen.append(i)
            if rec(i + 1):
                return True
            chosen.pop()
        return False

    return "".join(bits) if rec(0) else None


# -- P-KNAPSACK


def pknapsack_member(inst: PKnapsackInstance) -> bool:
    return any(s <= inst.b and v >= inst.k for s, v in zip(inst.sizes, inst.values))


def pknapsack_solution(inst: PKnapsackInstance, chi: str) -> bool:
    if len(chi) != inst.n:
        return False
    pick = [i for i, ch in enumerate(chi) if ch == "1"]
    return sum(inst.sizes[i] for i in pick) <= inst.b and sum(inst.values[i] for i in pick) >= inst.k


def pknapsack_lf(inst: PKnapsackInstance, cap: int = MAX_ENUM) -> str | None:
    """Least characteristic string of a subset within size b and worth at least k.

    The empty set never qualifies because k >= 1.  Depth-first with 0 first,
    pruned when the size budget is exceeded or the remaining elements cannot
    lift the value to k.
    """
    n = inst.n
    _guard(n, cap)
    suffix_value = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_value[i] = suffix_value[i + 1] + inst.values[i]
    bits = [""] * n

    def rec(i: int, size: int, value: int) -> bool:
        if size > inst.b or value + suffix_value[i] < inst.k:
            return False
        if i == n:
            return True
        bits[i] = "0"
        if rec(i + 1, size, value):
            return True
        bits[i] = "1"
        return rec(i + 1, size + inst.sizes[i], value + inst.values[i])

    return "".join(bits) if rec(0, 0, 0) else None


# -- enumeration oracles (independent of the searches above)


def enumeration_min(n: int, is_solution, cap: int = MAX_ENUM) -> str | None:
    _guard(n, cap)
    for s in _strings(n):
        if is_solution(s):
            return s
    return None


def embedded_witness(problem: str, inst) -> str:
    """The trivial solution promised by membership."""
    if problem == "p-sat":
        n = inst.formula.n
        return "".join("1" if i + 1 == inst.designated else "0" for i in range(n))
    if problem == "p-clique":
        return characteristic(inst.graph.n, inst.C)
    if problem == "p-knapsack":
        i = next(i for i, (s, v) in enumerate(zip(inst.sizes, inst.values)) if s <= inst.b and v >= inst.k)
        return characteristic(inst.n, [i])
    raise UsageError(f"unknown problem {problem!r}")


PROBLEMS = {
    "p-sat": (psat_member, psat_solution, psat_lf),
    "p-clique": (pclique_member, pclique_solution, pclique_lf),
    "p-knapsack": (pknapsack_member, pknapsack_solution, pknapsack_lf),
}
