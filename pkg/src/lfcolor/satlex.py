"""CNF formulas, the lex-first satisfying assignment, and Odd-Min-SAT.

Assignments are strings over ``"12"``: ``1`` is true, ``2`` is false, so the
lexicographic minimum prefers true.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .model import UsageError

TRUE, FALSE = "1", "2"


class DimacsError(UsageError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


class WidthError(UsageError):
    """A clause is wider than the normalization mode accepts."""


@dataclass(frozen=True)
class CnfFormula:
    n: int
    clauses: tuple[tuple[int, ...], ...] = ()
    decision_index: int | None = None

    def __post_init__(self):
        if self.n < 0:
            raise UsageError("variable count must be nonnegative")
        cl = tuple(tuple(int(x) for x in c) for c in self.clauses)
        for c in cl:
            for lit in c:
                if lit == 0 or abs(lit) > self.n:
                    raise UsageError(f"literal {lit} out of range for n={self.n}")
        object.__setattr__(self, "clauses", cl)
        if self.decision_index is not None and not 1 <= self.decision_index <= max(self.n, 1):
            raise UsageError(f"decision index {self.decision_index} out of range")

    @property
    def z(self) -> int:
        return len(self.clauses)

    @property
    def decision(self) -> int:
        return self.decision_index if self.decision_index is not None else self.n

    def __str__(self) -> str:
        def lit(x):
            return f"x{x}" if x > 0 else f"~x{-x}"
        if not self.clauses:
            return "T"
        return " & ".join("(" + " | ".join(lit(x) for x in c) + ")" if c else "()" for c in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.n} {self.z}"]
        lines += [" ".join(str(x) for x in c) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        d = {"n": self.n, "clauses": [list(c) for c in self.clauses]}
        if self.decision_index is not None:
            d["decision_index"] = self.decision_index
        return d

    @classmethod
    def from_dict(cls, d) -> "CnfFormula":
        return cls(int(d["n"]), tuple(tuple(c) for c in d["clauses"]), d.get("decision_index"))


def parse_dimacs(text: str) -> CnfFormula:
    n = z = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(lineno, f"malformed header {line!r}")
            try:
                n, z = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(lineno, f"malformed header {line!r}") from None
            if n < 0 or z < 0:
                raise DimacsError(lineno, "negative counts in header")
            continue
        if n is None:
            raise DimacsError(lineno, "clause before 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(lineno, f"bad literal {tok!r}") from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > n:
                raise DimacsError(lineno, f"literal {lit} exceeds variable count {n}")
            else:
                current.append(lit)
    if n is None:
        raise DimacsError(0, "missing 'p cnf' header")
    if current:
        clauses.append(tuple(current))
    if z is not None and len(clauses) != z:
        raise DimacsError(0, f"header declares {z} clauses, found {len(clauses)}")
    return CnfFormula(n, tuple(clauses))


def normalize_to_3cnf(f: CnfFormula, split: bool = False) -> CnfFormula:
    """Pad short clauses by repeating their last literal.

    Wide clauses are refused unless ``split`` is set, in which case they are
    chained through fresh variables numbered after the originals; the
    decision index keeps pointing at the last original variable.
    """
    out: list[tuple[int, ...]] = []
    n = f.n
    for c in f.clauses:
        if not c:
            raise WidthError("empty clause cannot be padded to width 3")
        if len(c) <= 3:
            out.append(tuple(c) + (c[-1],) * (3 - len(c)))
            continue
        if not split:
            raise WidthError(f"clause {c} has {len(c)} literals; only 1-3 are accepted")
        # (l1 | l2 | y1), (~y1 | l3 | y2), ..., (~yk | l_{r-1} | l_r)
        rest = list(c)
        n += 1
        out.append((rest[0], rest[1], n))
        rest = rest[2:]
        while len(rest) > 2:
            n += 1
            out.append((-(n - 1), rest[0], n))
            rest = rest[1:]
        out.append((-n, rest[0], rest[1]))
    return CnfFormula(n, tuple(out), f.decision if (split and n != f.n) else f.decision_index)


def _lit_true(lit: int, a: str) -> bool:
    v = a[abs(lit) - 1]
    return (v == TRUE) if lit > 0 else (v == FALSE)


def satisfies(f: CnfFormula, a: str) -> bool:
    if len(a) != f.n:
        raise UsageError(f"assignment length {len(a)} differs from variable count {f.n}")
    if set(a) - {TRUE, FALSE}:
        raise UsageError(f"assignment {a!r} uses symbols outside {{1,2}}")
    return all(any(_lit_true(lit, a) for lit in c) for c in f.clauses)


def iter_assignments(n: int) -> Iterator[str]:
    for t in itertools.product(TRUE + FALSE, repeat=n):
        yield "".join(t)


def satisfying_assignments(f: CnfFormula) -> list[str]:
    """All satisfying assignments in lex order (brute force)."""
    return [a for a in iter_assignments(f.n) if satisfies(f, a)]


def lf_sat_assignment(f: CnfFormula) -> str | None:
    """Lex-least satisfying assignment over {1,2}; None when unsatisfiable.

    Depth-first over variables in index order, true before false; a branch is
    cut once some clause has all its literals assigned and false.
    """
    n = f.n
    by_last: list[list[tuple[int, ...]]] = [[] for _ in range(n + 1)]
    for c in f.clauses:
        if not c:
            return None
        by_last[max(abs(x) for x in c)].append(c)
    a = [""] * n

    def rec(i: int) -> bool:
        if i == n:
            return True
        for val in (TRUE, FALSE):
            a[i] = val
            if all(any(_lit_true(lit, a) for lit in c) for c in by_last[i + 1]) and rec(i + 1):
                return True
        a[i] = ""
        return False

    return "".join(a) if rec(0) else None


def decide_odd_min_sat(f: CnfFormula) -> bool:
    """Member iff satisfiable and the lex-first assignment sets the decision variable true.

    Unsatisfiable formulas, and formulas without variables, are nonmembers.
    """
    a = lf_sat_assignment(f)
    if a is None or f.n == 0:
        return False
    return a[f.decision - 1] == TRUE


def parity(s: str) -> int:
    """Parity of the integer value of the last symbol; the empty string is even."""
    return int(s[-1]) % 2 if s else 0


def to_binary_assignment(a: str) -> str:
    """{1,2} encoding to {0,1} encoding (1 stays true, 2 becomes 0)."""
    return a.replace(FALSE, "0")


def from_binary_assignment(a: str) -> str:
    return a.replace("0", FALSE)


def satisfies_binary(clauses: Sequence[Sequence[int]], a: str) -> bool:
    """Satisfaction for a {0,1} string (1 = true)."""
    return all(any((a[abs(x) - 1] == "1") == (x > 0) for x in c) for c in clauses)
