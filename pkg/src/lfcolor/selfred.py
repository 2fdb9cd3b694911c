"""Projection problems, their lex-first solutions, and self-reductions.

A projection problem is a decidable pair predicate B(x, y) with a length
bound p: x is a member when some y with |y| <= p(|x|) satisfies B.  Its
LF value is the shortlex-least such y, or the sentinel ``1 0^p(|x|)`` when
there is none.  A self-reduction g peels one solution symbol off:
B(x, gamma y) holds iff B(g(x, gamma), y) does, and g(x, gamma) is smaller
than x in a well-founded order, so prefix search can rebuild LF with an
existence oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from .coloring import CapExceeded
from .model import PolynomialBound, UsageError, sentinel
from .report import ExperimentReport
from .satlex import FALSE, TRUE, CnfFormula, decide_odd_min_sat, parity, satisfies


class SelfReductionViolation(RuntimeError):
    """Prefix search went deeper than the chain bound, or got stuck."""


@dataclass(frozen=True)
class ProjectionProblem:
    predicate: Callable[[Any, str], bool]
    bound: PolynomialBound
    gamma: str
    sigma: str = "01"
    size: Callable[[Any], int] = len
    # lengths that can carry solutions; None means every length 0..p
    lengths: Callable[[Any], Iterable[int]] | None = field(default=None, compare=False)
    name: str = ""

    def __post_init__(self):
        if list(self.gamma) != sorted(set(self.gamma)):
            raise UsageError(f"solution alphabet {self.gamma!r} must be listed ascending without repeats")

    def p_of(self, x) -> int:
        return self.bound(self.size(x))

    def holds(self, x, y: str) -> bool:
        return len(y) <= self.p_of(x) and bool(self.predicate(x, y))


@dataclass(frozen=True)
class SelfReduction:
    g: Callable[[Any, str], Any]
    less_than: Callable[[Any, Any], bool]
    chain_bound: PolynomialBound


@dataclass(frozen=True)
class LfResult:
    value: str
    is_sentinel: bool
    oracle_calls: int = field(default=0, compare=False)


def sol_set(x, pp: ProjectionProblem, cap: int = 10**6) -> list[str]:
    """Every solution of ``x`` of length at most p(|x|), in shortlex order."""
    p = pp.p_of(x)
    lengths = sorted(set(pp.lengths(x))) if pp.lengths else list(range(p + 1))
    lengths = [L for L in lengths if 0 <= L <= p]
    total = sum(len(pp.gamma) ** L for L in lengths)
    if total > cap:
        raise CapExceeded(f"{total} candidate strings exceed the enumeration cap {cap}")
    out = []
    for L in lengths:
        for t in itertools.product(pp.gamma, repeat=L):
            y = "".join(t)
            if pp.predicate(x, y):
                out.append(y)
    return out


def lf_of_projection(x, pp: ProjectionProblem, cap: int = 10**6) -> LfResult:
    sols = sol_set(x, pp, cap)
    if sols:
        return LfResult(sols[0], False)
    return LfResult(sentinel(pp.p_of(x)), True)


def _descents(x, pp: ProjectionProblem, sr: SelfReduction, depth_cap: int) -> int:
    """Longest run of g-steps from x (bounded by ``depth_cap + 1``)."""
    best = 0
    stack = [(x, 0)]
    while stack:
        cur, d = stack.pop()
        best = max(best, d)
        if d > depth_cap or pp.p_of(cur) == 0:
            continue
        for gam in pp.gamma:
            stack.append((sr.g(cur, gam), d + 1))
    return best


def verify_self_reduction(pp: ProjectionProblem, sr: SelfReduction, corpus: Sequence,
                          cap: int = 10**6, ids: Sequence[str] | None = None) -> ExperimentReport:
    """Check the self-reduction conditions on every corpus instance.

    For x with p(|x|) >= 1 and each symbol: g(x, gamma) < x, the
    biconditional B(x, gamma y) <=> B(g(x, gamma), y) for every
    |y| <= p(|x|) - 1, and |g(x, gamma)| <= q(|x|).  Chains of g-steps are
    followed to the end; a chain of d steps has d + 1 elements, which must not
    exceed q(|x|).  Instances with p(|x|) = 0 have no nonempty solution, so g
    is never applied to them.
    """
    rep = ExperimentReport("selfred")
    for idx, x in enumerate(corpus):
        name = ids[idx] if ids else f"case-{idx:04d}"
        p = pp.p_of(x)
        q = sr.chain_bound(pp.size(x))
        problems = []
        if p >= 1:
            for gam in pp.gamma:
                x2 = sr.g(x, gam)
                if not sr.less_than(x2, x):
                    problems.append({"check": "descent", "gamma": gam})
                if pp.size(x2) > q:
                    problems.append({"check": "length", "gamma": gam, "size": pp.size(x2), "q": q})
                for L in range(p):
                    if len(pp.gamma) ** L > cap:
                        raise CapExceeded(f"{len(pp.gamma) ** L} suffixes exceed the cap {cap}")
                    for t in itertools.product(pp.gamma, repeat=L):
                        y = "".join(t)
                        rep.bump("biconditional_checks")
                        lhs = pp.holds(x, gam + y)
                        rhs = pp.holds(x2, y)
                        if lhs != rhs:
                            problems.append({"check": "biconditional", "gamma": gam, "y": y,
                                             "lhs": lhs, "rhs": rhs})
                            break
            chain = _descents(x, pp, sr, q) + 1
            rep.peak("max_chain_elements", chain)
            if chain > q:
                problems.append({"check": "chain", "elements": chain, "q": q})
        rep.record(name, not problems, expected="no violation", computed=problems or None,
                   artifacts={"instance": _describe(x)} if problems else None)
    return rep


def _describe(x):
    return x.to_dict() if hasattr(x, "to_dict") else x


def brute_force_oracle(pp: ProjectionProblem, cap: int = 10**6) -> Callable[[Any], bool]:
    return lambda x: bool(sol_set(x, pp, cap))


def prefix_search_lf(x, pp: ProjectionProblem, sr: SelfReduction,
                     membership_oracle: Callable[[Any], bool] | None = None) -> LfResult:
    """LF by extending the solution one symbol at a time.

    The oracle answers whether an instance has any solution; ``oracle_calls``
    counts its uses.  The empty string is tested first, since shortlex ranks
    it lowest, and symbols are tried in ascending order.  Note that the
    greedy prefix gives the shortlex minimum only when all solutions of a
    member instance share one length, as they do for SAT.
    """
    oracle = membership_oracle or brute_force_oracle(pp)
    calls = 1
    if not oracle(x):
        return LfResult(sentinel(pp.p_of(x)), True, calls)
    q = sr.chain_bound(pp.size(x))
    out = []
    cur = x
    while not pp.holds(cur, ""):
        if len(out) >= q:
            raise SelfReductionViolation(f"prefix search passed the chain bound q = {q}")
        for gam in pp.gamma:
            nxt = sr.g(cur, gam)
            calls += 1
            if oracle(nxt):
                out.append(gam)
                cur = nxt
                break
        else:
            raise SelfReductionViolation(f"no symbol extends the prefix {''.join(out)!r}")
    return LfResult("".join(out), False, calls)


# ---------------------------------------------------------------------------
# the construction that turns a projection A into one for a superset D


def theorem35_construct(pp_a: ProjectionProblem, d_decider: Callable[[Any], bool]) -> ProjectionProblem:
    """C(x, y) = B(x, y) or (y = 1 0^p(|x|) and x in D), with bound q = p + 1.

    The new solution alphabet also holds 0 and 1 so the sentinel string is
    a legal candidate.
    """
    gamma = "".join(sorted(set(pp_a.gamma) | {"0", "1"}))

    def c(x, y: str) -> bool:
        if y == sentinel(pp_a.p_of(x)) and d_decider(x):
            return True
        return len(y) <= pp_a.p_of(x) and set(y) <= set(pp_a.gamma) and bool(pp_a.predicate(x, y))

    lengths = None
    if pp_a.lengths is not None:
        def lengths(x):
            return set(pp_a.lengths(x)) | {pp_a.p_of(x) + 1}

    return ProjectionProblem(c, pp_a.bound.shifted(1), gamma, pp_a.sigma, pp_a.size, lengths,
                             name=f"{pp_a.name}+D" if pp_a.name else "C")


def verify_theorem35(pp_a: ProjectionProblem, d_decider: Callable[[Any], bool], corpus: Sequence,
                     t: Callable[[Any], Any] = lambda f: f, odd_min: Callable[[Any], bool] | None = None,
                     cap: int = 10**6, ids: Sequence[str] | None = None,
                     experiment: str = "thm35") -> ExperimentReport:
    """Check D = proj_q(C), the two LF_D identities and, when ``odd_min`` is
    given, that the last symbol of LF_D(t(F)) is odd exactly for members."""
    pp_d = theorem35_construct(pp_a, d_decider)
    rep = ExperimentReport(experiment)
    for idx, f in enumerate(corpus):
        name = ids[idx] if ids else f"case-{idx:04d}"
        x = t(f)
        problems = []
        lf_a = lf_of_projection(x, pp_a, cap)
        lf_d = lf_of_projection(x, pp_d, cap)
        in_d = bool(d_decider(x))
        if lf_d.is_sentinel == in_d:
            problems.append({"check": "D = proj_q(C)", "in_D": in_d, "lf_d": lf_d.value})
        expected = lf_a.value if in_d else lf_a.value + "0"
        if lf_d.value != expected:
            problems.append({"check": "identity", "in_D": in_d, "lf_a": lf_a.value,
                             "lf_d": lf_d.value, "expected": expected})
        if odd_min is not None:
            member = bool(odd_min(f))
            rep.bump("members", int(member))
            if (parity(lf_d.value) == 1) != member:
                problems.append({"check": "parity", "member": member, "lf_d": lf_d.value})
        rep.bump("in_D", int(in_d))
        rep.record(name, not problems, expected="no violation", computed=problems or None,
                   artifacts={"instance": _describe(f)} if problems else None)
    return rep


# ---------------------------------------------------------------------------
# concrete families


def sat_projection() -> ProjectionProblem:
    """Satisfying assignments over {1, 2}; |x| is the variable count."""

    def b(f: CnfFormula, y: str) -> bool:
        return len(y) == f.n and not set(y) - {TRUE, FALSE} and satisfies(f, y)

    return ProjectionProblem(b, PolynomialBound((0, 1)), TRUE + FALSE, size=lambda f: f.n,
                             lengths=lambda f: (f.n,), name="sat")


def substitute_first(f: CnfFormula, gam: str) -> CnfFormula:
    """Set x1 to ``gam`` (1 true, 2 false) and renumber x_i as x_(i-1)."""
    if f.n < 1:
        raise UsageError("no variable left to substitute")
    if gam not in (TRUE, FALSE):
        raise UsageError(f"symbol {gam!r} is not an assignment value")
    true_lit = 1 if gam == TRUE else -1
    out = []
    for c in f.clauses:
        if true_lit in c:
            continue
        out.append(tuple((x - 1) if x > 0 else (x + 1) for x in c if abs(x) != 1))
    return CnfFormula(f.n - 1, tuple(out))


def sat_self_reduction() -> SelfReduction:
    # q counts chain elements: x itself and one formula per peeled variable
    return SelfReduction(substitute_first, lambda a, b: a.n < b.n, PolynomialBound((1, 1)))


def toy_projection() -> ProjectionProblem:
    """B(x, y) iff y = "1" and x starts with 1; p is constantly 1."""
    return ProjectionProblem(lambda x, y: y == "1" and x.startswith("1"), PolynomialBound((1,)), "01",
                             name="toy")


def toy_instances(max_len: int) -> list[str]:
    return ["".join(t) for L in range(max_len + 1) for t in itertools.product("01", repeat=L)]


def sat_d_all(f) -> bool:
    return True


def sat_d_no_complementary_units(f: CnfFormula) -> bool:
    """False when some clause forces l and another forces -l (then f is unsatisfiable)."""
    units = {c[0] for c in f.clauses if c and len(set(c)) == 1}
    return not any(-u in units for u in units)


D_OPTIONS = {
    "sat": {"all": sat_d_all, "prefix1": sat_d_no_complementary_units},
    "toy": {"all": lambda x: True, "prefix1": lambda x: x.startswith("1")},
}


def odd_min_sat_member(f: CnfFormula) -> bool:
    return decide_odd_min_sat(f)
