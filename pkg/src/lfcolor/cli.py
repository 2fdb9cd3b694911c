"""Command-line entry point.

Exit codes: 0 success, 1 a hard criterion failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import harness
from .coloring import CapExceeded, lf_coloring
from .gadgets import PORTS, load_gadget, verify_gadget
from .model import OrderedGraph, UsageError
from .pvariants import (PCliqueInstance, PKnapsackInstance, PSatInstance, pclique_lf, pknapsack_lf,
                        psat_lf)
from .reductions import TAIL_ORDERS, pipeline_t, rho4, sigma
from .report import canonical_json
from .satlex import CnfFormula, decide_odd_min_sat, lf_sat_assignment, normalize_to_3cnf, parse_dimacs


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"invalid JSON: {e}") from None


def _load_cnf(path: str | None) -> CnfFormula:
    text = _read(path)
    if text.lstrip().startswith("{"):
        return CnfFormula.from_dict(_load_json(text))
    return parse_dimacs(text)


def _load_graph(path: str | None) -> OrderedGraph:
    try:
        return OrderedGraph.from_dict(_load_json(_read(path)))
    except (KeyError, TypeError) as e:
        raise UsageError(f"malformed graph JSON: {e}") from None


# ---------------------------------------------------------------------------
# verbs


def cmd_reduce(a) -> int:
    if a.what == "rho4":
        r = rho4(_load_graph(a.in_))
        _write(r.graph.to_json() + "\n", a.out)
        return 0
    f = normalize_to_3cnf(_load_cnf(a.in_))
    if a.what == "sigma":
        out = sigma(f, a.tail)
        _write(out.graph.to_json() + "\n", a.out)
    else:
        _, r = pipeline_t(f, a.tail)
        _write(r.graph.to_json() + "\n", a.out)
    return 0


def cmd_solve(a) -> int:
    if a.what == "lf-color":
        if a.k is None:
            raise UsageError("lf-color needs --k")
        res = lf_coloring(_load_graph(a.in_), a.k, method=a.method)
        _write(res.string + "\n", a.out)
        return 0
    if a.what == "lf-sat":
        s = lf_sat_assignment(_load_cnf(a.in_))
        _write((s if s is not None else "UNSAT") + "\n", a.out)
        return 0
    d = _load_json(_read(a.in_))
    try:
        if a.what == "p-sat":
            s = psat_lf(PSatInstance.from_dict(d), cap=a.cap or 20)
        elif a.what == "p-clique":
            s = pclique_lf(PCliqueInstance.from_dict(d), cap=a.cap or 20)
        else:
            s = pknapsack_lf(PKnapsackInstance.from_dict(d), cap=a.cap or 20)
    except (KeyError, TypeError) as e:
        raise UsageError(f"malformed instance: {e}") from None
    _write((s if s is not None else "none") + "\n", a.out)
    return 0


def cmd_decide(a) -> int:
    member = decide_odd_min_sat(_load_cnf(a.in_))
    _write(("member" if member else "nonmember") + "\n", a.out)
    return 0


def cmd_gadget(a) -> int:
    kinds = list(PORTS) if a.kind == "all" else [a.kind]
    reports = {k: verify_gadget(load_gadget(k), cap=a.cap or 16).to_dict() for k in kinds}
    _write(canonical_json(reports), a.report or a.out)
    return 0 if all(r["passed"] for r in reports.values()) else 1


def cmd_gen(a) -> int:
    if a.what == "cnf":
        items = [f.to_dict() for f in harness.gen_cnf_corpus(a.count, a.n_max or 4, a.z_max or 4, a.seed)]
    else:
        try:
            corpus = harness.gen_planar_corpus(a.count, a.n_max or 7, a.seed)
        except ValueError as e:
            raise UsageError(str(e)) from None
        items = [g.to_dict() for g in corpus]
    _write(canonical_json(items), a.out)
    return 0


def cmd_verify(a) -> int:
    seed = a.seed
    if a.what == "all":
        summary = harness.verify_all(seed, n_max=a.n_max or 4, z_max=a.z_max or 4)
        _write(canonical_json(summary), a.report or a.out)
        return 0 if summary["passed"] else 1
    if a.what == "eq1":
        fixed = harness.fixed_planar_graphs()
        count = a.count if a.count is not None else 200
        corpus = list(fixed.values()) + harness.gen_planar_corpus(count, a.n_max or 7, seed)
        ids = list(fixed) + [f"graph-{i:04d}" for i in range(count)]
        rep = harness.verify_eq1(corpus, ids, seed)
        rep.extra["decomposition"] = harness.verify_decomposition(corpus, ids, seed).to_dict()
        ok = rep.passed and not rep.extra["decomposition"]["violations"]
    elif a.what == "thm23":
        count = a.count if a.count is not None else 100
        if (a.n_max or 4) > 6 or (a.z_max or 4) > 6:
            raise UsageError("thm23 caps are n <= 6 and z <= 6")
        corpus = harness.gen_cnf_corpus(count, a.n_max or 4, a.z_max or 4, seed)
        rep = harness.verify_thm23(corpus, [f"cnf-{i:04d}" for i in range(count)], seed)
        ok = not rep.extra["integrity_failures"]
    elif a.what == "thm35":
        rep = harness.verify_thm35_suite(seed, d=a.d, family=a.family, n_max=a.n_max or 8,
                                         count=a.count if a.count is not None else 100)
        ok = rep.passed
    else:
        if a.family != "sat" and a.family != "both":
            raise UsageError("the self-reduction suite is defined for the sat family")
        rep = harness.verify_selfred_suite(seed, n_max=a.n_max or 6,
                                           count=a.count if a.count is not None else 50)
        ok = rep.passed
    _write(rep.to_json(), a.report or a.out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lfcolor", description="Lex-first coloring and SAT reductions.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp):
        sp.add_argument("--in", dest="in_", metavar="PATH")
        sp.add_argument("--out", metavar="PATH")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--report", metavar="PATH")
        sp.add_argument("--n-max", type=int)
        sp.add_argument("--z-max", type=int)
        sp.add_argument("--cap", type=int)
        return sp

    r = common(sub.add_parser("reduce", help="apply sigma, rho4 or both"))
    r.add_argument("what", choices=["sigma", "rho4", "pipeline"])
    r.add_argument("--tail", choices=TAIL_ORDERS, default="standard")
    r.set_defaults(func=cmd_reduce)

    s = common(sub.add_parser("solve", help="compute a lex-first solution"))
    s.add_argument("what", choices=["lf-color", "lf-sat", "p-sat", "p-clique", "p-knapsack"])
    s.add_argument("--k", type=int)
    s.add_argument("--method", choices=["auto", "dfs", "csp", "sat"], default="auto")
    s.set_defaults(func=cmd_solve)

    d = common(sub.add_parser("decide", help="decide a language"))
    d.add_argument("what", choices=["odd-min-sat"])
    d.set_defaults(func=cmd_decide)

    g = common(sub.add_parser("gadget", help="check gadget contracts"))
    g.add_argument("action", choices=["verify"])
    g.add_argument("--kind", choices=list(PORTS) + ["all"], default="all")
    g.set_defaults(func=cmd_gadget)

    gen = common(sub.add_parser("gen", help="generate a seeded corpus"))
    gen.add_argument("what", choices=["cnf", "planar"])
    gen.add_argument("--count", type=int, default=10)
    gen.set_defaults(func=cmd_gen)

    v = common(sub.add_parser("verify", help="run an experiment"))
    v.add_argument("what", choices=["eq1", "thm23", "thm35", "selfred", "all"])
    v.add_argument("--count", type=int)
    v.add_argument("--d", choices=["all", "prefix1"], default="all")
    v.add_argument("--family", choices=["sat", "toy", "both"], default="both")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (UsageError, CapExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
