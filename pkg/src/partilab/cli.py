"""Command-line front end.

Exit codes: 0 decided / all checks pass, 1 a property check failed,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import classifier, reductions
from .catalog import CatalogError, eval_expr, named
from .cotree import Leaf, P4Witness, Union, cotree_of, random_cograph
from .graph import EdgeListError, GraphError, Graph, read_edge_list, write_edge_list
from .sat import DimacsError, parse_dimacs, write_dimacs
from .solver import (
    MAX_BRUTE_N,
    NotACograph,
    brute_force_partition,
    encode_partition,
    solve_partition,
    verify_partition,
)

OK, FAIL, USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _read_graph(path: str) -> Graph:
    return read_edge_list(_read_text(path))


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _ids(vs) -> str:
    return " ".join(str(v + 1) for v in vs)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("PARTILAB_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"PARTILAB_SEED is not an integer: {env!r}") from None


# ---------------------------------------------------------------- commands


def cmd_solve(args) -> int:
    g = _read_graph(args.graph)
    if args.emit_cnf:
        f, _ = encode_partition(g)
        Path(args.emit_cnf).write_text(write_dimacs(f, [f"partition encoding, {g.n} vertices; true = red"]))
    p, stats = solve_partition(g)
    if p is None:
        print("IN-PARTITIONABLE")
    else:
        ok, _ = verify_partition(g, p)
        if not ok:
            print("certificate failed verification", file=sys.stderr)
            return FAIL
        print("PARTITIONABLE")
        print(f"colours {p}")
        print(f"red {_ids(p.red)}")
        print(f"blue {_ids(p.blue)}")
    print(f"stats decisions {stats.decisions} propagations {stats.propagations} conflicts {stats.conflicts}")
    if args.oracle:
        if g.n > min(args.max_oracle_n, MAX_BRUTE_N):
            print(f"oracle skipped: {g.n} vertices exceeds --max-oracle-n")
        else:
            agree = (brute_force_partition(g) is None) == (p is None)
            print(f"oracle {'agrees' if agree else 'DISAGREES'}")
            if not agree:
                return FAIL
    return OK


def cmd_classify(args) -> int:
    g = _read_graph(args.graph)
    try:
        reports = classifier.classify(g)
    except NotACograph:
        t = cotree_of(g)
        print(f"not a cograph: P4 {_ids(t.vertices)}")
        return USAGE
    for r in reports:
        print(r.line())
    return OK


def _format_cotree(t) -> str:
    if isinstance(t, Leaf):
        return str(t.vertex + 1)
    sep = " + " if isinstance(t, Union) else " * "
    return "(" + sep.join(_format_cotree(c) for c in t.children) + ")"


def cmd_cotree(args) -> int:
    g = _read_graph(args.graph)
    if g.n == 0:
        raise InputError("the empty graph has no cotree")
    t = cotree_of(g)
    if isinstance(t, P4Witness):
        print(f"P4 {_ids(t.vertices)}")
    else:
        print(_format_cotree(t))
    return OK


def cmd_gadget(args) -> int:
    _emit(write_edge_list(named(args.name)), args.output)
    return OK


def cmd_expr(args) -> int:
    _emit(write_edge_list(eval_expr(args.expr)), args.output)
    return OK


def cmd_random_cograph(args) -> int:
    if args.n < 1:
        raise InputError("--n must be at least 1")
    _emit(write_edge_list(random_cograph(args.n, _seed(args))), args.output)
    return OK


def _load_instance(path: str, variant: str):
    text = _read_text(path)
    name, _ = reductions.parse_variant(variant)
    if name == "perfect":
        return reductions.parse_1in3(text)
    return parse_dimacs(text)


def _build(args):
    inst = _load_instance(args.cnf, args.variant)
    if isinstance(inst, reductions.OneInThreeInstance):
        return reductions.reduce_1in3(inst, args.negator or "strong_triangle(p62)")
    return reductions.reduce_3sat(inst, args.variant, args.negator)


def cmd_reduce(args) -> int:
    out = _build(args)
    _emit(write_edge_list(out.graph), args.output)
    if args.map:
        Path(args.map).write_text(out.sidecar())
    return OK


def cmd_verify_gadgets(args) -> int:
    ok = True
    suite = [(k, reductions.BLUE) for k in reductions.BLUE_BASES]
    suite += [(k, reductions.RED) for k in reductions.RED_BASES]
    for k in ("strong_triangle(p62)", "strong_square(sun)"):
        suite += [(k, reductions.BLUE), (k, reductions.RED)]
    for kind, color in suite:
        r = reductions.verify_negator(reductions.instantiate_negator(kind), color)
        ok &= r.passed
        print(
            f"negator {kind} {color} {'pass' if r.passed else 'FAIL'}"
            f" a={int(r.both_forbidden)} b={int(r.at_most_one_feasible)}"
            f" c={int(all(r.isolated_blue_feasible.values()))}"
        )
    for name, rep in reductions.verify_gadget_endpoint_counts().items():
        feasible = " ".join(p for p, f in rep.feasible.items() if f)
        want = {2, 3} if name == "literal" else {1, 3}
        good = rep.partitionable and rep.blue_counts() == want
        ok &= good
        print(f"gadget {name} {'pass' if good else 'FAIL'} feasible {feasible}")
    return OK if ok else FAIL


def cmd_verify_reduction(args) -> int:
    inst = _load_instance(args.cnf, args.variant)
    r = reductions.verify_reduction(inst, args.variant, args.negator)
    lifted = "n/a" if r.lifted_partition_valid is None else ("valid" if r.lifted_partition_valid else "INVALID")
    print(f"variant {r.variant} vertices {r.vertices}")
    print(f"formula {'satisfiable' if r.formula_satisfiable else 'unsatisfiable'}")
    print(f"graph {'partitionable' if r.graph_partitionable else 'in-partitionable'}")
    print(f"lifted {lifted}")
    print("agree" if r.agree else "DISAGREE")
    return OK if r.agree else FAIL


def cmd_check_structure(args) -> int:
    out = _build(args)
    r = reductions.check_structure(out, max_cycle=args.max_cycle)
    for name, ok in r.checks.items():
        print(f"{name} {'pass' if ok else 'FAIL'}")
    for name, val in r.details.items():
        print(f"detail {name} {_ids(val) if isinstance(val, tuple) else val}")
    return OK if r.passed else FAIL


def cmd_verify_theorems(args) -> int:
    from .theorems import run_all

    ok = True
    for line, passed in run_all(args.seeds, _seed(args), args.max_oracle_n):
        ok &= passed
        print(line)
    return OK if ok else FAIL


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="partilab", description="Graph partition solver and reduction workbench.")
    sub = ap.add_subparsers(dest="command", required=True)

    def graph_cmd(name, fn, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("graph", help="edge-list file, or - for stdin")
        p.set_defaults(fn=fn)
        return p

    p = graph_cmd("solve", cmd_solve, "decide partitionability with a certificate")
    p.add_argument("--emit-cnf", metavar="PATH", help="also write the CNF encoding")
    p.add_argument("--oracle", action="store_true", help="cross-check with brute force")
    p.add_argument("--max-oracle-n", type=int, default=14)
    graph_cmd("classify", cmd_classify, "forbidden-subgraph verdicts for a cograph")
    graph_cmd("cotree", cmd_cotree, "cotree or induced P4")

    p = sub.add_parser("gadget", help="catalog graph as an edge list")
    p.add_argument("name")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_gadget)

    p = sub.add_parser("expr", help="evaluate a cograph expression")
    p.add_argument("expr")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_expr)

    p = sub.add_parser("random-cograph", help="seeded random cograph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_random_cograph)

    def cnf_cmd(name, fn, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("cnf", help="DIMACS file (positive literals only for --variant perfect)")
        p.add_argument("--variant", default="generic", help="generic, planar-shape, k4free, bullfree, holes:K, perfect")
        p.add_argument("--negator", help="override the variant's default negator")
        p.set_defaults(fn=fn)
        return p

    p = cnf_cmd("reduce", cmd_reduce, "build the reduction graph")
    p.add_argument("-o", "--output")
    p.add_argument("--map", metavar="PATH", help="write the var/clause sidecar")
    cnf_cmd("verify-reduction", cmd_verify_reduction, "brute-force formula vs solver on the graph")
    p = cnf_cmd("check-structure", cmd_check_structure, "structural guarantees of a reduction")
    p.add_argument("--max-cycle", type=int, default=reductions.MAX_ODD_HOLE)

    p = sub.add_parser("verify-gadgets", help="negator and clause-gadget checks")
    p.set_defaults(fn=cmd_verify_gadgets)

    p = sub.add_parser("verify-theorems", help="recognizer vs solver equivalence suites")
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-oracle-n", type=int, default=14)
    p.set_defaults(fn=cmd_verify_theorems)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    for bound in ("max_oracle_n", "max_cycle", "seeds"):
        if getattr(args, bound, 1) is not None and getattr(args, bound, 1) < 1:
            print(f"partilab: --{bound.replace('_', '-')} must be positive", file=sys.stderr)
            return USAGE
    try:
        return args.fn(args)
    except (InputError, GraphError, EdgeListError, DimacsError, CatalogError, reductions.ReductionError, ValueError) as exc:
        print(f"partilab: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
