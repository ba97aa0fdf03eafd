"""Command-line front end.

Exit codes: 0 feasible / valid, 3 infeasible / invalid, 2 usage or parse
error, 4 a requested method cannot handle the instance.
"""

from __future__ import annotations

import argparse
import logging
import os
import random
import sys

from .core import InvalidInstance, ProblemVariant
from .exact import ScaleError, oracle_enumerate
from .formats import (
    ParseError,
    parse_cnf,
    parse_instance,
    parse_solution,
    parse_wdp,
    serialize_instance,
    serialize_solution,
)
from .generate import random_instance
from .poly import CapabilityError, PreconditionError, solve
from .reach import check_disjoint, verify_branching
from .reductions import lift_roots, reduce_nae3sat_star, reduce_nae3sat_vertex, reduce_wdp, to_single_source

EXIT_OK, EXIT_USAGE, EXIT_NO, EXIT_CAPABILITY = 0, 2, 3, 4


class _Fail(Exception):
    def __init__(self, code, message):
        self.code = code
        super().__init__(message)


def _diag(kind, message):
    color = sys.stderr.isatty() and "NO_COLOR" not in os.environ
    tag = f"\033[1;31m{kind}:\033[0m" if color else f"{kind}:"
    print(f"{tag} {message}", file=sys.stderr)


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Fail(EXIT_USAGE, f"cannot read {path}: {exc.strerror}") from None


def _load(path, k):
    g, root_sets = parse_instance(_read(path))
    if k is None:
        return g, root_sets
    if len(root_sets) == k:
        return g, root_sets
    if len(root_sets) == 1:
        return g, [set(root_sets[0]) for _ in range(k)]
    raise _Fail(EXIT_USAGE, f"--k {k} but the instance has {len(root_sets)} root sets")


def _variant_args(p, required=True):
    p.add_argument("--spanning", choices=("temporal", "vertex"), required=required)
    p.add_argument("--disjoint", choices=("edge", "t-edge"), required=required)
    p.add_argument("--k", type=int, help="number of branchings; a single root set is replicated")


def cmd_solve(args):
    g, root_sets = _load(args.instance, args.k)
    variant = ProblemVariant(args.spanning, args.disjoint)
    try:
        result = solve(g, root_sets, variant, args.method)
    except (CapabilityError, PreconditionError) as exc:
        raise _Fail(EXIT_CAPABILITY, str(exc)) from None
    sys.stdout.write(serialize_solution(g, variant, result))
    return EXIT_OK if result is not None else EXIT_NO


def cmd_oracle(args):
    g, root_sets = _load(args.instance, args.k)
    variant = ProblemVariant(args.spanning, args.disjoint)
    try:
        res = oracle_enumerate(g, root_sets, variant, args.max_temporal_edges)
    except ScaleError as exc:
        raise _Fail(EXIT_CAPABILITY, str(exc)) from None
    sys.stdout.write(serialize_solution(g, variant, res.witness if res.feasible else None))
    return EXIT_OK if res.feasible else EXIT_NO


def cmd_verify(args):
    g, root_sets = _load(args.instance, args.k)
    declared, bs = parse_solution(_read(args.solution), g, root_sets)
    if bs is None:
        raise _Fail(EXIT_NO, "solution document declares the instance infeasible; nothing to certify")
    variant = ProblemVariant(args.spanning or declared.spanning, args.disjoint or declared.disjoint)
    for i, b in enumerate(bs, 1):
        try:
            verdict = verify_branching(b, variant.spanning)
        except InvalidInstance as exc:
            raise _Fail(EXIT_NO, f"branching {i}: {exc}") from None
        if not verdict:
            raise _Fail(EXIT_NO, f"branching {i} is not {variant.spanning}-spanning: {verdict.reason}")
    verdict = check_disjoint(bs, variant.disjoint)
    if not verdict:
        raise _Fail(EXIT_NO, f"not {variant.disjoint}-disjoint: {verdict.reason}")
    print(f"valid: {len(bs)} {variant} branchings", file=sys.stderr)
    return EXIT_OK


def cmd_reduce(args):
    text = _read(args.input)
    out = None
    if args.kind in ("nae-star", "nae-vertex"):
        phi = parse_cnf(text)
        out = (reduce_nae3sat_star if args.kind == "nae-star" else reduce_nae3sat_vertex)(phi)
        g, root_sets = out.instance, out.root_sets
    elif args.kind == "wdp":
        out = reduce_wdp(parse_wdp(text))
        g, root_sets = out.instance, out.root_sets
    elif args.kind == "single-source":
        out = to_single_source(*parse_instance(text))
        g, root_sets = out.instance, out.root_sets
    else:
        g, root_sets = parse_instance(text)
        root_sets = lift_roots(g, root_sets, args.spanning)
    variant = out.variant if out is not None else None
    if variant is not None:
        print(f"solve with --spanning {variant.spanning} --disjoint {variant.disjoint}", file=sys.stderr)
    sys.stdout.write(serialize_instance(g, root_sets))
    return EXIT_OK


def cmd_gen(args):
    rng = random.Random(args.seed)
    g, root_sets = random_instance(
        rng,
        args.vertices,
        args.lifetime,
        args.edge_prob,
        interval=args.interval_activity,
        k=args.k,
        max_temporal_edges=args.max_temporal_edges,
        root_prob=args.root_prob,
    )
    sys.stdout.write(serialize_instance(g, root_sets))
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="tempbranch", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="find k disjoint spanning branchings")
    _variant_args(s)
    s.add_argument("--method", choices=("auto", "poly", "exact"), default="auto")
    s.add_argument("instance")
    s.set_defaults(func=cmd_solve)

    o = sub.add_parser("oracle", help="decide by brute-force enumeration (small instances)")
    _variant_args(o)
    o.add_argument("--max-temporal-edges", type=int, default=16)
    o.add_argument("instance")
    o.set_defaults(func=cmd_oracle)

    v = sub.add_parser("verify", help="check a solution document against an instance")
    _variant_args(v, required=False)
    v.add_argument("instance")
    v.add_argument("solution")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("reduce", help="build an instance from a CNF, 2-WDP or instance input")
    r.add_argument("kind", choices=("nae-star", "nae-vertex", "wdp", "single-source", "lift-roots"))
    r.add_argument("input")
    r.add_argument("--spanning", choices=("temporal", "vertex"), default="temporal",
                   help="lift-roots only")
    r.set_defaults(func=cmd_reduce)

    gp = sub.add_parser("gen", help="seeded random instance")
    gp.add_argument("--vertices", type=int, required=True)
    gp.add_argument("--lifetime", type=int, required=True)
    gp.add_argument("--edge-prob", type=float, required=True)
    gp.add_argument("--seed", type=int, required=True)
    gp.add_argument("--interval-activity", action="store_true")
    gp.add_argument("--k", type=int, default=2)
    gp.add_argument("--root-prob", type=float, default=0.5)
    gp.add_argument("--max-temporal-edges", type=int)
    gp.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr, format="%(name)s: %(message)s")
    if getattr(args, "k", None) is not None and args.k < 0:
        parser.error("--k must be non-negative")
    try:
        return args.func(args)
    except _Fail as exc:
        _diag("error" if exc.code != EXIT_NO else "rejected", str(exc))
        return exc.code
    except (ParseError, InvalidInstance) as exc:
        _diag("error", str(exc))
        return EXIT_USAGE
    except (ValueError, RecursionError) as exc:
        _diag("error", str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
