"""Command-line driver.

Exit status: 0 when every check passes, 1 when a mathematical check fails,
2 for usage or file errors.
"""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import suites
from .coxeter import CoxeterGroup
from .errors import EdgeContractError, InvalidSystem
from .hecke import HeckeAlgebra, parse_hecke_expression
from .report import Report
from .systems import Edge, contract, load_system, serialize_system, validate

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _load(path: str):
    try:
        return load_system(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{path}: malformed system file ({exc})") from exc


def _edge(text: str) -> Edge:
    try:
        return Edge.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad --edge {text!r}: expected S+,S-") from exc


def _emit(rep: Report, args) -> int:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rep.to_json(timings=args.timings))
    if getattr(args, "json", False):
        sys.stdout.write(rep.to_json(timings=args.timings))
    elif not getattr(args, "out", None) or getattr(args, "table", False):
        sys.stdout.write(rep.to_table())
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_validate(args) -> int:
    system = _load(args.file)
    try:
        validate(system)
    except InvalidSystem as exc:
        print(f"invalid: {type(exc).__name__}: {exc}")
        return EXIT_FAIL
    print("ok")
    return EXIT_OK


def cmd_contract(args) -> int:
    system = _load(args.file)
    small = contract(system, _edge(args.edge), args.label)
    sys.stdout.write(serialize_system(small))
    return EXIT_OK


def cmd_verify(args) -> int:
    kind = args.suite
    if kind in ("group", "hecke", "branch", "affine-general"):
        system = _load(args.file)
        e = _edge(args.edge)
        if kind == "group":
            rep = suites.group_suite(system, e, args.max_length)
        elif kind == "hecke":
            rep = suites.hecke_suite(system, e, args.max_length)
        elif kind == "branch":
            rep = suites.branch_suite(system, e, args.max_length)
        else:
            rep = suites.affine_general_suite(system, e)
    elif kind == "affine-a":
        rep = suites.affine_a_suite(args.rank, args.iminus)
    elif kind == "affine-bl":
        rep = suites.affine_bl_suite(args.rank, args.iminus, args.seed)
    else:
        if args.epsilon not in (None, 1, -1):
            raise UsageError("--epsilon must be 1 or -1")
        rep = suites.duality_suite(args.n, args.d, args.iplus, args.epsilon)
    return _emit(rep, args)


def cmd_mult(args) -> int:
    system = _load(args.file)
    alg = HeckeAlgebra(CoxeterGroup(system))
    for text in args.exprs:
        try:
            value = parse_hecke_expression(alg, text)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        print(f"{text} = {value}")
    return EXIT_OK


def cmd_report(args) -> int:
    if not args.all and not args.file:
        raise UsageError("report needs FILE or --all")
    if args.file:
        system = _load(args.file)
        name = args.file.rsplit("/", 1)[-1].rsplit(".", 1)[0]
        rep = suites.full_report({name: system}, seed=args.seed, include_global=args.all)
    else:
        rep = suites.full_report(seed=args.seed)
    return _emit(rep, args)


def _output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="print the JSON report instead of a table")
    p.add_argument("--out", metavar="PATH", help="write the JSON report to PATH")
    p.add_argument("--timings", action="store_true", help="include per-check runtimes in JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edgecontract",
                                     description="Edge contractions of Coxeter systems and Hecke algebra embeddings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a system file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("contract", help="contract an edge and print the new system")
    p.add_argument("file")
    p.add_argument("--edge", required=True, metavar="S+,S-")
    p.add_argument("--label", help="label for the merged generator")
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("verify", help="run one verification suite")
    vsub = p.add_subparsers(dest="suite", required=True)
    for name, needs_L in (("group", True), ("hecke", True), ("branch", True), ("affine-general", False)):
        q = vsub.add_parser(name)
        q.add_argument("file")
        q.add_argument("--edge", required=True, metavar="S+,S-")
        if needs_L:
            q.add_argument("--max-length", type=int, default=4)
        _output_flags(q)
        q.set_defaults(func=cmd_verify)
    for name in ("affine-a", "affine-bl"):
        q = vsub.add_parser(name)
        q.add_argument("--rank", type=int, required=True)
        q.add_argument("--iminus", type=int, required=True)
        q.add_argument("--seed", type=int, default=0)
        _output_flags(q)
        q.set_defaults(func=cmd_verify)
    q = vsub.add_parser("duality")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--iplus", type=int)
    q.add_argument("--epsilon", type=int)
    _output_flags(q)
    q.set_defaults(func=cmd_verify)

    p = sub.add_parser("mult", help="evaluate Hecke algebra expressions")
    p.add_argument("file")
    p.add_argument("--exprs", nargs="+", required=True)
    p.set_defaults(func=cmd_mult)

    p = sub.add_parser("report", help="run every applicable suite")
    p.add_argument("file", nargs="?")
    p.add_argument("--all", action="store_true", help="include the builtin systems and global suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--table", action="store_true", help="also print the table when --out is given")
    _output_flags(p)
    p.set_defaults(func=cmd_report)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EdgeContractError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
