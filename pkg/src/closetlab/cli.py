"""Command-line interface.

Subcommands: analyze (full battery), check (one named checker), waybelow
(relation dump), search (counterexample hunt), fixtures (builtin list).
Exit codes: 0 clean, 1 usage or parse error, 2 invalid structure,
3 at least one INCONSISTENT verdict — the alarm state.
"""

import argparse
import json
import sys

from . import fixtures
from .analysis import ALL_DRIVERS, run_battery
from .core import ClosetError, resolve_max_n
from .io import ParseError, dumps_space, parse_space
from .reports import INCONSISTENT
from .search import (C_KINDS, INVARIANT_TARGETS, SearchConfig, dumps_report,
                     run_search, run_target)
from .waybelow import is_continuous, spec_qoset, way_below, way_down

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_INCONSISTENT = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; the contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(sub):
    sub.add_argument("--format", choices=("text", "json"), default="text",
                     help="output format (default text)")
    sub.add_argument("--max-n", type=int, default=None, metavar="K",
                     help="universe size cap (env CLOSETLAB_MAX_N, "
                          "hard ceiling 20)")
    sub.add_argument("--seed", type=int, default=0, metavar="U64",
                     help="random seed where sampling is involved")
    sub.add_argument("--galois-cap", type=int, default=10, metavar="K",
                     help="skip the adjunction sweep above this size")
    sub.add_argument("--uc-cap", type=int, default=10**6, metavar="W",
                     help="work cap for union-completeness enumeration")


def _add_structure_source(sub):
    sub.add_argument("path", nargs="?", default=None,
                     help="structure file (JSON)")
    sub.add_argument("--fixture", default=None, metavar="NAME",
                     help="builtin structure instead of a file")


def _load(args):
    if (args.path is None) == (args.fixture is None):
        raise ParseError("need exactly one of: a structure file path, "
                         "or --fixture NAME")
    if args.fixture is not None:
        try:
            return fixtures.closet(args.fixture), {}
        except KeyError:
            raise ParseError(f"unknown fixture {args.fixture!r}; "
                             "see the fixtures subcommand") from None
    return parse_space(args.path, max_n=args.max_n)


def _emit(args, text_fn, json_obj):
    if args.format == "json":
        print(json.dumps(json_obj, indent=2, sort_keys=True))
    else:
        sys.stdout.write(text_fn())


def _cmd_analyze(args):
    ec, maps = _load(args)
    report = run_battery(ec, maps=maps, galois_cap=args.galois_cap,
                         uc_cap=args.uc_cap)
    _emit(args, report.to_text, report.to_json_dict())
    return EXIT_INCONSISTENT if report.any_inconsistent else EXIT_OK


def _cmd_check(args):
    ec, maps = _load(args)
    reports = run_target(args.checker, ec, maps, spec_qoset(ec),
                         args.galois_cap, args.uc_cap)
    if args.format == "json":
        print(json.dumps([r.to_json_dict() for r in reports],
                         indent=2, sort_keys=True))
    else:
        if not reports:
            print(f"{args.checker}: nothing to check "
                  "(needs maps the input does not supply)")
        for r in reports:
            line = f"{r.name}: {r.status}"
            if "map" in r.details:
                line += f" [map {r.details['map']}]"
            print(line)
            if r.status == INCONSISTENT:
                print(f"  details: {json.dumps(r.to_json_dict()['details'])}")
    if any(r.status == INCONSISTENT for r in reports):
        return EXIT_INCONSISTENT
    return EXIT_OK


def _cmd_waybelow(args):
    ec, _ = _load(args)
    rel = way_below(ec)
    continuous, witness = is_continuous(ec)
    per_element = {
        name: list(way_down(ec, ec.universe.singleton(name)).names())
        for name in ec.universe.elements}

    def text():
        lines = [f"structure {ec.name or 'structure'} (n={ec.universe.n})"]
        lines.append("way-below pairs: " + (", ".join(
            f"({a}, {b})" for a, b in rel.pairs()) or "(none)"))
        for name in ec.universe.elements:
            lines.append(f"  way_down({name}) = "
                         "{" + ", ".join(per_element[name]) + "}")
        lines.append(f"continuous: {continuous}")
        if witness is not None:
            lines.append(f"  first failing element: {witness}")
        return "\n".join(lines) + "\n"

    payload = {
        "name": ec.name or "structure",
        "n": ec.universe.n,
        "pairs": [list(p) for p in rel.pairs()],
        "way_down": per_element,
        "continuous": continuous,
    }
    if witness is not None:
        payload["witness"] = witness
    _emit(args, text, payload)
    return EXIT_OK


def _cmd_search(args, parser):
    limit = resolve_max_n(args.max_n)
    if args.size < 1 or args.size > limit:
        parser.error(f"--size must be in 1..{limit} "
                     "(cap via --max-n / CLOSETLAB_MAX_N, ceiling 20)")
    if args.exhaustive and args.size > 5:
        parser.error("--exhaustive is limited to --size <= 5")
    kinds = tuple(args.kinds.split(",")) if args.kinds else C_KINDS
    for kind in kinds:
        if kind not in C_KINDS:
            parser.error(f"unknown operator kind {kind!r}; choose from "
                         + ",".join(C_KINDS))
    valid_targets = ALL_DRIVERS + INVARIANT_TARGETS
    if args.target is not None and args.target not in valid_targets:
        parser.error(f"unknown target {args.target!r}; choose from "
                     + ", ".join(valid_targets))
    config = SearchConfig(size=args.size, samples=args.samples,
                          exhaustive=args.exhaustive, seed=args.seed,
                          kinds=kinds, target=args.target,
                          galois_cap=args.galois_cap, uc_cap=args.uc_cap,
                          max_n=args.max_n)
    report = run_search(config)
    if args.format == "json":
        print(dumps_report(report))
    else:
        sys.stdout.write(report.to_text())
    return EXIT_INCONSISTENT if report.any_inconsistent else EXIT_OK


def _cmd_fixtures(args):
    rows = []
    for name in fixtures.closet_names():
        ec = fixtures.closet(name)
        rows.append({"name": name, "n": ec.universe.n,
                     "bracket": ec.bracket.kind, "c": ec.c.kind})

    def text():
        lines = []
        for row in rows:
            lines.append(f"{row['name']}: n={row['n']} "
                         f"bracket={row['bracket']} c={row['c']}")
        return "\n".join(lines) + "\n"

    _emit(args, text, rows)
    return EXIT_OK


def _cmd_dump(args):
    ec, maps = _load(args)
    print(dumps_space(ec, maps))
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="closetlab",
                     description="Finite enriched-closure-space laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[], help="run the full battery")
    _add_structure_source(p)
    _add_common(p)

    p = sub.add_parser("check", help="run one named checker")
    p.add_argument("checker", choices=ALL_DRIVERS + INVARIANT_TARGETS,
                   metavar="CHECKER",
                   help="one of: " + ", ".join(ALL_DRIVERS
                                               + INVARIANT_TARGETS))
    _add_structure_source(p)
    _add_common(p)

    p = sub.add_parser("waybelow", help="dump the way-below relation")
    _add_structure_source(p)
    _add_common(p)

    p = sub.add_parser("search", help="hunt for theorem counterexamples")
    p.add_argument("--size", type=int, default=4, metavar="N",
                   help="universe size per sample (default 4)")
    p.add_argument("--samples", type=int, default=100, metavar="K",
                   help="number of sampled structures (default 100)")
    p.add_argument("--exhaustive", action="store_true",
                   help="enumerate every qoset of the given size (<= 5)")
    p.add_argument("--target", default=None, metavar="NAME",
                   help="single driver to run (default: all)")
    p.add_argument("--kinds", default=None, metavar="A,B,...",
                   help="comma-separated operator kinds "
                        f"(default all: {','.join(C_KINDS)})")
    _add_common(p)

    p = sub.add_parser("fixtures", help="list builtin structures")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("dump", help="serialize a structure to schema JSON")
    _add_structure_source(p)
    _add_common(p)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "waybelow":
            return _cmd_waybelow(args)
        if args.command == "search":
            return _cmd_search(args, parser)
        if args.command == "fixtures":
            return _cmd_fixtures(args)
        if args.command == "dump":
            return _cmd_dump(args)
        parser.error(f"unknown command {args.command!r}")
    except ParseError as exc:
        print(f"closetlab: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ClosetError as exc:
        print(f"closetlab: invalid structure: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except AssertionError as exc:
        # internal cross-checks disagreeing is the alarm state
        print(f"closetlab: INCONSISTENT internal check: {exc}",
              file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_OK


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
