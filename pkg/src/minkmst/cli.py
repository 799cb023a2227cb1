"""Command-line interface.

Exit codes: 0 success, 2 parse error, 3 invalid instance, 4 verification
failure, 5 unsupported operation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .errors import (
    DimensionMismatchError,
    InvalidInstanceError,
    InvalidNormError,
    NormParseError,
    PerturbationError,
    UnsupportedOperationError,
)
from .lowdeg import PerturbationParams, low_degree_mst
from .mst import DEFAULT_CAP, degree_report, enumerate_msts, kruskal_mst
from .norm import TAU, parse_norm
from .packing import (
    DEFAULT_STRICT_MARGIN,
    PACKING_NAMES,
    UnknownPackingError,
    known_packing,
    known_values_table,
    verify_certificate,
)
from .render import render_svg
from .search import DEFAULT_BUDGET, DEFAULT_RESTARTS, search_lower_bound
from . import serialize as ser

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_VERIFY = 4
EXIT_UNSUPPORTED = 5


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from exc


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_points(path: str):
    text = _read_text(path)
    if path.lower().endswith(".csv"):
        return ser.loads_points_csv(text)
    return ser.loads_pointset(text)


def _norm_for(args, dim: int):
    try:
        return parse_norm(args.norm, dim)
    except NormParseError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from exc


def cmd_mst(args) -> int:
    points = _load_points(args.input)
    norm = _norm_for(args, points.dim)
    _write(args.out, ser.dumps(ser.tree_to_dict(kruskal_mst(points, norm, args.tol))))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    points = _load_points(args.input)
    norm = _norm_for(args, points.dim)
    trees, complete = enumerate_msts(points, norm, args.cap, args.tol)
    out = {"mst_count": len(trees), "enumeration_complete": complete, "trees": [ser.tree_to_dict(t) for t in trees]}
    _write(args.out, ser.dumps(out))
    return EXIT_OK


def cmd_degrees(args) -> int:
    points = _load_points(args.input)
    norm = _norm_for(args, points.dim)
    _write(args.out, ser.dumps(ser.report_to_dict(degree_report(points, norm, args.cap, args.tol))))
    return EXIT_OK


def cmd_lowdeg(args) -> int:
    points = _load_points(args.input)
    norm = _norm_for(args, points.dim)
    params = PerturbationParams(
        epsilon0=None if args.epsilon0 is None else Fraction(args.epsilon0),
        shrink=Fraction(args.shrink),
        max_rounds=args.max_rounds,
        genericity_gap=args.gap,
        resample_limit=args.resample_limit,
        seed=args.seed,
    )
    result = low_degree_mst(points, norm, params, args.tol)
    _write(args.out, ser.dumps(ser.lowdeg_to_dict(result, norm)))
    return EXIT_OK


def cmd_pack(args) -> int:
    if args.mode == "table":
        _write(args.out, ser.dumps([ser.known_value_to_dict(r) for r in known_values_table()]))
        return EXIT_OK
    if args.mode == "known":
        if not args.name:
            raise CliError(EXIT_PARSE, "pack known needs --name")
        try:
            cert = known_packing(args.name, args.dim)
        except UnknownPackingError as exc:
            raise CliError(EXIT_PARSE, f"unknown packing {args.name!r}; choose from {', '.join(PACKING_NAMES)}") from exc
        _write(args.out, ser.dumps(ser.cert_to_dict(cert)))
        return EXIT_OK
    if args.mode == "verify":
        if not args.input:
            raise CliError(EXIT_PARSE, "pack verify needs --in")
        cert = ser.loads_cert(_read_text(args.input))
        ok = verify_certificate(cert, args.tol, args.strict_margin)
        _write(args.out, ser.dumps({"valid": ok, "k": cert.k, "strict": cert.strict, "norm": cert.norm.spec_string()}))
        return EXIT_OK if ok else EXIT_VERIFY
    # search
    if args.k is None:
        raise CliError(EXIT_PARSE, "pack search needs --k")
    norm = _norm_for(args, args.dim or 2)
    result = search_lower_bound(
        norm,
        args.k,
        strict=args.strict,
        strict_margin=args.strict_margin,
        budget=args.budget,
        restarts=args.restarts,
        seed=args.seed,
        tol=args.tol,
    )
    _write(args.out, ser.dumps(ser.search_to_dict(result, norm, args.k)))
    return EXIT_OK


def cmd_render(args) -> int:
    points = _load_points(args.input)
    if points.dim != 2:
        raise CliError(EXIT_UNSUPPORTED, f"render needs planar input, got dimension {points.dim}")
    norm = _norm_for(args, points.dim)
    if args.tree:
        edges = ser.loads_edges(_read_text(args.tree))
        if any(not (0 <= i < len(points) and 0 <= j < len(points)) for i, j in edges):
            raise CliError(EXIT_INVALID, "tree refers to a point index out of range")
    elif args.no_tree:
        edges = []
    else:
        edges = list(kruskal_mst(points, norm, args.tol).edges)
    if args.ball_at is not None and not 0 <= args.ball_at < len(points):
        raise CliError(EXIT_INVALID, f"--ball-at {args.ball_at} is out of range")
    _write(args.out, render_svg(points, norm, edges, args.ball_at, args.ball_radius))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minkmst", description="Minimal spanning trees in normed spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--norm", default="l2", help="l1, l2, linf, lp:<p> or poly:[[x,y],...]")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--tol", type=float, default=TAU, help="floating-point tie tolerance")

    def instance(name, helptext):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--in", dest="input", required=True, help="point set JSON or CSV ('-' for stdin)")
        return p

    instance("mst", "one minimal spanning tree").set_defaults(func=cmd_mst)
    p = instance("enumerate", "all minimal spanning trees")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_enumerate)
    p = instance("degrees", "largest and smallest maximum degree over all MSTs")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_degrees)

    p = instance("lowdeg", "an MST of small maximum degree via perturbation")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-rounds", type=int, default=20)
    p.add_argument("--gap", type=float, default=1e-6, help="genericity gap around angle size 1")
    p.add_argument("--resample-limit", type=int, default=100)
    p.add_argument("--epsilon0", default=None, help="initial perturbation radius (default: min distance / 4)")
    p.add_argument("--shrink", default="1/2")
    p.set_defaults(func=cmd_lowdeg)

    p = sub.add_parser("pack", parents=[common], help="unit-vector packing certificates")
    p.add_argument("mode", choices=["search", "verify", "known", "table"])
    p.add_argument("--in", dest="input", default=None, help="certificate JSON for verify")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--name", default=None, help=", ".join(PACKING_NAMES))
    p.add_argument("--strict", action="store_true", help="search for a strict packing")
    p.add_argument("--strict-margin", type=float, default=DEFAULT_STRICT_MARGIN)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="annealing iterations per restart")
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_pack)

    p = instance("render", "SVG drawing of a planar instance")
    p.add_argument("--tree", default=None, help="tree JSON to draw (default: Kruskal MST)")
    p.add_argument("--no-tree", action="store_true")
    p.add_argument("--ball-at", type=int, default=None, help="draw the unit ball centred at this point")
    p.add_argument("--ball-radius", type=float, default=1.0)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ser.FormatError, NormParseError, json.JSONDecodeError, ValueError) as exc:
        code = EXIT_INVALID if isinstance(exc, (InvalidInstanceError, DimensionMismatchError, InvalidNormError)) else EXIT_PARSE
        print(f"error: {exc}", file=sys.stderr)
        return code
    except UnsupportedOperationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except PerturbationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
