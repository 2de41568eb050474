"""Command-line front end.

Exit codes: 0 ok, 1 input error, 2 graph validation failure, 3 invariant
violation. Documents go to stdout (or ``--output``), diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .alignment import Orientation, vertical_align
from .balancing import ALL_ORIENTATIONS, assign_coordinates
from .checks import check_assignment
from .diagnostics import diff_graph
from .generators import random_graph
from .graph import GraphInputError, InvalidGraphError, LayeredGraph
from .io import CoordinateDocument, graph_to_dict, loads_graph, read_coordinates
from .svg import render_svg

EXIT_OK, EXIT_INPUT, EXIT_INVALID, EXIT_VIOLATION = 0, 1, 2, 3


class _InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read_text(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}") from exc


def _write(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_graph(args) -> LayeredGraph:
    graph = loads_graph(_read_text(args.input))
    if getattr(args, "delta", None) is not None:
        graph = graph.with_delta(args.delta)
    graph.report.raise_for_violations()
    return graph


def _orientations(value: str) -> tuple[Orientation, ...]:
    return ALL_ORIENTATIONS if value == "all" else (Orientation(value),)


def _assign(graph: LayeredGraph, args):
    return assign_coordinates(
        graph,
        strategy=args.strategy,
        balance=not args.no_balance,
        orientations=_orientations(args.orientations),
    )


def cmd_assign(args) -> int:
    graph = _load_graph(args)
    doc = CoordinateDocument.from_assignment(_assign(graph, args))
    _write(doc.dumps(), args.output)
    if not doc.conforming:
        print("warning: legacy-buggy output is non-conforming", file=sys.stderr)
    return EXIT_OK


def cmd_check(args) -> int:
    graph = _load_graph(args)
    doc = read_coordinates(args.coords) if args.coords != "-" else CoordinateDocument.loads(sys.stdin.read())
    graph = graph.with_delta(doc.delta)
    blocks = None
    if not doc.balanced and len(doc.orientations) == 1:
        blocks = vertical_align(graph, Orientation(doc.orientations[0]))
    problems = check_assignment(graph, doc.coordinates, blocks)
    if problems and problems[0].kind == "missing":
        raise _InputError(f"coordinates missing for: {', '.join(problems[0].ids)}")
    report = {
        "ok": not problems,
        "problems": [{"kind": p.kind, "ids": list(p.ids), "detail": p.detail} for p in problems],
    }
    _write(json.dumps(report, sort_keys=True, indent=2) + "\n", args.output)
    for p in problems:
        print(f"{p.kind}: {p.detail}", file=sys.stderr)
    return EXIT_VIOLATION if problems else EXIT_OK


def cmd_diff(args) -> int:
    if args.input is not None:
        graphs = [_load_graph(args)]
    elif args.seed is not None:
        rng = random.Random(args.seed)
        graphs = [random_graph(rng, max_vertices=60) for _ in range(args.count)]
        if args.delta is not None:
            graphs = [g.with_delta(args.delta) for g in graphs]
    else:
        raise _InputError("diff needs --input or --seed")
    corrected = "neighborlist" if args.strategy == "neighborlist" else "contour"
    instances = []
    broken = False
    for graph in graphs:
        worst, reports = diff_graph(graph, _orientations(args.orientations), corrected)
        broken |= any(r.violations[corrected] for r in reports)
        entry = {"classification": worst, "reports": [r.to_dict() for r in reports]}
        if args.input is None:
            entry["graph"] = graph_to_dict(graph)
        instances.append(entry)
    if args.input is not None:
        out = instances[0]
    else:
        counts: dict[str, int] = {}
        for entry in instances:
            counts[entry["classification"]] = counts.get(entry["classification"], 0) + 1
        out = {"seed": args.seed, "summary": counts, "instances": instances}
    _write(json.dumps(out, sort_keys=True, indent=2) + "\n", args.output)
    return EXIT_VIOLATION if broken else EXIT_OK


def cmd_svg(args) -> int:
    graph = _load_graph(args)
    if args.coords is not None:
        doc = read_coordinates(args.coords)
        missing = [v for v in graph.vertices() if v not in doc.coordinates]
        if missing:
            raise _InputError(f"coordinates missing for: {', '.join(missing)}")
        x = doc.coordinates
        orientation = Orientation(doc.orientations[0]) if len(doc.orientations) == 1 else Orientation.UL
    else:
        result = _assign(graph, args)
        x = result.x
        orientation = Orientation(result.orientations[0]) if len(result.orientations) == 1 else Orientation.UL
    _write(render_svg(graph, x, overlays=args.overlays, orientation=orientation), args.output)
    return EXIT_OK


def cmd_validate(args) -> int:
    graph = loads_graph(_read_text(args.input))
    report = graph.report
    out = {
        "ok": report.ok,
        "violations": [{"code": v.code, "message": v.message, "ids": list(v.ids)} for v in report.violations],
    }
    _write(json.dumps(out, sort_keys=True, indent=2) + "\n", args.output)
    return EXIT_OK if report.ok else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="layercoord", description="Horizontal coordinate assignment for layered drawings.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, assign_flags=True):
        p.add_argument("-i", "--input", help="graph JSON (default: stdin)")
        p.add_argument("-o", "--output", help="output file (default: stdout)")
        p.add_argument("--delta", type=float, help="override the graph's minimum separation")
        if assign_flags:
            p.add_argument("--strategy", choices=("contour", "neighborlist", "legacy-buggy"), default="contour")
            p.add_argument("--orientations", choices=("all", "ul", "ur", "ll", "lr"), default="all")
            p.add_argument("--no-balance", action="store_true", help="return the first orientation unbalanced")

    p = sub.add_parser("assign", help="compute coordinates")
    common(p)
    p.set_defaults(func=cmd_assign)

    p = sub.add_parser("check", help="check a coordinate document against its graph")
    p.add_argument("coords", help="coordinate JSON")
    common(p, assign_flags=False)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("diff", help="compare legacy-buggy against the corrected compaction")
    common(p)
    p.add_argument("--seed", type=int, help="generate random instances instead of reading --input")
    p.add_argument("--count", type=int, default=10, help="instances to generate with --seed")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("svg", help="render an SVG preview")
    common(p)
    p.add_argument("--coords", help="coordinate JSON (default: compute)")
    p.add_argument("--overlays", action="store_true", help="draw blocks and class hulls")
    p.set_defaults(func=cmd_svg)

    p = sub.add_parser("validate", help="validate a graph")
    common(p, assign_flags=False)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidGraphError as exc:
        for v in exc.report.violations:
            print(f"{v.code}: {v.message}", file=sys.stderr)
        return EXIT_INVALID
    except (_InputError, GraphInputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
