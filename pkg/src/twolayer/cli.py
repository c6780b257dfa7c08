"""Command-line interface.

Subcommands: gen, analyze, decompose, layout, pathwidth, check-pd, fuzz,
render.  Exit codes: 0 success, 1 validation/invariant failure, 2 usage,
3 size cap exceeded.  Files are JSON (UTF-8) except rendered SVG; "-" as an
input path reads stdin, and omitting --out writes to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import render
from .analysis import (
    DEFAULT_PROFILE_CAP,
    DEFAULT_ST_EDGE_CAP,
    analysis_report,
)
from .decompose import certificate_to_json, decompose_drawing
from .errors import CapExceededError, TwoLayerError
from .fuzz import ALL_CHECKS, FuzzConfig, report_to_json, run_fuzz
from .graphs import (
    DEFAULT_GRID_SIDE_CAP,
    DEFAULT_RANDOM_SIDE_CAP,
    DEFAULT_STAR_CAP,
    DEFAULT_TREE_HEIGHT_CAP,
    complete_binary_tree,
    drawing_from_json,
    drawing_to_json,
    graph_from_json,
    graph_to_json,
    grid_graph,
    random_drawing,
    star_fan_drawing,
    subdivided_star,
)
from .layout import layout_certificate_to_json, layout_decomposition
from .pathdecomp import (
    DEFAULT_PATHWIDTH_CAP,
    decomposition_from_json,
    decomposition_to_json,
    order_to_decomposition,
    pathwidth_exact,
    validate_decomposition,
)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


# ===================================================================
# subcommand handlers
# ===================================================================

def _cmd_gen(args: argparse.Namespace) -> int:
    if args.family == "tree":
        cap = args.cap_n if args.cap_n is not None else DEFAULT_TREE_HEIGHT_CAP
        _, drawing = complete_binary_tree(args.height, cap=cap)
        payload = drawing
    elif args.family == "grid":
        cap = args.cap_n if args.cap_n is not None else DEFAULT_GRID_SIDE_CAP
        _, drawing = grid_graph(args.side, cap=cap)
        payload = drawing
    elif args.family == "star":
        cap = args.cap_n if args.cap_n is not None else DEFAULT_STAR_CAP
        if args.fan:
            _, payload = star_fan_drawing(args.legs, cap=cap)
        else:
            payload = subdivided_star(args.legs, cap=cap)
    else:  # random
        cap = args.cap_n if args.cap_n is not None else DEFAULT_RANDOM_SIDE_CAP
        _, payload = random_drawing(args.na, args.nb, args.p, args.seed, cap=cap)

    from .graphs import BipartiteGraph, TwoLayerDrawing

    if args.format == "svg":
        if isinstance(payload, BipartiteGraph):
            return _usage("cannot render a bare graph; use --fan for a drawing")
        _write(args.out, render.render_drawing(payload))
        return 0
    if isinstance(payload, TwoLayerDrawing):
        _write(args.out, drawing_to_json(payload))
    else:
        _write(args.out, graph_to_json(payload))
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    drawing = drawing_from_json(_read(args.infile))
    report = analysis_report(
        drawing, s_cap=args.cap_st, t_cap=args.cap_st, edge_cap=args.cap_edges
    )
    _write(args.out, json.dumps(report, indent=2))
    return 0


def _cmd_decompose(args: argparse.Namespace) -> int:
    drawing = drawing_from_json(_read(args.infile))
    pd, cert = decompose_drawing(
        drawing, s_cap=args.cap_st, t_cap=args.cap_st, edge_cap=args.cap_edges
    )
    _write(args.out, decomposition_to_json(pd))
    if args.cert:
        _write(args.cert, certificate_to_json(cert))
    return 0


def _cmd_layout(args: argparse.Namespace) -> int:
    pd = decomposition_from_json(_read(args.infile))
    graph = graph_from_json(_read(args.graph))
    drawing, cert = layout_decomposition(graph, pd, edge_cap=args.cap_edges)
    _write(args.out, drawing_to_json(drawing))
    if args.cert:
        _write(args.cert, layout_certificate_to_json(cert))
    return 0


def _cmd_pathwidth(args: argparse.Namespace) -> int:
    graph = graph_from_json(_read(args.infile))
    pw, order = pathwidth_exact(graph, cap=args.cap_n)
    pd = order_to_decomposition(graph, order)
    payload = {
        "pathwidth": pw,
        "order": list(order),
        "bags": [list(bag) for bag in pd.bags],
    }
    _write(args.out, json.dumps(payload, indent=2))
    return 0


def _cmd_check_pd(args: argparse.Namespace) -> int:
    pd = decomposition_from_json(_read(args.infile))
    graph = graph_from_json(_read(args.graph))
    violations = validate_decomposition(graph, pd)
    payload = {
        "ok": not violations,
        "width": pd.width if pd.bags else None,
        "violations": [
            {
                "kind": v.kind,
                "vertex": v.vertex,
                "edge": list(v.edge) if v.edge else None,
                "indices": list(v.indices),
                "detail": v.describe(),
            }
            for v in violations
        ],
    }
    _write(args.out, json.dumps(payload, indent=2))
    return 0 if not violations else 1


def _cmd_fuzz(args: argparse.Namespace) -> int:
    checks = tuple(args.checks.split(",")) if args.checks else ALL_CHECKS
    config = FuzzConfig(
        trials=args.trials,
        seed=args.seed,
        na_range=(0, args.na_max),
        nb_range=(0, args.nb_max),
        p_range=(args.p_min, args.p_max),
        checks=checks,
        invert_check=args.invert,
    )
    report = run_fuzz(config)
    _write(args.out, report_to_json(report))
    return 0 if report.ok else 1


def _cmd_render(args: argparse.Namespace) -> int:
    if args.format != "svg":
        return _usage("render only emits svg")
    text = _read(args.infile)
    data = json.loads(text)
    if isinstance(data, dict) and "bags" in data:
        svg = render.render_decomposition(decomposition_from_json(text))
    else:
        svg = render.render_drawing(drawing_from_json(text))
    _write(args.out, svg)
    return 0


# ===================================================================
# parser
# ===================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twolayer",
        description="Two-layer bipartite drawings, their crossing structure, "
        "and certified conversions to and from path decompositions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate an example graph or drawing")
    fam = gen.add_subparsers(dest="family", required=True)
    tree = fam.add_parser("tree", help="complete binary tree with drawing")
    tree.add_argument("--height", type=int, required=True)
    grid = fam.add_parser("grid", help="square grid with drawing")
    grid.add_argument("--side", type=int, required=True)
    star = fam.add_parser("star", help="once-subdivided star")
    star.add_argument("--legs", type=int, required=True)
    star.add_argument(
        "--fan", action="store_true", help="also fix the canonical fan drawing"
    )
    rand = fam.add_parser("random", help="seeded random drawing")
    rand.add_argument("--na", type=int, required=True)
    rand.add_argument("--nb", type=int, required=True)
    rand.add_argument("--p", type=float, required=True)
    rand.add_argument("--seed", type=int, default=0)
    for p in (tree, grid, star, rand):
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=("json", "svg"), default="json")
        p.add_argument("--cap-n", type=int, default=None, dest="cap_n")
        p.set_defaults(func=_cmd_gen)

    analyze = sub.add_parser("analyze", help="crossing analytics for a drawing")
    analyze.add_argument("--in", dest="infile", required=True)
    analyze.add_argument("--out", default=None)
    analyze.add_argument("--cap-st", type=int, default=DEFAULT_PROFILE_CAP)
    analyze.add_argument("--cap-edges", type=int, default=DEFAULT_ST_EDGE_CAP)
    analyze.set_defaults(func=_cmd_analyze)

    dec = sub.add_parser(
        "decompose", help="drawing -> certified path decomposition"
    )
    dec.add_argument("--in", dest="infile", required=True)
    dec.add_argument("--out", default=None)
    dec.add_argument("--cert", default=None, help="also write the certificate")
    dec.add_argument("--cap-st", type=int, default=DEFAULT_PROFILE_CAP)
    dec.add_argument("--cap-edges", type=int, default=DEFAULT_ST_EDGE_CAP)
    dec.set_defaults(func=_cmd_decompose)

    lay = sub.add_parser(
        "layout", help="path decomposition -> certified drawing"
    )
    lay.add_argument("--in", dest="infile", required=True)
    lay.add_argument("--graph", required=True)
    lay.add_argument("--out", default=None)
    lay.add_argument("--cert", default=None, help="also write the certificate")
    lay.add_argument("--cap-edges", type=int, default=DEFAULT_ST_EDGE_CAP)
    lay.set_defaults(func=_cmd_layout)

    pw = sub.add_parser("pathwidth", help="exact pathwidth of a small graph")
    pw.add_argument("--in", dest="infile", required=True)
    pw.add_argument("--out", default=None)
    pw.add_argument("--cap-n", type=int, default=DEFAULT_PATHWIDTH_CAP)
    pw.set_defaults(func=_cmd_pathwidth)

    chk = sub.add_parser("check-pd", help="validate a path decomposition")
    chk.add_argument("--in", dest="infile", required=True)
    chk.add_argument("--graph", required=True)
    chk.add_argument("--out", default=None)
    chk.set_defaults(func=_cmd_check_pd)

    fz = sub.add_parser("fuzz", help="randomized invariant sweep")
    fz.add_argument("--trials", type=int, default=100)
    fz.add_argument("--seed", type=int, default=0)
    fz.add_argument("--na-max", type=int, default=8)
    fz.add_argument("--nb-max", type=int, default=8)
    fz.add_argument("--p-min", type=float, default=0.0)
    fz.add_argument("--p-max", type=float, default=1.0)
    fz.add_argument(
        "--checks", default=None, help=f"comma list from {','.join(ALL_CHECKS)}"
    )
    fz.add_argument(
        "--invert",
        default=None,
        help="negate one check's verdict (harness self-test)",
    )
    fz.add_argument("--out", default=None)
    fz.set_defaults(func=_cmd_fuzz)

    ren = sub.add_parser("render", help="SVG for a drawing or decomposition")
    ren.add_argument("--in", dest="infile", required=True)
    ren.add_argument("--out", default=None)
    ren.add_argument("--format", choices=("json", "svg"), default="svg")
    ren.set_defaults(func=_cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except TwoLayerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
