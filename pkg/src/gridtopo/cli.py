"""Command line interface: validate, distances, curviness, contract, render."""

from __future__ import annotations

import argparse
import sys

from . import engine, io, render as render_mod
from .complexes import validate
from .curviness import VARIANTS, radius_schedule, valid_reports
from .errors import GridTopoError
from .metric import all_pairs


def _cmd_validate(args) -> int:
    M = io.load_fixture(args.fixture, require_valid=False)
    report = validate(M)
    if not args.quiet:
        print(f"cells={M.n_cells} m={M.m} ambient_n={M.ambient.n}")
        print(report)
    return 0 if report.ok else 1


def _cmd_distances(args) -> int:
    M = io.load_fixture(args.fixture)
    ap = all_pairs(M)
    for u, v, dm, du in ap.pairs():
        ut = ",".join(str(x) for x in u)
        vt = ",".join(str(x) for x in v)
        print(f"{ut} {vt} {dm} {du}")
    return 0


def _cmd_curviness(args) -> int:
    M = io.load_fixture(args.fixture)
    radii = [args.radius] if args.radius else list(radius_schedule(M))
    rows = 0
    for gamma in radii:
        reports = valid_reports(M, gamma, variant=args.variant)
        if not args.all and reports:
            reports = reports[:1]
        for rep in reports:
            print(
                f"{io.cell_token(rep.center)} {rep.gamma} "
                f"{rep.r} {rep.r1} {rep.r2_h} {rep.r3}"
            )
            rows += 1
        if rows and not args.all:
            break
    if not rows and not args.quiet:
        print("no valid curviness candidates", file=sys.stderr)
    return 0


def _cmd_contract(args) -> int:
    M = io.load_fixture(args.input)
    cfg = engine.ContractionConfig(
        variant=args.variant,
        filling_cap=args.filling_cap,
        move_cap=args.move_cap,
    )
    result = engine.contract(M, cfg)
    root = result.root
    if not args.quiet:
        print(f"status={root.terminal.status} nodes={len(result.nodes)}")
        for line in io.trace_lines(root.trace):
            print(line)
    if args.trace_out:
        children = {
            n.node_id: n.trace for n in result.nodes if n.node_id != root.node_id
        }
        io.save_trace(root.trace, args.trace_out, children=children)
    if args.frames_out:
        render_mod.render(root.trace, args.frames_out, fmt=args.format)
    return result.exit_code


def _cmd_render(args) -> int:
    trace = io.load_trace(args.trace)
    paths = render_mod.render(trace, args.out, fmt=args.format)
    if not args.quiet:
        print(f"wrote {len(paths)} frames to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridtopo",
        description="Contract closed cubical manifolds to irreducible discrete spheres.",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized corpus helpers")
    parser.add_argument("--quiet", action="store_true", help="suppress non-essential output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the manifold conditions of a fixture")
    p.add_argument("fixture")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("distances", help="print x y d_M d_U for all vertex pairs")
    p.add_argument("fixture")
    p.set_defaults(func=_cmd_distances)

    p = sub.add_parser("curviness", help="curviness scan table: x γ r r1 h r3")
    p.add_argument("fixture")
    p.add_argument("--radius", type=int, default=None)
    p.add_argument("--variant", choices=VARIANTS, default="ratio")
    p.add_argument("--all", action="store_true", help="print every valid candidate")
    p.set_defaults(func=_cmd_curviness)

    p = sub.add_parser("contract", help="contract a fixture to an irreducible sphere")
    p.add_argument("--input", required=True)
    p.add_argument("--variant", choices=VARIANTS, default="ratio")
    p.add_argument("--filling-cap", type=int, default=64)
    p.add_argument("--move-cap", type=int, default=None)
    p.add_argument("--trace-out", default=None)
    p.add_argument("--frames-out", default=None)
    p.add_argument("--format", choices=("auto", "svg-2d", "obj-3d"), default="auto")
    p.set_defaults(func=_cmd_contract)

    p = sub.add_parser("render", help="render a saved trace into frame files")
    p.add_argument("--trace", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("auto", "svg-2d", "obj-3d"), default="auto")
    p.set_defaults(func=_cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GridTopoError as err:
        print(f"error: {err}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
