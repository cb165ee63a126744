"""``cflow`` command-line interface.

Exit codes: 0 success, 1 validation failure (invalid flow, bridged graph,
solver failure), 2 usage, file or parse errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

from . import fileio
from .bounds import bound_report
from .errors import CFlowError, InvalidParameter, NoFlowExists, NotAFlow, NowhereZeroViolation, ParseError, SolverFailure
from .flow import conservation_residual, flow_number_estimate, verify_nzf
from .render import RenderSpec, render_sequence
from .solver import SolverConfig, solve_upper
from .wheel import lambda_of, optimal_flow, prism_flow, theorem1_value, wheel_sequence

DEFAULT_SEED = 0


class _UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.12f}"


def _seed(arg: Optional[int]) -> int:
    if arg is not None:
        return arg
    env = os.environ.get("CFLOW_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise _UsageError(f"CFLOW_SEED must be an integer, got {env!r}") from None


def cmd_wheel(args) -> int:
    n = args.n
    value = theorem1_value(n)
    print(f"phi_C(W_{n}) = {_fmt(value)}")
    if args.json:
        fileio.write_flow(optimal_flow(n), args.json, r=value)
    if args.svg:
        seq = wheel_sequence(n)
        Path(args.svg).write_text(render_sequence(seq, lambda_of(seq), RenderSpec()))
    return 0


def cmd_prism(args) -> int:
    n = args.n
    value = theorem1_value(n)
    print(f"phi_C(P_{n}) = {_fmt(value)}")
    if args.json:
        fileio.write_flow(prism_flow(n), args.json, r=value)
    return 0


def cmd_bound(args) -> int:
    G = fileio.read_graph(args.file)
    cfg = SolverConfig(starts=args.starts, seed=_seed(args.seed))
    report = bound_report(G, solve=args.solve, config=cfg)
    girth = "bipartite" if report.odd_girth is None else report.odd_girth
    print(f"odd girth: {girth}")
    print(f"lower bound: {_fmt(report.lower)} ({report.lower_source})")
    if report.upper is None:
        print("upper bound: none")
    else:
        print(f"upper bound: {_fmt(report.upper)} ({report.upper_source})")
    if report.family:
        print(f"family: {report.family}")
    if args.json:
        Path(args.json).write_text(json.dumps(report.as_dict(), indent=2) + "\n")
    return 0


def cmd_solve(args) -> int:
    G = fileio.read_graph(args.file)
    cfg = SolverConfig(starts=args.starts, seed=_seed(args.seed))
    result = solve_upper(G, cfg)
    w = result.witness
    print(f"upper bound: {_fmt(result.upper_bound)}")
    print(f"residual: {conservation_residual(w):.3e}")
    print(f"min norm: {_fmt(w.norms.min())}")
    print(f"max norm: {_fmt(w.norms.max())}")
    if args.json:
        fileio.write_flow(w, args.json, r=result.upper_bound)
    return 0


def cmd_verify(args) -> int:
    flow, file_r = fileio.read_flow(args.file)
    r = args.r if args.r is not None else file_r
    if r is None:
        # no target given: check the flow against the r it certifies after normalising
        try:
            r = flow_number_estimate(flow, args.tol)
        except (NotAFlow, NowhereZeroViolation) as exc:
            print(f"INVALID: {exc}")
            return 1
        flow = flow.normalized()
    report = verify_nzf(flow, r, args.tol)
    print(f"r: {_fmt(report.r)}")
    print(f"max conservation residual: {report.max_conservation_residual:.3e}")
    print(f"min norm: {_fmt(report.min_norm)}")
    print(f"max norm: {_fmt(report.max_norm)}")
    if report.valid_for_r:
        print("VALID")
        return 0
    if report.offending_vertices:
        print(f"offending vertices: {report.offending_vertices}")
    if report.offending_edges:
        print(f"offending edges: {report.offending_edges}")
    print("INVALID")
    return 1


def cmd_render(args) -> int:
    if (args.n is None) == (args.file is None):
        raise _UsageError("render needs exactly one of a points file or --n")
    seq = wheel_sequence(args.n) if args.n is not None else fileio.read_points(args.file)
    lam = args.lam if args.lam is not None else max(lambda_of(seq), 1.0)
    if lam < float(abs(seq.points).max()) - 1e-9:
        raise _UsageError(f"lambda {lam} is smaller than the largest point norm")
    spec = RenderSpec(
        scale=args.scale,
        show_labels=not args.no_labels,
        show_circles=not args.no_circles,
        arrowheads=not args.no_arrows,
    )
    svg = render_sequence(seq, lam, spec)
    if args.output:
        Path(args.output).write_text(svg)
    else:
        sys.stdout.write(svg)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cflow", description="Complex nowhere-zero flows on graphs.")
    p.add_argument("-v", "--verbose", action="store_true", help="log solver progress")
    sub = p.add_subparsers(dest="command", required=True)

    w = sub.add_parser("wheel", help="optimal flow on the wheel W_n")
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--json", metavar="OUT", help="write the flow (.flow.json)")
    w.add_argument("--svg", metavar="OUT", help="write the point sequence as SVG")
    w.set_defaults(func=cmd_wheel)

    pr = sub.add_parser("prism", help="flow on the prism P_n lifted from W_n")
    pr.add_argument("--n", type=int, required=True)
    pr.add_argument("--json", metavar="OUT")
    pr.set_defaults(func=cmd_prism)

    b = sub.add_parser("bound", help="lower and upper bounds for a graph file")
    b.add_argument("file")
    b.add_argument("--solve", action="store_true", help="run the numerical solver for the upper bound")
    b.add_argument("--starts", type=int, default=32)
    b.add_argument("--seed", type=int)
    b.add_argument("--json", metavar="OUT", help="write the report as JSON")
    b.set_defaults(func=cmd_bound)

    s = sub.add_parser("solve", help="numerical upper bound by multi-start search")
    s.add_argument("file")
    s.add_argument("--starts", type=int, default=32)
    s.add_argument("--seed", type=int)
    s.add_argument("--json", metavar="OUT", help="write the witness flow")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a .flow.json file")
    v.add_argument("file")
    v.add_argument("--r", type=float, help="target r (default: the file's r, else the flow's own estimate)")
    v.add_argument("--tol", type=float, default=1e-9)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", help="SVG of a point sequence")
    r.add_argument("file", nargs="?", help=".pts.json file")
    r.add_argument("--n", type=int, help="render the optimal sequence of W_n instead")
    r.add_argument("--lambda", dest="lam", type=float, help="outer circle radius")
    r.add_argument("--scale", type=float, default=150.0)
    r.add_argument("--no-labels", action="store_true")
    r.add_argument("--no-circles", action="store_true")
    r.add_argument("--no-arrows", action="store_true")
    r.add_argument("-o", "--output", metavar="OUT")
    r.set_defaults(func=cmd_render)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (_UsageError, InvalidParameter, ParseError, OSError) as exc:
        print(f"cflow: error: {exc}", file=sys.stderr)
        return 2
    except (NoFlowExists, SolverFailure, CFlowError) as exc:
        print(f"cflow: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
