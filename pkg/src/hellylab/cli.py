"""Command-line interface.

Subcommands: validate, verify-helly, verify-colorful, verify-fractional,
lemma-check {31a|31b|32}, theorem {25|26}, volume, gen {boxes|polygons|chain},
search-counterexample, run. Global flags: --seed, --workers, --out,
--format {csv|summary}. All configuration is explicit; no environment
variables are consulted for experiment parameters.
"""

from __future__ import annotations

import argparse
import os
import sys

from .builders import SyntheticChainSpec, random_chain
from .errors import ChainRejectedError, InputError
from .formats import load_bodies, load_chain, save_bodies, save_chain
from .geometry import (
    Box,
    ConvexPolygon,
    ExactIntersections,
    box_as_halfspace_body,
    box_volume,
    polygon_area,
    polygon_as_halfspace_body,
    random_boxes,
    random_polygons,
)
from .montecarlo import mc_volume
from .reports import rows_to_csv, rows_to_summary, write_report
from .scenarios import Directive, Scenario, run_op, run_scenario


def _seed(args) -> int:
    return args.seed if args.seed is not None else 0


def _chain_op_command(args, op_name: str, op_args: dict) -> int:
    chain = load_chain(args.chain)
    return _chain_op_command_with(
        args, chain, op_name, {k: v for k, v in op_args.items() if v is not None}
    )


def _emit(rows, args) -> None:
    from .scenarios import REPORT_COLUMNS

    csv_text = rows_to_csv(rows, REPORT_COLUMNS)
    summary = rows_to_summary(rows, REPORT_COLUMNS)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        write_report(os.path.join(args.out, "report.csv"), csv_text)
        write_report(os.path.join(args.out, "report.txt"), summary)
    sys.stdout.write(csv_text if args.fmt == "csv" else summary)


def cmd_validate(args) -> int:
    chain = load_chain(args.chain_file)
    return _chain_op_command_with(args, chain, "validate",
                                  {"budget": str(args.budget)})


def _chain_op_command_with(args, chain, op_name, op_args) -> int:
    scn = Scenario(source="<cli>", seed=_seed(args), chain_directives=[], ops=[])
    op = Directive(lineno=0, kind="op", name=op_name, args=op_args)
    rows, failed = run_op(chain, op, scn, 0, args.workers)
    _emit(rows, args)
    return 1 if failed else 0


def cmd_volume(args) -> int:
    bodies = load_bodies(args.bodies_file)
    rows = []
    exact_ok = not args.mc and (
        all(isinstance(b, Box) for b in bodies)
        or all(isinstance(b, ConvexPolygon) for b in bodies)
    )
    if exact_ok:
        for i, b in enumerate(bodies):
            vol = box_volume(b) if isinstance(b, Box) else polygon_area(b)
            rows.append({"op_index": i, "operation": "volume", "params": "exact",
                         "status": "ok", "values": f"volume={vol}"})
        inter = ExactIntersections(bodies)
        full = (1 << len(bodies)) - 1
        rows.append({"op_index": len(bodies), "operation": "intersection-volume",
                     "params": "exact", "status": "ok",
                     "values": f"volume={inter.volume(full)}"})
    else:
        hb = []
        for b in bodies:
            if isinstance(b, Box):
                hb.append(box_as_halfspace_body(b))
            elif isinstance(b, ConvexPolygon):
                hb.append(polygon_as_halfspace_body(b))
            else:
                hb.append(b)
        for i, b in enumerate(hb):
            est = mc_volume([b], args.samples, args.confidence, seed=_seed(args))
            rows.append({"op_index": i, "operation": "volume",
                         "params": f"mc samples={args.samples}", "status": "estimate",
                         "values": f"estimate={est.estimate!r}; "
                                   f"interval=[{est.lower!r}, {est.upper!r}]"})
        est = mc_volume(hb, args.samples, args.confidence, seed=_seed(args))
        rows.append({"op_index": len(hb), "operation": "intersection-volume",
                     "params": f"mc samples={args.samples}", "status": "estimate",
                     "values": f"estimate={est.estimate!r}; "
                               f"interval=[{est.lower!r}, {est.upper!r}]"})
    _emit(rows, args)
    return 0


def cmd_gen(args) -> int:
    if args.what == "boxes":
        bodies = random_boxes(args.count, args.dim, args.scale, args.den,
                              seed=_seed(args))
        save_bodies(bodies, args.target)
    elif args.what == "polygons":
        bodies = random_polygons(args.count, args.vertices, args.scale, args.den,
                                 seed=_seed(args))
        save_bodies(bodies, args.target)
    else:
        lo, hi = (int(t) for t in args.window.split(".."))
        chain = random_chain(
            SyntheticChainSpec(n=args.n, window=(lo, hi), density=args.density,
                               seed=_seed(args))
        )
        save_chain(chain, args.target)
    print(args.target)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hellylab",
        description="Desk-scale verification lab for Helly-type properties "
                    "of hypergraph chains.",
    )
    parser.add_argument("--seed", type=int, default=None, help="global RNG seed")
    parser.add_argument("--workers", type=int, default=1, help="worker count")
    parser.add_argument("--out", default=None, help="report output directory")
    parser.add_argument("--format", dest="fmt", choices=("csv", "summary"),
                        default="summary")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the chain axioms of a chain file")
    p.add_argument("chain_file")
    p.add_argument("--budget", type=int, default=10000)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("verify-helly", help="exhaustive Helly check")
    p.add_argument("--chain", required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--levels", required=True, help="a..b")
    p.set_defaults(fn=lambda a: _chain_op_command(
        a, "verify-helly", {"h": str(a.h), "levels": a.levels}))

    p = sub.add_parser("verify-colorful", help="colorful Helly check over a tuple universe")
    p.add_argument("--chain", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--levels", required=True)
    p.add_argument("--max-class-size", default="3",
                   help="positive integer, or 'full' for the full disjoint universe")
    p.add_argument("--budget", type=int, default=0)
    p.set_defaults(fn=lambda a: _chain_op_command(
        a, "verify-colorful",
        {"k": str(a.k), "levels": a.levels, "max-class-size": a.max_class_size,
         "budget": str(a.budget)}))

    p = sub.add_parser("verify-fractional", help="observed (alpha, beta) profile")
    p.add_argument("--chain", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--subset", default="all")
    p.set_defaults(fn=lambda a: _chain_op_command(
        a, "verify-fractional",
        {"k": str(a.k), "level": str(a.level), "subset": a.subset}))

    p = sub.add_parser("lemma-check", help="counting-bound and refinement checks")
    p.add_argument("which", choices=("31a", "31b", "32"))
    p.add_argument("--chain", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--h", type=int)
    p.add_argument("--level", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--c", type=str)
    p.add_argument("--arity", type=int)
    p.add_argument("--subset", default="all")
    p.add_argument("--family-edges-at", type=int, default=None)
    p.set_defaults(fn=lambda a: _chain_op_command(
        a, "lemma-check",
        {"id": a.which, "k": str(a.k),
         "h": None if a.h is None else str(a.h),
         "level": None if a.level is None else str(a.level),
         "t": None if a.t is None else str(a.t),
         "c": a.c,
         "arity": None if a.arity is None else str(a.arity),
         "subset": a.subset,
         "family-edges-at": None if a.family_edges_at is None
         else str(a.family_edges_at)}))

    p = sub.add_parser("theorem", help="large-edge extraction / stability check")
    p.add_argument("which", choices=("25", "26"))
    p.add_argument("--chain", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--h", type=int)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--alpha", type=str)
    p.add_argument("--epsilon", type=str)
    p.add_argument("--subset", default="all")
    p.set_defaults(fn=lambda a: _chain_op_command(
        a, "theorem",
        {"id": a.which, "k": str(a.k),
         "h": None if a.h is None else str(a.h),
         "level": str(a.level), "alpha": a.alpha, "epsilon": a.epsilon,
         "subset": a.subset}))

    p = sub.add_parser("volume", help="exact or Monte Carlo volumes of a body file")
    p.add_argument("bodies_file")
    p.add_argument("--mc", action="store_true", help="force Monte Carlo")
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--confidence", type=float, default=0.95)
    p.set_defaults(fn=cmd_volume)

    p = sub.add_parser("gen", help="seeded instance generation")
    p.add_argument("what", choices=("boxes", "polygons", "chain"))
    p.add_argument("target", help="output file")
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--scale", type=int, default=4)
    p.add_argument("--den", type=int, default=8)
    p.add_argument("--vertices", type=int, default=6)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--window", default="0..3")
    p.add_argument("--density", type=float, default=0.1)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("search-counterexample",
                       help="seeded search for violations of a target number")
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--v", default="1/2", help="comma-separated rationals")
    p.add_argument("--mode", choices=("colorful", "fractional"), default="colorful")
    p.add_argument("--generator", default="intervals",
                   choices=("intervals", "boxes", "polygons", "planted"))
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--scale", type=int, default=4)
    p.add_argument("--vertices", type=int, default=6)
    p.add_argument("--window", default="0..3")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--max-class-size", default="full")
    p.add_argument("--budget", type=int, default=0)
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("run", help="run a scenario file")
    p.add_argument("scenario")
    p.set_defaults(fn=lambda a: run_scenario(
        a.scenario, out_dir=a.out, seed=a.seed, workers=a.workers, fmt=a.fmt))

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, ChainRejectedError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def cmd_search(args) -> int:
    scn = Scenario(source="<cli>", seed=_seed(args), chain_directives=[], ops=[])
    op_args = {
        "d": str(args.d), "target": str(args.target), "v": args.v,
        "mode": args.mode, "generator": args.generator, "n": str(args.n),
        "scale": str(args.scale), "vertices": str(args.vertices),
        "window": args.window, "trials": str(args.trials),
        "max-class-size": args.max_class_size, "budget": str(args.budget),
    }
    op = Directive(lineno=0, kind="op", name="search-counterexample", args=op_args)
    rows, _failed = run_op(None, op, scn, 0, args.workers)
    _emit(rows, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
