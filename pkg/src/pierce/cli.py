"""Command-line driver: generate, solve, certify, inspect, and draw.

Exit codes: 0 success, 1 a check failed or the run could not complete,
2 usage or input-file problems.  PIERCE_LOG_LEVEL (error, info, debug)
controls verbosity on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .errors import PierceError
from .geometry import brute_min_transversal, candidate_points
from .instances import (
    Instance,
    RunConfig,
    gallery7,
    gen_clustered,
    gen_pairwise,
    load_instance,
    save_instance,
)
from .meetgraph import build_meet_graph, turan_pair_check
from .pipeline import run_pipeline
from .reports import load_report, save_report, verify_report
from .svg import render_svg
from .witness import build_witness_list, is_spread_out

logger = logging.getLogger("pierce")

_LEVELS = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}


def _setup_logging() -> None:
    name = os.environ.get("PIERCE_LOG_LEVEL", "error").strip().lower()
    level = _LEVELS.get(name, logging.ERROR)
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(message)s")
    logger.setLevel(level)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pierce",
        description="Small transversals for convex bodies meeting on a circle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit a generated instance")
    gen.add_argument("kind", choices=("pairwise", "clustered", "gallery"))
    gen.add_argument("-o", "--output", help="instance file (default stdout)")
    gen.add_argument("--n", type=int, default=8, help="number of bodies")
    gen.add_argument("--p", type=int, default=3, help="meeting condition size")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--delta", type=float, default=0.3, help="gallery corner nudge")

    solve = sub.add_parser("solve", help="run the full rounding pipeline")
    solve.add_argument("instance")
    solve.add_argument("-o", "--output", help="report file (default stdout)")
    solve.add_argument("--alpha", type=float, default=0.027)
    solve.add_argument("--trials", type=int, default=2000)
    solve.add_argument("--seed", type=int, default=0)

    oracle = sub.add_parser("oracle", help="exact minimum transversal by search")
    oracle.add_argument("instance")
    oracle.add_argument("--kmax", type=int, default=0, help="size cap (default: n)")

    verify = sub.add_parser("verify", help="recheck a report against its instance")
    verify.add_argument("instance")
    verify.add_argument("report")

    plot = sub.add_parser("plot", help="draw an instance (and report) as SVG")
    plot.add_argument("instance")
    plot.add_argument("report", nargs="?")
    plot.add_argument("-o", "--output", help="svg file (default stdout)")

    stats = sub.add_parser("stats", help="witness-list diagnostics")
    stats.add_argument("instance")
    stats.add_argument("--alpha", type=float, default=0.027)

    return parser


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _cmd_gen(args) -> int:
    if args.kind == "pairwise":
        instance = gen_pairwise(args.n, seed=args.seed)
    elif args.kind == "clustered":
        instance = gen_clustered(args.p, args.n, seed=args.seed)
    else:
        instance = gallery7(delta=args.delta)
    logger.info("generated %s with %d bodies", args.kind, len(instance.bodies))
    if args.output:
        save_instance(instance, args.output)
    else:
        _emit(json.dumps(instance.to_dict(), indent=1), None)
    return 0


def _cmd_solve(args) -> int:
    instance = load_instance(args.instance)
    cfg = RunConfig(alpha=args.alpha, trials=args.trials, seed=args.seed)
    report = run_pipeline(
        instance.bodies, instance.curve, instance.p, cfg.pipeline_config()
    )
    for name, value in report.flags.items():
        logger.info("flag %s = %s", name, value)
    if args.output:
        save_report(report, args.output)
    else:
        _emit(json.dumps(report.to_dict(), indent=1), None)
    if not report.flags.get("all_bodies_hit", False):
        logger.error("output transversal does not hit every body")
        return 1
    return 0


def _cmd_oracle(args) -> int:
    instance = load_instance(args.instance)
    k_max = args.kmax if args.kmax > 0 else len(instance.bodies)
    candidates = candidate_points(instance.bodies)
    logger.info("searching %d candidates up to size %d", len(candidates), k_max)
    best = brute_min_transversal(instance.bodies, candidates, k_max)
    if best is None:
        print("none")
    else:
        print(len(best))
        for x, y in best:
            logger.info("point %.9f %.9f", x, y)
    return 0


def _cmd_verify(args) -> int:
    instance = load_instance(args.instance)
    report = load_report(args.report)
    failures = verify_report(instance, report)
    if failures:
        for line in failures:
            print(f"FAIL {line}")
        return 1
    print("ok")
    return 0


def _cmd_plot(args) -> int:
    instance = load_instance(args.instance)
    points = None
    if args.report:
        points = [tuple(pt) for pt in load_report(args.report)["transversal"]]
    _emit(render_svg(instance, points), args.output)
    return 0


def _cmd_stats(args) -> int:
    instance = load_instance(args.instance)
    q = build_witness_list(instance.bodies, instance.curve)
    n_bodies = len(instance.bodies)
    spread = sum(
        1 for b in instance.bodies if len(q) and is_spread_out(q, b.id, args.alpha)
    )
    graph = build_meet_graph(instance.bodies, instance.curve)
    meets, bound, ok = turan_pair_check(graph, instance.p, check=False)
    print(f"bodies={n_bodies} p={instance.p}")
    print(f"witnesses N={len(q)}")
    print(f"spread_out {spread}/{n_bodies} at alpha={args.alpha}")
    print(f"turan meets={meets} bound={bound} ok={'yes' if ok else 'no'}")
    return 0


_DISPATCH = {
    "gen": _cmd_gen,
    "solve": _cmd_solve,
    "oracle": _cmd_oracle,
    "verify": _cmd_verify,
    "plot": _cmd_plot,
    "stats": _cmd_stats,
}


def cli_run(argv=None) -> int:
    _setup_logging()
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return _DISPATCH[args.command](args)
    except FileNotFoundError as exc:
        print(f"error: cannot read {exc.filename}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: malformed input file: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PierceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_run(sys.argv[1:]))


if __name__ == "__main__":
    main()
