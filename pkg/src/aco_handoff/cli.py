"""Command line entry point: ``aco-handoff {rank,run,sweep} SCENARIO``.

Exit codes: 0 ok, 2 input error, 3 no convergence, 4 no feasible channel.
Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import contextlib
import logging
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Sequence

from . import __version__
from .colony import AcoParams, run_until_convergence
from .criteria import oracle_rank
from .errors import NoFeasibleChannel, ScenarioError
from .scenario import (
    DEFAULT_ANT_COUNTS,
    Scenario,
    emit_convergence_summary,
    emit_trace_csv,
    load_scenario,
    run_sweep,
    write_report_json,
)

EXIT_OK, EXIT_INPUT, EXIT_NO_CONVERGENCE, EXIT_INFEASIBLE = 0, 2, 3, 4

log = logging.getLogger("aco_handoff")


def _ant_list(text: str) -> list[int]:
    try:
        counts = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not counts or any(n < 1 for n in counts):
        raise argparse.ArgumentTypeError(f"ant counts must be integers >= 1, got {text!r}")
    return counts


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aco-handoff", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("scenario", help="scenario YAML file or bundled scenario name")
    common.add_argument("--quiet", action="store_true", help="suppress diagnostics on stderr")

    sub.add_parser("rank", parents=[common], help="print the deterministic oracle ranking")

    run = sub.add_parser("run", parents=[common], help="run one colony decision")
    run.add_argument("--seed", type=_seed)
    run.add_argument("--ants", type=_ant_list, help="ant count (single integer)")
    run.add_argument("--trace-out", type=Path, help="write the pheromone trace CSV here")
    run.add_argument("--out", type=Path, help="write a JSON report here")

    sweep = sub.add_parser("sweep", parents=[common], help="run once per ant count")
    sweep.add_argument("--seed", type=_seed, help="base seed; entry i uses seed + i")
    sweep.add_argument("--ants", type=_ant_list, default=list(DEFAULT_ANT_COUNTS),
                       help="comma-separated ant counts (default 3,4,5,6,7,8)")
    sweep.add_argument("--out", type=Path, help="summary CSV path (default stdout)")
    sweep.add_argument("--trace-out", type=Path, help="directory for per-ant-count trace CSVs")
    return parser


def _load(path: str) -> Scenario | None:
    try:
        return load_scenario(path)
    except (ScenarioError, OSError) as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        return None


def cmd_rank(args: argparse.Namespace) -> int:
    scenario = _load(args.scenario)
    if scenario is None:
        return EXIT_INPUT
    ranking = oracle_rank(scenario.graph().edges, scenario.criteria)
    width = max(len("channel"), *(len(r.channel_id) for r in ranking))
    print(f"{'rank':<4}  {'channel':<{width}}  {'score':>14}  status")
    for i, r in enumerate(ranking, 1):
        status = "available" if r.available else "excluded"
        print(f"{i:<4}  {r.channel_id:<{width}}  {r.score:>14.6g}  {status}")
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    scenario = _load(args.scenario)
    if scenario is None:
        return EXIT_INPUT
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.ants is not None:
        if len(args.ants) != 1:
            print("error: run takes a single --ants value", file=sys.stderr)
            return EXIT_INPUT
        overrides["ant_count"] = args.ants[0]
    params = AcoParams(**{**asdict(scenario.aco), **overrides})
    try:
        report = run_until_convergence(scenario.graph(), scenario.criteria, params)
    except NoFeasibleChannel as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    log.info("seed=%d ants=%d wall_time=%.3f ms", params.seed, params.ant_count, report.wall_time * 1e3)
    if args.trace_out:
        with open(args.trace_out, "w", newline="", encoding="utf-8") as fh:
            emit_trace_csv(report, fh)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            write_report_json(report, fh, include_trace=True)
    print(f"winner: {report.winner or ''}")
    print(f"converged_at: {'' if report.converged_at is None else report.converged_at}")
    if not report.converged:
        log.warning("no convergence within %d iterations", params.max_iterations)
        return EXIT_NO_CONVERGENCE
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    ants = args.ants
    if any(b <= a for a, b in zip(ants, ants[1:])):
        parser.error("--ants must be strictly increasing")
    scenario = _load(args.scenario)
    if scenario is None:
        return EXIT_INPUT
    sweep = run_sweep(scenario, ants, seed=args.seed)
    for entry in sweep.entries:
        if entry.error:
            log.warning("ant_count=%d: %s", entry.ant_count, entry.error)
    if args.trace_out:
        args.trace_out.mkdir(parents=True, exist_ok=True)
        for entry in sweep.entries:
            if entry.report is not None:
                path = args.trace_out / f"trace_ants{entry.ant_count}.csv"
                with open(path, "w", newline="", encoding="utf-8") as fh:
                    emit_trace_csv(entry.report, fh)
    with (open(args.out, "w", newline="", encoding="utf-8") if args.out
          else contextlib.nullcontext(sys.stdout)) as fh:
        emit_convergence_summary(sweep, fh)
    return EXIT_OK if sweep.all_converged else EXIT_NO_CONVERGENCE


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.INFO,
                        format="%(levelname)s: %(message)s", stream=sys.stderr, force=True)
    if args.command == "rank":
        return cmd_rank(args)
    if args.command == "run":
        return cmd_run(args)
    return cmd_sweep(args, parser)


if __name__ == "__main__":
    sys.exit(main())
