"""Command-line front end: ``otfs-isac simulate|sweep|dump-frame <scenario>``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .runner import run_dump_frame, run_simulate, run_sweep
from .scenario import METHODS, Scenario, parse_scenario


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("scenario", help="scenario file (flat key = value lines)")
    parser.add_argument("--out", default=None, help="output directory (default: scenario's output.dir)")
    parser.add_argument("--seed", type=int, default=None,
                        help="override every seed deterministically from this one")
    parser.add_argument("--method", choices=METHODS, default=None, help="radar back-end selection")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="otfs-isac",
                                     description="OTFS ISAC baseband simulator and radar back-ends")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run the scenario and write maps, peak reports, manifest")
    _add_common(sim)

    swp = sub.add_parser("sweep", help="cross-product sweep over SNR / integration time / velocity")
    _add_common(swp)
    swp.add_argument("--snr", type=float, nargs="+", required=True, help="input SNR points in dB")
    swp.add_argument("--ti", type=float, nargs="+", default=None, help="integration times in seconds")
    swp.add_argument("--vmax", type=float, nargs="+", default=None, help="target velocities in m/s")
    swp.add_argument("--reps", type=int, default=1, help="repetitions per sweep cell")

    dmp = sub.add_parser("dump-frame", help="write one frame's DD/TT matrices and layout as CSV")
    _add_common(dmp)

    return parser


def _load(args) -> tuple[Scenario, str]:
    scenario = parse_scenario(args.scenario)
    if args.seed is not None:
        scenario = scenario.with_seed(args.seed)
    if args.method is not None:
        scenario = replace(scenario, method=args.method)
    out_dir = args.out if args.out is not None else scenario.output_dir
    return scenario, out_dir


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scenario, out_dir = _load(args)
        if args.command == "simulate":
            paths = run_simulate(scenario, out_dir)
        elif args.command == "sweep":
            paths = {"curves": run_sweep(scenario, out_dir, args.snr, args.reps, args.ti, args.vmax)}
        else:
            paths = run_dump_frame(scenario, out_dir)
    except (ValueError, OSError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for name in sorted(paths):
        print(f"{name}: {paths[name]}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
