"""Command line entry point.

Exit status: 0 success; 1 invalid input or I/O failure; 2 bad usage;
3 the run finished but the expected verdict was not reproduced.
"""

from __future__ import annotations

import argparse
import sys

from .costs import ConfigError
from .scenario_io import (EXIT_ERROR, KINDS, PRESETS, Scenario, apply_seed, execute,
                          load_scenario)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="results", help="output directory (default: results)")
    common.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    common.add_argument("--detail", action="store_true", help="also write per-task tasks.csv")

    p = argparse.ArgumentParser(prog="coordsim", description=__doc__.splitlines()[0],
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)
    for kind in KINDS:
        if kind == "fit":
            continue
        sp = sub.add_parser(kind, parents=[common], help=f"execute a '{kind}' scenario")
        sp.add_argument("scenario", help="scenario file, or preset name: " + ", ".join(sorted(PRESETS)))
    fp = sub.add_parser("fit", parents=[common], help="fit a power law to firm sizes")
    fp.add_argument("csv", help="one-column headerless CSV of positive sizes")
    g = fp.add_mutually_exclusive_group()
    g.add_argument("--xmin", type=float, default=None)
    g.add_argument("--auto", action="store_true", help="choose x_min by KS distance (default)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "fit":
            sc = Scenario("fit", path=args.csv, xmin=args.xmin if args.xmin else "auto")
        else:
            sc = load_scenario(args.scenario)
            if sc.kind != args.command:
                raise ConfigError("kind", f"scenario is of kind {sc.kind!r}, "
                                          f"not {args.command!r}")
        if args.seed is not None:
            sc = apply_seed(sc, args.seed)
        bundle = execute(sc, args.out, detail=args.detail)
    except (ConfigError, ValueError, KeyError, OSError) as exc:
        print(f"coordsim: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    verdicts = bundle.summary.get("verdicts")
    if verdicts is not None:
        print(f"verdicts: {verdicts}")
    print(f"wrote results to {args.out}")
    return bundle.exit_code


if __name__ == "__main__":
    sys.exit(main())
