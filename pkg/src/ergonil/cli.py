"""Command-line front end: run, validate, list-experiments.

Exit codes: 0 success, 2 config error, 3 numeric/runtime error,
4 assertion failure.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ConfigError, ErgonilError
from .harness import default_out_dir, list_experiments, load_config, run_experiment

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_ASSERTION = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ergonil",
        description="Config-driven experiments for weighted recurrence averages",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one experiment config")
    run.add_argument("--config", required=True, help="path to a JSON experiment config")
    run.add_argument("--out", default=None,
                     help="output directory (default: $ERGONIL_OUT or ./ergonil-out)")
    run.add_argument("--workers", type=int, default=1,
                     help="worker threads for independent sample points")

    val = sub.add_parser("validate", help="parse and validate a config, run nothing")
    val.add_argument("--config", required=True)

    sub.add_parser("list-experiments", help="print the experiment names")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "list-experiments":
            for name in list_experiments():
                print(name)
            return EXIT_OK
        cfg = load_config(args.config)
        if args.command == "validate":
            print(f"ok: {cfg.id} ({cfg.experiment})")
            return EXIT_OK
        out_dir = args.out if args.out is not None else default_out_dir()
        report = run_experiment(cfg, out_dir=out_dir, workers=args.workers)
        for v in report.verdicts:
            status = "PASS" if v["passed"] else "FAIL"
            print(f"[{status}] {v['assertion']} :: {v['detail']}")
        print(f"wrote {report.csv_path} ({len(report.rows)} rows)")
        if not report.all_passed:
            return EXIT_ASSERTION
        return EXIT_OK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ErgonilError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, ArithmeticError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
