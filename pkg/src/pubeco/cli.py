"""Command-line interface.

Subcommands:

* ``run``              - compute metrics for every scenario in a config file
* ``reproduce-tables`` - run the 72-ecosystem reference suite and emit the
  baseline, comparison, and interquartile summary tables
* ``mc-validate``      - Monte Carlo cross-check of the analytic metrics
* ``dump-grid``        - write one scenario's strategy grid cellwise

Exit codes: 0 success, 1 domain/validation error, 2 configuration error.
"""

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import reference
from .config import load_suite
from .errors import ConfigError, PubecoError
from .grid import build_grid
from .mc import category_gof_pvalue, concordance, simulate
from .metrics import (
    METRIC_COLUMNS,
    compute_metrics,
    report_record,
    write_csv,
    write_json,
)


def _cmd_run(args) -> int:
    suite = load_suite(args.config)
    out_dir = args.out or suite.out_dir
    resolution = args.resolution or suite.resolution
    os.makedirs(out_dir, exist_ok=True)

    def one(item):
        name, cfg = item
        grid = build_grid(cfg, resolution)
        return report_record(name, cfg, compute_metrics(grid))

    if len(suite.scenarios) > 1:
        with ThreadPoolExecutor(max_workers=min(8, os.cpu_count() or 1)) as pool:
            records = list(pool.map(one, suite.scenarios))
    else:
        records = [one(item) for item in suite.scenarios]

    write_csv(os.path.join(out_dir, "metrics.csv"), METRIC_COLUMNS, records)
    write_json(os.path.join(out_dir, "metrics.json"), records)
    print(f"wrote {len(records)} scenario rows to {out_dir}/metrics.csv")
    return 0


def _cmd_reproduce_tables(args) -> int:
    out_dir = args.out
    resolution = args.resolution
    os.makedirs(out_dir, exist_ok=True)
    reports = reference.compute_reference_reports(resolution)

    a05, a005 = reference.BASELINE_ALPHA, reference.LOW_ALPHA
    tables = {
        "baseline_metrics.csv": (
            reference.BASELINE_COLUMNS,
            reference.baseline_records(reports),
        ),
        "alpha_comparison.csv": (
            reference.COMPARISON_COLUMNS,
            reference.comparison_records(
                reports,
                key_a=lambda k, m: (a005, k, m, False),
                key_b_of=lambda k, m: (a05, k, m, False),
            ),
        ),
        "ssr_comparison.csv": (
            reference.COMPARISON_COLUMNS,
            reference.comparison_records(
                reports,
                key_a=lambda k, m: (a05, k, m, True),
                key_b_of=lambda k, m: (a05, k, m, False),
            ),
        ),
        "ssr_low_alpha_comparison.csv": (
            reference.COMPARISON_COLUMNS,
            reference.comparison_records(
                reports,
                key_a=lambda k, m: (a005, k, m, True),
                key_b_of=lambda k, m: (a05, k, m, False),
            ),
        ),
        "iqr_no_ssr.csv": (reference.IQR_COLUMNS, reference.iqr_records(reports, False)),
        "iqr_ssr.csv": (reference.IQR_COLUMNS, reference.iqr_records(reports, True)),
        "metrics_all.csv": (METRIC_COLUMNS, reference.all_metric_records(reports)),
    }
    for filename, (columns, records) in tables.items():
        write_csv(os.path.join(out_dir, filename), columns, records)
    write_json(
        os.path.join(out_dir, "metrics_all.json"),
        reference.all_metric_records(reports),
    )
    print(f"wrote {len(tables)} tables to {out_dir}/")
    return 0


MC_REPORT_COLUMNS = [
    "scenario", "metric", "analytic", "estimate", "std_error", "z", "passed",
]


def _cmd_mc_validate(args) -> int:
    suite = load_suite(args.config)
    resolution = args.resolution or suite.resolution
    out_dir = args.out
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
    if args.study_log:
        os.makedirs(args.study_log, exist_ok=True)
    all_passed = True
    records = []
    for index, (name, cfg) in enumerate(suite.scenarios):
        grid = build_grid(cfg, resolution)
        report = compute_metrics(grid)
        per_unit_atm = report.n_atm / cfg.t
        budget = args.studies / per_unit_atm
        outcome, estimates = simulate(
            cfg, grid, seed=args.seed + index, budget=budget, keep_log=bool(args.study_log)
        )
        rows = concordance(
            outcome,
            estimates,
            {"pr": report.pr, "rel": report.rel, "stpr": report.stpr},
        )
        gof = category_gof_pvalue(grid, outcome)
        for row in rows:
            all_passed &= row.passed
            records.append(
                {
                    "scenario": name,
                    "metric": row.metric,
                    "analytic": row.analytic,
                    "estimate": row.estimate,
                    "std_error": row.std_error,
                    "z": row.z,
                    "passed": row.passed,
                }
            )
            print(
                f"{name} {row.metric}: estimate {row.estimate:.5f} vs analytic "
                f"{row.analytic:.5f} (z = {row.z:+.2f}) "
                f"{'ok' if row.passed else 'FAIL'}"
            )
        print(f"{name} category GoF p-value: {gof:.4f} ({outcome.n_studies} studies)")
        if args.study_log:
            outcome.write_log_csv(os.path.join(args.study_log, f"{name}_studies.csv"))
    if out_dir:
        write_csv(os.path.join(out_dir, "mc_report.csv"), MC_REPORT_COLUMNS, records)
    if not all_passed:
        print("monte carlo concordance FAILED", file=sys.stderr)
        return 1
    return 0


def _cmd_dump_grid(args) -> int:
    suite = load_suite(args.config)
    matches = [cfg for name, cfg in suite.scenarios if name == args.scenario]
    if not matches:
        raise ConfigError(
            f"scenario {args.scenario!r} not found; have {suite.names}"
        )
    resolution = args.resolution or suite.resolution
    grid = build_grid(matches[0], resolution)
    grid.write_csv(args.out)
    print(f"wrote {resolution}x{resolution} grid to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pubeco",
        description="Publication-policy ecosystem simulator and metrics engine",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="compute metrics for a scenario suite")
    p_run.add_argument("--config", required=True, help="suite YAML/JSON document")
    p_run.add_argument("--out", default=None, help="output directory")
    p_run.add_argument("--resolution", type=int, default=None, help="grid cells per axis")
    p_run.set_defaults(func=_cmd_run)

    p_rep = sub.add_parser(
        "reproduce-tables", help="run the reference suite and emit its tables"
    )
    p_rep.add_argument("--out", required=True, help="output directory")
    p_rep.add_argument("--resolution", type=int, default=512)
    p_rep.set_defaults(func=_cmd_reproduce_tables)

    p_mc = sub.add_parser("mc-validate", help="Monte Carlo check of analytic metrics")
    p_mc.add_argument("--config", required=True)
    p_mc.add_argument("--seed", type=int, required=True)
    p_mc.add_argument("--studies", type=int, default=1_000_000,
                      help="target number of simulated studies per scenario")
    p_mc.add_argument("--resolution", type=int, default=None)
    p_mc.add_argument("--out", default=None, help="directory for the z-score report")
    p_mc.add_argument("--study-log", default=None,
                      help="directory for optional per-study CSV logs")
    p_mc.set_defaults(func=_cmd_mc_validate)

    p_dump = sub.add_parser("dump-grid", help="write one scenario's grid as CSV")
    p_dump.add_argument("--config", required=True)
    p_dump.add_argument("--scenario", required=True, help="scenario name in the config")
    p_dump.add_argument("--out", required=True, help="output CSV path")
    p_dump.add_argument("--resolution", type=int, default=None)
    p_dump.set_defaults(func=_cmd_dump_grid)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except PubecoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
