"""
Command-line interface.

Exit codes: 0 when everything passes, 1 when an audit, oracle guarantee or
lower-bound check fails, 2 on configuration or I/O errors.
"""

import argparse
import logging
from pathlib import Path

from ..exceptions import MsscError
from ..models.base import BaseMsscModel
from ..settings import get_settings
from .campaign import campaign
from .config import ExperimentConfig, build_config
from .output import TRACE_COLUMNS, write_json, write_rows
from .runner import (
    run_audit,
    run_gen,
    run_lowerbound,
    run_oracle,
    run_simulate,
    write_instance,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

LOWERBOUND_COLUMNS = [
    "schema", "r", "c", "n", "phases", "alg_cost", "off_cost", "setup_cost",
    "ratio", "ratio_with_setup", "target_ratio", "crossing_phase", "passed",
]


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=None, help="YAML file with run settings")
    common.add_argument("--out", type=Path, default=None, help="Output directory (default: MSSC_OUTPUT_DIR)")
    common.add_argument("--seed", type=int, default=None, help="Unsigned 64-bit seed (default: 0)")
    common.add_argument("--format", choices=["csv", "json"], default=None, help="Report format (default: json)")
    return common


def _instance_options(parser: argparse.ArgumentParser, batchable: bool = True) -> None:
    parser.add_argument("--instance", type=Path, default=None, help="Instance JSON file")
    parser.add_argument("--n", type=int, default=None, help="Generated universe size")
    parser.add_argument("--r", type=int, default=None, help="Maximum request size")
    parser.add_argument("--m", type=int, default=None, help="Generated number of requests")
    parser.add_argument("--distribution", choices=["uniform", "zipf"], default=None)
    parser.add_argument("--zipf-s", dest="zipf_s", type=float, default=None, help="Zipf exponent")
    parser.add_argument("--initial", choices=["identity", "shuffled"], default=None)
    if batchable:
        parser.add_argument("--count", type=int, default=None, help="Run a campaign over this many instances")


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="online-mssc",
        description="Simulate, audit and benchmark lazy move-to-front for online min-sum set cover",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Run DLM on a generated instance and compare with the exact optimum
  online-mssc simulate --n 6 --r 2 --m 40 --baseline opt --out runs/sim

  # Audit every amortized inequality against the MTF-based policy built from OPT
  online-mssc audit --n 5 --r 3 --m 6 --baseline mtfb_from_opt --count 1000

  # Reproduce the lower bound for DLM_c
  online-mssc lowerbound --r 3 --c 1 --phases 20 --format csv
        """,
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    simulate_parser = subparsers.add_parser("simulate", parents=[common], help="Run an online algorithm")
    _instance_options(simulate_parser)
    simulate_parser.add_argument("--algorithm", choices=["dlm", "dlm_c", "dlm_r"], default=None)
    simulate_parser.add_argument("--c", type=int, default=None, help="Divisor of DLM_c")
    simulate_parser.add_argument(
        "--baseline",
        choices=["opt", "best_fixed", "mtfb_from_opt", "mtfb_choices"],
        default=None,
    )
    simulate_parser.add_argument("--choices", type=Path, default=None, help="JSON list of MTF choices")

    audit_parser = subparsers.add_parser("audit", parents=[common], help="Audit DLM's amortized inequalities")
    _instance_options(audit_parser)
    audit_parser.add_argument(
        "--baseline",
        choices=["opt", "best_fixed", "mtfb_from_opt", "mtfb_choices", "lb_strategy"],
        default=None,
    )
    audit_parser.add_argument("--choices", type=Path, default=None, help="JSON list of MTF choices")
    audit_parser.add_argument(
        "--failures-only",
        dest="keep_passing",
        action="store_const",
        const=False,
        default=None,
        help="Keep only failing records in the report",
    )

    oracle_parser = subparsers.add_parser("oracle", parents=[common], help="Compare DLM with exact offline baselines")
    _instance_options(oracle_parser)

    lowerbound_parser = subparsers.add_parser("lowerbound", parents=[common], help="Run the DLM_c lower-bound adversary")
    lowerbound_parser.add_argument("--r", type=int, default=None, help="Request size (>= 2)")
    lowerbound_parser.add_argument("--c", type=int, default=None, help="Divisor of DLM_c")
    lowerbound_parser.add_argument("--phases", type=int, default=None)

    gen_parser = subparsers.add_parser("gen", parents=[common], help="Generate an instance file")
    _instance_options(gen_parser, batchable=False)

    return parser


def _overrides(args: argparse.Namespace) -> dict:
    values = {key: value for key, value in vars(args).items() if key != "config"}
    return values


def _passed(row: BaseMsscModel) -> bool:
    for flag in (
        "passed",
        "off_star_within_four_opt",
        "static_bound_ok",
        "oracle_chain_ok",
        "cascade_bound_ok",
    ):
        if getattr(row, flag, True) is False:
            return False
    return True


def execute(config: ExperimentConfig) -> int:
    """Run a validated configuration and write its reports; returns the exit code."""
    out = config.out or get_settings().output_dir
    fmt = config.format

    if config.command == "gen":
        instance = run_gen(config)
        write_instance(instance, out)
        print(f"instance n={instance.n} r={instance.r} m={instance.m} -> {out / 'instance.json'}")
        return EXIT_OK

    if config.command == "lowerbound":
        report = run_lowerbound(config)
        if fmt == "csv":
            write_rows(out, "lowerbound", fmt, [report], LOWERBOUND_COLUMNS)
            write_rows(out, "phases", fmt, report.records)
        else:
            write_json(out / "lowerbound.json", report)
        print(
            f"lowerbound r={report.r} c={report.c}: ratio {float(report.ratio):.3f} "
            f"(target {float(report.target_ratio):.3f}) {'PASS' if report.passed else 'FAIL'}"
        )
        return EXIT_OK if report.passed else EXIT_FAILED

    if config.count > 1:
        rows = campaign(config)
        write_rows(out, config.command, fmt, rows)
        failed = [row for row in rows if not _passed(row)]
        print(f"{config.command} campaign: {len(rows)} instances, {len(failed)} failing")
        return EXIT_FAILED if failed else EXIT_OK

    if config.command == "simulate":
        result = run_simulate(config)
        write_rows(out, "trace", fmt, result.rows, TRACE_COLUMNS)
        write_json(out / "summary.json", result.summary)
        summary = result.summary
        print(f"{summary.algorithm}: total {summary.total} over {summary.m} requests")
        return EXIT_OK if summary.cascade_bound_ok else EXIT_FAILED

    if config.command == "audit":
        report = run_audit(config)
        if fmt == "csv":
            write_rows(out, "audit", fmt, report.records)
        else:
            write_json(out / "audit.json", report)
        summary = report.summary
        print(
            f"audit vs {report.baseline}: {summary.checks} checks, {summary.failures} failures"
            + (f", first at step {summary.first_failure_step}" if summary.failures else "")
        )
        return EXIT_OK if summary.passed else EXIT_FAILED

    if config.command == "oracle":
        row = run_oracle(config)
        write_rows(out, "oracle", fmt, [row])
        print(f"oracle: DLM {row.dlm}, OPT {row.opt}, OFF* {row.off_star}, best fixed {row.best_fixed}")
        return EXIT_OK if _passed(row) else EXIT_FAILED

    raise MsscError(f"unknown command {config.command!r}")


def run_cli(argv: list[str] | None = None) -> int:
    """Parse arguments, run, and map errors to exit codes."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help()
        return EXIT_ERROR
    try:
        config = build_config(_overrides(args), args.config)
        return execute(config)
    except (MsscError, OSError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_ERROR
