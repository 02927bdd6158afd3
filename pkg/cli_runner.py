#!/usr/bin/env python3
"""
hyperdyn CLI Runner - run density, family, construction, obstruction and algebra experiments
and emit deterministic JSON, CSV or text reports.
"""

import argparse
import csv
import io
import sys
from typing import Any, Dict, List, Optional

from config.settings import RUNNER_CONFIG
from experiments.experiment_registry import ExperimentRegistry
from experiments.run_ledger import RunLedger
from schemas.experiment_schema import COMMANDS, FORMATS, ExperimentConfig
from utils.errors import HyperdynError
from utils.file_utils import dumps_canonical, read_json, write_text
from utils.logger import get_logger, set_console_level

logger = get_logger(__name__)

# (flag, type, help) per command; the parameter key is the flag without dashes, "-" read as "_"
COMMAND_FLAGS = {
    "density": [
        ("--set", str, "Index set: naturals, evens, squares, powers-of-two, digit:d=1, dyadic:l=1,m=1, "
                       "family:l=1,m=1,rcap=4, tower:l=1,m=1 or file:path.json"),
        ("--kinds", str, "Comma-separated density kinds (lower,upper,log,logm,d2,d2m,power)"),
        ("--ladder", str, "N ladder: decades as 1e3..1e6 or an explicit list 1000,5000"),
        ("--m", int, "Iterated-log order for logm/d2m"),
        ("--alpha", float, "Exponent for power-weighted density, 0 < alpha <= 1"),
    ],
    "family": [
        ("--L", int, "Labels (l, m) range over [1, L]^2"),
        ("--rcap", int, "Largest block radius r to check"),
        ("--check", str, "Gap condition: charcond or charcond2"),
        ("--kind", str, "Family construction: dyadic or tower"),
        ("--reindex", bool, "Check the relabelled system (l, m) -> A(l+m, m)"),
        ("--descriptors", bool, "Embed the family descriptors in the report"),
    ],
    "construct": [
        ("--L", int, "Labels (l, m) range over [1, L]^2"),
        ("--depth", int, "Elements per family in the geometric system"),
        ("--lambda", str, "Rolewicz multiplier, |lambda| > 1 (complex allowed, e.g. 1+1j)"),
        ("--horizon", int, "Largest coordinate written"),
        ("--offset", int, "Start rank of the test sequence"),
        ("--space", str, "lp or c0"),
        ("--p", float, "Exponent p of lp"),
        ("--alpha", str, "Scalar for the homogeneity check of scaled orbit errors"),
        ("--eps", float, "Epsilon for the thinning-threshold table"),
    ],
    "nogo": [
        ("--op", str, "rolewicz, maclane, weights, bw or supercyclic"),
        ("--lambda", str, "Rolewicz multiplier or constant weight"),
        ("--eps", float, "Approximation radius, 0 < eps < 1"),
        ("--vector", str, "Sequence JSON file"),
        ("--N", int, "Scan horizon"),
        ("--space", str, "lp or c0"),
        ("--p", float, "Exponent p of lp"),
        ("--alpha", float, "Power weights w(n) = (n/(n-1))^alpha"),
        ("--m", int, "Power m for bw and supercyclic checks"),
        ("--m-max", int, "Largest power classified by --op weights"),
        ("--eps-curve", str, "Comma-separated eps values for the M(eps) curve"),
        ("--support", int, "Support length of random vectors"),
        ("--terms", int, "Approximants in the supercyclic check"),
        ("--tolerance", float, "Convergence tolerance of the supercyclic check"),
    ],
    "algebra": [
        ("--descriptor", str, "Algebra descriptor JSON file"),
        ("--product", str, "hadamard, phi, x0-commutative or times"),
        ("--p", float, "Exponent p of lp"),
        ("--rank", int, "Truncation rank of the times product"),
        ("--schedule", str, "Column schedule: constant, cyclic or dense"),
        ("--max-denominator", int, "Cap on the dense column enumeration"),
        ("--polynomial", str, "Terms as exponents:coefficient, e.g. 2:1;3:-1"),
        ("--polynomials", int, "Random polynomials in the witness suite run with --random"),
    ],
}


class OutputFormatter:
    """Handle different output formats for experiment reports."""

    @staticmethod
    def format_json(report: Dict[str, Any]) -> str:
        """Sorted-key JSON; identical reports serialize to identical bytes."""
        return dumps_canonical(report)

    @staticmethod
    def format_text(report: Dict[str, Any]) -> str:
        """Format a report as human-readable text."""
        output = [f"=== {report['config']['command']} ===", f"Status: {report['status'].upper()}"]
        if 'error' in report:
            output.append(f"Error: {report['error']}")
        for key, value in sorted(report.get('summary', {}).items()):
            if not isinstance(value, (dict, list)):
                output.append(f"{key}: {value}")
        rows = report.get('rows', [])
        if rows:
            output.append("")
            output.append(f"{len(rows)} rows:")
            for row in rows:
                output.append("  " + ", ".join(f"{k}={v}" for k, v in row.items()))
        output.append("")
        return "\n".join(output)

    @staticmethod
    def format_csv(rows: List[Dict[str, Any]], columns: List[str]) -> str:
        """Format report rows as CSV with a fixed column order."""
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=columns, extrasaction='ignore', lineterminator='\n')
        writer.writeheader()
        for row in rows:
            writer.writerow({k: "" if row.get(k) is None else row.get(k) for k in columns})
        return buffer.getvalue()


def _key(flag: str) -> str:
    return flag.lstrip("-").replace("-", "_")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="hyperdyn experiment runner: densities, dyadic families, A-hypercyclic constructions, "
                    "power obstructions and coordinatewise algebra products",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Density ladder of a dyadic class as CSV
  python cli_runner.py density --set dyadic:l=1,m=1 --kinds lower,log,d2 --ladder 1e3..1e6 --format csv

  # Certify the family system
  python cli_runner.py family --L 3 --rcap 6 --check charcond

  # Power obstruction for a stored vector
  python cli_runner.py nogo --op rolewicz --lambda 2 --eps 0.1 --vector x.json

  # Randomized suite (a seed is mandatory)
  python cli_runner.py nogo --op rolewicz --lambda 2 --eps 0.1 --random 100 --seed 7 --output nogo.json

  # Same run from a config file
  python cli_runner.py nogo --config runs/nogo.json
        """
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        sub = subparsers.add_parser(command, formatter_class=argparse.RawDescriptionHelpFormatter)
        for flag, kind, help_text in COMMAND_FLAGS[command]:
            if kind is bool:
                sub.add_argument(flag, dest=_key(flag), action="store_true", default=None, help=help_text)
            else:
                sub.add_argument(flag, dest=_key(flag), type=kind, help=help_text)

        sub.add_argument("--config", help="Experiment config JSON (flags given here override it)")
        sub.add_argument("--output", help="Report path (prints to stdout if not specified)")
        sub.add_argument("--format", choices=FORMATS, help="Report format (default: json)")
        sub.add_argument("--seed", type=int, help="Seed for randomized suites")
        sub.add_argument("--random", type=int, help="Size of the randomized suite (needs --seed)")
        sub.add_argument("--threads", type=int, help="Worker threads (default: HYPERDYN_THREADS)")
        sub.add_argument("--ledger", help="Write the run ledger to this JSON file")
        sub.add_argument("--quiet", "-q", action="store_true", help="Only warnings and errors on stderr")
        sub.add_argument("--verbose", "-v", action="store_true", help="Enable verbose logging")
    return parser


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    """Merge an optional config file with explicit flags, then validate."""
    data: Dict[str, Any] = {"command": args.command, "parameters": {}}
    if args.config:
        loaded = read_json(args.config)
        if loaded.get("command", args.command) != args.command:
            raise ValueError(f"config file is for {loaded['command']!r}, not {args.command!r}")
        data.update(loaded)
        data["parameters"] = dict(loaded.get("parameters", {}))

    for flag, _, _ in COMMAND_FLAGS[args.command]:
        value = getattr(args, _key(flag))
        if value is not None:
            data["parameters"][_key(flag)] = value
    if args.random is not None:
        data["parameters"]["random"] = args.random
    if args.seed is not None:
        data["seed"] = args.seed
    if args.format is not None:
        data["format"] = args.format
    data.setdefault("format", RUNNER_CONFIG["default_format"])
    if args.output is not None:
        data["output"] = args.output
    return ExperimentConfig(**data).validate_config()


def render(report: Dict[str, Any], fmt: str, columns: List[str]) -> str:
    formatter = OutputFormatter()
    if fmt == "csv":
        return formatter.format_csv(report.get("rows", []), columns)
    if fmt == "text":
        return formatter.format_text(report)
    return formatter.format_json(report)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.verbose:
        set_console_level("DEBUG")
    elif args.quiet:
        set_console_level("WARNING")

    try:
        config = config_from_args(args)
    except (HyperdynError, ValueError) as e:
        logger.error(f"Invalid configuration: {e}")
        return 1

    ledger = RunLedger(run_id=f"{config.command}-{config.seed if config.seed is not None else 'noseed'}")
    try:
        experiment = ExperimentRegistry().create(config, ledger, threads=args.threads, progress=not args.quiet)
    except HyperdynError as e:
        logger.error(f"Cannot start {config.command}: {e.message}")
        return e.exit_code

    result = experiment.run()
    report = experiment.report(result)
    text = render(report, config.format, experiment.csv_columns)

    try:
        if config.output:
            write_text(config.output, text)
        else:
            sys.stdout.write(text)
        if args.ledger:
            ledger.save(args.ledger)
    except OSError as e:
        logger.error(f"Could not write report: {e}")
        return 1

    logger.info(f"{config.command} finished with status {result['status']} (exit {result['exit_code']})")
    return result["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
