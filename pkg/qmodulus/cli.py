"""
Command-line entry point.

Usage::

    qmodulus verify blowup-omega --a 3/2 --b 1/2 --q 0
    qmodulus verify construction-m --samples 500 --seed 7 --out report.json
    qmodulus verify all --grid grid.json --format md
    qmodulus list

Exit status is 0 when every record passes, 1 when a check fails (the first
failing parameter tuple goes to stderr) and 2 on configuration or
precondition errors.
"""

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .exceptions import ConfigError, QModulusError
from .reports import dumps_json, first_failure, render_markdown, report_document
from .suites import ALL, SUITES, SuiteConfig, run_suite, suite_names

logger = logging.getLogger(__name__)

GRID_FLAGS = ("a", "b", "c", "q", "p", "n")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qmodulus",
        description="Exact verification suites for cohomology of Q-modulus pairs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="Run a verification suite")
    verify.add_argument("suite", help=f"Suite name, or '{ALL}'")
    for flag in GRID_FLAGS:
        verify.add_argument(
            f"--{flag}", nargs="+", metavar=flag.upper(), help=f"Grid values for {flag}"
        )
    verify.add_argument("--samples", type=int, help="Samples per sampled suite")
    verify.add_argument("--seed", type=int, help="RNG seed recorded in the report")
    verify.add_argument("--grid", metavar="FILE", help="JSON config file with suite, grid and seed")
    verify.add_argument("--out", metavar="FILE", help="Write the report here instead of stdout")
    verify.add_argument("--format", choices=("json", "md"), help="Report format (default json)")
    verify.add_argument("-v", "--verbose", action="store_true", help="Log progress at DEBUG level")

    commands.add_parser("list", help="List the registered suites")
    return parser


def build_config(args):
    """
    Turn parsed arguments into a SuiteConfig.

    Flags override the values of a ``--grid`` file; grid flags replace single
    grid entries and leave the others at their file or default values.

    Raises:
        ConfigError: On invalid values or an unreadable config file.
    """
    grid = {flag: getattr(args, flag) for flag in GRID_FLAGS if getattr(args, flag) is not None}
    if args.grid:
        return SuiteConfig.from_file(
            args.grid,
            suite=args.suite,
            grid=grid,
            seed=args.seed,
            samples=args.samples,
            out=args.out,
            format=args.format,
        )
    options = {"seed": args.seed, "samples": args.samples, "out": args.out, "format": args.format}
    return SuiteConfig(args.suite, grid=grid, **{k: v for k, v in options.items() if v is not None})


def render(config, reports):
    if config.format == "md":
        return render_markdown(config.suite, config.seed, reports)
    return dumps_json(report_document(config.suite, config.seed, reports))


def write_report(config, text):
    if config.out is None:
        sys.stdout.write(text)
        return
    try:
        Path(config.out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot write report to {config.out}: {exc.strerror}") from None
    logger.info("Wrote %s report to %s", config.format, config.out)


def verify(args):
    config = build_config(args)
    reports = run_suite(config)
    write_report(config, render(config, reports))
    failure = first_failure(reports)
    if failure is not None:
        print(f"FAIL {failure.suite}: {failure.params_text()}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def list_suites():
    for name in suite_names():
        suite = SUITES[name]
        marker = " (sampled)" if suite.sampled else ""
        print(f"{name:<22} {suite.description}{marker}")
    return EXIT_OK


def main(argv=None):
    """Run the command line and return the exit status."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if args.command == "list":
        return list_suites()
    try:
        return verify(args)
    except QModulusError as exc:
        print(f"qmodulus: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
