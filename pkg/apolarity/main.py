"""
Apolarity Toolkit command-line entry point

Complete intersections with Hilbert function (1,3,3,...) over exact fields:

1. classify   - decide whether a (1,3,3) sequence is a CI Hilbert function
2. construct  - build and verify a complete intersection, with every intermediate value
3. decompose  - symmetric decomposition of a Gorenstein quotient vs. its prediction
4. sweep      - exhaustive end-to-end check up to a socle degree
5. hilbert / annihilator - inspect ideals and inverse systems

Every command writes one JSON report to stdout; logs go to stderr.
"""
import argparse
import logging
import sys
import time
from typing import List, Optional

from apolarity.cli import commands
from apolarity.cli.common import common_arguments, new_report
from apolarity.core.config import settings
from apolarity.core.exceptions import ApolarError
from apolarity.utils.report_formatter import Report, ReportFormatter

logger = logging.getLogger(__name__)


def create_parser() -> argparse.ArgumentParser:
    """
    Create and configure the argument parser.

    Returns:
        Parser with one sub-command per command module
    """
    parser = argparse.ArgumentParser(
        prog="apolarity",
        description=f"{settings.APP_NAME} {settings.APP_VERSION}: "
                    "(1,3,3) complete intersections, inverse systems and symmetric decompositions",
    )
    parser.add_argument("--version", action="version", version=settings.APP_VERSION)
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="command")

    parent = common_arguments()
    for module in (commands.classify, commands.construct, commands.decompose,
                   commands.sweep, commands.inspect):
        module.register(subparsers, parent)
    return parser


def _configure_logging(level: Optional[str]) -> None:
    logging.basicConfig(
        level=(level or settings.LOG_LEVEL).upper(),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _error_report(args: argparse.Namespace, message: str, error_type: str) -> Report:
    try:
        report = new_report(args)
    except ApolarError:
        # the field descriptor itself is invalid
        report = Report(command=args.command, field=str(args.field))
    report.error = ReportFormatter.format_error(message, error_type)
    return report


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one command and print its report.

    Returns:
        Exit code: 0 success, 1 usage/parse error, 2 mathematical rejection,
        3 internal verification failure
    """
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 1
    _configure_logging(args.log_level)

    started = time.perf_counter()
    try:
        report, exit_code = args.handler(args)
    except ApolarError as e:
        logger.warning("%s failed: %s", args.command, e)
        report, exit_code = _error_report(args, str(e), e.error_type), e.exit_code
    except Exception as e:
        logger.exception("unexpected error in %s", args.command)
        report, exit_code = _error_report(args, f"Unexpected error: {e}", "internal_error"), 3
    report.timing["seconds"] = round(time.perf_counter() - started, 6)

    print(report.to_json(pretty=args.pretty))
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
