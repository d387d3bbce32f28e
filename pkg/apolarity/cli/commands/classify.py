"""
Classify Command
"""
import argparse
import logging

from apolarity.cli.common import CommandResult, new_report
from apolarity.services.sequences import HSeq, classify_133
from apolarity.utils.report_formatter import ReportFormatter

logger = logging.getLogger(__name__)


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "classify",
        parents=[parent],
        help="decide whether a (1,3,3) sequence is a complete-intersection Hilbert function",
    )
    parser.add_argument("h", help='comma-separated Hilbert function, e.g. "1,3,3,4,2,1"')
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> CommandResult:
    """
    Classify a Hilbert function.

    Exit code 0 for Type I/II/III, 2 for every rejection verdict.
    """
    report = new_report(args, h=args.h)
    classification = classify_133(HSeq.parse(args.h))
    report.outputs = ReportFormatter.format_classification(classification)
    logger.info("%s: %s", classification.h, classification.verdict.value)
    return report, 0 if classification.admissible else 2
