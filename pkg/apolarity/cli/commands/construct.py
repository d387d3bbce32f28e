"""
Construct Command
"""
import argparse

from apolarity.cli.common import CommandResult, new_report
from apolarity.services.exactla import parse_field
from apolarity.services.polyring import dual_ring, parse_poly
from apolarity.services.sequences import HSeq
from apolarity.services.construct import trace_construction
from apolarity.utils.report_formatter import ReportFormatter


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "construct",
        parents=[parent],
        help="build a verified complete intersection with the given Hilbert function",
    )
    parser.add_argument("h", help='comma-separated Hilbert function, e.g. "1,3,3,4,2,1"')
    parser.add_argument("--dual-F", dest="dual_F", default=None,
                        help="override for the codimension-2 dual generator F in X, Y")
    parser.add_argument("--dual-G", dest="dual_G", default=None,
                        help="override for the second dual generator G in X, Y")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> CommandResult:
    """
    Run the construction and report every intermediate value.

    Rejections and inconsistent overrides propagate as exceptions and are
    mapped to exit code 2 by the entry point.
    """
    report = new_report(args, h=args.h, dual_F=args.dual_F, dual_G=args.dual_G)
    domain = parse_field(args.field)
    D2 = dual_ring(2, domain)
    dual_F = parse_poly(args.dual_F, D2) if args.dual_F else None
    dual_G = parse_poly(args.dual_G, D2) if args.dual_G else None

    trace = trace_construction(HSeq.parse(args.h), dual_F, dual_G, domain)
    report.outputs = {
        "ideal": ReportFormatter.format_ideal(trace.ideal),
        "trace": ReportFormatter.format_trace(trace),
    }
    report.verification = dict(trace.verification)
    return report, 0
