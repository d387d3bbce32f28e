"""
Decompose Command
"""
import argparse
import logging

from apolarity.cli.common import CommandResult, new_report
from apolarity.services.apolar import annihilator
from apolarity.services.exactla import parse_field
from apolarity.services.localring import Ideal
from apolarity.services.polyring import dual_ring, parse_ideal, parse_poly, polynomial_ring
from apolarity.services.symdec import check_q0, predict, symmetric_decomposition
from apolarity.utils.report_formatter import ReportFormatter

logger = logging.getLogger(__name__)


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "decompose",
        parents=[parent],
        help="symmetric decomposition of a Gorenstein quotient and its predicted shape",
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--ideal", help='semicolon-separated generators in x, y, z, e.g. "xz; yz+x^4; z^2+y^3"')
    source.add_argument("--dual", help='dual generator in X, Y, Z, e.g. "X^2*Y^2+Z^2"')
    parser.add_argument("--no-predict", dest="predict", action="store_false",
                        help="skip the comparison with the decompositions the Hilbert function allows")
    parser.set_defaults(handler=run)


def _load_ideal(args: argparse.Namespace) -> Ideal:
    domain = parse_field(args.field)
    if args.ideal is not None:
        return Ideal(parse_ideal(args.ideal, polynomial_ring(3, domain)))
    return annihilator([parse_poly(args.dual, dual_ring(3, domain))])


def run(args: argparse.Namespace) -> CommandResult:
    """
    Compute the decomposition and, when the Hilbert function is an admissible
    (1,3,3) sequence, compare it with the predicted ones.
    """
    report = new_report(args, ideal=args.ideal, dual=args.dual, predict=args.predict)
    ideal = _load_ideal(args)
    decomposition = symmetric_decomposition(ideal)
    report.outputs = {
        "ideal": ReportFormatter.format_ideal(ideal),
        "decomposition": ReportFormatter.format_decomposition(decomposition),
    }
    report.verification["q0_matches_top_form"] = check_q0(ideal)

    prediction = predict(ideal.hilbert_function) if args.predict else None
    if prediction is not None:
        match = prediction.match(decomposition)
        report.outputs["prediction"] = {
            "verdict": prediction.verdict.value,
            "complete_intersection": ReportFormatter.format_decomposition(prediction.complete_intersection),
            "not_ci_realizable": ReportFormatter.format_decomposition(prediction.other),
            "match": match,
        }
        expected = "complete_intersection" if ideal.is_complete_intersection else "not_ci_realizable"
        report.verification["agrees_with_prediction"] = match == expected
        logger.info("decomposition matches %s", match)
    return report, 0
