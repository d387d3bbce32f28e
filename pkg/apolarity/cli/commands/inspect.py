"""
Inspect Commands

`hilbert`：理想的 Hilbert 函数、极小生成元个数、CI / Gorenstein 标志。
`annihilator`：一组对偶生成元的零化理想。
"""
import argparse

from apolarity.cli.common import CommandResult, new_report
from apolarity.core.exceptions import PreconditionError
from apolarity.services.apolar import annihilator, is_square_property, slice_identities
from apolarity.services.exactla import parse_field
from apolarity.services.localring import Ideal, section_with_S
from apolarity.services.polyring import dual_ring, parse_ideal, polynomial_ring
from apolarity.utils.report_formatter import ReportFormatter


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    hilbert = subparsers.add_parser(
        "hilbert",
        parents=[parent],
        help="Hilbert function, generator count and CI / Gorenstein flags of an ideal",
    )
    hilbert.add_argument("--ideal", required=True, help='semicolon-separated generators, e.g. "xz; yz; z^2-y^3; x^4"')
    hilbert.add_argument("--vars", type=int, choices=(2, 3), default=3, help="ring K[[x,y]] or K[[x,y,z]]")
    hilbert.add_argument("--section", action="store_true", help="also report I ∩ K[[x,y]] (3 variables)")
    hilbert.add_argument("--slices", action="store_true",
                         help="check the slice recursions of the dual generator (3 variables)")
    hilbert.add_argument("--square", action="store_true",
                         help="check (0:m^δ) ∩ m = (0:m^δ) ∩ m² (2 variables)")
    hilbert.set_defaults(handler=run_hilbert)

    ann = subparsers.add_parser(
        "annihilator",
        parents=[parent],
        help="annihilator ideal of dual generators",
    )
    ann.add_argument("dual", help='semicolon-separated dual generators, e.g. "X^4+Y^3+Z^3"')
    ann.add_argument("--vars", type=int, choices=(2, 3), default=3, help="dual ring in X, Y or X, Y, Z")
    ann.set_defaults(handler=run_annihilator)


def run_hilbert(args: argparse.Namespace) -> CommandResult:
    report = new_report(args, ideal=args.ideal, vars=args.vars)
    domain = parse_field(args.field)
    ideal = Ideal(parse_ideal(args.ideal, polynomial_ring(args.vars, domain)))
    report.outputs = {"ideal": ReportFormatter.format_ideal(ideal)}

    if args.section or args.slices:
        if args.vars != 3:
            raise PreconditionError("--section and --slices need an ideal of K[[x,y,z]]")
        if args.section:
            report.outputs["section"] = ReportFormatter.format_ideal(section_with_S(ideal), invariants=False)
        if args.slices:
            witness = slice_identities(ideal)
            report.outputs["slices"] = ReportFormatter.format_slices(witness)
            report.verification["slice_identities"] = witness.passed
    if args.square:
        report.verification["square_property"] = is_square_property(ideal)
    return report, 0


def run_annihilator(args: argparse.Namespace) -> CommandResult:
    report = new_report(args, dual=args.dual, vars=args.vars)
    domain = parse_field(args.field)
    gens = parse_ideal(args.dual, dual_ring(args.vars, domain))
    ideal = annihilator(gens)
    report.outputs = {"ideal": ReportFormatter.format_ideal(ideal)}
    return report, 0
