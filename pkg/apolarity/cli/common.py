"""
Shared command-line plumbing
"""
import argparse
from typing import Tuple

from apolarity.core.config import settings
from apolarity.services.exactla import field_descriptor, parse_field
from apolarity.utils.report_formatter import Report

# (report, exit code)
CommandResult = Tuple[Report, int]


def common_arguments() -> argparse.ArgumentParser:
    """Flags accepted by every sub-command."""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
        "--field",
        default=settings.FIELD,
        help="coefficient field: 'q' for the rationals or 'fp:<odd prime>'",
    )
    output = parent.add_mutually_exclusive_group()
    output.add_argument("--json", dest="pretty", action="store_false", help="compact JSON (default)")
    output.add_argument("--pretty", dest="pretty", action="store_true", help="indented JSON")
    parent.set_defaults(pretty=False)
    parent.add_argument("--log-level", default=None, help="logging level, overrides APOLAR_LOG_LEVEL")
    return parent


def new_report(args: argparse.Namespace, **inputs) -> Report:
    """Empty report echoing the command, the field and its inputs."""
    domain = parse_field(args.field)
    return Report(command=args.command, field=field_descriptor(domain), inputs=inputs)
