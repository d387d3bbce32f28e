"""
Sweep Command

对 socle 次数不超过 N 的全部 (1,3,3) O-序列做端到端检查：
分类、构造并验证完全交、比较对称分解与预测、检查非完全交见证。
"""
import argparse
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List

from apolarity.cli.common import CommandResult, new_report
from apolarity.core.config import settings
from apolarity.core.exceptions import ApolarError
from apolarity.services.apolar import annihilator
from apolarity.services.construct import trace_construction
from apolarity.services.exactla import parse_field
from apolarity.services.sequences import HSeq, classify_133, enumerate_133_o_sequences
from apolarity.services.symdec import (
    partial_sums_are_o_sequences,
    predict,
    symmetric_decomposition,
    witness_dual,
)

logger = logging.getLogger(__name__)


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "sweep",
        parents=[parent],
        help="construct and verify every admissible (1,3,3) sequence up to a socle degree",
    )
    parser.add_argument("--socle-max", dest="socle_max", type=int, required=True,
                        help="largest socle degree to enumerate")
    parser.add_argument("--workers", type=int, default=settings.SWEEP_WORKERS,
                        help="worker processes (default: APOLAR_SWEEP_WORKERS)")
    parser.set_defaults(handler=run)


def evaluate_sequence(values: tuple, field_text: str) -> Dict:
    """
    Check one sequence. Runs in a worker process, so it takes and returns
    plain data only.
    """
    h = HSeq(tuple(values))
    classification = classify_133(h)
    row: Dict = {"h": list(h.values), "verdict": classification.verdict.value}
    if not classification.admissible:
        row["status"] = "rejected"
        return row

    domain = parse_field(field_text)
    checks: Dict[str, bool] = {}
    try:
        trace = trace_construction(h, domain=domain)
        checks.update(trace.verification)
        decomposition = symmetric_decomposition(trace.ideal)
        prediction = predict(h)
        checks["decomposition_matches"] = decomposition == prediction.complete_intersection
        checks["partial_sums"] = partial_sums_are_o_sequences(decomposition)

        if prediction.other is not None:
            witness = annihilator([witness_dual(h, domain)])
            checks["witness_gorenstein"] = witness.is_gorenstein
            checks["witness_not_ci"] = not witness.is_complete_intersection
            checks["witness_decomposition"] = symmetric_decomposition(witness) == prediction.other
    except ApolarError as e:
        logger.error("sweep failure at %s: %s", h, e)
        row.update({"status": "failed", "checks": checks, "error_type": e.error_type, "error": str(e)})
        return row
    except Exception as e:
        logger.exception("unexpected error at %s", h)
        row.update({"status": "failed", "checks": checks, "error_type": "internal_error",
                    "error": f"{type(e).__name__}: {e}"})
        return row

    row["checks"] = checks
    row["status"] = "verified" if all(checks.values()) else "failed"
    return row


def run(args: argparse.Namespace) -> CommandResult:
    """
    Enumerate, evaluate and summarize.

    Exit code 3 when any admissible sequence fails a check.
    """
    report = new_report(args, socle_max=args.socle_max, workers=args.workers)
    sequences = [h.values for h in enumerate_133_o_sequences(args.socle_max)]
    logger.info("sweeping %d sequences with %d worker(s)", len(sequences), args.workers)

    fields = [args.field] * len(sequences)
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as executor:
            results: List[Dict] = list(executor.map(evaluate_sequence, sequences, fields))
    else:
        results = [evaluate_sequence(values, field_text) for values, field_text in zip(sequences, fields)]
    results.sort(key=lambda row: row["h"])

    failures = [row["h"] for row in results if row["status"] == "failed"]
    report.outputs = {
        "sequences": len(results),
        "admissible": sum(1 for row in results if row["status"] != "rejected"),
        "verified": sum(1 for row in results if row["status"] == "verified"),
        "failures": failures,
        "results": results,
    }
    report.verification["all_verified"] = not failures
    return report, 3 if failures else 0
