"""
Report Formatter Module

将计算结果格式化为带版本号的 JSON 报告。

主要功能：
- Report 模型（顶层 "schema": 1）
- 理想、Hilbert 函数、分类结果、对称分解、构造轨迹的格式化
- 格式化错误报告
"""
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from apolarity.services.apolar import SliceWitness
from apolarity.services.construct import ConstructionTrace, SyzygyData
from apolarity.services.localring import Ideal
from apolarity.services.polyring import format_poly
from apolarity.services.sequences import Classification, HSeq
from apolarity.services.symdec import SymDecomp

SCHEMA_VERSION = 1


def _optional_poly(f) -> Optional[str]:
    return format_poly(f) if f is not None else None


class Report(BaseModel):
    """Machine-readable result of one command."""

    model_config = ConfigDict(populate_by_name=True)

    schema_: int = Field(SCHEMA_VERSION, alias="schema")
    command: str
    field: str
    inputs: Dict[str, Any] = Field(default_factory=dict)
    outputs: Dict[str, Any] = Field(default_factory=dict)
    verification: Dict[str, Any] = Field(default_factory=dict)
    timing: Dict[str, float] = Field(default_factory=dict)
    error: Optional[Dict[str, Any]] = None

    def to_json(self, pretty: bool = False) -> str:
        return self.model_dump_json(by_alias=True, indent=2 if pretty else None)


class ReportFormatter:
    """Turns service results into JSON-ready dictionaries."""

    @staticmethod
    def format_hseq(h: Optional[HSeq]) -> Optional[List[int]]:
        return list(h.values) if h is not None else None

    @staticmethod
    def format_generators(generators) -> List[str]:
        return [format_poly(g) for g in generators]

    @staticmethod
    def format_ideal(ideal: Ideal, invariants: bool = True) -> Dict:
        """
        Format an ideal.

        Args:
            ideal: Ideal to describe
            invariants: Also compute Hilbert function, generator count and
                the CI / Gorenstein flags

        Returns:
            Dictionary with canonical generator strings and invariants
        """
        formatted: Dict[str, Any] = {
            "generators": ReportFormatter.format_generators(ideal.generators),
        }
        if invariants:
            formatted.update({
                "hilbert_function": ReportFormatter.format_hseq(ideal.hilbert_function),
                "truncation_bound": ideal.truncation_bound,
                "colength": ideal.colength,
                "minimal_generator_count": ideal.minimal_generator_count,
                "complete_intersection": ideal.is_complete_intersection,
                "gorenstein": ideal.is_gorenstein,
                "socle_dimension": ideal.quotient.socle_dimension,
            })
        return formatted

    @staticmethod
    def format_classification(classification: Classification) -> Dict:
        return {
            "h": ReportFormatter.format_hseq(classification.h),
            "verdict": classification.verdict.value,
            "reason": classification.reason,
            "witness": classification.witness(),
        }

    @staticmethod
    def format_decomposition(decomposition: Optional[SymDecomp]) -> Optional[List[Dict]]:
        if decomposition is None:
            return None
        return [{"shift": shift, "vector": list(vector)} for shift, vector in decomposition.rows]

    @staticmethod
    def format_syzygy(sd: SyzygyData) -> Dict:
        return {
            name: format_poly(getattr(sd, attr))
            for name, attr in (
                ("d11", "d11"), ("d21", "d21"), ("d12", "d12"), ("a2'", "a2_prime"),
                ("U1", "U1"), ("U2", "U2"), ("V1", "V1"), ("V2", "V2"),
                ("U", "U"), ("V", "V"), ("W", "W"),
            )
        }

    @staticmethod
    def format_trace(trace: ConstructionTrace) -> Dict:
        """Every intermediate value of a construction; absent ones are null."""
        formatted = {
            "classification": ReportFormatter.format_classification(trace.classification),
            "h_prime": ReportFormatter.format_hseq(trace.h_prime),
            "h_double_prime": ReportFormatter.format_hseq(trace.h_double_prime),
            "k": trace.k,
            "F": _optional_poly(trace.F),
            "G": _optional_poly(trace.G),
            "G_prime": _optional_poly(trace.G_prime),
            "syzygy": ReportFormatter.format_syzygy(trace.syzygy) if trace.syzygy else None,
            "power_sum": None,
        }
        if trace.power_sum is not None:
            formatted["power_sum"] = {
                "linear_forms": trace.power_sum.linear_forms(),
                "exponents": list(trace.power_sum.exponents),
            }
        return formatted

    @staticmethod
    def format_slices(witness: SliceWitness) -> Dict:
        formatted: Dict[str, Any] = {
            "preconditions_met": witness.preconditions_met,
            "reason": witness.reason,
            "passed": witness.passed,
        }
        if witness.preconditions_met:
            formatted.update({
                "U": format_poly(witness.U),
                "V": format_poly(witness.V),
                "W": format_poly(witness.W),
                "coordinates_changed": witness.reduction.coordinates_changed,
                "dual_generator": format_poly(witness.generator),
                "slices": [format_poly(t) for t in witness.slices],
                "checks": [
                    {"n": c.n, "even": c.even, "x": c.x_relation, "y": c.y_relation}
                    for c in witness.checks
                ],
                "pair_in_span": witness.pair_in_span,
                "section_matches": witness.section_matches,
            })
        return formatted

    @staticmethod
    def format_error(error_message: str, error_type: str = "general") -> Dict:
        """
        Format error response.

        Args:
            error_message: Error message
            error_type: Type of error

        Returns:
            Error dictionary
        """
        return {
            "error": True,
            "error_type": error_type,
            "message": error_message,
        }
