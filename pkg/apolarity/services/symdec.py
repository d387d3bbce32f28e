"""
Symmetric Decomposition Module

Artinian Gorenstein 局部代数 Hilbert 函数的对称分解 𝔇 = (𝔇(0), 𝔇(1), ...)。

主要功能：
- 由 (0 : m^e) ∩ m^i 的维数直接计算 C(a) 与 𝔇(a)
- 余维 2 的唯一分解（嵌套块）
- h_3 <= 3 与 h_3 = 4 两类序列的分解预测（𝔇₁/𝔇₂ 与 𝔇/𝔇'）
- Q(0) 检查、非完全交见证 F' + Z²、部分和 O-序列检查
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from apolarity.core.exceptions import (
    NotGorensteinError,
    PreconditionError,
    RejectedSequenceError,
    VerificationError,
)
from apolarity.services.apolar import apolar_hf, dual_generator
from apolarity.services.construct import block_right_ends, codim2_dual_from_h
from apolarity.services.exactla import parse_field
from apolarity.services.localring import Ideal
from apolarity.services.polyring import DualPoly, change_ring, dual_ring, homogeneous_component
from apolarity.services.sequences import (
    HSeq,
    Verdict,
    classify_133,
    codim2_gorenstein_check,
    is_o_sequence,
)

logger = logging.getLogger(__name__)


def _trim(vector: Iterable[int]) -> Tuple[int, ...]:
    values = list(vector)
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


@dataclass(frozen=True)
class SymDecomp:
    """
    Rows (a, 𝔇(a)) sorted by shift, trailing zeros trimmed, zero rows omitted.
    Two decompositions are equal when their nonzero rows agree.
    """

    socle_degree: int
    rows: Tuple[Tuple[int, Tuple[int, ...]], ...]

    @classmethod
    def from_rows(cls, socle_degree: int, rows: Iterable[Tuple[int, Sequence[int]]]) -> "SymDecomp":
        """Build from (shift, vector) pairs; vectors with the same shift are added."""
        merged: Dict[int, List[int]] = {}
        for shift, vector in rows:
            target = merged.setdefault(shift, [])
            if len(target) < len(vector):
                target.extend([0] * (len(vector) - len(target)))
            for i, value in enumerate(vector):
                target[i] += value
        normalized = tuple(
            (shift, _trim(vector)) for shift, vector in sorted(merged.items()) if any(vector)
        )
        return cls(socle_degree, normalized)

    def row(self, shift: int) -> Tuple[int, ...]:
        return dict(self.rows).get(shift, ())

    @property
    def shifts(self) -> List[int]:
        return [shift for shift, _ in self.rows]

    def with_row(self, shift: int, vector: Sequence[int]) -> "SymDecomp":
        return SymDecomp.from_rows(self.socle_degree, list(self.rows) + [(shift, vector)])

    def total(self) -> HSeq:
        length = max((len(v) for _, v in self.rows), default=0)
        return HSeq(tuple(sum(v[i] if i < len(v) else 0 for _, v in self.rows) for i in range(length)))

    def is_symmetric(self) -> bool:
        """𝔇(a)_i = 𝔇(a)_{s-a-i} for every row."""
        for shift, vector in self.rows:
            top = self.socle_degree - shift
            if len(vector) > top + 1:
                return False
            padded = list(vector) + [0] * (top + 1 - len(vector))
            if padded != padded[::-1]:
                return False
        return True

    def as_dict(self) -> Dict[int, List[int]]:
        return {shift: list(vector) for shift, vector in self.rows}


def symmetric_decomposition(ideal: Ideal) -> SymDecomp:
    """
    𝔇(a)_i = dim C(a)_i - dim C(a+1)_i with
    dim C(a)_i = D(e, i) - D(e, i+1), e = s+1-a-i and
    D(e, i) = dim((0 : m^e) ∩ m^i).

    Raises:
        NotGorensteinError: If the socle is not one-dimensional
        VerificationError: If a row is not symmetric or the rows do not sum to h
    """
    if not ideal.is_gorenstein:
        raise NotGorensteinError(f"socle dimension is {ideal.quotient.socle_dimension}, not 1")
    quotient = ideal.quotient
    s = quotient.socle_degree

    def filtration(a: int, i: int) -> int:
        e = s + 1 - a - i
        return quotient.annihilator_power_dim(e, i) - quotient.annihilator_power_dim(e, i + 1)

    rows = []
    for a in range(s + 1):
        rows.append((a, [filtration(a, i) - filtration(a + 1, i) for i in range(s + 1)]))
    decomposition = SymDecomp.from_rows(s, rows)

    if not decomposition.is_symmetric() or decomposition.total() != ideal.hilbert_function:
        logger.error("inconsistent decomposition %s for %s", decomposition.as_dict(), ideal.hilbert_function)
        raise VerificationError("computed symmetric decomposition is not symmetric or does not sum to h")
    return decomposition


def codim2_unique_decomposition(h2: HSeq) -> SymDecomp:
    """
    Nested blocks [i-1, R_i] of a codimension-2 Gorenstein sequence, block i
    placed at shift s - (R_i + i - 1).
    """
    if not codim2_gorenstein_check(h2):
        raise PreconditionError(f"{h2} is not a codimension-2 Gorenstein Hilbert function")
    s = h2.socle_degree
    rows = []
    for index, end in enumerate(block_right_ends(h2)):
        start = index
        vector = [0] * start + [1] * (end - start + 1)
        rows.append((s - (end + index), vector))
    return SymDecomp.from_rows(s, rows)


_DELTA_PRIME = (0, 1)


def predicted_typeI(u: int, v: int, w: int) -> Tuple[SymDecomp, Optional[SymDecomp]]:
    """
    𝔇₁ (the complete-intersection one) and, when Δ(h) = 1, 𝔇₂.

    𝔇₁ has rows (1,...,1) at shift 0, (0,1,...,1) up to index u+v+2 at shift
    w and (0,1,...,1) up to index u+2 at shift w+v, merged where shifts meet.
    """
    h = HSeq((1, 3, 3) + (3,) * u + (2,) * v + (1,) * w + (1,))
    s = h.socle_degree
    first = SymDecomp.from_rows(s, [
        (0, [1] * (s + 1)),
        (w, [0] + [1] * (u + v + 2)),
        (w + v, [0] + [1] * (u + 2)),
    ])
    second = None
    if h.delta == 1:
        second = codim2_unique_decomposition(h.minus(_DELTA_PRIME)).with_row(s - 2, _DELTA_PRIME)
    return first, second


def predicted_type1334(h: HSeq) -> Tuple[SymDecomp, Optional[SymDecomp]]:
    """
    𝔇 and, for Type II sequences, 𝔇'.

    𝔇 is the codimension-2 decomposition of h - δ (δ with ones at 1 and at
    the peak k) with δ added at shift s-1-k; 𝔇' the one of h - (0,1) with
    (0,1) added at shift s-2.

    Raises:
        RejectedSequenceError: Unless h is of Type II or III
    """
    classification = classify_133(h)
    if classification.verdict not in (Verdict.TYPE_II, Verdict.TYPE_III):
        raise RejectedSequenceError(
            f"{h} is not a Type II/III sequence: {classification.verdict.value}", classification
        )
    s = h.socle_degree
    k = classification.peak
    delta = [0] * (k + 1)
    delta[1] += 1
    delta[k] += 1
    primary = codim2_unique_decomposition(h.minus(delta)).with_row(s - 1 - k, delta)
    secondary = None
    if classification.verdict == Verdict.TYPE_II:
        secondary = codim2_unique_decomposition(h.minus(_DELTA_PRIME)).with_row(s - 2, _DELTA_PRIME)
    return primary, secondary


@dataclass(frozen=True)
class Prediction:
    """Decompositions the Hilbert function allows, split by CI realizability."""

    verdict: Verdict
    complete_intersection: SymDecomp
    other: Optional[SymDecomp]

    def match(self, decomposition: SymDecomp) -> str:
        if decomposition == self.complete_intersection:
            return "complete_intersection"
        if self.other is not None and decomposition == self.other:
            return "not_ci_realizable"
        return "none"


def predict(h: HSeq) -> Optional[Prediction]:
    """Predictions for an admissible (1,3,3) sequence, None for any other h."""
    classification = classify_133(h)
    if classification.verdict == Verdict.TYPE_I:
        first, second = predicted_typeI(*classification.uvw)
    elif classification.verdict in (Verdict.TYPE_II, Verdict.TYPE_III):
        first, second = predicted_type1334(h)
    else:
        return None
    return Prediction(classification.verdict, first, second)


def check_q0(ideal: Ideal) -> bool:
    """𝔇(0) equals the apolar Hilbert function of the top-degree form of F."""
    decomposition = symmetric_decomposition(ideal)
    F = dual_generator(ideal)
    top = homogeneous_component(F, decomposition.socle_degree)
    return decomposition.row(0) == apolar_hf(top).values


def witness_dual(h: HSeq, domain=None) -> DualPoly:
    """
    F' + Z² with apolar_hf(F') = h - (0,1); its apolar algebra realizes 𝔇₂
    (Type I, Δ(h) = 1) or 𝔇' (Type II) and is not a complete intersection.

    Raises:
        PreconditionError: If h has no second decomposition
    """
    classification = classify_133(h)
    has_second = classification.verdict == Verdict.TYPE_II or (
        classification.verdict == Verdict.TYPE_I and h.delta == 1
    )
    if not has_second:
        raise PreconditionError(f"{h} has no decomposition besides the complete-intersection one")
    domain = parse_field() if domain is None else domain
    F_prime = codim2_dual_from_h(h.minus(_DELTA_PRIME), domain).dual
    D3 = dual_ring(3, domain)
    Z = D3.gens[2]
    return change_ring(F_prime, D3) + Z**2


def partial_sums_are_o_sequences(decomposition: SymDecomp) -> bool:
    """Every partial sum 𝔇(0) + ... + 𝔇(a) is an O-sequence."""
    running: List[int] = []
    for _, vector in decomposition.rows:
        if len(running) < len(vector):
            running.extend([0] * (len(vector) - len(running)))
        for i, value in enumerate(vector):
            running[i] += value
        if not is_o_sequence(HSeq(tuple(running))):
            return False
    return True
