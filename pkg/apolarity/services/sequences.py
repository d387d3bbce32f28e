"""
Sequences Module

Hilbert 函数序列：Macaulay 界、O-序列判定、(1,3,3) 统计量与三分类判定。

主要功能：
- HSeq：Hilbert 函数向量及其导出统计量（socle 次数、最大值、Δ、峰位、下降）
- Macaulay 上界 c^<i> 与 O-序列判定
- (1,3,3) 序列的分类：TypeI / TypeII / TypeIII / NotGorenstein / NotOSequence / OutOfScope
- 余维 2 的 Gorenstein 判定（单生成元与成对两种模式）
- 枚举所有 socle 次数有界的 (1,3,3) O-序列
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from math import comb
from typing import Iterator, List, Optional, Sequence, Tuple

from apolarity.core.exceptions import SequenceSyntaxError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HSeq:
    """A finite Hilbert function h_0, ..., h_s with trailing zeros trimmed."""

    values: Tuple[int, ...]

    def __post_init__(self):
        trimmed = tuple(int(v) for v in self.values)
        while trimmed and trimmed[-1] == 0:
            trimmed = trimmed[:-1]
        if any(v < 0 for v in trimmed):
            raise ValueError(f"Hilbert function entries must be nonnegative: {trimmed}")
        object.__setattr__(self, "values", trimmed)

    @classmethod
    def parse(cls, text: str) -> "HSeq":
        """
        Parse "1,3,3,4,2,1".

        Raises:
            SequenceSyntaxError: If an entry is not a nonnegative integer
        """
        parts = [p.strip() for p in text.strip().strip("()").split(",")]
        if not parts or any(not p.isdigit() for p in parts):
            raise SequenceSyntaxError(f"Invalid sequence text: {text!r}")
        return cls(tuple(int(p) for p in parts))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i] if 0 <= i < len(self.values) else 0

    def __iter__(self):
        return iter(self.values)

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.values) + ")"

    @property
    def socle_degree(self) -> int:
        return len(self.values) - 1

    @property
    def total(self) -> int:
        return sum(self.values)

    @property
    def max(self) -> int:
        return max(self.values) if self.values else 0

    @property
    def r(self) -> int:
        """The maximum d is repeated r + 1 times."""
        return self.values.count(self.max) - 1 if self.values else -1

    @property
    def delta(self) -> int:
        """Δ(h) = max |h_i - h_{i-1}| over i = 3..s."""
        diffs = [abs(self.values[i] - self.values[i - 1]) for i in range(3, len(self.values))]
        return max(diffs, default=0)

    @property
    def peak(self) -> Optional[int]:
        """Smallest t with h_{t+1} < h_t."""
        for t in range(len(self.values)):
            if self[t + 1] < self[t]:
                return t
        return None

    def falls(self) -> List[Tuple[int, int]]:
        """Pairs (i, m) with h_{i+1} = h_i - m and m > 0."""
        return [(i, self[i] - self[i + 1]) for i in range(len(self.values)) if self[i + 1] < self[i]]

    def with_entry(self, index: int, value: int) -> "HSeq":
        values = list(self.values) + [0] * max(0, index + 1 - len(self.values))
        values[index] = value
        return HSeq(tuple(values))

    def minus(self, other: Sequence[int]) -> "HSeq":
        length = max(len(self.values), len(other))
        return HSeq(tuple(self[i] - (other[i] if i < len(other) else 0) for i in range(length)))


class Verdict(str, Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    TYPE_III = "TypeIII"
    NOT_GORENSTEIN = "NotGorenstein"
    NOT_O_SEQUENCE = "NotOSequence"
    OUT_OF_SCOPE = "OutOfScope"


ADMISSIBLE = (Verdict.TYPE_I, Verdict.TYPE_II, Verdict.TYPE_III)


@dataclass(frozen=True)
class Classification:
    """Verdict of classify_133 with its witness."""

    h: HSeq
    verdict: Verdict
    reason: str = ""
    uvw: Optional[Tuple[int, int, int]] = None
    d: Optional[int] = None
    r: Optional[int] = None
    peak: Optional[int] = None

    @property
    def admissible(self) -> bool:
        return self.verdict in ADMISSIBLE

    def witness(self) -> dict:
        if self.verdict == Verdict.TYPE_I:
            u, v, w = self.uvw
            return {"u": u, "v": v, "w": w}
        if self.verdict in (Verdict.TYPE_II, Verdict.TYPE_III):
            return {"d": self.d, "r": self.r, "peak": self.peak}
        return {}


def macaulay_bound(c: int, i: int) -> int:
    """
    The i-th Macaulay upper bound c^<i>.

    Writes c = C(k_i, i) + C(k_{i-1}, i-1) + ... + C(k_j, j) greedily with
    k_i > k_{i-1} > ... > k_j >= j >= 1 and returns
    C(k_i + 1, i + 1) + ... + C(k_j + 1, j + 1).
    """
    if i < 1:
        raise ValueError("macaulay_bound needs i >= 1")
    result = 0
    remaining = c
    index = i
    while remaining > 0 and index >= 1:
        k = index
        while comb(k + 1, index) <= remaining:
            k += 1
        remaining -= comb(k, index)
        result += comb(k + 1, index + 1)
        index -= 1
    return result


def is_o_sequence(h: HSeq) -> bool:
    values = h.values
    if not values or values[0] != 1:
        return False
    for i in range(1, len(values) - 1):
        if values[i + 1] > macaulay_bound(values[i], i):
            return False
    return True


def _type_one(h: HSeq) -> Classification:
    tail = list(h.values[3:])
    u = tail.count(3)
    v = tail.count(2)
    w = tail.count(1) - 1
    return Classification(
        h, Verdict.TYPE_I, reason="h_3 <= 3", uvw=(u, v, w)
    )


def _reject(h: HSeq, reason: str) -> Classification:
    return Classification(h, Verdict.NOT_GORENSTEIN, reason=reason)


def classify_133(h: HSeq) -> Classification:
    """
    Decide whether a (1,3,3) sequence is the Hilbert function of a local
    complete intersection (equivalently of a Gorenstein local algebra).

    Returns:
        Classification; verdicts encode every outcome, nothing is raised
    """
    if h.values[:3] != (1, 3, 3):
        return Classification(h, Verdict.OUT_OF_SCOPE, reason="sequence does not start with 1,3,3")
    if not is_o_sequence(h):
        return Classification(h, Verdict.NOT_O_SEQUENCE, reason="violates Macaulay's bound")
    s = h.socle_degree
    if h[s] != 1:
        return _reject(h, f"h_s = {h[s]} but a Gorenstein socle is one-dimensional")
    if h[3] <= 3:
        return _type_one(h)

    d, r, t = h.max, h.r, h.peak
    delta = h.delta
    if delta == 1:
        return Classification(h, Verdict.TYPE_II, reason="h_3 = 4 and Δ(h) = 1", d=d, r=r, peak=t)
    if delta > 2:
        return _reject(h, f"Δ(h) = {delta} > 2")

    falls_by_two = [i for i, m in h.falls() if m == 2 and i >= 2]
    if len(falls_by_two) != 1:
        return _reject(h, "the fall by two is not unique")
    if falls_by_two[0] != t:
        return _reject(h, f"fall by two at {falls_by_two[0]} is not at the peak position {t}")

    # h_i = i + 1 for 2 <= i <= d - 2, d on d-1..d+r-1, d - 2 at d+r, then falls of 0 or 1
    for i in range(2, d - 1):
        if h[i] != i + 1:
            return _reject(h, f"h_{i} != {i + 1}")
    for i in range(d - 1, d + r):
        if h[i] != d:
            return _reject(h, f"h_{i} != {d}")
    if h[d + r] != d - 2:
        return _reject(h, f"h_{d + r} != {d - 2}")
    for i in range(d + r + 1, s + 1):
        if h[i - 1] - h[i] not in (0, 1):
            return _reject(h, f"fall at {i - 1} is not 0 or 1")
    return Classification(
        h, Verdict.TYPE_III, reason="unique fall by two at the peak", d=d, r=r, peak=t
    )


def codim2_gorenstein_check(h: HSeq, pair_mode: bool = False) -> bool:
    """
    Hilbert function of a codimension-2 Gorenstein quotient of K[[x,y]]?

    Single-F mode: an O-sequence with h_1 <= 2, h_s = 1 and all consecutive
    differences in {-1, 0, 1}. Pair mode additionally accepts sequences
    that become single-F valid after lowering the peak entry by one, the
    shape of S/ann_S(F, G).
    """
    if _codim2_single(h):
        return True
    if not pair_mode or h.peak is None:
        return False
    return _codim2_single(h.with_entry(h.peak, h[h.peak] - 1))


def _codim2_single(h: HSeq) -> bool:
    values = h.values
    if not values or values[0] != 1 or h[1] > 2:
        return False
    if not is_o_sequence(h) or values[-1] != 1:
        return False
    return all(abs(values[i] - values[i - 1]) <= 1 for i in range(1, len(values)))


def enumerate_133_o_sequences(socle_max: int) -> Iterator[HSeq]:
    """
    Every O-sequence starting (1,3,3) with socle degree between 2 and
    socle_max, in lexicographic order.
    """
    def extend(prefix: List[int]) -> Iterator[HSeq]:
        yield HSeq(tuple(prefix))
        i = len(prefix) - 1
        if i + 1 > socle_max:
            return
        for value in range(1, macaulay_bound(prefix[-1], i) + 1):
            yield from extend(prefix + [value])

    if socle_max < 2:
        return iter(())
    return iter(sorted(extend([1, 3, 3]), key=lambda h: h.values))
