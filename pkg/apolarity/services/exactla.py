"""
Exact Linear Algebra Module

精确标量运算与精确线性代数，所有其他模块的基础。

主要功能：
- 系数域的选择与解析（有理数 QQ 或奇素数域 GF(p)）
- 行最简形（RREF）、核空间基、秩、线性方程组特解
- 增量式行阶梯基（用于贪心极小化与线性无关判定）
- 子空间交的维数
"""
import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from apolarity.core.config import settings
from apolarity.core.exceptions import FieldConfigurationError

logger = logging.getLogger(__name__)

# Column index -> nonzero coefficient
SparseVector = Dict[int, object]


def parse_field(descriptor: Optional[str] = None):
    """
    Parse a field descriptor into a sympy domain.

    Args:
        descriptor: "q" for the rationals or "fp:<p>" for an odd prime p.
            Defaults to the configured field.

    Returns:
        QQ or GF(p) with residues in [0, p)

    Raises:
        FieldConfigurationError: If the descriptor is malformed, the modulus is
            not prime, or the characteristic is 2
    """
    text = (descriptor if descriptor is not None else settings.FIELD).strip().lower()
    if text in ("q", "qq"):
        return QQ
    if text.startswith("fp:"):
        try:
            p = int(text[3:])
        except ValueError:
            raise FieldConfigurationError(f"Invalid prime in field descriptor: {descriptor}")
        if p == 2:
            raise FieldConfigurationError(
                "Characteristic 2 is not supported: the construction divides by 2"
            )
        if p < 2 or not isprime(p):
            raise FieldConfigurationError(f"{p} is not an odd prime")
        return GF(p, symmetric=False)
    raise FieldConfigurationError(
        f"Unknown field descriptor: {descriptor!r} (expected 'q' or 'fp:<odd prime>')"
    )


def field_descriptor(domain) -> str:
    """Inverse of parse_field."""
    if domain.is_FiniteField:
        return f"fp:{domain.mod}"
    return "q"


def format_scalar(domain, value) -> str:
    """Canonical text of a coefficient: lowest-terms rational or residue in [0, p)."""
    if domain.is_FiniteField:
        return str(domain.to_int(value))
    numer, denom = int(domain.numer(value)), int(domain.denom(value))
    return str(numer) if denom == 1 else f"{numer}/{denom}"


def make_matrix(rows: Sequence[Sequence], domain, ncols: Optional[int] = None) -> DomainMatrix:
    """
    Build a matrix from dense row-major entries.

    Entries may be Python ints or domain elements.
    """
    width = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    data = {}
    for i, row in enumerate(rows):
        entries = {j: domain.convert(e) for j, e in enumerate(row) if e}
        entries = {j: e for j, e in entries.items() if e}
        if entries:
            data[i] = entries
    return DomainMatrix(data, (len(rows), width), domain)


def sparse_matrix(rows: Sequence[SparseVector], ncols: int, domain) -> DomainMatrix:
    """Build a matrix from sparse rows whose values are already domain elements."""
    data = {}
    for i, row in enumerate(rows):
        entries = {j: e for j, e in row.items() if e}
        if entries:
            data[i] = entries
    return DomainMatrix(data, (len(rows), ncols), domain)


def rref(matrix: DomainMatrix) -> Tuple[DomainMatrix, List[int]]:
    """
    Reduced row echelon form.

    Returns:
        (rref matrix, pivot column indices); rank = number of pivots
    """
    nrows, ncols = matrix.shape
    if nrows == 0 or ncols == 0:
        return matrix, []
    reduced, pivots = matrix.rref()
    return reduced, list(pivots)


def rank(matrix: DomainMatrix) -> int:
    return len(rref(matrix)[1])


def kernel_basis(matrix: DomainMatrix) -> List[List]:
    """
    Basis of the right null space.

    One vector per free column, with that free variable set to 1 and the
    other free variables set to 0.

    Returns:
        List of dense vectors v with matrix * v = 0; count = cols - rank
    """
    nrows, ncols = matrix.shape
    domain = matrix.domain
    if ncols == 0:
        return []
    if nrows == 0:
        return [[domain.one if j == i else domain.zero for j in range(ncols)] for i in range(ncols)]

    reduced, pivots = rref(matrix)
    entries = reduced.to_dok()
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = [domain.zero] * ncols
        vector[free] = domain.one
        for row, pivot in enumerate(pivots):
            value = entries.get((row, free))
            if value:
                vector[pivot] = -value
        basis.append(vector)
    return basis


def solve_linear(matrix: DomainMatrix, rhs: Sequence) -> Optional[List]:
    """
    Particular solution of matrix * x = rhs with every free variable set to 0.

    Returns:
        Dense solution vector, or None when the system is inconsistent
    """
    nrows, ncols = matrix.shape
    domain = matrix.domain
    column = DomainMatrix(
        {i: {0: domain.convert(b)} for i, b in enumerate(rhs) if b}, (nrows, 1), domain
    )
    augmented = matrix.hstack(column) if ncols else column
    reduced, pivots = rref(augmented)
    if ncols in pivots:
        return None
    entries = reduced.to_dok()
    solution = [domain.zero] * ncols
    for row, pivot in enumerate(pivots):
        value = entries.get((row, ncols))
        if value:
            solution[pivot] = value
    return solution


def span_dimension(vectors: Iterable[SparseVector], domain) -> int:
    basis = EchelonBasis(domain)
    for vector in vectors:
        basis.add(vector)
    return basis.rank


def intersection_dimension(
    first: Sequence[SparseVector], second: Sequence[SparseVector], domain
) -> int:
    """dim(U ∩ V) = dim U + dim V - dim(U + V) for spans U, V of sparse vectors."""
    return (
        span_dimension(first, domain)
        + span_dimension(second, domain)
        - span_dimension(list(first) + list(second), domain)
    )


class EchelonBasis:
    """Incrementally maintained reduced echelon basis of a subspace of K^n."""

    def __init__(self, domain):
        self.domain = domain
        # pivot column -> row with coefficient 1 at the pivot and 0 at every other pivot
        self._rows: Dict[int, SparseVector] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self._rows)

    def rows(self) -> List[SparseVector]:
        return [dict(self._rows[p]) for p in self.pivots]

    def row(self, pivot: int) -> SparseVector:
        return dict(self._rows[pivot])

    def reduce(self, vector: SparseVector) -> SparseVector:
        """Remainder of a vector modulo the basis; it vanishes on every pivot column."""
        zero = self.domain.zero
        reduced = {j: a for j, a in vector.items() if a}
        for pivot in [c for c in reduced if c in self._rows]:
            coeff = reduced.get(pivot)
            if not coeff:
                continue
            for j, a in self._rows[pivot].items():
                value = reduced.get(j, zero) - coeff * a
                if value:
                    reduced[j] = value
                else:
                    reduced.pop(j, None)
        return reduced

    def contains(self, vector: SparseVector) -> bool:
        return not self.reduce(vector)

    def add(self, vector: SparseVector) -> bool:
        """
        Insert a vector.

        Returns:
            True if the vector was independent of the basis (rank grew)
        """
        reduced = self.reduce(vector)
        if not reduced:
            return False
        pivot = min(reduced)
        inverse = self.domain.quo(self.domain.one, reduced[pivot])
        new_row = {j: a * inverse for j, a in reduced.items()}

        zero = self.domain.zero
        for row in self._rows.values():
            coeff = row.get(pivot)
            if not coeff:
                continue
            for j, a in new_row.items():
                value = row.get(j, zero) - coeff * a
                if value:
                    row[j] = value
                else:
                    row.pop(j, None)

        self._rows[pivot] = new_row
        return True
