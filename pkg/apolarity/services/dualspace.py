"""
Dual Space Module

对偶空间 K_DP[X,Y,Z]（及 K_DP[X,Y]）上的收缩作用与逆系统的分次维数。

主要功能：
- 收缩作用 x^n ∘ X^{n'} = X^{n'-n}（纯指数平移，不是求导）
- 按 Z 的次数切片 T = T_0 + Z·T_1 + Z²·T_2 + …
- 由生成元张成的子模 ⟨gens⟩ 的分次维数
- 求解 σ ∘ F = target
"""
import logging
import math
from typing import Dict, List, Optional, Sequence

from sympy.polys.rings import PolyRing

from apolarity.core.exceptions import ArityMismatchError
from apolarity.services.exactla import EchelonBasis, solve_linear, sparse_matrix
from apolarity.services.polyring import (
    DualPoly,
    MonomialOrder,
    Poly,
    degree_of,
    dual_ring,
    is_dual_ring,
    monomials_up_to,
    polynomial_ring,
)
from apolarity.services.sequences import HSeq

logger = logging.getLogger(__name__)


def contract(f: Poly, F: DualPoly) -> DualPoly:
    """
    Contraction f ∘ F, the bilinear extension of
    x^n ∘ X^{n'} = X^{n'-n} when n' >= n componentwise, else 0.

    Raises:
        ArityMismatchError: If f and F have different numbers of variables
    """
    if f.ring.ngens != F.ring.ngens or is_dual_ring(f.ring) or not is_dual_ring(F.ring):
        raise ArityMismatchError(
            f"Cannot contract a {f.ring.ngens}-variable ring element "
            f"with a {F.ring.ngens}-variable dual polynomial"
        )
    zero = F.ring.domain.zero
    terms: Dict[tuple, object] = {}
    for a, ca in f.items():
        for b, cb in F.items():
            if all(x <= y for x, y in zip(a, b)):
                shifted = tuple(y - x for x, y in zip(a, b))
                terms[shifted] = terms.get(shifted, zero) + ca * cb
    return F.ring.from_dict({m: c for m, c in terms.items() if c}) if terms else F.ring.zero


def contract_monomial(monom: tuple, F: DualPoly) -> Dict[tuple, object]:
    """x^monom ∘ F as a raw term dictionary."""
    terms = {}
    for b, cb in F.items():
        if all(x <= y for x, y in zip(monom, b)):
            terms[tuple(y - x for x, y in zip(monom, b))] = cb
    return terms


def dual_slices(T: DualPoly) -> List[DualPoly]:
    """
    Split T = T_0 + Z·T_1 + … + Z^n·T_n into 2-variable dual polynomials.

    Raises:
        ArityMismatchError: If T does not have three dual variables
    """
    if T.ring.ngens != 3:
        raise ArityMismatchError("dual_slices expects a polynomial in X, Y, Z")
    target = dual_ring(2, T.ring.domain)
    if not T:
        return [target.zero]
    top = max(m[2] for m in T)
    buckets: List[Dict[tuple, object]] = [{} for _ in range(top + 1)]
    for monom, coeff in T.items():
        buckets[monom[2]][monom[:2]] = coeff
    return [target.from_dict(b) if b else target.zero for b in buckets]


def assemble_slices(slices: Sequence[DualPoly]) -> DualPoly:
    """Inverse of dual_slices."""
    target = dual_ring(3, slices[0].ring.domain)
    terms = {}
    for power, piece in enumerate(slices):
        for monom, coeff in piece.items():
            terms[monom + (power,)] = coeff
    return target.from_dict(terms) if terms else target.zero


class DualColumns:
    """
    Column bookkeeping for dual polynomials of degree <= bound.

    Columns are ordered by decreasing degree and, within a degree, by
    decreasing τ, so the pivot of an echelon row is its top-degree leading
    monomial.
    """

    def __init__(self, nvars: int, bound: int, order: Optional[MonomialOrder] = None):
        self.nvars = nvars
        self.bound = bound
        self.order = order or MonomialOrder.default(nvars)
        self.monomials = sorted(
            monomials_up_to(nvars, bound), key=self.order.dual_key, reverse=True
        )
        self.index = {m: i for i, m in enumerate(self.monomials)}

    def vector(self, terms) -> Dict[int, object]:
        return {self.index[m]: c for m, c in terms.items() if c}

    def poly(self, ring: PolyRing, vector: Dict[int, object]) -> DualPoly:
        terms = {self.monomials[i]: c for i, c in vector.items() if c}
        return ring.from_dict(terms) if terms else ring.zero

    def degree_of_column(self, column: int) -> int:
        return sum(self.monomials[column])


def submodule_span(gens: Sequence[DualPoly], bound: int) -> EchelonBasis:
    """Echelon basis of the K-span of {σ ∘ gen : deg σ <= bound} in DualColumns order."""
    nvars = gens[0].ring.ngens
    columns = DualColumns(nvars, bound)
    basis = EchelonBasis(gens[0].ring.domain)
    for gen in gens:
        if not gen:
            continue
        for sigma in monomials_up_to(nvars, bound):
            image = contract_monomial(sigma, gen)
            if image:
                basis.add(columns.vector(image))
    return basis


def submodule_graded_dims(gens: Sequence[DualPoly], upto: Optional[int] = None) -> HSeq:
    """
    Graded dimensions of ⟨gens⟩: entry i counts the elements of degree exactly
    i modulo lower degree, read off from pivot degrees of an echelon basis.

    Args:
        gens: Dual generators over a common dual ring
        upto: Bound on deg σ and on dual degrees; defaults to the max generator degree

    Returns:
        HSeq with trailing zeros trimmed
    """
    nonzero = [g for g in gens if g]
    if not nonzero:
        return HSeq(())
    top = int(max(degree_of(g) for g in nonzero))
    bound = top if upto is None else max(upto, top)
    columns = DualColumns(nonzero[0].ring.ngens, bound)
    basis = submodule_span(nonzero, bound)

    dims = [0] * (bound + 1)
    for pivot in basis.pivots:
        dims[columns.degree_of_column(pivot)] += 1
    return HSeq(tuple(dims))


def solve_contraction(
    F: DualPoly, target: DualPoly, maxdeg: int, mindeg: int = 0
) -> Optional[Poly]:
    """
    Find σ with σ ∘ F = target and mindeg <= order, deg σ <= maxdeg.

    The unknowns are the coefficients of the monomials σ ordered by
    decreasing τ̄; free unknowns are set to 0, so the returned σ is the
    particular solution of that parametrization.

    Returns:
        σ in the ring with the same variable count, or None if none exists
    """
    nvars = F.ring.ngens
    domain = F.ring.domain
    ring = polynomial_ring(nvars, domain)
    order = MonomialOrder.default(nvars)
    if not target:
        return ring.zero

    unknowns = [
        m for m in order.sort_local(monomials_up_to(nvars, maxdeg)) if sum(m) >= mindeg
    ]
    top = int(max(degree_of(F), degree_of(target)))
    columns = DualColumns(nvars, max(top, 0))

    # one row per dual monomial, one column per unknown monomial
    rows: List[Dict[int, object]] = [dict() for _ in columns.monomials]
    for j, sigma in enumerate(unknowns):
        for monom, coeff in contract_monomial(sigma, F).items():
            rows[columns.index[monom]][j] = coeff
    rhs = [domain.zero] * len(columns.monomials)
    for monom, coeff in target.items():
        if monom not in columns.index:
            return None
        rhs[columns.index[monom]] = coeff

    solution = solve_linear(sparse_matrix(rows, len(unknowns), domain), rhs)
    if solution is None:
        return None
    terms = {unknowns[j]: c for j, c in enumerate(solution) if c}
    return ring.from_dict(terms) if terms else ring.zero
