"""
Local Ring Module

Artinian 商环 R/I 的计算工具（I 为 m-准素理想）。

主要功能：
- 截断界 N（m^N ⊆ I）的搜索与验证
- 局部序 τ̄ 下的 Grauert 除法（截断于次数 N）
- 增强标准基（截断环中的 s-多项式完备化）与首项理想
- Hilbert 函数、极小生成元个数、完全交与 Gorenstein 判定
- 标准单项式基、正规形式、乘法矩阵、socle、(0:m^e) ∩ m^i 的维数
- 与子环 S = K[[x,y]] 的截面 J = I ∩ S
"""
import heapq
import logging
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from apolarity.core.config import settings
from apolarity.core.exceptions import NotArtinianError
from apolarity.services.exactla import EchelonBasis, rank, sparse_matrix
from apolarity.services.polyring import (
    Monomial,
    MonomialOrder,
    Poly,
    divides,
    format_ideal,
    monomial_lcm,
    monomial_product,
    monomial_quotient,
    monomials_of_degree,
    monomials_up_to,
    order_of,
    polynomial_ring,
    substitute_linear,
    truncate,
)
from apolarity.services.sequences import HSeq

logger = logging.getLogger(__name__)


def _unit(nvars: int, index: int) -> Monomial:
    return tuple(1 if i == index else 0 for i in range(nvars))


def _shift_terms(f: Poly, monom: Monomial, coeff, bound: int) -> Dict[Monomial, object]:
    """Terms of coeff * x^monom * f of degree <= bound."""
    shift = sum(monom)
    return {
        monomial_product(a, monom): ca * coeff
        for a, ca in f.items()
        if sum(a) + shift <= bound
    }


def grauert_divide(
    f: Poly,
    divisors: Sequence[Poly],
    order: Optional[MonomialOrder] = None,
    bound: Optional[int] = None,
) -> Tuple[List[Poly], Poly]:
    """
    Division with remainder under the local order τ̄, truncated above degree bound.

    Args:
        f: Dividend
        divisors: Nonzero divisors
        order: Monomial order, default z > y > x
        bound: Truncation degree; defaults to the degree of f

    Returns:
        (quotients, remainder) with f = Σ q_j f_j + r modulo terms of degree
        > bound, no monomial of r divisible by any LT(f_j), and
        LT(q_j f_j) <= LT(f)
    """
    ring = f.ring
    domain = ring.domain
    zero = domain.zero
    order = order or MonomialOrder.default(ring.ngens)
    if bound is None:
        bound = max((sum(m) for m in f), default=0)
    heads = [order.leading_term(d) for d in divisors]
    key = order.local_key

    quotients: List[Dict[Monomial, object]] = [{} for _ in divisors]
    remainder: Dict[Monomial, object] = {}
    work = {m: c for m, c in f.items() if sum(m) <= bound}

    while work:
        lead = max(work, key=key)
        coeff = work[lead]
        for j, (head, head_coeff) in enumerate(heads):
            if not divides(head, lead):
                continue
            q_monom = monomial_quotient(lead, head)
            q_coeff = domain.quo(coeff, head_coeff)
            quotients[j][q_monom] = quotients[j].get(q_monom, zero) + q_coeff
            for monom, value in _shift_terms(divisors[j], q_monom, q_coeff, bound).items():
                updated = work.get(monom, zero) - value
                if updated:
                    work[monom] = updated
                else:
                    work.pop(monom, None)
            break
        else:
            remainder[lead] = coeff
            del work[lead]

    return [ring.from_dict(q) for q in quotients], ring.from_dict(remainder)


def _monic(f: Poly, order: MonomialOrder) -> Poly:
    _, coeff = order.leading_term(f)
    return f.quo_ground(coeff) if coeff != f.ring.domain.one else f


def _s_polynomial(f: Poly, g: Poly, order: MonomialOrder, bound: int) -> Poly:
    ring = f.ring
    zero = ring.domain.zero
    lf, cf = order.leading_term(f)
    lg, cg = order.leading_term(g)
    lcm = monomial_lcm(lf, lg)
    terms = _shift_terms(f, monomial_quotient(lcm, lf), ring.domain.quo(ring.domain.one, cf), bound)
    for monom, value in _shift_terms(
        g, monomial_quotient(lcm, lg), ring.domain.quo(ring.domain.one, cg), bound
    ).items():
        updated = terms.get(monom, zero) - value
        if updated:
            terms[monom] = updated
        else:
            terms.pop(monom, None)
    return ring.from_dict(terms)


def complete_standard_basis(
    generators: Sequence[Poly], order: MonomialOrder, bound: int
) -> List[Poly]:
    """
    Standard basis of I + m^{bound+1} in P/m^{bound+1}.

    Pairs are processed lowest lcm degree first. Only monomial pairs are
    skipped; every other s-polynomial is divided by the current basis and a
    nonzero remainder joins the basis. Terminates because each new leading
    monomial is new and has degree <= bound.
    """
    basis: List[Poly] = []
    pairs: List[Tuple[int, int, int, int]] = []
    counter = 0

    def insert(poly: Poly) -> None:
        nonlocal counter
        poly = _monic(poly, order)
        basis.append(poly)
        new = len(basis) - 1
        head_new = order.leading_monomial(poly)
        for old in range(new):
            if len(basis[old]) == 1 and len(poly) == 1:
                continue
            lcm = monomial_lcm(order.leading_monomial(basis[old]), head_new)
            if sum(lcm) > bound:
                continue
            heapq.heappush(pairs, (sum(lcm), counter, old, new))
            counter += 1

    for generator in generators:
        _, remainder = grauert_divide(truncate(generator, bound), basis, order, bound)
        if remainder:
            insert(remainder)

    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        s_poly = _s_polynomial(basis[i], basis[j], order, bound)
        if not s_poly:
            continue
        _, remainder = grauert_divide(s_poly, basis, order, bound)
        if remainder:
            insert(remainder)

    logger.debug("standard basis completion at bound %d: %d elements", bound, len(basis))
    return basis


def _minimal_leading(basis: Sequence[Poly], order: MonomialOrder) -> List[Poly]:
    """Drop elements whose leading monomial is divisible by another one's."""
    heads = [order.leading_monomial(b) for b in basis]
    kept = []
    for i, head in enumerate(heads):
        redundant = any(
            j != i and divides(other, head) and (other != head or j < i)
            for j, other in enumerate(heads)
        )
        if not redundant:
            kept.append(i)
    return [basis[i] for i in kept]


def _first_full_degree(heads: Sequence[Monomial], nvars: int, bound: int) -> Optional[int]:
    """Smallest d <= bound such that every degree-d monomial lies in (heads)."""
    for d in range(0, bound + 1):
        if all(any(divides(h, m) for h in heads) for m in monomials_of_degree(nvars, d)):
            return d
    return None


class Ideal:
    """
    An m-primary ideal of R = K[[x,y,z]] or S = K[[x,y]] given by polynomial
    generators.

    The truncation bound, standard basis and quotient are computed lazily
    and cached; after that the object is read-only.
    """

    def __init__(
        self,
        generators: Sequence[Poly],
        order: Optional[MonomialOrder] = None,
        truncation_hint: Optional[int] = None,
    ):
        generators = [g for g in generators if g]
        if not generators:
            raise ValueError("An ideal needs at least one nonzero generator")
        self.ring = generators[0].ring
        if any(g.ring != self.ring for g in generators):
            raise ValueError("All generators must lie in the same ring")
        self.generators: List[Poly] = list(generators)
        self.order = order or MonomialOrder.default(self.ring.ngens)
        self.truncation_hint = truncation_hint

    def __repr__(self) -> str:
        return f"Ideal({format_ideal(self.generators, self.order)})"

    @property
    def nvars(self) -> int:
        return self.ring.ngens

    @property
    def domain(self):
        return self.ring.domain

    # ------------------------------------------------------------------
    # Truncation bound and standard basis
    # ------------------------------------------------------------------

    @cached_property
    def _completion(self) -> Tuple[int, List[Poly]]:
        ceiling = settings.TRUNCATION_CEILING
        top = max(max(sum(m) for m in g) for g in self.generators)
        candidate = self.truncation_hint or max(2, top + 1)
        candidate = min(candidate, ceiling)
        while True:
            basis = complete_standard_basis(self.generators, self.order, candidate)
            heads = [self.order.leading_monomial(b) for b in basis]
            found = _first_full_degree(heads, self.nvars, candidate)
            if found is not None:
                minimal = _minimal_leading(basis, self.order)
                minimal = [truncate(b, found) for b in minimal if sum(self.order.leading_monomial(b)) <= found]
                logger.debug("truncation bound %d certified at completion bound %d", found, candidate)
                return found, minimal
            if candidate >= ceiling:
                raise NotArtinianError(
                    f"No power m^N with N <= {ceiling} lies in {format_ideal(self.generators)}"
                )
            candidate = min(candidate * 2, ceiling)

    @property
    def truncation_bound(self) -> int:
        return self._completion[0]

    @property
    def standard_basis(self) -> List[Poly]:
        return list(self._completion[1])

    @cached_property
    def leading_term_ideal(self) -> List[Monomial]:
        return self.order.sort_local(self.order.leading_monomial(b) for b in self._completion[1])

    @cached_property
    def quotient(self) -> "ArtinQuotient":
        return ArtinQuotient(self)

    # ------------------------------------------------------------------
    # Derived invariants
    # ------------------------------------------------------------------

    def normal_form(self, f: Poly) -> Poly:
        _, remainder = grauert_divide(f, self._completion[1], self.order, self.truncation_bound)
        return remainder

    def contains(self, f: Poly) -> bool:
        return not self.normal_form(f)

    @cached_property
    def hilbert_function(self) -> HSeq:
        return self.quotient.hilbert_function

    @property
    def colength(self) -> int:
        return self.quotient.dimension

    @cached_property
    def minimal_generators(self) -> List[Poly]:
        return minimalize(
            self.generators, self.quotient.ideal_span(), self.truncation_bound, self.order
        )

    @property
    def minimal_generator_count(self) -> int:
        return len(self.minimal_generators)

    @property
    def is_complete_intersection(self) -> bool:
        return self.minimal_generator_count == self.nvars

    @property
    def is_gorenstein(self) -> bool:
        return self.quotient.socle_dimension == 1


def minimalize(
    candidates: Sequence[Poly],
    ideal_span: Iterable[Poly],
    bound: int,
    order: MonomialOrder,
) -> List[Poly]:
    """
    Greedy minimal generating subset.

    ideal_span must span I modulo m^{bound+1} as a vector space and the
    candidates must generate I. Candidates are visited in increasing order,
    ties broken by decreasing τ̄ of the leading monomial; a candidate is kept
    when it is independent of m·I plus the candidates kept so far.
    """
    if not candidates:
        return []
    ring = candidates[0].ring
    one = ring.domain.one
    columns: Dict[Monomial, int] = {}

    def vector(terms: Dict[Monomial, object]) -> Dict[int, object]:
        return {columns.setdefault(m, len(columns)): c for m, c in terms.items() if c}

    span = EchelonBasis(ring.domain)
    for element in ideal_span:
        for v in range(ring.ngens):
            shifted = _shift_terms(element, _unit(ring.ngens, v), one, bound)
            if shifted:
                span.add(vector(shifted))

    def visit_key(g: Poly):
        return (order_of(g), tuple(-k for k in order.local_key(order.leading_monomial(g))))

    kept = []
    for candidate in sorted(candidates, key=visit_key):
        terms = {m: c for m, c in candidate.items() if sum(m) <= bound}
        if terms and span.add(vector(terms)):
            kept.append(candidate)
    return kept


class ArtinQuotient:
    """A = P/I as a finite-dimensional algebra with a standard-monomial basis."""

    def __init__(self, ideal: Ideal):
        self.ideal = ideal
        self.ring = ideal.ring
        self.domain = ideal.domain
        self.order = ideal.order
        self.bound = ideal.truncation_bound
        heads = ideal.leading_term_ideal
        nvars = self.ring.ngens
        self.basis: List[Monomial] = self.order.sort_local(
            m
            for m in monomials_up_to(nvars, self.bound - 1)
            if not any(divides(h, m) for h in heads)
        )
        self.index: Dict[Monomial, int] = {m: i for i, m in enumerate(self.basis)}
        self._monomial_forms: Dict[Monomial, Dict[int, object]] = {}

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def socle_degree(self) -> int:
        return self.bound - 1

    @cached_property
    def hilbert_function(self) -> HSeq:
        counts = [0] * self.bound
        for monom in self.basis:
            counts[sum(monom)] += 1
        return HSeq(tuple(counts))

    def normal_form(self, f: Poly) -> Dict[int, object]:
        """Coordinates of the class of f in the standard-monomial basis."""
        remainder = self.ideal.normal_form(f)
        return {self.index[m]: c for m, c in remainder.items()}

    def to_poly(self, vector: Dict[int, object]) -> Poly:
        terms = {self.basis[i]: c for i, c in vector.items() if c}
        return self.ring.from_dict(terms) if terms else self.ring.zero

    @cached_property
    def _multiplication_columns(self) -> List[List[Dict[int, object]]]:
        ring = self.ring
        columns = []
        for v in range(ring.ngens):
            unit = _unit(ring.ngens, v)
            columns.append(
                [self.normal_form(ring.from_dict({monomial_product(b, unit): self.domain.one}))
                 for b in self.basis]
            )
        return columns

    def multiplication_matrix(self, variable: int) -> DomainMatrix:
        """Matrix of multiplication by the given variable; column b = NF(x_v * b)."""
        n = self.dimension
        rows: List[Dict[int, object]] = [dict() for _ in range(n)]
        for b, image in enumerate(self._multiplication_columns[variable]):
            for out, coeff in image.items():
                rows[out][b] = coeff
        return sparse_matrix(rows, n, self.domain)

    def monomial_normal_form(self, monom: Monomial) -> Dict[int, object]:
        """NF of a monomial, built recursively from the multiplication columns."""
        monom = tuple(monom)
        if monom in self._monomial_forms:
            return self._monomial_forms[monom]
        if sum(monom) >= self.bound:
            form: Dict[int, object] = {}
        elif monom in self.index:
            form = {self.index[monom]: self.domain.one}
        else:
            v = next(i for i, e in enumerate(monom) if e)
            previous = self.monomial_normal_form(
                tuple(e - 1 if i == v else e for i, e in enumerate(monom))
            )
            form = {}
            zero = self.domain.zero
            for b, coeff in previous.items():
                for out, value in self._multiplication_columns[v][b].items():
                    updated = form.get(out, zero) + coeff * value
                    if updated:
                        form[out] = updated
                    else:
                        form.pop(out, None)
        self._monomial_forms[monom] = form
        return form

    def ideal_span(self) -> List[Poly]:
        """
        Basis of I modulo m^{N+1}: μ - NF(μ) for every non-standard monomial
        μ of degree <= N.
        """
        span = []
        for monom in monomials_up_to(self.ring.ngens, self.bound):
            if monom in self.index:
                continue
            terms = {monom: self.domain.one}
            for i, c in self.monomial_normal_form(monom).items():
                terms[self.basis[i]] = -c
            span.append(self.ring.from_dict(terms))
        return span

    @cached_property
    def socle_dimension(self) -> int:
        stacked = DomainMatrix.vstack(
            *[self.multiplication_matrix(v) for v in range(self.ring.ngens)]
        )
        return self.dimension - rank(stacked)

    @cached_property
    def _annihilator_chain(self) -> List[DomainMatrix]:
        """
        L_e with (0 : m^e) = ker L_e for e = 0..N; L_0 is the identity since
        (0 : m^0) = 0.
        """
        n = self.dimension
        identity = DomainMatrix.eye(n, self.domain).to_sparse()
        multipliers = [self.multiplication_matrix(v) for v in range(self.ring.ngens)]
        chain = [identity]
        for _ in range(self.bound):
            previous = chain[-1]
            if previous.shape[0] == 0:
                chain.append(previous)
                continue
            stacked = DomainMatrix.vstack(*[previous * m for m in multipliers])
            reduced, pivots = stacked.rref()
            chain.append(reduced[: len(pivots), :] if pivots else DomainMatrix.zeros((0, n), self.domain))
        return chain

    def annihilator_power_dim(self, e: int, i: int) -> int:
        """dim_K ((0 : m^e) ∩ m^i); m^i is spanned by standard monomials of degree >= i."""
        if e <= 0:
            return 0
        chain = self._annihilator_chain
        functionals = chain[min(e, len(chain) - 1)]
        columns = [b for b, monom in enumerate(self.basis) if sum(monom) >= i]
        if not columns:
            return 0
        if functionals.shape[0] == 0:
            return len(columns)
        restricted = functionals.extract(list(range(functionals.shape[0])), columns)
        return len(columns) - rank(restricted)


# ---------------------------------------------------------------------------
# Operation-level functions
# ---------------------------------------------------------------------------

def truncation_bound(ideal: Ideal) -> int:
    return ideal.truncation_bound


def standard_basis(ideal: Ideal) -> List[Poly]:
    return ideal.standard_basis


def hilbert_function(ideal: Ideal) -> HSeq:
    return ideal.hilbert_function


def minimal_generator_count(ideal: Ideal) -> int:
    return ideal.minimal_generator_count


def is_complete_intersection(ideal: Ideal) -> bool:
    return ideal.is_complete_intersection


def is_gorenstein(ideal: Ideal) -> bool:
    return ideal.is_gorenstein


def ideals_equal(first: Ideal, second: Ideal) -> bool:
    """Two-way membership of generators."""
    return all(second.contains(g) for g in first.generators) and all(
        first.contains(g) for g in second.generators
    )


def section_with_S(ideal: Ideal, bound: Optional[int] = None) -> Ideal:
    """
    J = I ∩ K[[x,y]] by linear elimination of the z-containing monomials.

    The vector-space basis of I modulo m^{N+1} is reduced to echelon form with
    every z-containing column placed before the z-free ones; rows with a
    z-free pivot span J modulo m_S^{N+1} and are then minimalized.
    """
    if ideal.nvars != 3:
        raise ValueError("section_with_S expects an ideal of K[[x,y,z]]")
    N = bound if bound is not None else ideal.truncation_bound
    order = ideal.order
    monomials = monomials_up_to(3, N)
    with_z = [m for m in monomials if m[2]]
    without_z = order.sort_local(m for m in monomials if not m[2])
    column_of = {m: i for i, m in enumerate(with_z + without_z)}
    first_free = len(with_z)
    column_monomials = with_z + without_z

    elimination = EchelonBasis(ideal.domain)
    for element in ideal.quotient.ideal_span():
        elimination.add({column_of[m]: c for m, c in element.items() if sum(m) <= N})

    S = polynomial_ring(2, ideal.domain)
    rows = []
    for pivot in elimination.pivots:
        if pivot < first_free:
            continue
        row = elimination.row(pivot)
        rows.append(S.from_dict({column_monomials[j][:2]: c for j, c in row.items()}))

    S_order = MonomialOrder.default(2)
    generators = minimalize(rows, rows, N, S_order)
    logger.debug("section with S: %d spanning rows, %d minimal generators", len(rows), len(generators))
    return Ideal(generators, S_order, truncation_hint=N)


def linear_change_of_coordinates(
    generators: Sequence[Poly], matrix: Sequence[Sequence]
) -> List[Poly]:
    """
    Rewrite generators under x_old = A · x_new, where matrix is A (row i gives
    old variable i as a combination of the new variables).
    """
    ring = generators[0].ring
    domain = ring.domain
    images = []
    for row in matrix:
        images.append(
            ring.from_dict(
                {_unit(ring.ngens, j): domain.convert(c) for j, c in enumerate(row) if c}
            )
        )
    return [substitute_linear(g, images) for g in generators]
