"""
Apolar Module

Macaulay 对应的两个方向：对偶生成元的零化理想，以及 Gorenstein 理想的对偶生成元。

主要功能：
- annihilator：由对偶多项式计算零化理想 ann(W)
- apolar_hf：apolar 代数 A_F 的 Hilbert 函数
- inverse_system / dual_generator：逆系统 I^⊥ 及其循环生成元
- reduced_quadratic_generators：二次部分为 xz, yz, z² 的约化生成元（必要时做线性坐标变换）
- slice_identities：按 Z 切片验证 T_{n+2} = W∘T_n、x∘T_{n+1} = U∘T_n、y∘T_{n+1} = V∘T_n
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from sympy.polys.matrices import DomainMatrix

from apolarity.core.exceptions import (
    NotGorensteinError,
    PreconditionError,
    VerificationError,
    ZeroPolynomialError,
)
from apolarity.services.dualspace import (
    DualColumns,
    contract,
    contract_monomial,
    dual_slices,
    submodule_graded_dims,
    submodule_span,
)
from apolarity.services.exactla import EchelonBasis, kernel_basis, sparse_matrix
from apolarity.services.localring import (
    Ideal,
    grauert_divide,
    ideals_equal,
    linear_change_of_coordinates,
    minimalize,
    section_with_S,
)
from apolarity.services.polyring import (
    DualPoly,
    MonomialOrder,
    Poly,
    change_ring,
    degree_of,
    dual_ring,
    format_poly,
    homogeneous_component,
    monomials_of_degree,
    monomials_up_to,
    polynomial_ring,
)
from apolarity.services.sequences import HSeq

logger = logging.getLogger(__name__)


def annihilator(gens: Sequence[DualPoly], order: Optional[MonomialOrder] = None) -> Ideal:
    """
    ann_R(⟨gens⟩) for dual generators in 2 or 3 variables.

    The elements of degree <= D (D = max generator degree) are the kernel of
    the contraction map σ ↦ (σ∘gen)_gen; every monomial of degree D+1 lies in
    the annihilator. The union is minimalized.

    Raises:
        ZeroPolynomialError: If every generator is zero
    """
    nonzero = [g for g in gens if g]
    if not nonzero:
        raise ZeroPolynomialError("annihilator of the zero module is the unit ideal")
    nvars = nonzero[0].ring.ngens
    domain = nonzero[0].ring.domain
    ring = polynomial_ring(nvars, domain)
    order = order or MonomialOrder.default(nvars)
    top = int(max(degree_of(g) for g in nonzero))

    unknowns = order.sort_local(monomials_up_to(nvars, top))
    columns = DualColumns(nvars, top)
    height = len(columns.monomials)
    rows: List[Dict[int, object]] = [dict() for _ in range(height * len(nonzero))]
    for j, sigma in enumerate(unknowns):
        for g_index, gen in enumerate(nonzero):
            for monom, coeff in contract_monomial(sigma, gen).items():
                rows[g_index * height + columns.index[monom]][j] = coeff

    echelon = EchelonBasis(domain)
    for vector in kernel_basis(sparse_matrix(rows, len(unknowns), domain)):
        echelon.add({j: c for j, c in enumerate(vector) if c})

    candidates = [
        ring.from_dict({unknowns[j]: c for j, c in row.items()}) for row in echelon.rows()
    ]
    candidates += [ring.from_dict({m: domain.one}) for m in monomials_of_degree(nvars, top + 1)]
    generators = minimalize(candidates, candidates, top + 1, order)
    logger.debug("annihilator of %d generator(s) of degree %d: %d minimal generators",
                 len(nonzero), top, len(generators))
    return Ideal(generators, order, truncation_hint=top + 1)


def apolar_hf(F: DualPoly) -> HSeq:
    """Hilbert function of A_F = R/ann(F), read from the graded pieces of ⟨F⟩."""
    if not F:
        raise ZeroPolynomialError("apolar algebra of the zero polynomial")
    return submodule_graded_dims([F])


def inverse_system(ideal: Ideal) -> List[DualPoly]:
    """
    Echelon basis of I^⊥ = {F : g∘F = 0 for every generator g}.

    Rows are reduced with columns in DualColumns order, so each row is
    normalized to coefficient 1 at its top-degree τ-leading monomial.
    """
    nvars = ideal.nvars
    domain = ideal.domain
    bound = ideal.truncation_bound - 1
    D = dual_ring(nvars, domain)
    columns = DualColumns(nvars, bound)
    height = len(columns.monomials)

    rows: List[Dict[int, object]] = [dict() for _ in range(height * len(ideal.generators))]
    for col, beta in enumerate(columns.monomials):
        for g_index, generator in enumerate(ideal.generators):
            for a, coeff in generator.items():
                if all(x <= y for x, y in zip(a, beta)):
                    target = tuple(y - x for x, y in zip(a, beta))
                    row = rows[g_index * height + columns.index[target]]
                    row[col] = row.get(col, domain.zero) + coeff

    echelon = EchelonBasis(domain)
    for vector in kernel_basis(sparse_matrix(rows, height, domain)):
        echelon.add({j: c for j, c in enumerate(vector) if c})
    return [columns.poly(D, row) for row in echelon.rows()]


def dual_generator(ideal: Ideal) -> DualPoly:
    """
    A generator F of the cyclic module I^⊥ with ann(F) = I.

    F is the echelon row of I^⊥ whose pivot has the socle degree: its
    top-degree τ-leading monomial has coefficient 1 and it vanishes on every
    other pivot monomial of I^⊥.

    Raises:
        NotGorensteinError: If R/I is not Gorenstein
        VerificationError: If ann(F) differs from I
    """
    if not ideal.is_gorenstein:
        raise NotGorensteinError(
            f"socle dimension is {ideal.quotient.socle_dimension}, not 1"
        )
    s = ideal.quotient.socle_degree
    top = [F for F in inverse_system(ideal) if degree_of(F) == s]
    if len(top) != 1:
        raise VerificationError(f"expected one inverse-system element of degree {s}, found {len(top)}")
    F = top[0]
    if not ideals_equal(annihilator([F], ideal.order), ideal):
        logger.error("dual generator %s does not recover the ideal", format_poly(F))
        raise VerificationError("annihilator of the computed dual generator differs from the ideal")
    return F


@dataclass
class QuadraticReduction:
    """Generators f = xz - U, g = yz - V, p = z² - W of an ideal in adapted coordinates."""

    ideal: Ideal
    change: List[List]
    f: Poly
    g: Poly
    p: Poly
    U: Poly
    V: Poly
    W: Poly

    @property
    def coordinates_changed(self) -> bool:
        n = len(self.change)
        return any(self.change[i][j] != (1 if i == j else 0) for i in range(n) for j in range(n))


_XZ, _YZ, _ZZ = (1, 0, 1), (0, 1, 1), (0, 0, 2)


def _degree_two_part(ideal: Ideal) -> EchelonBasis:
    index = {m: i for i, m in enumerate(monomials_of_degree(3, 2))}
    basis = EchelonBasis(ideal.domain)
    for element in ideal.quotient.ideal_span():
        part = homogeneous_component(element, 2)
        if part:
            basis.add({index[m]: c for m, c in part.items()})
    return basis


def _adapting_change(ideal: Ideal) -> List[List]:
    """
    Matrix A (x_old = A x_new) moving the unique linear form ℓ with
    x·ℓ, y·ℓ, z·ℓ ∈ (I*)_2 to the new variable z.
    """
    domain = ideal.domain
    quadrics = monomials_of_degree(3, 2)
    index = {m: i for i, m in enumerate(quadrics)}
    degree_two = _degree_two_part(ideal)
    if degree_two.rank != 3:
        raise PreconditionError(f"degree-2 part of the initial ideal has dimension {degree_two.rank}, not 3")

    # column k: the residues of x_v * x_k modulo (I*)_2, stacked over v
    rows: List[Dict[int, object]] = []
    for v in range(3):
        residues = []
        for k in range(3):
            product = tuple((1 if i == v else 0) + (1 if i == k else 0) for i in range(3))
            residues.append(degree_two.reduce({index[product]: domain.one}))
        for column in range(len(quadrics)):
            rows.append({k: residues[k][column] for k in range(3) if column in residues[k]})
    kernel = kernel_basis(sparse_matrix(rows, 3, domain))
    if len(kernel) != 1:
        raise PreconditionError("no unique linear form ℓ with m·ℓ inside the quadratic initial forms")
    a, b, c = kernel[0]

    if not a and not b:
        return [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    units = [[domain.one, domain.zero, domain.zero],
             [domain.zero, domain.one, domain.zero],
             [domain.zero, domain.zero, domain.one]]
    for first, second, pivot in ((0, 1, c), (0, 2, b), (1, 2, a)):
        if pivot:
            forward = DomainMatrix([units[first], units[second], [a, b, c]], (3, 3), domain)
            return forward.inv().to_list()
    raise PreconditionError("degenerate linear form")


def reduced_quadratic_generators(ideal: Ideal) -> QuadraticReduction:
    """
    Bring a Gorenstein ideal with Hilbert function (1,3,3,4,...) into the form
    (xz - U, yz - V, z² - W) with U, V, W free of z.

    Raises:
        PreconditionError: Wrong Hilbert function shape, not Gorenstein, or no
            adapting coordinate change
    """
    if ideal.nvars != 3:
        raise PreconditionError("ideal must live in K[[x,y,z]]")
    h = ideal.hilbert_function
    if h.values[:4] != (1, 3, 3, 4):
        raise PreconditionError(f"Hilbert function {h} is not of shape (1,3,3,4,...)")
    if not ideal.is_gorenstein:
        raise PreconditionError("ideal is not Gorenstein")

    change = _adapting_change(ideal)
    adapted = ideal
    if any(change[i][j] != (1 if i == j else 0) for i in range(3) for j in range(3)):
        logger.info("changing coordinates to reach quadratic parts xz, yz, z²")
        adapted = Ideal(
            linear_change_of_coordinates(ideal.generators, change),
            ideal.order,
            truncation_hint=ideal.truncation_bound,
        )

    N = adapted.truncation_bound
    order = adapted.order
    echelon = EchelonBasis(adapted.domain)
    monomials = order.sort_local(monomials_up_to(3, N))
    column_of = {m: i for i, m in enumerate(monomials)}
    for element in adapted.quotient.ideal_span():
        echelon.add({column_of[m]: c for m, c in element.items()})

    ring = adapted.ring
    triple = []
    for head in (_XZ, _YZ, _ZZ):
        if column_of[head] not in echelon.pivots:
            raise PreconditionError(f"no element with initial form {format_poly(ring.from_dict({head: 1}))}")
        row = echelon.row(column_of[head])
        triple.append(ring.from_dict({monomials[j]: c for j, c in row.items()}))

    S = polynomial_ring(2, adapted.domain)
    tails = []
    for head, element in zip((_XZ, _YZ, _ZZ), triple):
        tail = ring.from_dict({head: adapted.domain.one}) - element
        _, remainder = grauert_divide(tail, triple, order, N)
        tails.append(remainder)
    U, V, W = (change_ring(t, S) for t in tails)
    f, g, p = (ring.from_dict({head: adapted.domain.one}) - t for head, t in zip((_XZ, _YZ, _ZZ), tails))
    return QuadraticReduction(adapted, change, f, g, p, U, V, W)


@dataclass
class SliceCheck:
    n: int
    even: bool
    x_relation: bool
    y_relation: bool

    @property
    def passed(self) -> bool:
        return self.even and self.x_relation and self.y_relation


@dataclass
class SliceWitness:
    """U, V, W of the reduced generators, the slices T_i and the per-n checks."""

    preconditions_met: bool
    reason: str = ""
    reduction: Optional[QuadraticReduction] = None
    generator: Optional[DualPoly] = None
    slices: List[DualPoly] = field(default_factory=list)
    checks: List[SliceCheck] = field(default_factory=list)
    pair_in_span: bool = False
    section_matches: bool = False

    @property
    def U(self) -> Optional[Poly]:
        return self.reduction.U if self.reduction else None

    @property
    def V(self) -> Optional[Poly]:
        return self.reduction.V if self.reduction else None

    @property
    def W(self) -> Optional[Poly]:
        return self.reduction.W if self.reduction else None

    @property
    def passed(self) -> bool:
        return (
            self.preconditions_met
            and all(c.passed for c in self.checks)
            and self.pair_in_span
            and self.section_matches
        )


def _in_submodule(F: DualPoly, element: DualPoly) -> bool:
    if not element:
        return True
    bound = int(degree_of(F))
    if degree_of(element) > bound:
        return False
    columns = DualColumns(F.ring.ngens, bound)
    span = submodule_span([F], bound)
    return span.contains(columns.vector(dict(element.items())))


def slice_identities(ideal: Ideal) -> SliceWitness:
    """
    Check the slice recursions of the dual generator T = Σ Z^i T_i of a
    Gorenstein ideal (xz - U, yz - V, z² - W):

        T_{n+2} = W∘T_n,  x∘T_{n+1} = U∘T_n,  y∘T_{n+1} = V∘T_n

    for n = 0..s, together with x∘T_1, y∘T_1 ∈ ⟨T_0⟩ and
    ann_S(T_0, T_1) = I ∩ S.
    """
    try:
        reduction = reduced_quadratic_generators(ideal)
    except PreconditionError as e:
        return SliceWitness(preconditions_met=False, reason=str(e))

    T = dual_generator(reduction.ideal)
    s = reduction.ideal.quotient.socle_degree
    slices = dual_slices(T)
    D2 = slices[0].ring
    padded = slices + [D2.zero] * (s + 3 - len(slices))
    S = polynomial_ring(2, ideal.domain)
    x, y = S.gens

    checks = []
    for n in range(s + 1):
        checks.append(SliceCheck(
            n=n,
            even=padded[n + 2] == contract(reduction.W, padded[n]),
            x_relation=contract(x, padded[n + 1]) == contract(reduction.U, padded[n]),
            y_relation=contract(y, padded[n + 1]) == contract(reduction.V, padded[n]),
        ))

    F, G = padded[0], padded[1]
    pair_in_span = _in_submodule(F, contract(x, G)) and _in_submodule(F, contract(y, G))
    section = section_with_S(reduction.ideal)
    section_matches = ideals_equal(section, annihilator([F, G] if G else [F]))

    report = SliceWitness(
        preconditions_met=True,
        reduction=reduction,
        generator=T,
        slices=slices,
        checks=checks,
        pair_in_span=pair_in_span,
        section_matches=section_matches,
    )
    logger.info("slice identities %s for %d slices", "pass" if report.passed else "fail", len(slices))
    return report


def is_square_property(ideal: Ideal) -> bool:
    """
    (0 : m^δ) ∩ m = (0 : m^δ) ∩ m² for every δ <= t, t = max{i : h_i >= 2}.

    Holds for Gorenstein quotients of K[[x,y]].
    """
    if ideal.nvars != 2:
        raise PreconditionError("square property is stated for ideals of K[[x,y]]")
    h = ideal.hilbert_function
    t = max((i for i, value in enumerate(h) if value >= 2), default=0)
    quotient = ideal.quotient
    return all(
        quotient.annihilator_power_dim(delta, 1) == quotient.annihilator_power_dim(delta, 2)
        for delta in range(1, t + 1)
    )
