"""
Construct Module

完全交理想的显式构造：h_3 <= 3 的闭式理想，以及 h_3 = 4 时经余维 2 约化的八步算法。

主要功能：
- construct_h3le3 / h3le3_dual_generator：h_3 <= 3 情形的理想与对偶生成元
- codim2_dual_from_h：具有给定 Hilbert 函数的幂和 F = Σ ℓ_i^[e_i]
- find_G / normalize_G：寻找并规范化第二个对偶生成元 G
- syzygy_data / assemble_ci：Hilbert–Burch 矩阵与 (xz - U, yz - V, z² - W)
- construct_ci / trace_construction：按分类结果调度并记录每一步
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Dict, Iterator, List, Optional, Tuple

from apolarity.core.exceptions import (
    FieldConfigurationError,
    NotArtinianError,
    OverrideInconsistentError,
    PreconditionError,
    RejectedSequenceError,
    SyzygyTemplateError,
    UnrealizableByPowersError,
    VerificationError,
)
from apolarity.services.apolar import annihilator, apolar_hf, inverse_system
from apolarity.services.dualspace import (
    DualColumns,
    contract,
    solve_contraction,
    submodule_graded_dims,
    submodule_span,
)
from apolarity.services.exactla import parse_field
from apolarity.services.localring import Ideal, ideals_equal, minimalize, section_with_S
from apolarity.services.polyring import (
    DualPoly,
    MonomialOrder,
    Poly,
    change_ring,
    degree_of,
    dual_ring,
    format_ideal,
    format_poly,
    monomials_of_degree,
    order_of,
    polynomial_ring,
)
from apolarity.services.sequences import (
    Classification,
    HSeq,
    Verdict,
    classify_133,
    codim2_gorenstein_check,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# h_3 <= 3
# ---------------------------------------------------------------------------

def h3le3_hilbert_function(u: int, v: int, w: int) -> HSeq:
    return HSeq((1, 3, 3) + (3,) * u + (2,) * v + (1,) * w + (1,))


def h3le3_dual_generator(u: int, v: int, w: int, domain=None) -> DualPoly:
    """
    XYZ when u = v = w = 0, else X^{u+v+w+3} + Y^{u+v+3} + Z^{u+3} + XYZ.
    """
    domain = parse_field() if domain is None else domain
    D = dual_ring(3, domain)
    X, Y, Z = D.gens
    if u == v == w == 0:
        return X * Y * Z
    return X ** (u + v + w + 3) + Y ** (u + v + 3) + Z ** (u + 3) + X * Y * Z


def construct_h3le3(u: int, v: int, w: int, domain=None) -> Ideal:
    """
    Complete intersection with Hilbert function (1,3,3,3×u,2×v,1×w,1).

    Returns:
        (x², y², z²) in the trivial case, else
        (yz - x^A, xz - y^B, xy - z^C) with A = u+v+w+2, B = u+v+2, C = u+2

    Raises:
        VerificationError: If the result is not a CI with the expected
            Hilbert function, or x^{A+2} is not in it
    """
    if min(u, v, w) < 0:
        raise PreconditionError("u, v, w must be nonnegative")
    domain = parse_field() if domain is None else domain
    R = polynomial_ring(3, domain)
    x, y, z = R.gens
    expected = h3le3_hilbert_function(u, v, w)

    if u == v == w == 0:
        ideal = Ideal([x**2, y**2, z**2], truncation_hint=len(expected))
    else:
        A, B, C = u + v + w + 2, u + v + 2, u + 2
        ideal = Ideal(
            [y * z - x**A, x * z - y**B, x * y - z**C], truncation_hint=len(expected)
        )
        if not ideal.contains(x ** (A + 2)):
            raise VerificationError(f"x^{A + 2} is not in {format_ideal(ideal.generators)}")

    if ideal.hilbert_function != expected:
        raise VerificationError(
            f"construct_h3le3({u},{v},{w}) has Hilbert function {ideal.hilbert_function}, expected {expected}"
        )
    if not ideal.is_complete_intersection:
        raise VerificationError(f"construct_h3le3({u},{v},{w}) is not a complete intersection")
    return ideal


# ---------------------------------------------------------------------------
# Codimension two dual generators
# ---------------------------------------------------------------------------

@dataclass
class PowerSumForm:
    """F = Σ ℓ_i^[e_i] with ℓ_i = X + c_i·Y, or ℓ = Y when c_i is None."""

    coefficients: List[Optional[int]]
    exponents: List[int]
    dual: DualPoly

    def linear_forms(self) -> List[str]:
        D = self.dual.ring
        X, Y = D.gens
        return [format_poly(Y if c is None else X + Y * c) for c in self.coefficients]


def _divided_power(c: Optional[int], exponent: int, D) -> DualPoly:
    """ℓ^[e] = Σ_{a+b=e} α^a β^b X^a Y^b for ℓ = αX + βY."""
    alpha, beta = (0, 1) if c is None else (1, c)
    domain = D.domain
    terms = {}
    for a in range(exponent + 1):
        coeff = domain.convert(alpha**a * beta ** (exponent - a))
        if coeff:
            terms[(a, exponent - a)] = coeff
    return D.from_dict(terms) if terms else D.zero


def _form_coefficients(count: int, domain) -> List[Optional[int]]:
    if domain.is_FiniteField:
        p = int(domain.mod)
        if count > p + 1:
            raise UnrealizableByPowersError(
                f"{count} pairwise non-proportional linear forms do not exist over GF({p})"
            )
        return [c if c < p else None for c in range(count)]
    return list(range(count))


def _power_sum(exponents: List[int], domain) -> PowerSumForm:
    D = dual_ring(2, domain)
    coefficients = _form_coefficients(len(exponents), domain)
    F = D.zero
    for c, e in zip(coefficients, exponents):
        F += _divided_power(c, e, D)
    return PowerSumForm(coefficients, list(exponents), F)


def block_right_ends(h2: HSeq) -> List[int]:
    """
    Right ends R_1 >= ... >= R_t of the nested blocks [i-1, R_i]:
    #{R = j} = [j+1 <= t-1] - (h_{j+1} - h_j) with t = max h.
    """
    t = h2.max
    ends: List[int] = []
    for j in range(len(h2)):
        count = (1 if j + 1 <= t - 1 else 0) - (h2[j + 1] - h2[j])
        if count < 0:
            raise PreconditionError(f"{h2} has no nested block decomposition")
        ends.extend([j] * count)
    return sorted(ends, reverse=True)


def _fallback_exponents(h2: HSeq, forms: int) -> Iterator[Tuple[int, ...]]:
    s = h2.socle_degree
    target = h2.total
    for tail in combinations_with_replacement(range(s, -1, -1), forms - 1):
        exponents = (s,) + tail
        if sum(e + 1 - 2 * i for i, e in enumerate(exponents)) == target:
            yield exponents


def codim2_dual_from_h(h2: HSeq, domain=None) -> PowerSumForm:
    """
    A power sum in K_DP[X,Y] whose apolar algebra has Hilbert function h2.

    The exponents come from the block formula e_i = R_i + i - 1; when the
    result does not realize h2, a bounded search over exponent tuples runs.

    Raises:
        PreconditionError: If h2 is not a codimension-2 Gorenstein sequence
        UnrealizableByPowersError: If no power sum with these exponents works
    """
    if not codim2_gorenstein_check(h2):
        raise PreconditionError(f"{h2} is not the Hilbert function of a codimension-2 Gorenstein algebra")
    domain = parse_field() if domain is None else domain
    ends = block_right_ends(h2)
    exponents = [R + i for i, R in enumerate(ends)]
    form = _power_sum(exponents, domain)
    if apolar_hf(form.dual) == h2:
        logger.debug("block formula realizes %s with exponents %s", h2, exponents)
        return form

    logger.warning("block exponents %s do not realize %s, searching", exponents, h2)
    for candidate in _fallback_exponents(h2, len(exponents)):
        form = _power_sum(list(candidate), domain)
        if apolar_hf(form.dual) == h2:
            logger.info("exponents %s realize %s", candidate, h2)
            return form
    raise UnrealizableByPowersError(f"no sum of {len(exponents)} divided powers has Hilbert function {h2}")


# ---------------------------------------------------------------------------
# Second dual generator and syzygies
# ---------------------------------------------------------------------------

def _in_square_span(F: DualPoly, element: DualPoly) -> bool:
    """element ∈ m_S² ∘ F."""
    return solve_contraction(F, element, int(degree_of(F)), mindeg=2) is not None


def _admissible_G(F: DualPoly, G: DualPoly, h_target: HSeq) -> bool:
    if not G:
        return False
    x, y = polynomial_ring(2, F.ring.domain).gens
    return (
        submodule_graded_dims([F, G]) == h_target
        and _in_square_span(F, contract(x, G))
        and _in_square_span(F, contract(y, G))
    )


def _monomial_candidates(F: DualPoly, k: int) -> Iterator[DualPoly]:
    D = F.ring
    order = MonomialOrder.default(2)
    for monom in sorted(monomials_of_degree(2, k), key=order.dual_key, reverse=True):
        yield D.from_dict({monom: D.domain.one})


def _generator_candidates(F: DualPoly, k: int) -> Iterator[DualPoly]:
    """Elements of (f, x·g, y·g)^⊥ of degree <= k reduced modulo ⟨F⟩, with ord g = k."""
    ann = annihilator([F])
    of_order_k = [g for g in ann.generators if order_of(g) == k]
    if not of_order_k:
        return
    g = of_order_k[-1]
    x, y = g.ring.gens
    others = [f for f in ann.generators if f is not g]
    enlarged = Ideal(others + [x * g, y * g], truncation_hint=ann.truncation_bound + 1)

    bound = int(degree_of(F))
    columns = DualColumns(2, bound)
    span = submodule_span([F], bound)
    for element in inverse_system(enlarged):
        if degree_of(element) > k:
            continue
        remainder = span.reduce(columns.vector(dict(element.items())))
        if remainder:
            yield columns.poly(F.ring, remainder)


def find_G(F: DualPoly, h_target: HSeq, k: int) -> DualPoly:
    """
    A degree-k dual polynomial G with x∘G, y∘G ∈ m_S²∘F and
    HF(S/ann_S(F, G)) = h_target.

    When the maximum of h_target is not repeated the first degree-k monomial
    outside ⟨F⟩ (in decreasing τ) is tried first. Otherwise, with g the
    order-k minimal generator of ann_S(F) = (f, g), G comes from
    (f, x·g, y·g)^⊥ modulo ⟨F⟩.

    Raises:
        VerificationError: If no candidate passes verification
    """
    sources = []
    if h_target.r == 0:
        sources.append(_monomial_candidates(F, k))
    sources.append(_generator_candidates(F, k))
    for source in sources:
        for G in source:
            if _admissible_G(F, G, h_target):
                logger.debug("G = %s", format_poly(G))
                return G
    logger.error("no admissible G of degree %d for F = %s", k, format_poly(F))
    raise VerificationError(f"no G of degree {k} gives Hilbert function {h_target}")


def _split_by_x(f: Poly) -> Tuple[Poly, Poly]:
    """f = x·f' + y·f'' with f'' free of x; f must have no constant term."""
    ring = f.ring
    with_x: Dict[tuple, object] = {}
    with_y: Dict[tuple, object] = {}
    for (a, b), coeff in f.items():
        if a:
            with_x[(a - 1, b)] = coeff
        elif b:
            with_y[(a, b - 1)] = coeff
        else:
            raise PreconditionError(f"{format_poly(f)} has a constant term")
    return ring.from_dict(with_x) if with_x else ring.zero, ring.from_dict(with_y) if with_y else ring.zero


def normalize_G(F: DualPoly, G: DualPoly) -> Tuple[DualPoly, Poly]:
    """
    Replace G by G' = G - a2''∘F where y∘G = (x·a2' + y·a2'')∘F, so that
    y∘G' = (x·a2')∘F.

    Returns:
        (G', a2')

    Raises:
        PreconditionError: If y∘G is not in m_S²∘F
    """
    S = polynomial_ring(2, F.ring.domain)
    x, y = S.gens
    a2 = solve_contraction(F, contract(y, G), int(degree_of(F)), mindeg=2)
    if a2 is None:
        raise PreconditionError(f"y∘G is not in m²∘F for G = {format_poly(G)}")
    a2_prime, a2_second = _split_by_x(a2)
    G_prime = G - contract(a2_second, F)
    if contract(y, G_prime) != contract(x * a2_prime, F):
        raise VerificationError("normalization of G failed")
    return G_prime, a2_prime


@dataclass
class SyzygyData:
    """
    Entries of the Hilbert–Burch matrix
        | d12   x·a2'  d11 |
        | -x    -y     d21 |
    of ann_S(F, G'), and the U, V, W derived from it.
    """

    d11: Poly
    d21: Poly
    d12: Poly
    a2_prime: Poly
    F: Optional[DualPoly] = None
    G: Optional[DualPoly] = None

    @property
    def ring(self):
        return self.d11.ring

    def _half(self, f: Poly) -> Poly:
        domain = self.ring.domain
        return f.mul_ground(domain.quo(domain.one, domain.convert(2)))

    @property
    def d12_split(self) -> Tuple[Poly, Poly]:
        """d12 = x·d12' + y·d12''."""
        return _split_by_x(self.d12)

    @property
    def U1(self) -> Poly:
        return -self._half(self.d12_split[0] + self.d21)

    @property
    def U2(self) -> Poly:
        return -self.d12_split[1]

    @property
    def V1(self) -> Poly:
        return -self.a2_prime

    @property
    def V2(self) -> Poly:
        return self._half(self.d12_split[0] - self.d21)

    @property
    def U(self) -> Poly:
        x, y = self.ring.gens
        return x * self.U1 + y * self.U2

    @property
    def V(self) -> Poly:
        x, y = self.ring.gens
        return x * self.V1 + y * self.V2

    @property
    def W(self) -> Poly:
        return self.U2 * self.V1 + self.V2**2 - self.d11

    def minors(self) -> Tuple[Poly, Poly, Poly]:
        """2×2 minors for column pairs (1,2), (1,3), (2,3)."""
        x, y = self.ring.gens
        top = (self.d12, x * self.a2_prime, self.d11)
        bottom = (-x, -y, self.d21)
        return tuple(
            top[i] * bottom[j] - top[j] * bottom[i] for i, j in ((0, 1), (0, 2), (1, 2))
        )

    def hilbert_burch_ideal(self) -> Ideal:
        return Ideal(list(self.minors()))


def syzygy_data(F: DualPoly, G_prime: DualPoly, a2_prime: Optional[Poly] = None) -> SyzygyData:
    """
    Hilbert–Burch data of ann_S(F, G') with d21 = 0.

    d12 solves x∘G' = d12∘F in m_S², a2' solves y∘G' = a2'∘(x∘F) in m_S
    unless given, e = y·d12 - x²·a2' lies in ann_S(F), and d11 is the first
    minimal generator of ann_S(F) (lowest order, then τ̄) that completes e to
    a generating pair and whose minors generate ann_S(F, G').

    Raises:
        SyzygyTemplateError: If the minors do not generate ann_S(F, G')
    """
    S = polynomial_ring(2, F.ring.domain)
    x, y = S.gens
    bound = int(degree_of(F))
    d12 = solve_contraction(F, contract(x, G_prime), bound, mindeg=2)
    if a2_prime is None:
        a2_prime = solve_contraction(contract(x, F), contract(y, G_prime), bound, mindeg=1)
    if d12 is None or a2_prime is None:
        raise SyzygyTemplateError("G' is not normalized against F")

    ann = annihilator([F])
    e = y * d12 - x**2 * a2_prime
    span = ann.quotient.ideal_span()
    completing = [
        candidate for candidate in ann.generators
        if len(minimalize([e, candidate], span, ann.truncation_bound, ann.order)) == 2
    ]
    if not completing:
        raise SyzygyTemplateError(f"{format_poly(e)} is not a minimal generator of ann_S(F)")

    target = annihilator([F, G_prime])
    for d11 in completing:
        data = SyzygyData(d11=d11, d21=S.zero, d12=d12, a2_prime=a2_prime, F=F, G=G_prime)
        try:
            if ideals_equal(data.hilbert_burch_ideal(), target):
                return data
        except NotArtinianError:
            pass
        logger.debug("d11 = %s does not complete the matrix", format_poly(d11))
    logger.error("no Hilbert–Burch matrix with first row (%s, %s, d11) presents ann_S(F, G') = %s",
                 format_poly(d12), format_poly(x * a2_prime), format_ideal(target.generators))
    raise SyzygyTemplateError("the minors of the syzygy matrix do not generate ann_S(F, G')")


@dataclass
class AssemblyChecks:
    complete_intersection: bool
    section_matches: Optional[bool]
    generator_identities: bool

    @property
    def passed(self) -> bool:
        return self.complete_intersection and self.section_matches is not False and self.generator_identities


def _assembly_checks(ideal: Ideal, sd: SyzygyData, lifted: Tuple[Poly, Poly, Poly]) -> AssemblyChecks:
    R = ideal.ring
    x, y, z = R.gens
    f, g, p = lifted
    U1, U2, V1, V2 = (change_ring(t, R) for t in (sd.U1, sd.U2, sd.V1, sd.V2))
    m12, m13, m23 = (change_ring(t, R) for t in sd.minors())
    identities = (
        y * f - x * g == -m12
        and V1 * f + (z + V2) * g - y * p == -m23
        and (z + U1) * f + U2 * g - x * p == -m13
    )
    section = None
    if sd.F is not None and sd.G is not None:
        section = ideals_equal(section_with_S(ideal), annihilator([sd.F, sd.G]))
    return AssemblyChecks(ideal.is_complete_intersection, section, identities)


def assemble_ci(sd: SyzygyData) -> Ideal:
    """
    I = (xz - U, yz - V, z² - W) from the syzygy data.

    Raises:
        FieldConfigurationError: In characteristic 2
        VerificationError: If I is not a CI, its section with S differs from
            ann_S(F, G'), or a generator identity fails
    """
    domain = sd.ring.domain
    if domain.is_FiniteField and int(domain.mod) == 2:
        raise FieldConfigurationError("assembly divides by 2")
    R = polynomial_ring(3, domain)
    x, y, z = R.gens
    U, V, W = (change_ring(t, R) for t in (sd.U, sd.V, sd.W))
    lifted = (x * z - U, y * z - V, z**2 - W)
    hint = int(degree_of(sd.F)) + 2 if sd.F is not None else None
    ideal = Ideal(list(lifted), truncation_hint=hint)

    checks = _assembly_checks(ideal, sd, lifted)
    if not checks.passed:
        logger.error("assembled ideal %s failed verification: %s", format_ideal(ideal.generators), checks)
        raise VerificationError(f"assembled ideal {format_ideal(ideal.generators)} failed verification")
    return ideal


# ---------------------------------------------------------------------------
# Dispatcher
# ---------------------------------------------------------------------------

@dataclass
class ConstructionTrace:
    """Every intermediate value of one construction."""

    h: HSeq
    classification: Classification
    ideal: Optional[Ideal] = None
    h_prime: Optional[HSeq] = None
    h_double_prime: Optional[HSeq] = None
    k: Optional[int] = None
    power_sum: Optional[PowerSumForm] = None
    F: Optional[DualPoly] = None
    G: Optional[DualPoly] = None
    G_prime: Optional[DualPoly] = None
    syzygy: Optional[SyzygyData] = None
    verification: Dict[str, bool] = field(default_factory=dict)


def _require_admissible(h: HSeq) -> Classification:
    classification = classify_133(h)
    if not classification.admissible:
        raise RejectedSequenceError(
            f"{h} is rejected: {classification.verdict.value} ({classification.reason})",
            classification,
        )
    return classification


def trace_construction(
    h: HSeq,
    dual_F: Optional[DualPoly] = None,
    dual_G: Optional[DualPoly] = None,
    domain=None,
) -> ConstructionTrace:
    """
    Run the construction for an admissible (1,3,3) sequence and keep every
    intermediate value.

    Args:
        h: Target Hilbert function
        dual_F: Override for the codimension-2 generator F
        dual_G: Override for G
        domain: Coefficient field; defaults to the configured one

    Raises:
        RejectedSequenceError: If classify_133 rejects h
        OverrideInconsistentError: If an override does not have the required
            Hilbert function, or is given for a sequence with h_3 <= 3
        VerificationError: If the constructed ideal fails a self-check
    """
    classification = _require_admissible(h)
    if domain is None:
        domain = dual_F.ring.domain if dual_F is not None else parse_field()
    trace = ConstructionTrace(h=h, classification=classification)

    if classification.verdict == Verdict.TYPE_I:
        if dual_F is not None or dual_G is not None:
            raise OverrideInconsistentError(
                f"{h} has h_3 <= 3 and is built in closed form; dual generator overrides do not apply"
            )
        trace.ideal = construct_h3le3(*classification.uvw, domain=domain)
    else:
        _construct_codim2_reduction(trace, dual_F, dual_G, domain)

    ideal = trace.ideal
    trace.verification.update({
        "hilbert_function": ideal.hilbert_function == h,
        "three_generators": ideal.minimal_generator_count == 3,
        "socle_dimension_one": ideal.quotient.socle_dimension == 1,
    })
    if not all(trace.verification.values()):
        logger.error("construction of %s failed: %s", h, trace.verification)
        raise VerificationError(f"constructed ideal for {h} failed verification: {trace.verification}")
    logger.info("constructed %s: %s", h, format_ideal(ideal.generators))
    return trace


def _construct_codim2_reduction(trace: ConstructionTrace, dual_F, dual_G, domain) -> None:
    h = trace.h
    peak = trace.classification.peak
    h_prime = h.with_entry(1, 2)
    h_double_prime = h_prime.with_entry(peak, h_prime[peak] - 1)
    trace.h_prime, trace.h_double_prime, trace.k = h_prime, h_double_prime, peak
    logger.debug("h' = %s, h'' = %s, k = %d", h_prime, h_double_prime, peak)

    if dual_F is not None:
        if apolar_hf(dual_F) != h_double_prime:
            raise OverrideInconsistentError(
                f"F = {format_poly(dual_F)} has apolar Hilbert function {apolar_hf(dual_F)}, "
                f"expected {h_double_prime}"
            )
        F = dual_F
    else:
        trace.power_sum = codim2_dual_from_h(h_double_prime, domain)
        F = trace.power_sum.dual
    trace.F = F

    if dual_G is not None:
        if not _admissible_G(F, dual_G, h_prime):
            raise OverrideInconsistentError(
                f"G = {format_poly(dual_G)} does not give Hilbert function {h_prime} with F"
            )
        G = dual_G
    else:
        G = find_G(F, h_prime, peak)
    trace.G = G

    G_prime, a2_prime = normalize_G(F, G)
    trace.G_prime = G_prime
    trace.syzygy = syzygy_data(F, G_prime, a2_prime)
    trace.ideal = assemble_ci(trace.syzygy)


def construct_ci(
    h: HSeq,
    dual_F: Optional[DualPoly] = None,
    dual_G: Optional[DualPoly] = None,
    domain=None,
) -> Ideal:
    """A verified complete intersection with Hilbert function h."""
    return trace_construction(h, dual_F, dual_G, domain).ideal
