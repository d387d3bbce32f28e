import random

import pytest
from sympy import Matrix

from apolarity.core.config import settings
from apolarity.core.exceptions import NotArtinianError
from apolarity.services.localring import (
    Ideal,
    grauert_divide,
    ideals_equal,
    linear_change_of_coordinates,
    section_with_S,
)
from apolarity.services.polyring import (
    MonomialOrder,
    divides,
    monomials_up_to,
    parse_ideal,
    truncate,
)
from apolarity.services.sequences import HSeq


class TestInvariants:
    def test_squares(self, ideal_of):
        ideal = ideal_of("x^2; y^2; z^2")
        assert ideal.truncation_bound == 4
        assert ideal.hilbert_function == HSeq((1, 3, 3, 1))
        assert ideal.colength == 8
        assert ideal.is_complete_intersection
        assert ideal.is_gorenstein

    def test_section_example(self, section_example):
        assert section_example.hilbert_function == HSeq((1, 3, 3, 4, 2, 1))
        assert section_example.minimal_generator_count == 4
        assert not section_example.is_gorenstein

    def test_redundant_generators_are_dropped(self, ideal_of):
        ideal = ideal_of("x^2; y^2; z^2; x^2 + y^2; xyz")
        assert ideal.minimal_generator_count == 3
        assert ideal.is_complete_intersection

    def test_truncation_bound_of_the_reduced_example(self, reduced_example):
        assert reduced_example.truncation_bound == 6

    def test_leading_term_ideal(self, section_example):
        assert set(section_example.leading_term_ideal) == {
            (1, 0, 1), (0, 1, 1), (0, 0, 2), (4, 0, 0), (1, 3, 0), (0, 4, 0),
        }

    def test_standard_basis_adds_leading_terms(self, S):
        ideal = Ideal(parse_ideal("x^2+y^2; xy+y^3", S))
        inputs = {ideal.order.leading_monomial(g) for g in ideal.generators}
        assert inputs == {(0, 2), (1, 1)}
        assert set(ideal.leading_term_ideal) == {(0, 2), (1, 1), (3, 0)}
        assert len(ideal.standard_basis) == 3

    def test_not_gorenstein(self, ideal_of):
        ideal = ideal_of("x^2; xy; y^2; z")
        assert ideal.hilbert_function == HSeq((1, 2))
        assert ideal.quotient.socle_dimension == 2
        assert not ideal.is_gorenstein

    def test_not_artinian(self, ideal_of, monkeypatch):
        monkeypatch.setattr(settings, "TRUNCATION_CEILING", 8)
        with pytest.raises(NotArtinianError):
            ideal_of("xy; z^2").truncation_bound

    def test_units_are_removed_by_the_local_ring(self, ideal_of):
        # 1 + x is a unit, so (x + x^2, y, z) = (x, y, z)
        ideal = ideal_of("x + x^2; y; z")
        assert ideal.hilbert_function == HSeq((1,))
        assert ideal.contains(ideal.ring.gens[0])


class TestMembership:
    def test_contains(self, reduced_example, poly):
        assert reduced_example.contains(poly("x^5"))
        assert reduced_example.contains(poly("xy^3"))
        assert not reduced_example.contains(poly("x^3"))

    def test_ideals_equal(self, ideal_of):
        assert ideals_equal(ideal_of("x^2; y^2; z^2"), ideal_of("x^2 + y^2; y^2; z^2"))
        assert not ideals_equal(ideal_of("x^2; y^2; z^2"), ideal_of("x^2; y^2; z^3"))

    def test_section_with_S(self, section_example, S):
        section = section_with_S(section_example)
        assert ideals_equal(section, Ideal(parse_ideal("x^4; xy^3; y^4", S)))
        assert section.minimal_generator_count == 3

    def test_section_of_the_reduced_example(self, reduced_example):
        assert section_with_S(reduced_example).hilbert_function == HSeq((1, 2, 3, 4, 2, 1))

    @pytest.mark.parametrize("text", [
        "xz; yz; z^2-y^3; x^4",
        "xz; yz+x^3; z^2+y^3",
        "xz; yz+x^4; z^2+y^3",
    ])
    def test_section_drops_only_the_linear_form_z(self, ideal_of, text):
        ideal = ideal_of(text)
        assert section_with_S(ideal).hilbert_function == ideal.hilbert_function.with_entry(1, 2)


class TestQuotient:
    def test_socle_filtration(self, ideal_of):
        quotient = ideal_of("x^2; y^2; z^2").quotient
        assert quotient.socle_degree == 3
        assert quotient.annihilator_power_dim(1, 0) == 1
        assert quotient.annihilator_power_dim(1, 3) == 1
        assert quotient.annihilator_power_dim(2, 2) == 4
        assert quotient.annihilator_power_dim(4, 0) == 8
        assert quotient.annihilator_power_dim(0, 0) == 0

    def test_multiplication_matrices_commute(self, reduced_example):
        quotient = reduced_example.quotient
        mx, my, mz = (quotient.multiplication_matrix(v) for v in range(3))
        assert (mx * my).to_Matrix() == (my * mx).to_Matrix()
        assert (mx * mz).to_Matrix() == (mz * mx).to_Matrix()

    def test_normal_form_round_trip(self, reduced_example, poly):
        quotient = reduced_example.quotient
        f = poly("yz + x^2")
        assert reduced_example.contains(f - quotient.to_poly(quotient.normal_form(f)))


class TestChangeOfCoordinates:
    def test_swap(self, poly):
        swapped = linear_change_of_coordinates([poly("x^2 + yz")], [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
        assert swapped == [poly("y^2 + xz")]

    def test_shear_preserves_the_hilbert_function(self, reduced_example):
        sheared = Ideal(linear_change_of_coordinates(
            reduced_example.generators, [[1, 0, 0], [0, 1, 0], [1, 0, 1]]
        ))
        assert sheared.hilbert_function == reduced_example.hilbert_function
        assert sheared.is_complete_intersection


@pytest.mark.property
def test_grauert_division_contract(R):
    rng = random.Random(7)
    order = MonomialOrder.default(3)
    monomials = monomials_up_to(3, 4)
    bound = 5

    def random_poly(low, terms):
        candidates = [m for m in monomials if sum(m) >= low]
        return R.from_dict({rng.choice(candidates): R.domain.convert(rng.randint(-4, 4)) for _ in range(terms)})

    checked = 0
    while checked < 200:
        f = random_poly(0, 5)
        divisors = [d for d in (random_poly(1, 3) for _ in range(rng.randint(1, 3))) if d]
        if not f or not divisors:
            continue
        quotients, remainder = grauert_divide(f, divisors, order, bound)
        recombined = remainder + sum((q * d for q, d in zip(quotients, divisors)), R.zero)
        assert truncate(f - recombined, bound) == R.zero
        heads = [order.leading_monomial(d) for d in divisors]
        assert not any(divides(h, m) for h in heads for m in remainder)
        checked += 1


def _macaulay_member(ideal, f):
    """f ∈ I + m^N by rank of the matrix of truncated monomial multiples."""
    ring = f.ring
    keep = ideal.truncation_bound - 1
    columns = monomials_up_to(3, keep)
    multipliers = [ring.from_dict({m: ring.domain.one}) for m in columns]

    def row(p):
        p = truncate(p, keep)
        return [ring.domain.to_sympy(p[m]) if m in p else 0 for m in columns]

    rows = [row(g * u) for g in ideal.generators for u in multipliers]
    span = Matrix(rows)
    return span.rank() == Matrix(rows + [row(f)]).rank()


@pytest.mark.property
def test_membership_agrees_with_linear_algebra(reduced_example, R):
    rng = random.Random(13)
    monomials = monomials_up_to(3, 2)
    for _ in range(8):
        f = R.zero
        for g in reduced_example.generators:
            f += g * R.from_dict({rng.choice(monomials): R.domain.convert(rng.randint(-2, 2))})
        if rng.random() < 0.5:
            f += R.from_dict({rng.choice(monomials_up_to(3, 3)): R.domain.one})
        assert reduced_example.contains(f) == _macaulay_member(reduced_example, f)
