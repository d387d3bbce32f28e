import random

import pytest

from apolarity.core.exceptions import ArityMismatchError
from apolarity.services.dualspace import (
    assemble_slices,
    contract,
    dual_slices,
    solve_contraction,
    submodule_graded_dims,
)
from apolarity.services.polyring import monomials_up_to, parse_poly
from apolarity.services.sequences import HSeq


def _random_poly(rng, ring, degree, terms):
    monomials = monomials_up_to(ring.ngens, degree)
    return ring.from_dict({rng.choice(monomials): ring.domain.convert(rng.randint(-3, 3)) for _ in range(terms)})


class TestContraction:
    def test_exponent_shift_without_binomials(self, R, D3):
        F = parse_poly("X^3*Y^2", D3)
        assert contract(parse_poly("x", R), F) == parse_poly("X^2*Y^2", D3)
        assert contract(parse_poly("x^2*y", R), F) == parse_poly("X*Y", D3)
        assert contract(parse_poly("x^4", R), F) == D3.zero
        assert contract(parse_poly("x^3*y^2", R), F) == D3.one

    def test_bilinear(self, R, D3):
        F = parse_poly("X^2 + 2*Y*Z", D3)
        assert contract(parse_poly("x + 3*z", R), F) == parse_poly("X + 6*Y", D3)

    def test_arity_mismatch(self, S, D3):
        with pytest.raises(ArityMismatchError):
            contract(parse_poly("x", S), parse_poly("X", D3))

    @pytest.mark.property
    def test_module_axiom(self, R, D3):
        rng = random.Random(20240601)
        for _ in range(200):
            f = _random_poly(rng, R, 2, 3)
            g = _random_poly(rng, R, 2, 3)
            F = _random_poly(rng, D3, 5, 6)
            assert contract(f * g, F) == contract(f, contract(g, F))


class TestSlices:
    def test_split_by_powers_of_Z(self, D2, D3):
        T = parse_poly("X^2*Y + Z*X + Z^3", D3)
        slices = dual_slices(T)
        assert slices == [parse_poly("X^2*Y", D2), parse_poly("X", D2), D2.zero, D2.one]
        assert assemble_slices(slices) == T


class TestSubmodule:
    def test_graded_dimensions_of_a_monomial(self, D2):
        assert submodule_graded_dims([parse_poly("X^3*Y^2", D2)]) == HSeq((1, 2, 3, 3, 2, 1))

    def test_pair_of_generators(self, D2):
        gens = [parse_poly("X^3*Y^2", D2), parse_poly("Y^3", D2)]
        assert submodule_graded_dims(gens) == HSeq((1, 2, 3, 4, 2, 1))

    def test_solve_contraction(self, S, D2):
        F = parse_poly("X^3*Y^2", D2)
        sigma = solve_contraction(F, parse_poly("Y^2", D2), 5, mindeg=2)
        assert sigma == parse_poly("x^3", S)
        assert contract(sigma, F) == parse_poly("Y^2", D2)

    def test_unreachable_target(self, D2):
        F = parse_poly("X^3*Y^2", D2)
        assert solve_contraction(F, parse_poly("Y^3", D2), 5) is None
        assert solve_contraction(F, parse_poly("X^3*Y^2", D2), 5, mindeg=1) is None
