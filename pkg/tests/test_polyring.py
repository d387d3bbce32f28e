import math

import pytest
from sympy.polys.domains import GF

from apolarity.core.exceptions import PolynomialSyntaxError, UnknownVariableError, ZeroPolynomialError
from apolarity.services.polyring import (
    MonomialOrder,
    change_ring,
    degree_of,
    format_ideal,
    format_poly,
    initial_form,
    leading_monomial_local,
    monomials_of_degree,
    order_of,
    parse_ideal,
    parse_poly,
    polynomial_ring,
    truncate,
)


class TestLocalOrder:
    def test_degree_two_monomials_in_decreasing_order(self):
        order = MonomialOrder.default(3)
        assert order.sort_local(monomials_of_degree(3, 2)) == [
            (0, 0, 2), (0, 1, 1), (0, 2, 0), (1, 0, 1), (1, 1, 0), (2, 0, 0),
        ]

    def test_lower_degree_is_larger(self, poly):
        assert leading_monomial_local(poly("y^2 + x")) == (1, 0, 0)
        assert leading_monomial_local(poly("x^5 + z^2 + y^3")) == (0, 0, 2)

    def test_both_spellings_of_the_precedence_agree(self):
        names = ("x", "y", "z")
        assert MonomialOrder.from_precedence("x<y<z", names) == MonomialOrder.default(3)
        assert MonomialOrder.from_precedence("z>y>x", names) == MonomialOrder.default(3)
        assert MonomialOrder.from_precedence("x>y>z", names).describe(names) == "x>y>z"

    def test_precedence_must_name_every_variable(self):
        with pytest.raises(ValueError):
            MonomialOrder.from_precedence("z>y", ("x", "y", "z"))

    def test_zero_has_no_leading_monomial(self, R):
        with pytest.raises(ZeroPolynomialError):
            MonomialOrder.default(3).leading_monomial(R.zero)


class TestPrinting:
    @pytest.mark.parametrize("text, expected", [
        ("yz+x^3", "yz + x^3"),
        ("x^3 + z^2", "z^2 + x^3"),
        ("2*xz", "2*xz"),
        ("x^2*y", "x^2y"),
        ("1/2*x - y^2", "1/2*x - y^2"),
        ("-x^2", "-x^2"),
        ("3 + x", "3 + x"),
        ("x - x", "0"),
    ])
    def test_ring_polynomials(self, R, text, expected):
        assert format_poly(parse_poly(text, R)) == expected

    def test_dual_polynomials_print_top_degree_first(self, D2):
        assert format_poly(parse_poly("Y^3 + X^3*Y^2", D2)) == "X^3Y^2 + Y^3"

    def test_unicode_minus(self, R):
        assert format_poly(parse_poly("z^2 − y^3", R)) == "z^2 - y^3"

    def test_ideal_round_trip(self, R):
        generators = parse_ideal("xz; yz + x^3; z^2 + y^3", R)
        assert format_ideal(generators) == "xz; yz + x^3; z^2 + y^3"
        assert parse_ideal(format_ideal(generators), R) == generators

    def test_finite_field_residues(self):
        F7 = polynomial_ring(3, GF(7, symmetric=False))
        assert format_poly(parse_poly("x - 1/2*y", F7)) == "3*y + x"


class TestParsing:
    def test_syntax_error_position(self, R):
        with pytest.raises(PolynomialSyntaxError) as excinfo:
            parse_poly("x+*y", R)
        assert excinfo.value.position == 2

    def test_unknown_variable(self, R, S):
        with pytest.raises(UnknownVariableError):
            parse_poly("w", R)
        with pytest.raises(UnknownVariableError):
            parse_poly("x*z", S)

    def test_empty_ideal_text(self, R):
        with pytest.raises(PolynomialSyntaxError):
            parse_ideal(" ; ", R)


class TestHelpers:
    def test_order_and_degree(self, poly, R):
        f = poly("x^2 + y^3z")
        assert order_of(f) == 2
        assert degree_of(f) == 4
        assert order_of(R.zero) == math.inf

    def test_initial_form(self, poly):
        assert initial_form(poly("xz + x^3 + y^2")) == poly("xz + y^2")

    def test_truncate(self, poly):
        assert truncate(poly("x + y^2 + z^3"), 2) == poly("x + y^2")

    def test_change_ring(self, poly, S):
        assert change_ring(poly("x^2 + y"), S) == parse_poly("x^2 + y", S)
        with pytest.raises(ValueError):
            change_ring(poly("xz"), S)
