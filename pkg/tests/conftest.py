"""
Shared fixtures: rings over the rationals and the ideals used across suites.
"""
import pytest
from sympy.polys.domains import QQ

from apolarity.services.localring import Ideal
from apolarity.services.polyring import dual_ring, parse_ideal, parse_poly, polynomial_ring


@pytest.fixture
def R():
    return polynomial_ring(3, QQ)


@pytest.fixture
def S():
    return polynomial_ring(2, QQ)


@pytest.fixture
def D2():
    return dual_ring(2, QQ)


@pytest.fixture
def D3():
    return dual_ring(3, QQ)


@pytest.fixture
def poly(R):
    """parse_poly into R."""
    return lambda text: parse_poly(text, R)


@pytest.fixture
def ideal_of(R):
    """Ideal of K[[x,y,z]] from semicolon-separated text."""
    return lambda text: Ideal(parse_ideal(text, R))


@pytest.fixture
def section_example(ideal_of):
    """(xz, yz, z² - y³, x⁴): HF (1,3,3,4,2,1), not Gorenstein."""
    return ideal_of("xz; yz; z^2-y^3; x^4")


@pytest.fixture
def reduced_example(ideal_of):
    """(xz, yz + x³, z² + y³): the CI built for (1,3,3,4,2,1)."""
    return ideal_of("xz; yz+x^3; z^2+y^3")
