"""
Polynomial Ring Module

局部环 R = K[[x,y,z]]、S = K[[x,y]] 中的多项式（以有限截断表示），
以及对偶环 K_DP[X,Y,Z]、K_DP[X,Y] 中的对偶多项式。

主要功能：
- 环与对偶环的构造（基于 sympy PolyRing，按域缓存）
- 单项式序：度逆字典序 τ 与局部序 τ̄（先比较次数，次数小者大）
- 阶、初始形式、局部首项、截断
- 多项式文本的解析与规范化打印
"""
import logging
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.orderings import grevlex
from sympy.polys.rings import PolyElement, PolyRing

from apolarity.core.exceptions import (
    PolynomialSyntaxError,
    UnknownVariableError,
    ZeroPolynomialError,
)
from apolarity.services.exactla import format_scalar

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]
Poly = PolyElement
DualPoly = PolyElement

RING_NAMES = {2: ("x", "y"), 3: ("x", "y", "z")}
DUAL_NAMES = {2: ("X", "Y"), 3: ("X", "Y", "Z")}


@lru_cache(maxsize=None)
def polynomial_ring(nvars: int, domain) -> PolyRing:
    """R (nvars = 3) or S (nvars = 2) over the given field."""
    return PolyRing(",".join(RING_NAMES[nvars]), domain, grevlex)


@lru_cache(maxsize=None)
def dual_ring(nvars: int, domain) -> PolyRing:
    """The dual space K_DP[X,Y(,Z)], used only through contraction."""
    return PolyRing(",".join(DUAL_NAMES[nvars]), domain, grevlex)


def is_dual_ring(ring: PolyRing) -> bool:
    return str(ring.symbols[0]).isupper()


def variable_names(ring: PolyRing) -> Tuple[str, ...]:
    return tuple(str(s) for s in ring.symbols)


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, degree: int) -> Tuple[Monomial, ...]:
    result = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exponents = [0] * nvars
        for index in combo:
            exponents[index] += 1
        result.append(tuple(exponents))
    return tuple(result)


def monomials_up_to(nvars: int, degree: int) -> List[Monomial]:
    result: List[Monomial] = []
    for d in range(degree + 1):
        result.extend(monomials_of_degree(nvars, d))
    return result


def monomial_degree(monom: Monomial) -> int:
    return sum(monom)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_quotient(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def monomial_product(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


@lru_cache(maxsize=None)
def _tau_key(precedence: Tuple[int, ...], monom: Monomial) -> Tuple[int, ...]:
    degree, tail = grevlex(tuple(monom[i] for i in precedence))
    return (degree,) + tail


@lru_cache(maxsize=None)
def _local_key(precedence: Tuple[int, ...], monom: Monomial) -> Tuple[int, ...]:
    degree, tail = grevlex(tuple(monom[i] for i in precedence))
    return (-degree,) + tail


@dataclass(frozen=True)
class MonomialOrder:
    """
    Degree-reverse-lexicographic τ with a declared variable precedence, and
    the local order τ̄ derived from it.

    precedence lists variable indices from the largest variable to the
    smallest; the default for three variables is z > y > x, i.e. (2, 1, 0).
    """

    precedence: Tuple[int, ...]

    @classmethod
    def default(cls, nvars: int) -> "MonomialOrder":
        return cls(tuple(reversed(range(nvars))))

    @classmethod
    def from_precedence(cls, text: str, names: Sequence[str]) -> "MonomialOrder":
        """
        Parse "z>y>x" or the equivalent "x<y<z".

        Raises:
            ValueError: If the text does not name every variable exactly once
        """
        cleaned = text.replace(" ", "")
        if "<" in cleaned:
            chain = list(reversed(cleaned.split("<")))
        else:
            chain = cleaned.split(">")
        if sorted(chain) != sorted(names):
            raise ValueError(f"Precedence {text!r} must order exactly the variables {names}")
        return cls(tuple(list(names).index(name) for name in chain))

    def tau_key(self, monom: Monomial) -> Tuple[int, ...]:
        return _tau_key(self.precedence, tuple(monom))

    def local_key(self, monom: Monomial) -> Tuple[int, ...]:
        """Sort key for τ̄: smaller degree is larger, ties broken by τ."""
        return _local_key(self.precedence, tuple(monom))

    def dual_key(self, monom: Monomial) -> Tuple[int, ...]:
        """Key used to print dual polynomials: higher degree first."""
        return self.tau_key(monom)

    def sort_local(self, monomials: Iterable[Monomial]) -> List[Monomial]:
        """Monomials in decreasing τ̄ order."""
        return sorted(monomials, key=self.local_key, reverse=True)

    def leading_monomial(self, f: Poly) -> Monomial:
        if not f:
            raise ZeroPolynomialError("Leading monomial of the zero polynomial")
        return max(f.keys(), key=self.local_key)

    def leading_term(self, f: Poly) -> Tuple[Monomial, object]:
        monom = self.leading_monomial(f)
        return monom, f[monom]

    def describe(self, names: Sequence[str]) -> str:
        return ">".join(names[i] for i in self.precedence)


def order_of(f: Poly):
    """Lowest degree in the support; math.inf for the zero polynomial."""
    if not f:
        return math.inf
    return min(sum(m) for m in f)


def degree_of(F: DualPoly):
    """Highest degree in the support; -math.inf for zero."""
    if not F:
        return -math.inf
    return max(sum(m) for m in F)


def homogeneous_component(f: Poly, degree: int) -> Poly:
    return f.new([(m, c) for m, c in f.items() if sum(m) == degree])


def initial_form(f: Poly) -> Poly:
    """
    Lowest-degree homogeneous component of f.

    Raises:
        ZeroPolynomialError: If f is zero
    """
    if not f:
        raise ZeroPolynomialError("Initial form of the zero polynomial")
    return homogeneous_component(f, order_of(f))


def leading_monomial_local(f: Poly, order: Optional[MonomialOrder] = None) -> Monomial:
    """τ̄-leading monomial of f, which is the τ-leading monomial of initial_form(f)."""
    order = order or MonomialOrder.default(f.ring.ngens)
    return order.leading_monomial(f)


def truncate(f: Poly, bound: int) -> Poly:
    """Drop every term of degree > bound."""
    return f.new([(m, c) for m, c in f.items() if sum(m) <= bound])


def change_ring(f: Poly, ring: PolyRing) -> Poly:
    """
    Move f into a ring with more or fewer variables, padding or dropping
    trailing exponents.

    Raises:
        ValueError: If a dropped variable occurs in f
    """
    n = ring.ngens
    terms = {}
    for monom, coeff in f.items():
        if any(monom[n:]):
            raise ValueError(f"Cannot move {format_poly(f)} into a ring with {n} variables")
        terms[tuple(monom[:n]) + (0,) * (n - len(monom))] = coeff
    return ring.from_dict(terms) if terms else ring.zero


def substitute_linear(f: Poly, images: Sequence[Poly]) -> Poly:
    """Replace the i-th variable by images[i] (all in the same ring)."""
    ring = images[0].ring
    result = ring.zero
    powers: Dict[Tuple[int, int], Poly] = {}

    def power(index: int, exponent: int) -> Poly:
        key = (index, exponent)
        if key not in powers:
            powers[key] = images[index] ** exponent if exponent else ring.one
        return powers[key]

    for monom, coeff in f.items():
        term = ring.one.mul_ground(coeff)
        for index, exponent in enumerate(monom):
            if exponent:
                term = term * power(index, exponent)
        result += term
    return result


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

def _format_monomial(monom: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, exponent in zip(names, monom):
        if exponent == 1:
            parts.append(name)
        elif exponent > 1:
            parts.append(f"{name}^{exponent}")
    return "".join(parts)


def _is_negative(domain, coeff) -> bool:
    return not domain.is_FiniteField and domain.numer(coeff) < 0


def format_poly(f: Poly, order: Optional[MonomialOrder] = None) -> str:
    """
    Canonical text of a ring or dual polynomial.

    Ring polynomials list monomials in decreasing τ̄ order; dual polynomials
    list them by decreasing degree, then decreasing τ.
    """
    if not f:
        return "0"
    ring = f.ring
    domain = ring.domain
    order = order or MonomialOrder.default(ring.ngens)
    names = variable_names(ring)
    key = order.dual_key if is_dual_ring(ring) else order.local_key

    pieces: List[str] = []
    for index, monom in enumerate(sorted(f.keys(), key=key, reverse=True)):
        coeff = f[monom]
        negative = _is_negative(domain, coeff)
        magnitude = -coeff if negative else coeff
        monomial_text = _format_monomial(monom, names)
        scalar_text = format_scalar(domain, magnitude)
        if not monomial_text:
            body = scalar_text
        elif scalar_text == "1":
            body = monomial_text
        else:
            body = f"{scalar_text}*{monomial_text}"
        if index == 0:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)


def format_ideal(generators: Sequence[Poly], order: Optional[MonomialOrder] = None) -> str:
    return "; ".join(format_poly(g, order) for g in generators)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_MINUS_SIGNS = {"-", "−"}


class _PolynomialParser:
    """Recursive-descent reader for the polynomial grammar."""

    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.domain = ring.domain
        self.names = variable_names(ring)
        self.pos = 0

    def _peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _skip_spaces(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _error(self, message: str) -> PolynomialSyntaxError:
        return PolynomialSyntaxError(message, self.pos, self.text)

    def _integer(self) -> int:
        match = re.compile(r"\d+").match(self.text, self.pos)
        if not match:
            raise self._error("expected integer")
        self.pos = match.end()
        return int(match.group())

    def parse(self) -> Poly:
        self._skip_spaces()
        if not self._peek():
            raise self._error("empty polynomial")
        result = self.ring.zero
        negative = False
        if self._peek() in _MINUS_SIGNS or self._peek() == "+":
            negative = self._peek() in _MINUS_SIGNS
            self.pos += 1
        while True:
            term = self._term()
            result = result - term if negative else result + term
            self._skip_spaces()
            ch = self._peek()
            if not ch:
                return result
            if ch == "+" or ch in _MINUS_SIGNS:
                negative = ch in _MINUS_SIGNS
                self.pos += 1
                continue
            raise self._error(f"unexpected character {ch!r}")

    def _coefficient(self):
        numerator = self._integer()
        self._skip_spaces()
        if self._peek() != "/":
            return self.domain.convert(numerator)
        self.pos += 1
        self._skip_spaces()
        denominator = self._integer()
        denominator_value = self.domain.convert(denominator)
        if not denominator_value:
            raise self._error("denominator vanishes in the coefficient field")
        return self.domain.quo(self.domain.convert(numerator), denominator_value)

    def _term(self) -> Poly:
        self._skip_spaces()
        coeff = None
        if self._peek().isdigit():
            coeff = self._coefficient()
            self._skip_spaces()
            if self._peek() == "*":
                self.pos += 1
                self._skip_spaces()
                if not self._peek().isalpha():
                    raise self._error("expected variable after '*'")

        exponents = [0] * self.ring.ngens
        has_monomial = False
        while self._peek().isalpha():
            name = self._peek()
            if name not in self.names:
                raise UnknownVariableError(name, self.pos)
            self.pos += 1
            self._skip_spaces()
            exponent = 1
            if self._peek() == "^":
                self.pos += 1
                self._skip_spaces()
                exponent = self._integer()
            exponents[self.names.index(name)] += exponent
            has_monomial = True
            self._skip_spaces()
            if self._peek() == "*":
                self.pos += 1
                self._skip_spaces()
                if not self._peek().isalpha():
                    raise self._error("expected variable after '*'")

        if coeff is None and not has_monomial:
            raise self._error("expected term")
        if coeff is None:
            coeff = self.domain.one
        if not coeff:
            return self.ring.zero
        return self.ring.from_dict({tuple(exponents): coeff})


def parse_poly(text: str, ring: PolyRing) -> Poly:
    """
    Parse polynomial text into the given ring or dual ring.

    Raises:
        PolynomialSyntaxError: Grammar violation (with 0-based position)
        UnknownVariableError: A variable the ring does not have
    """
    return _PolynomialParser(text, ring).parse()


def parse_ideal(text: str, ring: PolyRing) -> List[Poly]:
    """Semicolon-separated generator list."""
    parts = [part for part in text.split(";") if part.strip()]
    if not parts:
        raise PolynomialSyntaxError("empty generator list", 0, text)
    return [parse_poly(part, ring) for part in parts]
