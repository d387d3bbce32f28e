import random

import pytest
from sympy import Matrix
from sympy.polys.domains import GF, QQ

from apolarity.core.exceptions import FieldConfigurationError
from apolarity.services.exactla import (
    EchelonBasis,
    field_descriptor,
    format_scalar,
    intersection_dimension,
    kernel_basis,
    make_matrix,
    parse_field,
    rank,
    rref,
    solve_linear,
)


def _apply(matrix, vector):
    domain = matrix.domain
    return [sum((a * b for a, b in zip(row, vector)), domain.zero) for row in matrix.to_list()]


class TestFields:
    def test_rationals(self):
        assert parse_field("q") == QQ
        assert field_descriptor(QQ) == "q"

    def test_odd_prime(self):
        domain = parse_field("fp:7")
        assert domain.mod == 7
        assert field_descriptor(domain) == "fp:7"

    @pytest.mark.parametrize("descriptor", ["fp:2", "fp:9", "fp:x", "r", "fp:1"])
    def test_rejected_descriptors(self, descriptor):
        with pytest.raises(FieldConfigurationError):
            parse_field(descriptor)

    def test_scalar_text(self):
        assert format_scalar(QQ, QQ(2, 4)) == "1/2"
        assert format_scalar(QQ, QQ(-3)) == "-3"
        domain = GF(7, symmetric=False)
        assert format_scalar(domain, domain.convert(-1)) == "6"


class TestMatrices:
    @pytest.mark.parametrize("rows, expected, pivots", [
        ([[1, 2], [2, 4]], [[1, 2], [0, 0]], [0]),
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, 0], [0, 0, 1]], [0, 1, 2]),
        ([[0, 1], [1, 0]], [[1, 0], [0, 1]], [0, 1]),
    ])
    def test_rref(self, rows, expected, pivots):
        reduced, found = rref(make_matrix(rows, QQ))
        assert reduced.to_Matrix() == Matrix(expected)
        assert found == pivots

    def test_kernel_of_zero_matrix(self):
        assert len(kernel_basis(make_matrix([[0, 0, 0], [0, 0, 0]], QQ))) == 3

    def test_kernel_of_one_relation(self):
        assert kernel_basis(make_matrix([[1, 1]], QQ)) == [[QQ(-1), QQ(1)]]

    def test_kernel_of_rank_one_matrix(self):
        matrix = make_matrix([[1, 2, 3], [2, 4, 6]], QQ)
        kernel = kernel_basis(matrix)
        assert rank(matrix) == 1
        assert len(kernel) == 2
        for vector in kernel:
            assert _apply(matrix, vector) == [0, 0]

    def test_full_rank_has_trivial_kernel(self):
        assert kernel_basis(make_matrix([[1, 0], [0, 1]], QQ)) == []

    def test_kernel_over_finite_field(self):
        domain = GF(5, symmetric=False)
        matrix = make_matrix([[1, 1, 0], [0, 1, 4]], domain)
        kernel = kernel_basis(matrix)
        assert len(kernel) == 1
        assert not any(_apply(matrix, kernel[0]))

    def test_solve_consistent(self):
        matrix = make_matrix([[1, 1], [1, -1]], QQ)
        assert solve_linear(matrix, [3, 1]) == [QQ(2), QQ(1)]

    def test_solve_inconsistent(self):
        matrix = make_matrix([[1, 1], [2, 2]], QQ)
        assert solve_linear(matrix, [1, 3]) is None


class TestEchelonBasis:
    def test_add_reports_independence(self):
        basis = EchelonBasis(QQ)
        assert basis.add({0: QQ(1), 1: QQ(1)})
        assert basis.add({1: QQ(1)})
        assert not basis.add({0: QQ(2), 1: QQ(5)})
        assert basis.rank == 2
        assert basis.pivots == [0, 1]

    def test_rows_are_reduced(self):
        basis = EchelonBasis(QQ)
        basis.add({0: QQ(2), 1: QQ(4)})
        basis.add({1: QQ(1), 2: QQ(1)})
        assert basis.row(0) == {0: QQ(1), 2: QQ(-2)}
        assert basis.contains({0: QQ(1), 2: QQ(-2)})
        assert not basis.contains({2: QQ(1)})

    def test_intersection_dimension(self):
        first = [{0: QQ(1)}, {1: QQ(1)}]
        second = [{1: QQ(1)}, {2: QQ(1)}]
        assert intersection_dimension(first, second, QQ) == 1


def _random_matrix(rng):
    nrows, ncols = rng.randint(1, 4), rng.randint(1, 5)
    return [[rng.randint(-3, 3) for _ in range(ncols)] for _ in range(nrows)]


def _residues(matrix, p):
    """Entries of a rational matrix reduced mod p, or None if a denominator vanishes mod p."""
    result = []
    for row in matrix.to_list():
        residues = []
        for entry in row:
            numer, denom = int(QQ.numer(entry)), int(QQ.denom(entry))
            if denom % p == 0:
                return None
            residues.append(numer * pow(denom, -1, p) % p)
        result.append(residues)
    return result


@pytest.mark.property
class TestMatrixProperties:
    def test_rref_is_idempotent(self):
        rng = random.Random(3)
        for _ in range(200):
            reduced, pivots = rref(make_matrix(_random_matrix(rng), QQ))
            again, again_pivots = rref(reduced)
            assert again.to_Matrix() == reduced.to_Matrix()
            assert again_pivots == pivots

    def test_rank_nullity(self):
        rng = random.Random(17)
        for _ in range(200):
            matrix = make_matrix(_random_matrix(rng), QQ)
            kernel = kernel_basis(matrix)
            assert rank(matrix) + len(kernel) == matrix.shape[1]
            for vector in kernel:
                assert not any(_apply(matrix, vector))

    def test_prime_field_agrees_with_rationals(self):
        p = 7
        domain = GF(p, symmetric=False)
        rng = random.Random(23)
        compared = 0
        for _ in range(200):
            rows = _random_matrix(rng)
            rational, rational_pivots = rref(make_matrix(rows, QQ))
            modular, modular_pivots = rref(make_matrix(rows, domain))
            assert len(modular_pivots) <= len(rational_pivots)
            expected = _residues(rational, p)
            if expected is None or len(modular_pivots) != len(rational_pivots):
                continue
            assert [[domain.to_int(e) for e in row] for row in modular.to_list()] == expected
            assert modular_pivots == rational_pivots
            compared += 1
        assert compared > 50
