import pytest

from apolarity.core.exceptions import NotGorensteinError, PreconditionError, RejectedSequenceError
from apolarity.services.apolar import annihilator
from apolarity.services.construct import h3le3_dual_generator
from apolarity.services.polyring import parse_poly
from apolarity.services.sequences import HSeq, Verdict
from apolarity.services.symdec import (
    SymDecomp,
    check_q0,
    codim2_unique_decomposition,
    partial_sums_are_o_sequences,
    predict,
    predicted_type1334,
    predicted_typeI,
    symmetric_decomposition,
    witness_dual,
)


class TestSymmetricDecomposition:
    def test_graded_complete_intersection(self, ideal_of):
        assert symmetric_decomposition(ideal_of("x^2; y^2; z^2")).as_dict() == {0: [1, 3, 3, 1]}

    @pytest.mark.parametrize("uvw, expected", [
        ((0, 1, 0), {0: [1, 2, 2, 2, 1], 1: [0, 1, 1]}),
        ((0, 0, 1), {0: [1, 1, 1, 1, 1], 1: [0, 2, 2]}),
        ((1, 0, 0), {0: [1, 3, 3, 3, 1]}),
    ])
    def test_complete_intersections_of_the_h3_family(self, uvw, expected):
        ideal = annihilator([h3le3_dual_generator(*uvw)])
        decomposition = symmetric_decomposition(ideal)
        assert decomposition.as_dict() == expected
        assert decomposition == predicted_typeI(*uvw)[0]

    def test_quadric_tail_is_not_ci(self, D3):
        ideal = annihilator([parse_poly("X^2*Y^2 + Z^2", D3)])
        decomposition = symmetric_decomposition(ideal)
        assert decomposition.as_dict() == {0: [1, 2, 3, 2, 1], 2: [0, 1]}
        assert not ideal.is_complete_intersection
        assert predict(ideal.hilbert_function).match(decomposition) == "not_ci_realizable"

    def test_matches_prediction(self, ideal_of):
        ideal = ideal_of("xz; yz+x^4; z^2+y^3")
        decomposition = symmetric_decomposition(ideal)
        assert decomposition.is_symmetric()
        assert decomposition.total() == HSeq((1, 3, 3, 4, 3, 2, 1))
        assert predict(ideal.hilbert_function).match(decomposition) == "complete_intersection"

    def test_plane_curve_singularity(self, D2):
        ideal = annihilator([parse_poly("X^3 + Y^2", D2)])
        assert symmetric_decomposition(ideal) == codim2_unique_decomposition(HSeq((1, 2, 1, 1)))

    def test_requires_gorenstein(self, section_example):
        with pytest.raises(NotGorensteinError):
            symmetric_decomposition(section_example)


class TestSymDecomp:
    def test_rows_with_equal_shift_are_merged(self):
        decomposition = SymDecomp.from_rows(3, [(0, [1, 1, 1, 1]), (0, [0, 1, 1]), (2, [0, 0])])
        assert decomposition.rows == ((0, (1, 2, 2, 1)),)
        assert decomposition.shifts == [0]
        assert decomposition.row(1) == ()

    def test_asymmetric_row(self):
        assert not SymDecomp.from_rows(3, [(0, [1, 2])]).is_symmetric()


class TestCodimTwo:
    def test_nested_blocks(self):
        decomposition = codim2_unique_decomposition(HSeq((1, 2, 1, 1)))
        assert decomposition.rows == ((0, (1, 1, 1, 1)), (1, (0, 1)))

    def test_power_sums_stay_at_shift_zero(self):
        assert codim2_unique_decomposition(HSeq((1, 2, 3, 2, 1))).as_dict() == {0: [1, 2, 3, 2, 1]}

    def test_rejects_other_sequences(self):
        with pytest.raises(PreconditionError):
            codim2_unique_decomposition(HSeq((1, 2, 3, 1)))


class TestPredictions:
    def test_trivial_type_one_has_no_second(self):
        first, second = predicted_typeI(0, 0, 0)
        assert first.as_dict() == {0: [1, 3, 3, 1]}
        assert second is None

    def test_type_one_second_decomposition(self):
        _, second = predicted_typeI(0, 1, 0)
        assert second.as_dict() == {0: [1, 2, 3, 2, 1], 2: [0, 1]}

    def test_type_two(self):
        primary, secondary = predicted_type1334(HSeq((1, 3, 3, 4, 3, 2, 1)))
        assert primary.as_dict() == {0: [1, 2, 3, 3, 3, 2, 1], 2: [0, 1, 0, 1]}
        assert secondary.as_dict() == {0: [1, 2, 3, 4, 3, 2, 1], 4: [0, 1]}

    def test_type_three_has_one_decomposition(self):
        primary, secondary = predicted_type1334(HSeq((1, 3, 3, 4, 2, 1)))
        assert primary.as_dict() == {0: [1, 2, 3, 3, 2, 1], 1: [0, 1, 0, 1]}
        assert secondary is None

    def test_type_one_is_rejected_by_the_h3_four_rule(self):
        with pytest.raises(RejectedSequenceError):
            predicted_type1334(HSeq((1, 3, 3, 2, 1)))

    def test_predict(self):
        prediction = predict(HSeq((1, 3, 3, 4, 3, 2, 1)))
        assert prediction.verdict == Verdict.TYPE_II
        assert prediction.match(SymDecomp.from_rows(6, [(0, [1, 3, 3, 4, 3, 2, 1])])) == "none"
        assert predict(HSeq((1, 3, 3, 4, 3, 1))) is None


class TestChecks:
    def test_q0_is_the_top_form(self, reduced_example, ideal_of):
        assert check_q0(reduced_example)
        assert check_q0(ideal_of("xz; yz+x^4; z^2+y^3"))

    def test_partial_sums(self):
        good = SymDecomp.from_rows(6, [(0, [1, 2, 3, 3, 3, 2, 1]), (2, [0, 1, 0, 1])])
        assert partial_sums_are_o_sequences(good)
        assert not partial_sums_are_o_sequences(SymDecomp.from_rows(3, [(0, [1, 0, 0, 1])]))


class TestWitness:
    @pytest.mark.parametrize("h", [(1, 3, 3, 2, 1), (1, 3, 3, 4, 3, 2, 1)])
    def test_realizes_the_other_decomposition(self, h):
        h = HSeq(h)
        ideal = annihilator([witness_dual(h)])
        assert ideal.hilbert_function == h
        assert ideal.is_gorenstein
        assert not ideal.is_complete_intersection
        assert symmetric_decomposition(ideal) == predict(h).other

    def test_type_three_has_no_witness(self):
        with pytest.raises(PreconditionError):
            witness_dual(HSeq((1, 3, 3, 4, 2, 1)))
