from itertools import combinations_with_replacement

import pytest

from apolarity.core.exceptions import SequenceSyntaxError
from apolarity.services.sequences import (
    HSeq,
    Verdict,
    classify_133,
    codim2_gorenstein_check,
    enumerate_133_o_sequences,
    is_o_sequence,
    macaulay_bound,
)


def lex_segment_bound(c: int, i: int) -> int:
    """
    dim (P/L)_{i+1} for the ideal L generated by all but the c lex-smallest
    degree-i monomials, enough variables for c monomials to exist.
    """
    nvars = 1
    while len(list(combinations_with_replacement(range(nvars), i))) < c:
        nvars += 1
    nvars += 1

    def monomials(degree):
        result = []
        for combo in combinations_with_replacement(range(nvars), degree):
            exponents = [0] * nvars
            for index in combo:
                exponents[index] += 1
            result.append(tuple(exponents))
        return result

    complement = set(sorted(monomials(i))[:c])
    count = 0
    for monom in monomials(i + 1):
        divisors = [
            tuple(e - 1 if k == j else e for k, e in enumerate(monom))
            for j in range(nvars) if monom[j]
        ]
        if all(d in complement for d in divisors):
            count += 1
    return count


class TestHSeq:
    def test_statistics(self):
        h = HSeq.parse("1,3,3,4,2,1")
        assert str(h) == "(1,3,3,4,2,1)"
        assert h.socle_degree == 5
        assert h.max == 4
        assert h.r == 0
        assert h.delta == 2
        assert h.peak == 3
        assert h.falls() == [(3, 2), (4, 1), (5, 1)]
        assert h[9] == 0

    def test_trailing_zeros_are_trimmed(self):
        assert HSeq((1, 2, 1, 0, 0)) == HSeq((1, 2, 1))

    @pytest.mark.parametrize("text", ["1,3,x", "", "1,,3", "1,-3"])
    def test_malformed_text(self, text):
        with pytest.raises(SequenceSyntaxError):
            HSeq.parse(text)

    def test_entry_helpers(self):
        h = HSeq((1, 3, 3, 4, 2, 1))
        assert h.with_entry(1, 2) == HSeq((1, 2, 3, 4, 2, 1))
        assert h.minus((0, 1, 0, 1)) == HSeq((1, 2, 3, 3, 2, 1))


class TestMacaulay:
    @pytest.mark.property
    def test_agrees_with_lex_segments(self):
        for i in range(1, 9):
            for c in range(1, 13):
                assert macaulay_bound(c, i) == lex_segment_bound(c, i), (c, i)

    def test_known_values(self):
        assert macaulay_bound(3, 2) == 4
        assert macaulay_bound(3, 1) == 6
        assert macaulay_bound(0, 4) == 0

    def test_o_sequences(self):
        assert is_o_sequence(HSeq((1, 3, 3, 4, 5, 6)))
        assert not is_o_sequence(HSeq((1, 3, 3, 5)))
        assert not is_o_sequence(HSeq((1, 3, 3, 3, 2, 3)))


class TestClassify:
    @pytest.mark.parametrize("text, verdict", [
        ("1,3,3,4,3,1", Verdict.NOT_GORENSTEIN),
        ("1,3,3,4,5,4,4,2,1", Verdict.NOT_GORENSTEIN),
        ("1,3,3,4,3,3,3,1", Verdict.NOT_GORENSTEIN),
        ("1,3,3,4,2", Verdict.NOT_GORENSTEIN),
        ("1,3,3,5", Verdict.NOT_O_SEQUENCE),
        ("1,3,3,5,3,1", Verdict.NOT_O_SEQUENCE),
        ("1,3,2,1", Verdict.OUT_OF_SCOPE),
        ("1,3,3,4,3,2,1", Verdict.TYPE_II),
        ("1,3,3,4,2,1", Verdict.TYPE_III),
        ("1,3,3,2,1", Verdict.TYPE_I),
    ])
    def test_verdicts(self, text, verdict):
        assert classify_133(HSeq.parse(text)).verdict == verdict

    def test_type_three_witness(self):
        classification = classify_133(HSeq.parse("1,3,3,4,2,1"))
        assert classification.admissible
        assert classification.witness() == {"d": 4, "r": 0, "peak": 3}

    def test_type_one_witness(self):
        assert classify_133(HSeq.parse("1,3,3,2,1")).witness() == {"u": 0, "v": 1, "w": 0}
        assert classify_133(HSeq.parse("1,3,3,3,2,2,1,1")).uvw == (1, 2, 1)
        assert classify_133(HSeq.parse("1,3,3,1")).uvw == (0, 0, 0)

    def test_repeated_maximum(self):
        classification = classify_133(HSeq.parse("1,3,3,4,4,2,1"))
        assert classification.verdict == Verdict.TYPE_III
        assert (classification.d, classification.r, classification.peak) == (4, 1, 4)

    def test_rejections_carry_no_witness(self):
        assert classify_133(HSeq.parse("1,3,3,4,3,1")).witness() == {}


class TestCodimTwo:
    def test_single_generator(self):
        assert codim2_gorenstein_check(HSeq((1, 2, 3, 2, 1)))
        assert codim2_gorenstein_check(HSeq((1, 2, 1, 1)))
        assert not codim2_gorenstein_check(HSeq((1, 2, 3, 1)))
        assert not codim2_gorenstein_check(HSeq((1, 3, 1)))

    def test_pair_mode_allows_one_extra_at_the_peak(self):
        h = HSeq((1, 2, 3, 4, 2, 1))
        assert not codim2_gorenstein_check(h)
        assert codim2_gorenstein_check(h, pair_mode=True)


class TestEnumeration:
    def test_socle_degree_three(self):
        sequences = list(enumerate_133_o_sequences(3))
        assert sequences == [HSeq((1, 3, 3)), HSeq((1, 3, 3, 1)), HSeq((1, 3, 3, 2)),
                             HSeq((1, 3, 3, 3)), HSeq((1, 3, 3, 4))]
        admissible = [h for h in sequences if classify_133(h).admissible]
        assert admissible == [HSeq((1, 3, 3, 1))]

    def test_everything_enumerated_is_an_o_sequence(self):
        sequences = list(enumerate_133_o_sequences(6))
        assert all(is_o_sequence(h) for h in sequences)
        assert max(h.socle_degree for h in sequences) == 6
        assert sequences == sorted(sequences, key=lambda h: h.values)
