"""
Tests for eventually periodic sequences and the generating-sequence criterion.
"""

import pytest


class TestParseSequence:
    """Test parse_sequence."""

    def test_parse_preperiod_and_period(self):
        """Test the literal pair is kept."""
        from betashift.seq import parse_sequence

        s = parse_sequence("11(10)")
        assert s.preperiod == (1, 1)
        assert s.period == (1, 0)
        assert (s.n, s.p) == (2, 2)

    def test_parse_bracketed_digits(self):
        """Test digits above 9 in brackets."""
        from betashift.seq import parse_sequence

        s = parse_sequence("[12](0[11])")
        assert s.preperiod == (12,)
        assert s.period == (0, 11)
        assert str(s) == "[12](0[11])"

    def test_parse_pure_period(self):
        """Test an empty preperiod."""
        from betashift.seq import parse_sequence

        s = parse_sequence("(110)")
        assert s.preperiod == ()
        assert s.period == (1, 1, 0)

    @pytest.mark.parametrize("text", ["1101", "()", "1(00)", "abc", "1(10", "(1)2", "(\u0663)", "([\u0663])"])
    def test_parse_rejects(self, text):
        """Test malformed, finite and all-zero inputs."""
        from betashift.errors import ParseError
        from betashift.seq import parse_sequence

        with pytest.raises(ParseError):
            parse_sequence(text)

    def test_parse_digit_overflow(self):
        """Test digits beyond the supported range."""
        from betashift.errors import ParseError
        from betashift.seq import parse_sequence

        with pytest.raises(ParseError) as exc_info:
            parse_sequence("[99999999999](1)")
        assert "overflow" in str(exc_info.value)

    def test_parse_error_is_sequence_error(self):
        """Test the error hierarchy."""
        from betashift.errors import BetaShiftError, SequenceError
        from betashift.seq import parse_sequence

        with pytest.raises(SequenceError):
            parse_sequence("")
        with pytest.raises(BetaShiftError):
            parse_sequence("x")


class TestEventuallyPeriodicSeq:
    """Test EventuallyPeriodicSeq values."""

    def test_empty_period_rejected(self):
        """Test the period must be nonempty."""
        from betashift.errors import SequenceError
        from betashift.seq import EventuallyPeriodicSeq

        with pytest.raises(SequenceError):
            EventuallyPeriodicSeq((), ())

    def test_digit_and_prefix(self):
        """Test positional access past the preperiod."""
        from betashift.seq import parse_sequence

        s = parse_sequence("11(10)")
        assert s.prefix(7) == (1, 1, 1, 0, 1, 0, 1)
        assert s.digit(100) == 1
        assert s.digit(101) == 0

    def test_equality_is_on_infinite_sequences(self):
        """Test two representations of one sequence are equal."""
        from betashift.seq import parse_sequence

        a = parse_sequence("1(01)")
        b = parse_sequence("(10)")
        assert a == b
        assert hash(a) == hash(b)
        assert len({a, b, parse_sequence("(1010)")}) == 1

    def test_ordering(self):
        """Test lexicographic comparison operators."""
        from betashift.seq import parse_sequence

        assert parse_sequence("(10)") < parse_sequence("11(10)")
        assert parse_sequence("(110)") < parse_sequence("11(10)")
        assert parse_sequence("(10)") <= parse_sequence("1(01)")

    def test_is_binary(self):
        """Test the binary flag."""
        from betashift.seq import parse_sequence

        assert parse_sequence("11(10)").is_binary
        assert not parse_sequence("(20)").is_binary

    def test_to_dict(self):
        """Test serialization."""
        from betashift.seq import parse_sequence

        data = parse_sequence("11(10)").to_dict()
        assert data == {"text": "11(10)", "preperiod": [1, 1], "period": [1, 0]}

    def test_format_word(self):
        """Test bracketing of large digits."""
        from betashift.seq import format_word

        assert format_word((1, 12, 0)) == "1[12]0"
        assert format_word(()) == ""


class TestNormalize:
    """Test normalize and shift."""

    @pytest.mark.parametrize("text,expected", [
        ("1(01)", "(10)"),
        ("(1010)", "(10)"),
        ("11(0101)", "1(10)"),
        ("1101101(0101100)", "1101101(0101100)"),
    ])
    def test_normalize(self, text, expected):
        """Test minimal forms."""
        from betashift.seq import normalize, parse_sequence

        assert str(normalize(parse_sequence(text))) == expected

    def test_shift(self):
        """Test shifts through the preperiod and into the period."""
        from betashift.seq import parse_sequence, shift

        s = parse_sequence("11(10)")
        assert str(shift(s, 0)) == "11(10)"
        assert str(shift(s, 1)) == "1(10)"
        assert str(shift(s, 2)) == "(10)"
        assert str(shift(s, 3)) == "(01)"
        assert str(shift(s, 4)) == "(10)"

    def test_shift_negative(self):
        """Test negative shift index."""
        from betashift.errors import SequenceError
        from betashift.seq import parse_sequence, shift

        with pytest.raises(SequenceError):
            shift(parse_sequence("(10)"), -1)

    def test_lex_compare(self):
        """Test the three orderings."""
        from betashift.seq import Ordering, lex_compare, parse_sequence

        assert lex_compare(parse_sequence("11(10)"), parse_sequence("(10)")) is Ordering.GT
        assert lex_compare(parse_sequence("(10)"), parse_sequence("11(10)")) is Ordering.LT
        assert lex_compare(parse_sequence("(10)"), parse_sequence("1(01)")) is Ordering.EQ

    def test_lex_compare_total_order(self):
        """Test agreement with long prefixes and transitivity on random triples."""
        import random

        from betashift.seq import EventuallyPeriodicSeq, Ordering, lex_compare

        rng = random.Random(3)

        def sample():
            pre = [rng.randint(0, 2) for _ in range(rng.randint(0, 3))]
            per = [rng.randint(0, 2) for _ in range(rng.randint(1, 3))]
            return EventuallyPeriodicSeq(pre, per)

        def by_prefix(a, b):
            x, y = a.prefix(40), b.prefix(40)
            return Ordering((x > y) - (x < y))

        for _ in range(300):
            a, b, c = sample(), sample(), sample()
            ab, bc, ac = lex_compare(a, b), lex_compare(b, c), lex_compare(a, c)
            assert ab is by_prefix(a, b), (str(a), str(b))
            assert lex_compare(b, a) is Ordering(-ab)
            assert lex_compare(a, a) is Ordering.EQ
            if ab <= 0 and bc <= 0:
                assert ac <= 0, (str(a), str(b), str(c))
            if ab >= 0 and bc >= 0:
                assert ac >= 0, (str(a), str(b), str(c))


class TestValidateGenerating:
    """Test the generating-sequence criterion."""

    @pytest.mark.parametrize("text", [
        "(10)", "(1)", "(2)", "(110)", "(20)", "11(10)", "1(10)",
        "1101101(0101100)", "11111(010110)", "111(110010)", "11(101100)",
        "1(110)", "11(110)",
    ])
    def test_valid(self, text):
        """Test known generating sequences."""
        from betashift.seq import GeneratingSequence, parse_generating

        g = parse_generating(text)
        assert isinstance(g, GeneratingSequence)
        assert str(g) == text

    def test_returns_normalized(self):
        """Test the validated value is the minimal form."""
        from betashift.seq import parse_sequence, validate_generating

        g = validate_generating(parse_sequence("11(0101)"))
        assert (g.preperiod, g.period) == ((1,), (1, 0))

    def test_violating_shift(self):
        """Test the index of the offending shift is reported."""
        from betashift.errors import ViolatingShift
        from betashift.seq import parse_sequence, validate_generating

        with pytest.raises(ViolatingShift) as exc_info:
            validate_generating(parse_sequence("(01)"))
        assert exc_info.value.k == 1

        with pytest.raises(ViolatingShift) as exc_info:
            validate_generating(parse_sequence("1(2)"))
        assert exc_info.value.k == 1

    def test_all_zero_period(self):
        """Test a zero period built directly."""
        from betashift.errors import AllZeroPeriod
        from betashift.seq import EventuallyPeriodicSeq, validate_generating

        with pytest.raises(AllZeroPeriod):
            validate_generating(EventuallyPeriodicSeq((1,), (0,)))

    def test_validate_expansion(self):
        """Test the strict criterion for infinite expansions."""
        from betashift.seq import parse_sequence, validate_expansion

        assert validate_expansion(parse_sequence("11(10)"))
        assert validate_expansion(parse_sequence("1(10)"))
        assert not validate_expansion(parse_sequence("(10)"))

    def test_is_sft(self):
        """Test the SFT flag on validated sequences."""
        from betashift.seq import parse_generating

        assert parse_generating("(110)").is_sft
        assert not parse_generating("1(110)").is_sft


class TestIsFactor:
    """Test language membership."""

    def test_words(self):
        """Test the suffix criterion."""
        from betashift.seq import is_factor, parse_generating

        g = parse_generating("11(10)")
        assert is_factor((1, 1, 1), g)
        assert is_factor((0, 1, 1, 1), g)
        assert is_factor((1, 0, 1, 1, 1), g)
        assert not is_factor((1, 1, 1, 0, 1, 1), g)
        assert not is_factor((1, 1, 1, 1), g)
        assert not is_factor((2, 0), g)

    def test_equal_suffix_admissible(self):
        """Test a suffix equal to the prefix is allowed."""
        from betashift.seq import is_factor, parse_generating

        g = parse_generating("(10)")
        assert is_factor((1, 0, 1), g)
        assert not is_factor((1, 1), g)

    def test_empty_word(self):
        """Test the empty word."""
        from betashift.seq import is_factor, parse_generating

        assert is_factor((), parse_generating("(10)"))


class TestClassify:
    """Test classify."""

    def test_classes(self):
        """Test SFT versus strictly sofic."""
        from betashift.seq import ShiftClass, classify, parse_generating, parse_sequence

        assert classify(parse_generating("(10)")) is ShiftClass.SFT
        assert classify(parse_generating("11(10)")) is ShiftClass.STRICTLY_SOFIC
        assert classify(parse_sequence("1(01)")) is ShiftClass.SFT
        assert ShiftClass.STRICTLY_SOFIC.value == "StrictlySofic"
