"""
Tests for exact beta arithmetic.
"""

from fractions import Fraction

import pytest


def _value(coeffs, x):
    result = Fraction(0)
    for c in coeffs:
        result = result * x + c
    return result


def _log(q):
    from sympy import Rational, log

    value = Fraction(q)
    return Fraction(str(log(Rational(value.numerator, value.denominator)).evalf(60)))


class TestAlgebraicNumber:
    """Test AlgebraicNumber construction."""

    def test_golden_mean(self):
        """Test a valid isolating interval."""
        from betashift.arith import AlgebraicNumber

        golden = AlgebraicNumber([1, -1, -1], (Fraction(3, 2), Fraction(7, 4)))
        assert golden.min_poly == (1, -1, -1)
        assert golden.degree == 2
        assert not golden.is_rational

    def test_string_endpoints(self):
        """Test rational endpoints given as text."""
        from betashift.arith import AlgebraicNumber

        golden = AlgebraicNumber([1, -1, -1], ("3/2", "7/4"))
        assert golden.isolating_interval == (Fraction(3, 2), Fraction(7, 4))

    def test_normalizes_sign_and_content(self):
        """Test the polynomial is made primitive with positive lead."""
        from betashift.arith import AlgebraicNumber

        golden = AlgebraicNumber([-2, 2, 2], ("3/2", "7/4"))
        assert golden.min_poly == (1, -1, -1)

    def test_interval_must_exceed_one(self):
        """Test lo <= 1 is rejected."""
        from betashift.arith import AlgebraicNumber
        from betashift.errors import IsolationError

        with pytest.raises(IsolationError):
            AlgebraicNumber([1, -1, -1], (1, 2))

    def test_no_root_in_interval(self):
        """Test an interval without a root."""
        from betashift.arith import AlgebraicNumber
        from betashift.errors import IsolationError

        with pytest.raises(IsolationError):
            AlgebraicNumber([1, -1, -1], (2, 3))

    def test_two_roots_in_interval(self):
        """Test an interval holding two roots."""
        from betashift.arith import AlgebraicNumber
        from betashift.errors import IsolationError

        # (x - 2)(x - 3)
        with pytest.raises(IsolationError):
            AlgebraicNumber([1, -5, 6], ("3/2", "7/2"))

    def test_not_squarefree(self):
        """Test repeated factors are rejected."""
        from betashift.arith import AlgebraicNumber
        from betashift.errors import IsolationError

        with pytest.raises(IsolationError):
            AlgebraicNumber([1, -4, 4], ("3/2", "5/2"))

    def test_from_rational(self):
        """Test exact rational beta."""
        from betashift.arith import AlgebraicNumber

        beta = AlgebraicNumber.from_rational(Fraction(5, 2))
        assert beta.is_rational
        assert beta.isolating_interval == (Fraction(5, 2), Fraction(5, 2))


class TestBetaExpansionOfOne:
    """Test beta_expansion_of_one."""

    def test_golden_mean_finite(self):
        """Test e(beta) = 11 for the golden mean."""
        from betashift.arith import AlgebraicNumber, ExpansionStatus, beta_expansion_of_one

        result = beta_expansion_of_one(AlgebraicNumber([1, -1, -1], ("3/2", "7/4")))
        assert result.digits == [1, 1]
        assert result.status is ExpansionStatus.FINITE
        assert result.k == 2

    def test_integer_beta(self):
        """Test an integer base expands 1 in one digit."""
        from betashift.arith import AlgebraicNumber, ExpansionStatus, beta_expansion_of_one

        result = beta_expansion_of_one(AlgebraicNumber.from_integer(2))
        assert result.digits == [2]
        assert result.status is ExpansionStatus.FINITE

    def test_rational_beta_truncates(self):
        """Test a non-integer rational base never terminates."""
        from betashift.arith import AlgebraicNumber, ExpansionStatus, beta_expansion_of_one

        result = beta_expansion_of_one(AlgebraicNumber.from_rational(Fraction(5, 2)), max_digits=30)
        assert result.status is ExpansionStatus.TRUNCATED
        assert len(result.digits) == 30
        assert result.max_digits == 30
        assert result.digits[0] == 2

    def test_eventually_periodic(self):
        """Test the expansion of a strictly sofic beta recovers its sequence."""
        from betashift.arith import ExpansionStatus, algebraic_beta, beta_expansion_of_one
        from betashift.seq import parse_generating

        g = parse_generating("11(10)")
        result = beta_expansion_of_one(algebraic_beta(g))
        assert result.status is ExpansionStatus.EVENTUALLY_PERIODIC
        assert (result.n, result.p) == (2, 2)
        assert result.sequence == g

    def test_tribonacci(self):
        """Test e(beta) = 111 for the sequence (110)."""
        from betashift.arith import ExpansionStatus, algebraic_beta, beta_expansion_of_one
        from betashift.seq import parse_generating

        result = beta_expansion_of_one(algebraic_beta(parse_generating("(110)")))
        assert result.status is ExpansionStatus.FINITE
        assert result.digits == [1, 1, 1]

    def test_to_dict(self):
        """Test serialization of a finite result."""
        from betashift.arith import AlgebraicNumber, beta_expansion_of_one

        data = beta_expansion_of_one(AlgebraicNumber([1, -1, -1], ("3/2", "7/4"))).to_dict()
        assert data == {"digits": [1, 1], "status": {"kind": "Finite", "k": 2}}


class TestGeneratingSequence:
    """Test conversions between e(beta) and g(beta)."""

    def test_from_finite_expansion(self):
        """Test 11 becomes (10)."""
        from betashift.arith import AlgebraicNumber, beta_expansion_of_one, generating_sequence_from_expansion

        e = beta_expansion_of_one(AlgebraicNumber([1, -1, -1], ("3/2", "7/4")))
        assert str(generating_sequence_from_expansion(e)) == "(10)"

    def test_from_integer_expansion(self):
        """Test 2 becomes (1)."""
        from betashift.arith import AlgebraicNumber, beta_expansion_of_one, generating_sequence_from_expansion

        e = beta_expansion_of_one(AlgebraicNumber.from_integer(2))
        assert str(generating_sequence_from_expansion(e)) == "(1)"

    def test_truncated_has_no_sequence(self):
        """Test a truncated expansion is refused."""
        from betashift.arith import (
            AlgebraicNumber,
            beta_expansion_of_one,
            generating_sequence_from_expansion,
        )
        from betashift.errors import TruncatedExpansion

        e = beta_expansion_of_one(AlgebraicNumber.from_rational(Fraction(5, 2)), max_digits=10)
        with pytest.raises(TruncatedExpansion):
            generating_sequence_from_expansion(e)

    @pytest.mark.parametrize("text,digits", [
        ("(10)", [1, 1]),
        ("(110)", [1, 1, 1]),
        ("(1)", [2]),
        ("(20)", [2, 1]),
    ])
    def test_expansion_from_generating_finite(self, text, digits):
        """Test the finite inverse."""
        from betashift.arith import ExpansionStatus, expansion_from_generating
        from betashift.seq import parse_generating

        e = expansion_from_generating(parse_generating(text))
        assert e.status is ExpansionStatus.FINITE
        assert e.digits == digits

    def test_expansion_from_generating_periodic(self):
        """Test a strictly sofic sequence is its own expansion."""
        from betashift.arith import ExpansionStatus, expansion_from_generating, generating_sequence_from_expansion
        from betashift.seq import parse_generating

        g = parse_generating("1(110)")
        e = expansion_from_generating(g)
        assert e.status is ExpansionStatus.EVENTUALLY_PERIODIC
        assert generating_sequence_from_expansion(e) == g


class TestBetaFromGenerating:
    """Test recovering beta from g."""

    def test_generating_polynomial(self):
        """Test the cleared polynomial."""
        from betashift.arith import generating_polynomial
        from betashift.seq import parse_sequence

        assert generating_polynomial(parse_sequence("11(10)")) == [1, -1, -2, 0, 1]
        assert generating_polynomial(parse_sequence("(1)")) == [1, -2]

    def test_golden_interval(self):
        """Test the interval brackets the golden mean."""
        from betashift.arith import beta_from_generating
        from betashift.seq import parse_generating

        interval = beta_from_generating(parse_generating("(10)"), Fraction(1, 10**6))
        assert interval.hi - interval.lo <= Fraction(1, 10**6)
        assert _value([1, -1, -1], interval.lo) < 0
        assert _value([1, -1, -1], interval.hi) > 0

    def test_integer_beta_is_exact(self):
        """Test (1) gives the degenerate interval at 2."""
        from betashift.arith import beta_from_generating
        from betashift.seq import parse_generating

        interval = beta_from_generating(parse_generating("(1)"), Fraction(1, 100))
        assert (interval.lo, interval.hi) == (2, 2)

    def test_algebraic_beta_minimal_polynomial(self):
        """Test the minimal polynomial of the golden mean is found."""
        from betashift.arith import algebraic_beta
        from betashift.seq import parse_generating

        golden = algebraic_beta(parse_generating("(10)"))
        assert golden.min_poly == (1, -1, -1)

    def test_entropy(self):
        """Test log(beta) for the full 2-shift."""
        from betashift.arith import entropy
        from betashift.seq import parse_generating

        interval = entropy(parse_generating("(1)"))
        assert isinstance(interval.lo, Fraction)
        assert interval.lo < _log(2) < interval.hi
        assert interval.width < Fraction(1, 10**9)

    def test_entropy_encloses_golden(self):
        """Test the bounds enclose log of the whole beta interval."""
        from betashift.arith import beta_from_generating, entropy
        from betashift.seq import parse_generating

        g = parse_generating("(10)")
        width = Fraction(1, 10**6)
        beta = beta_from_generating(g, width)
        interval = entropy(g, width)
        assert interval.lo < _log(beta.lo)
        assert _log(beta.hi) < interval.hi
        assert interval.width < Fraction(1, 10**6)


class TestParsing:
    """Test polynomial and interval parsing."""

    def test_parse_polynomial(self):
        """Test common spellings."""
        from betashift.arith import parse_polynomial

        assert parse_polynomial("x^2-x-1") == [1, -1, -1]
        assert parse_polynomial("x**3 - x**2 - x - 1") == [1, -1, -1, -1]
        assert parse_polynomial("2x^2-1") == [2, 0, -1]

    @pytest.mark.parametrize("text", ["x^2 + import os", "y^2-1", "x^2-", "x/2"])
    def test_parse_polynomial_rejects(self, text):
        """Test malformed polynomials."""
        from betashift.arith import parse_polynomial
        from betashift.errors import ParseError

        with pytest.raises(ParseError):
            parse_polynomial(text)

    def test_parse_interval(self):
        """Test rational endpoints."""
        from betashift.arith import parse_interval

        assert parse_interval("3/2,7/4") == (Fraction(3, 2), Fraction(7, 4))
        assert parse_interval(" 1.5 , 2 ") == (Fraction(3, 2), Fraction(2))

    @pytest.mark.parametrize("text", ["3/2", "a,b", "1/0,2"])
    def test_parse_interval_rejects(self, text):
        """Test malformed intervals."""
        from betashift.arith import parse_interval
        from betashift.errors import ParseError

        with pytest.raises(ParseError):
            parse_interval(text)
