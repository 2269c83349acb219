"""
Exact beta arithmetic.

beta is an algebraic number given by an integer polynomial and a rational
isolating interval. Remainders of the greedy expansion of 1 are kept as
rational coordinates in the power basis 1, beta, ..., beta^(d-1), and every
floor is decided exactly by sign determination on the isolating interval.

Example:
    >>> from betashift.arith import AlgebraicNumber, beta_expansion_of_one
    >>> golden = AlgebraicNumber([1, -1, -1], ("3/2", "7/4"))
    >>> e = beta_expansion_of_one(golden)
    >>> e.digits, e.status.value
    ([1, 1], 'Finite')
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from sympy import Poly, Rational, Symbol, log
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

from .config import get_config
from .errors import BetaArithmeticError, IsolationError, ParseError, TruncatedExpansion
from .seq import EventuallyPeriodicSeq, GeneratingSequence, normalize, validate_generating

logger = logging.getLogger(__name__)

X = Symbol("x")

RationalLike = Union[int, str, Fraction]

POLYNOMIAL_GRAMMAR = "integer polynomial in x, e.g. x^4-x^3-2x^2+1"
_POLY_CHARS = re.compile(r"^[0-9x\^\+\-\*\s\(\)]+$")

# Width the isolating interval is narrowed to before expanding; only the
# floor guesses depend on it, the decisions stay exact.
_GUESS_WIDTH = Fraction(1, 2**48)
_LOG_DIGITS = 30


def _rat(q: Fraction) -> Rational:
    return Rational(q.numerator, q.denominator)


def _horner(coeffs: Sequence[int], x: Fraction) -> Fraction:
    """Evaluate a descending coefficient list at a rational point."""
    value = Fraction(0)
    for c in coeffs:
        value = value * x + c
    return value


def _sign(value) -> int:
    return (value > 0) - (value < 0)


@dataclass(frozen=True)
class Interval:
    """
    A closed interval [lo, hi].

    Endpoints are exact Fractions, both for root isolation and for the
    outward-rounded entropy bounds.
    """
    lo: Any
    hi: Any

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def midpoint(self):
        return (self.lo + self.hi) / 2

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi

    def __iter__(self) -> Iterator[Any]:
        yield self.lo
        yield self.hi

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lo": str(self.lo),
            "hi": str(self.hi),
            "approx": float(self.midpoint),
        }


class AlgebraicNumber:
    """
    A real algebraic number beta > 1.

    Attributes:
        min_poly: primitive integer coefficients, highest degree first,
            leading coefficient positive; squarefree
        isolating_interval: (lo, hi) with exactly one root of min_poly in
            [lo, hi]; lo == hi is allowed for a rational root

    Raises:
        IsolationError: if any of the conditions above fails
    """

    def __init__(
        self,
        min_poly: Sequence[int],
        isolating_interval: Tuple[RationalLike, RationalLike],
    ):
        coeffs = [int(c) for c in min_poly]
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
        if len(coeffs) < 2:
            raise IsolationError("polynomial must have degree at least 1")
        if coeffs[0] < 0:
            coeffs = [-c for c in coeffs]
        content = math.gcd(*coeffs)
        coeffs = [c // content for c in coeffs]

        lo, hi = (Fraction(v) for v in isolating_interval)
        if lo > hi:
            raise IsolationError(f"empty interval [{lo}, {hi}]")
        if lo <= 1:
            raise IsolationError(f"beta must exceed 1, but the interval starts at {lo}")

        self.min_poly: Tuple[int, ...] = tuple(coeffs)
        self.isolating_interval: Tuple[Fraction, Fraction] = (lo, hi)
        self._poly = Poly(coeffs, X, domain="ZZ")

        if self._poly.gcd(self._poly.diff(X)).degree() > 0:
            raise IsolationError(f"polynomial {self._poly.as_expr()} is not squarefree")
        if lo == hi:
            if _horner(coeffs, lo) != 0:
                raise IsolationError(f"{lo} is not a root of {self._poly.as_expr()}")
        else:
            if _horner(coeffs, lo) == 0 or _horner(coeffs, hi) == 0:
                raise IsolationError("interval endpoints must not be roots")
            count = self._poly.count_roots(_rat(lo), _rat(hi))
            if count != 1:
                raise IsolationError(
                    f"interval [{lo}, {hi}] holds {count} roots of {self._poly.as_expr()}"
                )

    @classmethod
    def from_rational(cls, value: RationalLike) -> AlgebraicNumber:
        """Exact rational beta (integers included)."""
        q = Fraction(value)
        return cls([q.denominator, -q.numerator], (q, q))

    @classmethod
    def from_integer(cls, value: int) -> AlgebraicNumber:
        return cls.from_rational(int(value))

    @property
    def degree(self) -> int:
        return len(self.min_poly) - 1

    @property
    def is_rational(self) -> bool:
        lo, hi = self.isolating_interval
        return lo == hi

    def _bisect(self, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
        mid = (lo + hi) / 2
        at_mid = _horner(self.min_poly, mid)
        if at_mid == 0:
            return mid, mid
        if _sign(_horner(self.min_poly, lo)) * _sign(at_mid) < 0:
            return lo, mid
        return mid, hi

    def refined(self, width: Fraction) -> AlgebraicNumber:
        """The same number with an isolating interval no wider than width."""
        lo, hi = self.isolating_interval
        while hi - lo > width:
            lo, hi = self._bisect(lo, hi)
        if (lo, hi) == self.isolating_interval:
            return self
        return AlgebraicNumber(self.min_poly, (lo, hi))

    def approximate(self) -> Fraction:
        return sum(self.isolating_interval, Fraction(0)) / 2

    def sign_of(self, coords: Sequence[Fraction]) -> int:
        """
        Sign of sum(coords[i] * beta^i), decided exactly.

        Zero is detected through gcd(q, min_poly) having its root inside the
        isolating interval; otherwise the interval is bisected until q has
        no root in it, and q is evaluated at the midpoint.
        """
        if all(c == 0 for c in coords[1:]):
            return _sign(coords[0])

        den = math.lcm(*(Fraction(c).denominator for c in coords))
        ints = [int(Fraction(c) * den) for c in coords]
        descending = list(reversed(ints))
        lo, hi = self.isolating_interval
        if lo == hi:
            return _sign(_horner(descending, lo))

        q = Poly(descending, X, domain="ZZ")
        common = q.gcd(self._poly)
        if common.degree() > 0 and common.count_roots(_rat(lo), _rat(hi)) > 0:
            return 0
        while q.count_roots(_rat(lo), _rat(hi)) > 0:
            lo, hi = self._bisect(lo, hi)
            if lo == hi:
                return _sign(_horner(descending, lo))
        return _sign(_horner(descending, (lo + hi) / 2))

    def to_dict(self) -> Dict[str, Any]:
        lo, hi = self.isolating_interval
        return {
            "min_poly": list(self.min_poly),
            "isolating_interval": [str(lo), str(hi)],
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        if self.min_poly != other.min_poly:
            return False
        lo = max(self.isolating_interval[0], other.isolating_interval[0])
        hi = min(self.isolating_interval[1], other.isolating_interval[1])
        if lo > hi:
            return False
        if lo == hi:
            return _horner(self.min_poly, lo) == 0
        return self._poly.count_roots(_rat(lo), _rat(hi)) > 0

    def __hash__(self) -> int:
        return hash(self.min_poly)

    def __repr__(self) -> str:
        lo, hi = self.isolating_interval
        return f"AlgebraicNumber({self._poly.as_expr()}, [{lo}, {hi}])"


@dataclass(frozen=True)
class FieldElement:
    """
    An element of Q(beta) in power-basis coordinates.

    Arithmetic is performed modulo ``min_poly``; equality is coordinate-wise.
    """
    number: AlgebraicNumber = field(compare=False)
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        if len(coords) != self.number.degree:
            raise BetaArithmeticError(
                f"expected {self.number.degree} coordinates, got {len(coords)}"
            )
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_rational(cls, number: AlgebraicNumber, value: RationalLike) -> FieldElement:
        return cls(number, (Fraction(value),) + (Fraction(0),) * (number.degree - 1))

    def __add__(self, other: Union[FieldElement, int, Fraction]) -> FieldElement:
        if isinstance(other, FieldElement):
            return FieldElement(self.number, tuple(a + b for a, b in zip(self.coords, other.coords)))
        return FieldElement(self.number, (self.coords[0] + other,) + self.coords[1:])

    def __sub__(self, other: Union[FieldElement, int, Fraction]) -> FieldElement:
        if isinstance(other, FieldElement):
            return FieldElement(self.number, tuple(a - b for a, b in zip(self.coords, other.coords)))
        return self + (-other)

    def times_beta(self) -> FieldElement:
        """Multiply by beta, reducing beta^d with the minimal polynomial."""
        d = self.number.degree
        lead = self.number.min_poly[0]
        top = self.coords[-1]
        shifted = (Fraction(0),) + self.coords[:-1]
        # beta^d = -(a_{d-1} beta^{d-1} + ... + a_0) / a_d
        reduction = [Fraction(-self.number.min_poly[d - j], lead) for j in range(d)]
        return FieldElement(self.number, tuple(s + top * r for s, r in zip(shifted, reduction)))

    def sign(self) -> int:
        return self.number.sign_of(self.coords)

    def approximate(self) -> Fraction:
        beta = self.number.approximate()
        return sum((c * beta**i for i, c in enumerate(self.coords)), Fraction(0))

    def floor(self) -> Tuple[int, bool]:
        """
        Exact floor of the element.

        Returns:
            (m, exact) where m <= self < m + 1 and exact means self == m
        """
        m = math.floor(self.approximate())
        while (self - m).sign() < 0:
            m -= 1
        while (self - (m + 1)).sign() >= 0:
            m += 1
        return m, (self - m).sign() == 0


class ExpansionStatus(str, Enum):
    FINITE = "Finite"
    EVENTUALLY_PERIODIC = "EventuallyPeriodic"
    TRUNCATED = "Truncated"


@dataclass
class ExpansionResult:
    """
    The beta-expansion of 1.

    Attributes:
        digits: Finite: a_1..a_k; EventuallyPeriodic: preperiod then one
            period (minimal); Truncated: the digits computed so far
        status: how the expansion ended
        k: index of the last nonzero digit (Finite)
        n: preperiod length (EventuallyPeriodic)
        p: period length (EventuallyPeriodic)
        max_digits: the bound that was hit (Truncated)
    """
    digits: List[int]
    status: ExpansionStatus
    k: Optional[int] = None
    n: Optional[int] = None
    p: Optional[int] = None
    max_digits: Optional[int] = None

    @property
    def sequence(self) -> EventuallyPeriodicSeq:
        if self.status is not ExpansionStatus.EVENTUALLY_PERIODIC:
            raise BetaArithmeticError(f"{self.status.value} expansion has no period")
        return EventuallyPeriodicSeq(self.digits[: self.n], self.digits[self.n:])

    def to_dict(self) -> Dict[str, Any]:
        status: Dict[str, Any] = {"kind": self.status.value}
        if self.status is ExpansionStatus.FINITE:
            status["k"] = self.k
        elif self.status is ExpansionStatus.EVENTUALLY_PERIODIC:
            status.update(n=self.n, p=self.p, text=str(self.sequence))
        else:
            status["max_digits"] = self.max_digits
        return {"digits": list(self.digits), "status": status}

    def __repr__(self) -> str:
        if self.status is ExpansionStatus.FINITE:
            return f"ExpansionResult(Finite{{{self.k}}}, {''.join(map(str, self.digits))})"
        if self.status is ExpansionStatus.EVENTUALLY_PERIODIC:
            return f"ExpansionResult(EventuallyPeriodic{{{self.n},{self.p}}}, {self.sequence})"
        return f"ExpansionResult(Truncated{{{self.max_digits}}})"


def beta_expansion_of_one(
    beta: AlgebraicNumber,
    max_digits: Optional[int] = None,
) -> ExpansionResult:
    """
    Greedy expansion of 1 in base beta.

    x_n = floor(beta * r_{n-1}), r_n = beta * r_{n-1} - x_n, r_0 = 1.
    Stops with Finite when a remainder is 0 and with EventuallyPeriodic when
    a remainder repeats exactly; otherwise Truncated after max_digits.

    Args:
        beta: the base
        max_digits: digit bound (default from config)

    Returns:
        ExpansionResult
    """
    if max_digits is None:
        max_digits = get_config().max_digits
    number = beta.refined(_GUESS_WIDTH)
    remainder = FieldElement.from_rational(number, 1)
    seen = {remainder.coords: 0}
    digits: List[int] = []

    for step in range(1, max_digits + 1):
        scaled = remainder.times_beta()
        digit, exact = scaled.floor()
        digits.append(digit)
        if exact:
            logger.debug("expansion of 1 terminates after %d digits", step)
            return ExpansionResult(digits, ExpansionStatus.FINITE, k=step)
        remainder = scaled - digit
        first = seen.get(remainder.coords)
        if first is not None:
            s = normalize(EventuallyPeriodicSeq(digits[:first], digits[first:step]))
            logger.debug("remainder r_%d repeats r_%d: %s", step, first, s)
            return ExpansionResult(
                list(s.preperiod + s.period),
                ExpansionStatus.EVENTUALLY_PERIODIC,
                n=s.n,
                p=s.p,
            )
        seen[remainder.coords] = step

    logger.warning("expansion truncated at %d digits; beta may be non-sofic", max_digits)
    return ExpansionResult(digits, ExpansionStatus.TRUNCATED, max_digits=max_digits)


def generating_sequence_from_expansion(e: ExpansionResult) -> GeneratingSequence:
    """
    g(beta) from e(beta).

    A finite expansion a_1..a_k becomes (a_1..a_{k-1}(a_k - 1))^inf; an
    infinite eventually periodic expansion is its own generating sequence.

    Raises:
        TruncatedExpansion: for a Truncated result
    """
    if e.status is ExpansionStatus.TRUNCATED:
        raise TruncatedExpansion(
            f"expansion truncated after {e.max_digits} digits; no generating sequence"
        )
    if e.status is ExpansionStatus.FINITE:
        period = list(e.digits[:-1]) + [e.digits[-1] - 1]
        return validate_generating(EventuallyPeriodicSeq((), period))
    return validate_generating(e.sequence)


def expansion_from_generating(g: GeneratingSequence) -> ExpansionResult:
    """Inverse of :func:`generating_sequence_from_expansion`."""
    if g.n == 0:
        digits = list(g.period[:-1]) + [g.period[-1] + 1]
        return ExpansionResult(digits, ExpansionStatus.FINITE, k=len(digits))
    return ExpansionResult(
        list(g.preperiod + g.period), ExpansionStatus.EVENTUALLY_PERIODIC, n=g.n, p=g.p
    )


def generating_polynomial(g: EventuallyPeriodicSeq) -> List[int]:
    """
    Integer polynomial whose unique root above 1 is beta(g).

    With B the preperiod and P the period read as polynomials (first digit
    highest), sum g_i x^-i = 1 clears to x^n (x^p - 1) - (x^p - 1) B(x) - P(x).

    Example:
        >>> from betashift.seq import parse_sequence
        >>> generating_polynomial(parse_sequence("11(10)"))
        [1, -1, -2, 0, 1]
    """
    xp1 = Poly(X**g.p - 1, X, domain="ZZ")
    head = Poly(list(g.preperiod), X, domain="ZZ") if g.n else Poly(0, X, domain="ZZ")
    tail = Poly(list(g.period), X, domain="ZZ")
    poly = Poly(X**g.n, X, domain="ZZ") * xp1 - xp1 * head - tail
    return [int(c) for c in poly.all_coeffs()]


def _bracket(g: EventuallyPeriodicSeq) -> Tuple[List[int], Fraction, Fraction]:
    coeffs = generating_polynomial(g)
    lo, hi = Fraction(1), Fraction(g.digit(0) + 1)
    if _horner(coeffs, lo) >= 0 or _horner(coeffs, hi) < 0:
        raise BetaArithmeticError(f"no sign change bracketing beta for {g}")
    return coeffs, lo, hi


def beta_from_generating(
    g: GeneratingSequence,
    precision: Optional[RationalLike] = None,
) -> Interval:
    """
    Rational interval of width <= precision containing beta(g).

    The cleared polynomial is negative at 1 and nonnegative at g_1 + 1, with
    exactly one root in between; bisection keeps that sign pattern.
    """
    precision = Fraction(precision) if precision is not None else get_config().precision
    coeffs, lo, hi = _bracket(g)
    if _horner(coeffs, hi) == 0:
        return Interval(hi, hi)
    while hi - lo > precision:
        mid = (lo + hi) / 2
        value = _horner(coeffs, mid)
        if value == 0:
            return Interval(mid, mid)
        if value < 0:
            lo = mid
        else:
            hi = mid
    return Interval(lo, hi)


def algebraic_beta(g: GeneratingSequence) -> AlgebraicNumber:
    """
    beta(g) as an exact AlgebraicNumber over its minimal polynomial.

    The generating polynomial is factored and bisected until a single
    irreducible factor keeps a root in the interval.
    """
    coeffs, lo, hi = _bracket(g)
    if _horner(coeffs, hi) == 0:
        return AlgebraicNumber.from_rational(hi)
    _, factors = Poly(coeffs, X, domain="ZZ").factor_list()
    candidates = [f for f, _ in factors if f.degree() > 0]
    while True:
        if lo > 1:
            counts = [f.count_roots(_rat(lo), _rat(hi)) for f in candidates]
            if sum(counts) == 1:
                factor = [int(c) for c in candidates[counts.index(1)].all_coeffs()]
                if _horner(factor, lo) != 0 and _horner(factor, hi) != 0:
                    return AlgebraicNumber(factor, (lo, hi))
        mid = (lo + hi) / 2
        value = _horner(coeffs, mid)
        if value == 0:
            return AlgebraicNumber.from_rational(mid)
        if value < 0:
            lo = mid
        else:
            hi = mid


def _log_bound(q: Fraction, upward: bool) -> Fraction:
    """Rational bound on log(q), rounded outward by 10^-_LOG_DIGITS."""
    approx = Fraction(str(log(_rat(q)).evalf(_LOG_DIGITS + 10)))
    pad = Fraction(1, 10**_LOG_DIGITS)
    return approx + pad if upward else approx - pad


def entropy(g: GeneratingSequence, precision: Optional[RationalLike] = None) -> Interval:
    """
    Topological entropy log(beta) as a rational interval.

    The bounds enclose log of the whole beta interval, so the true entropy
    always lies inside.
    """
    beta = beta_from_generating(g, precision)
    return Interval(_log_bound(beta.lo, upward=False), _log_bound(beta.hi, upward=True))


def parse_polynomial(text: str) -> List[int]:
    """
    Parse an integer polynomial in x, highest degree first.

    Raises:
        ParseError: for anything but an integer polynomial in x
    """
    if not _POLY_CHARS.match(text):
        raise ParseError(f"malformed polynomial {text!r}; expected {POLYNOMIAL_GRAMMAR}")
    try:
        expr = parse_expr(
            text,
            local_dict={"x": X},
            transformations=standard_transformations
            + (implicit_multiplication_application, convert_xor),
        )
        poly = Poly(expr, X)
    except Exception as exc:
        raise ParseError(f"malformed polynomial {text!r}; expected {POLYNOMIAL_GRAMMAR}") from exc
    coeffs = poly.all_coeffs()
    if not all(c.is_integer for c in coeffs):
        raise ParseError(f"polynomial {text!r} must have integer coefficients")
    return [int(c) for c in coeffs]


def parse_interval(text: str) -> Tuple[Fraction, Fraction]:
    """Parse ``lo,hi`` with rational endpoints like ``3/2,7/4``."""
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError(f"malformed interval {text!r}; expected lo,hi")
    try:
        return Fraction(parts[0].strip()), Fraction(parts[1].strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed interval {text!r}; expected lo,hi") from exc


__all__ = [
    'Interval',
    'AlgebraicNumber',
    'FieldElement',
    'ExpansionStatus',
    'ExpansionResult',
    'beta_expansion_of_one',
    'generating_sequence_from_expansion',
    'expansion_from_generating',
    'generating_polynomial',
    'beta_from_generating',
    'algebraic_beta',
    'entropy',
    'parse_polynomial',
    'parse_interval',
    'POLYNOMIAL_GRAMMAR',
]
