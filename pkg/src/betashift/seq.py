"""
Eventually periodic digit sequences.

A sequence is a preperiod word followed by a period word repeated forever,
written ``pre(period)`` on the command line, e.g. ``11(10)`` for 1110101010...
Digits above 9 are written in brackets: ``[12](0[11])``.

Example:
    >>> from betashift.seq import parse_sequence, validate_generating
    >>> g = validate_generating(parse_sequence("11(10)"))
    >>> str(g), g.n, g.p
    ('11(10)', 2, 2)
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Any, Dict, Iterable, Sequence, Tuple

from .errors import AllZeroPeriod, ParseError, SequenceError, ViolatingShift

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]

GRAMMAR = "seq := word? '(' word ')'    word := (digit | '[' int ']')+"

MAX_DIGIT = 2**31 - 1

_SYMBOL = r"(?:[0-9]|\[[0-9]+\])"
_SEQ_RE = re.compile(rf"^(?P<pre>{_SYMBOL}*)\((?P<per>{_SYMBOL}*)\)$")
_WORD_RE = re.compile(rf"^{_SYMBOL}+$")
_TOKEN_RE = re.compile(r"[0-9]|\[([0-9]+)\]")


class Ordering(IntEnum):
    """Result of a lexicographic comparison."""
    LT = -1
    EQ = 0
    GT = 1


class ShiftClass(str, Enum):
    """Finite type versus strictly sofic."""
    SFT = "SFT"
    STRICTLY_SOFIC = "StrictlySofic"


def format_word(word: Iterable[int]) -> str:
    """Render digits, bracketing the ones above 9."""
    return "".join(str(d) if d < 10 else f"[{d}]" for d in word)


@dataclass(frozen=True, eq=False)
class EventuallyPeriodicSeq:
    """
    The infinite sequence ``preperiod + period + period + ...``.

    Values compare (``==``, ``<``) as infinite sequences, so two different
    (preperiod, period) pairs describing the same sequence are equal.

    Attributes:
        preperiod: the word before the repeating part (may be empty)
        period: the repeating word (never empty)
    """
    preperiod: Word
    period: Word

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(int(d) for d in self.preperiod))
        object.__setattr__(self, "period", tuple(int(d) for d in self.period))
        if not self.period:
            raise SequenceError("period must be nonempty")
        if any(d < 0 for d in self.preperiod + self.period):
            raise SequenceError("digits must be nonnegative")

    @property
    def n(self) -> int:
        return len(self.preperiod)

    @property
    def p(self) -> int:
        return len(self.period)

    @property
    def max_digit(self) -> int:
        return max(self.preperiod + self.period)

    @property
    def is_binary(self) -> bool:
        return self.max_digit <= 1

    def digit(self, i: int) -> int:
        """Digit at 0-based position i."""
        if i < self.n:
            return self.preperiod[i]
        return self.period[(i - self.n) % self.p]

    def prefix(self, length: int) -> Word:
        """The first ``length`` digits."""
        return tuple(self.digit(i) for i in range(length))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "text": str(self),
            "preperiod": list(self.preperiod),
            "period": list(self.period),
        }

    def __str__(self) -> str:
        return f"{format_word(self.preperiod)}({format_word(self.period)})"

    def __repr__(self) -> str:
        return f"{type(self).__name__}('{self}')"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EventuallyPeriodicSeq):
            return NotImplemented
        return lex_compare(self, other) is Ordering.EQ

    def __hash__(self) -> int:
        canonical = normalize(self)
        return hash((canonical.preperiod, canonical.period))

    def __lt__(self, other: EventuallyPeriodicSeq) -> bool:
        return lex_compare(self, other) is Ordering.LT

    def __le__(self, other: EventuallyPeriodicSeq) -> bool:
        return lex_compare(self, other) is not Ordering.GT

    def __gt__(self, other: EventuallyPeriodicSeq) -> bool:
        return lex_compare(self, other) is Ordering.GT

    def __ge__(self, other: EventuallyPeriodicSeq) -> bool:
        return lex_compare(self, other) is not Ordering.LT


class GeneratingSequence(EventuallyPeriodicSeq):
    """
    A normalized sequence accepted by :func:`validate_generating`.

    Construct it through ``validate_generating`` (or ``parse_generating``);
    the constructor itself does not check the shift criterion.
    """

    @property
    def seq(self) -> EventuallyPeriodicSeq:
        return EventuallyPeriodicSeq(self.preperiod, self.period)

    @property
    def is_sft(self) -> bool:
        return self.n == 0


def _parse_word(text: str) -> Word:
    digits = []
    for match in _TOKEN_RE.finditer(text):
        value = int(match.group(1) if match.group(1) is not None else match.group(0))
        if value > MAX_DIGIT:
            raise ParseError(f"digit overflow: [{match.group(1)}] exceeds {MAX_DIGIT}")
        digits.append(value)
    return tuple(digits)


def parse_sequence(text: str) -> EventuallyPeriodicSeq:
    """
    Parse ``word? '(' word ')'`` into the literal (preperiod, period) pair.

    The result is not normalized. Finite words and all-zero periods are
    rejected: they describe finite expansions, which are handled by
    :func:`betashift.arith.generating_sequence_from_expansion`.

    Raises:
        ParseError: malformed text, empty or all-zero period, digit overflow

    Example:
        >>> parse_sequence("1101101(0101100)").period
        (0, 1, 0, 1, 1, 0, 0)
    """
    stripped = text.strip()
    match = _SEQ_RE.match(stripped)
    if match is None:
        if _WORD_RE.match(stripped):
            raise ParseError(
                f"finite sequence {stripped!r}: a period in parentheses is required ({GRAMMAR})"
            )
        raise ParseError(f"malformed sequence {text!r}; expected {GRAMMAR}")
    if not match.group("per"):
        raise ParseError(f"empty period in {text!r}; expected {GRAMMAR}")

    preperiod = _parse_word(match.group("pre"))
    period = _parse_word(match.group("per"))
    if not any(period):
        raise ParseError(f"period of {text!r} is all zeros, which encodes a finite sequence")
    return EventuallyPeriodicSeq(preperiod, period)


def _primitive_root(word: Word) -> Word:
    size = len(word)
    for d in range(1, size + 1):
        if size % d == 0 and word[:d] * (size // d) == word:
            return word[:d]
    return word


def normalize(s: EventuallyPeriodicSeq) -> EventuallyPeriodicSeq:
    """
    Minimal (preperiod, period) form of the same infinite sequence.

    The period is reduced to its primitive root, then the preperiod is
    shortened while its last digit equals the last period digit, rotating
    the period right each time.

    Example:
        >>> str(normalize(parse_sequence("1(01)")))
        '(10)'
    """
    period = _primitive_root(s.period)
    preperiod = s.preperiod
    while preperiod and preperiod[-1] == period[-1]:
        period = (period[-1],) + period[:-1]
        preperiod = preperiod[:-1]
    return EventuallyPeriodicSeq(preperiod, period)


def shift(s: EventuallyPeriodicSeq, k: int) -> EventuallyPeriodicSeq:
    """Drop the first k digits; the result is normalized."""
    if k < 0:
        raise SequenceError(f"shift index must be nonnegative, got {k}")
    if k <= s.n:
        return normalize(EventuallyPeriodicSeq(s.preperiod[k:], s.period))
    j = (k - s.n) % s.p
    return normalize(EventuallyPeriodicSeq((), s.period[j:] + s.period[:j]))


def lex_compare(a: EventuallyPeriodicSeq, b: EventuallyPeriodicSeq) -> Ordering:
    """
    Lexicographic order on the infinite sequences.

    Two eventually periodic sequences that agree on the first
    ``max(n_a, n_b) + lcm(p_a, p_b)`` digits agree everywhere.
    """
    bound = max(a.n, b.n) + math.lcm(a.p, b.p)
    for i in range(bound):
        x, y = a.digit(i), b.digit(i)
        if x != y:
            return Ordering.LT if x < y else Ordering.GT
    return Ordering.EQ


def validate_generating(s: EventuallyPeriodicSeq) -> GeneratingSequence:
    """
    Check the generating-sequence criterion and return the normalized value.

    Every shift must be lexicographically at most the sequence. Shifts by
    1..n+p of the normalized form cover every distinct shifted sequence.

    Raises:
        AllZeroPeriod: the period has no nonzero digit
        ViolatingShift: some shift exceeds the sequence (``k`` is the index)
    """
    t = normalize(s)
    if not any(t.period):
        raise AllZeroPeriod(f"period of {t} has no nonzero digit")
    for k in range(1, t.n + t.p + 1):
        if lex_compare(shift(t, k), t) is Ordering.GT:
            raise ViolatingShift(k, f"shift by {k} of {t} is larger than {t}")
    return GeneratingSequence(t.preperiod, t.period)


def parse_generating(text: str) -> GeneratingSequence:
    """Parse and validate in one step."""
    return validate_generating(parse_sequence(text))


def validate_expansion(s: EventuallyPeriodicSeq) -> bool:
    """True iff every proper shift is strictly smaller than the sequence."""
    t = normalize(s)
    return all(
        lex_compare(shift(t, k), t) is Ordering.LT
        for k in range(1, t.n + t.p + 1)
    )


def is_factor(w: Sequence[int], g: EventuallyPeriodicSeq) -> bool:
    """
    Membership of the finite word w in the language of the beta-shift of g.

    Every suffix of w must be at most the prefix of g of the same length.
    A suffix equal to that prefix is admissible, since w followed by zeros
    then stays below g.

    Example:
        >>> g = parse_generating("11(10)")
        >>> is_factor((1, 1, 1), g), is_factor((2, 0), g)
        (True, False)
    """
    word = tuple(w)
    for i in range(len(word)):
        suffix = word[i:]
        if suffix > g.prefix(len(suffix)):
            return False
    return True


def classify(g: EventuallyPeriodicSeq) -> ShiftClass:
    """SFT iff the normalized preperiod is empty."""
    return ShiftClass.SFT if normalize(g).n == 0 else ShiftClass.STRICTLY_SOFIC


__all__ = [
    'Word',
    'GRAMMAR',
    'Ordering',
    'ShiftClass',
    'EventuallyPeriodicSeq',
    'GeneratingSequence',
    'format_word',
    'parse_sequence',
    'parse_generating',
    'normalize',
    'shift',
    'lex_compare',
    'validate_generating',
    'validate_expansion',
    'is_factor',
    'classify',
]
