"""
Exception hierarchy for betashift.

Every domain failure raised by the library derives from ``BetaShiftError``
so callers (and the CLI) can separate domain errors from programming errors.

Example:
    >>> from betashift.errors import ViolatingShift
    >>> try:
    ...     raise ViolatingShift(1)
    ... except ViolatingShift as exc:
    ...     exc.k
    1
"""

from __future__ import annotations


class BetaShiftError(Exception):
    """
    Base exception for betashift domain errors.

    Carries a plain-text ``msg`` that is rendered verbatim by the CLI.
    """

    def __init__(self, msg: str | None = None) -> None:
        if msg is not None and not isinstance(msg, str):
            raise TypeError(
                f"{type(self).__name__} expected string as 'msg' parameter, "
                f"got '{type(msg).__name__}' instead."
            )
        super().__init__(msg)
        self.msg = msg or ""

    def __repr__(self) -> str:
        if self.msg:
            return self.msg
        return f"<{self.__class__.__name__} instance>"

    __str__ = __repr__


class ConfigError(BetaShiftError):
    """Invalid configuration value."""


# Sequences


class SequenceError(BetaShiftError):
    """Invalid eventually periodic sequence."""


class ParseError(SequenceError):
    """Text does not match the sequence (or polynomial) grammar."""


class ViolatingShift(SequenceError):
    """
    A shift of the sequence is lexicographically larger than the sequence.

    Attributes:
        k: the offending shift index (1-based)
    """

    def __init__(self, k: int, msg: str | None = None) -> None:
        super().__init__(msg or f"shift by {k} exceeds the sequence")
        self.k = k


class AllZeroPeriod(SequenceError):
    """The period contains no nonzero digit."""


# Arithmetic


class BetaArithmeticError(BetaShiftError):
    """Failure in exact beta arithmetic."""


class IsolationError(BetaArithmeticError):
    """The interval does not isolate exactly one root above 1."""


class TruncatedExpansion(BetaArithmeticError):
    """The expansion neither terminated nor repeated within the digit bound."""


# Covers and moves


class CoverError(BetaShiftError):
    """Invalid labeled graph or cover request."""


class MoveError(BetaShiftError):
    """A flow move cannot be applied."""


class NotStrictlySofic(MoveError):
    """The sequence is purely periodic (the shift is of finite type)."""


class NotBinary(MoveError):
    """The sequence uses a digit larger than 1."""


class KTooSmall(MoveError):
    """Zero insertion requires k > n/2."""


class ExponentNotPositive(MoveError):
    """The rotation exponent is not positive."""


class RuleInapplicable(MoveError):
    """The rule output is not a valid strictly sofic generating sequence."""


# Reduction and decisions


class ReductionError(BetaShiftError):
    """Failure while reducing a fiber product cover."""


class ContractionError(ReductionError):
    """Symbol contraction precondition violated."""


class AmalgamationError(ReductionError):
    """In-amalgamation precondition violated."""


class NotSFT(BetaShiftError):
    """The operation requires a shift of finite type."""


__all__ = [
    'BetaShiftError',
    'ConfigError',
    'SequenceError',
    'ParseError',
    'ViolatingShift',
    'AllZeroPeriod',
    'BetaArithmeticError',
    'IsolationError',
    'TruncatedExpansion',
    'CoverError',
    'MoveError',
    'NotStrictlySofic',
    'NotBinary',
    'KTooSmall',
    'ExponentNotPositive',
    'RuleInapplicable',
    'ReductionError',
    'ContractionError',
    'AmalgamationError',
    'NotSFT',
]
