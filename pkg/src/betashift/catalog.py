"""
Named generating sequences and exhaustive enumeration.

The registry ships with the standard worked examples and accepts new
entries; the CLI resolves ``@name`` arguments against it.
"""

import itertools
from typing import Dict, Iterator, List, Optional

from .seq import EventuallyPeriodicSeq, GeneratingSequence, parse_generating, validate_generating
from .errors import SequenceError


# Global sequence registry
_SEQUENCE_REGISTRY: Dict[str, str] = {
    "golden": "(10)",
    "full_2": "(1)",
    "full_3": "(2)",
    "tribonacci": "(110)",
    "silver": "(20)",
    "two_presentations": "11(10)",
    "small_fiber": "1(10)",
    "deletion_chain_0": "1101101(0101100)",
    "deletion_chain_1": "11111(010110)",
    "deletion_chain_2": "111(110010)",
    "deletion_chain_3": "11(101100)",
    "open_pair_1": "1(110)",
    "open_pair_2": "11(110)",
    "supergolden": "(100)",
    "tetranacci": "(1110)",
    "full_4": "(3)",
    "three_symbol": "(210)",
    "long_run": "111(10)",
    "binarize_demo": "2(10)",
    "sparse_tail": "1(100)",
}


def register_sequence(name: str, text: str) -> GeneratingSequence:
    """
    Register a named sequence.

    The text is validated first, so the registry only holds generating
    sequences.

    Args:
        name: Name for the entry (case-insensitive)
        text: Sequence in ``pre(period)`` notation

    Returns:
        The validated sequence

    Example:
        >>> register_sequence("narayana", "(100)")
        GeneratingSequence('(100)')
    """
    g = parse_generating(text)
    _SEQUENCE_REGISTRY[name.lower()] = str(g)
    return g


def get_sequence(name: str) -> Optional[GeneratingSequence]:
    """
    Get a registered sequence by name.

    Returns:
        The sequence or None if not found
    """
    text = _SEQUENCE_REGISTRY.get(name.lower())
    return parse_generating(text) if text is not None else None


def list_sequences() -> List[str]:
    """List all registered names."""
    return list(_SEQUENCE_REGISTRY.keys())


def remove_sequence(name: str) -> bool:
    """
    Remove a registered sequence.

    Returns:
        True if removed, False if not found
    """
    if name.lower() in _SEQUENCE_REGISTRY:
        del _SEQUENCE_REGISTRY[name.lower()]
        return True
    return False


def enumerate_generating(max_n: int, max_p: int, max_digit: int) -> Iterator[GeneratingSequence]:
    """
    Every valid normalized generating sequence with n <= max_n, p <= max_p
    and digits <= max_digit, each exactly once.

    Words are enumerated by (n, p) and then lexicographically; a candidate
    is kept only if it is already in normalized form, which removes the
    duplicates of longer representations.
    """
    digits = range(max_digit + 1)
    for n in range(max_n + 1):
        for p in range(1, max_p + 1):
            for preperiod in itertools.product(digits, repeat=n):
                for period in itertools.product(digits, repeat=p):
                    if not any(period):
                        continue
                    s = EventuallyPeriodicSeq(preperiod, period)
                    try:
                        g = validate_generating(s)
                    except SequenceError:
                        continue
                    if g.preperiod == s.preperiod and g.period == s.period:
                        yield g


__all__ = [
    'register_sequence',
    'get_sequence',
    'list_sequences',
    'remove_sequence',
    'enumerate_generating',
]
