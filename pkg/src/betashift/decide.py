"""
Three-valued flow-equivalence decisions for sofic beta-shifts.

Periodic (finite type) beta-shifts are classified completely by the period
digit sum S. Strictly sofic ones are separated by S, identified when their
canonical forms coincide, and otherwise left Unknown.

Example:
    >>> from betashift.seq import parse_generating
    >>> from betashift.decide import compare
    >>> compare(parse_generating("(110)"), parse_generating("(20)")).outcome.value
    'Equivalent'
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Tuple

from .errors import NotSFT
from .invariants import period_sum
from .moves import MoveTrace, binarize, canonical_form
from .seq import GeneratingSequence, ShiftClass, classify

logger = logging.getLogger(__name__)


class Outcome(str, Enum):
    EQUIVALENT = "Equivalent"
    DISTINCT = "Distinct"
    UNKNOWN = "Unknown"


@dataclass
class Verdict:
    """
    Result of :func:`compare`.

    Exactly one certificate is set: ``traces`` for Equivalent, ``witness``
    for Distinct, ``reduced_pair`` for Unknown.

    Attributes:
        outcome: Equivalent, Distinct or Unknown
        S1, S2: period digit sums
        class1, class2: SFT or StrictlySofic
        traces: moves taking each input to the shared canonical form
        witness: name of the separating invariant and both values
        reduced_pair: the two differing canonical forms
        background_theory: the witness relies on flow invariance of the
            finite-type property rather than on the period sum
    """
    outcome: Outcome
    S1: int
    S2: int
    class1: ShiftClass
    class2: ShiftClass
    traces: Optional[Tuple[MoveTrace, MoveTrace]] = None
    witness: Optional[Dict[str, Any]] = None
    reduced_pair: Optional[Tuple[GeneratingSequence, GeneratingSequence]] = None
    background_theory: bool = False

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "outcome": self.outcome.value,
            "invariants": {
                "S1": self.S1,
                "S2": self.S2,
                "class1": self.class1.value,
                "class2": self.class2.value,
            },
        }
        if self.traces is not None:
            data["traces"] = [trace.to_dict() for trace in self.traces]
        if self.witness is not None:
            data["witness"] = dict(self.witness)
        if self.reduced_pair is not None:
            data["reduced_pair"] = [str(s) for s in self.reduced_pair]
        if self.background_theory:
            data["background_theory"] = True
        return data

    def __repr__(self) -> str:
        return f"Verdict({self.outcome.value}, S={self.S1}/{self.S2})"


def reduce_to_canonical(g: GeneratingSequence) -> Tuple[GeneratingSequence, MoveTrace]:
    """Binarize when needed, then take the canonical form."""
    trace = MoveTrace()
    current = g
    if not g.is_binary:
        move = binarize(g)
        trace = MoveTrace((move,))
        current = move.after
    canonical, rest = canonical_form(current)
    return canonical, trace.then(rest)


def compare(g1: GeneratingSequence, g2: GeneratingSequence) -> Verdict:
    """
    Compare the flow classes of two beta-shifts.

    Different classes are Distinct. Two periodic sequences are Equivalent
    iff S agrees. Two strictly sofic sequences with different S are
    Distinct; with equal S they are Equivalent when their canonical forms
    coincide and Unknown otherwise.
    """
    S1, S2 = period_sum(g1), period_sum(g2)
    class1, class2 = classify(g1), classify(g2)
    verdict = Verdict(Outcome.UNKNOWN, S1, S2, class1, class2)

    if class1 is not class2:
        verdict.outcome = Outcome.DISTINCT
        verdict.witness = {"invariant": "class", "values": [class1.value, class2.value]}
        verdict.background_theory = True
        return verdict
    if S1 != S2:
        verdict.outcome = Outcome.DISTINCT
        verdict.witness = {"invariant": "S", "values": [S1, S2]}
        return verdict

    c1, trace1 = reduce_to_canonical(g1)
    c2, trace2 = reduce_to_canonical(g2)
    logger.debug("canonical forms %s and %s", c1, c2)
    if c1 == c2:
        verdict.outcome = Outcome.EQUIVALENT
        verdict.traces = (trace1, trace2)
    else:
        # only reachable for strictly sofic pairs: periodic ones share (1^S 0)
        verdict.reduced_pair = (c1, c2)
    return verdict


def full_shift_class(g: GeneratingSequence) -> int:
    """
    Alphabet size of the full shift flow equivalent to a periodic g.

    Raises:
        NotSFT: g is strictly sofic
    """
    if classify(g) is not ShiftClass.SFT:
        raise NotSFT(f"{g} is strictly sofic and not flow equivalent to a full shift")
    return period_sum(g) + 1


@dataclass
class CollisionStats:
    """Canonical forms of the strictly sofic sequences sharing one S."""
    S: int
    classes: Dict[str, List[str]] = field(default_factory=dict)

    @property
    def sequences(self) -> int:
        return sum(len(members) for members in self.classes.values())

    @property
    def canonical_forms(self) -> int:
        return len(self.classes)

    @property
    def collisions(self) -> int:
        """Canonical forms reached from more than one input."""
        return sum(1 for members in self.classes.values() if len(members) > 1)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "S": self.S,
            "sequences": self.sequences,
            "canonical_forms": self.canonical_forms,
            "collisions": self.collisions,
            "classes": {key: list(members) for key, members in self.classes.items()},
        }


def canonical_collisions(seqs: Iterable[GeneratingSequence]) -> List[CollisionStats]:
    """Group strictly sofic inputs by S and by canonical form."""
    by_S: Dict[int, CollisionStats] = {}
    for g in seqs:
        if classify(g) is not ShiftClass.STRICTLY_SOFIC:
            continue
        canonical, _ = reduce_to_canonical(g)
        S = period_sum(g)
        stats = by_S.setdefault(S, CollisionStats(S))
        stats.classes.setdefault(str(canonical), []).append(str(g))
    return [by_S[S] for S in sorted(by_S)]


__all__ = [
    'Outcome',
    'Verdict',
    'CollisionStats',
    'reduce_to_canonical',
    'compare',
    'full_shift_class',
    'canonical_collisions',
]
