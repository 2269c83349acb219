"""
Flow-equivalence rewritings of generating sequences.

Each rewriting returns a :class:`Move` recording its parameters and both
sequences, so chains of moves form a replayable :class:`MoveTrace`. Moves
act on the infinite sequence; local rules are evaluated on a finite window
and folded back into ``pre(period)`` form.

Example:
    >>> from betashift.seq import parse_generating
    >>> from betashift.moves import delete_zero, insert_zero
    >>> g = delete_zero(parse_generating("1101101(0101100)")).after
    >>> str(g), str(insert_zero(g, 5).after)
    ('11111(010110)', '111(110010)')
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .covers import factor_words
from .errors import (
    ExponentNotPositive,
    KTooSmall,
    MoveError,
    NotBinary,
    NotStrictlySofic,
    RuleInapplicable,
    SequenceError,
)
from .seq import (
    EventuallyPeriodicSeq,
    GeneratingSequence,
    ShiftClass,
    Word,
    classify,
    format_word,
    is_factor,
    validate_generating,
)

logger = logging.getLogger(__name__)


class MoveKind(str, Enum):
    BINARIZE = "Binarize"
    DELETE_ZERO = "DeleteZero"
    INSERT_ZERO = "InsertZero"
    ROTATE_NORMALIZE = "RotateNormalize"
    FULL_SHIFT = "FullShift"


@dataclass(frozen=True)
class Move:
    """
    One rewriting step: ``after`` is ``kind`` applied to ``before``.

    Attributes:
        kind: which rule
        params: rule parameters (n, k, l or S)
        before: input sequence
        after: output sequence, a valid generating sequence
    """
    kind: MoveKind
    params: Dict[str, int]
    before: GeneratingSequence
    after: GeneratingSequence

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "params": dict(self.params),
            "before": str(self.before),
            "after": str(self.after),
        }

    def __str__(self) -> str:
        args = ",".join(f"{key}={value}" for key, value in self.params.items())
        label = f"{self.kind.value}{{{args}}}" if args else self.kind.value
        return f"{label}: {self.before} -> {self.after}"


@dataclass(frozen=True)
class MoveTrace:
    """A chain of moves where each ``after`` is the next ``before``."""
    moves: Tuple[Move, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(self.moves))
        for first, second in zip(self.moves, self.moves[1:]):
            if first.after != second.before:
                raise MoveError(f"trace does not compose: {first.after} then {second.before}")

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self) -> Iterator[Move]:
        return iter(self.moves)

    @property
    def end(self) -> Optional[GeneratingSequence]:
        return self.moves[-1].after if self.moves else None

    def then(self, other: MoveTrace) -> MoveTrace:
        return MoveTrace(self.moves + other.moves)

    def replay(self, start: GeneratingSequence) -> GeneratingSequence:
        """
        Re-apply every move from ``start`` and return the final sequence.

        Raises:
            MoveError: a move does not start where the previous one ended or
                re-applying it gives a different result
        """
        current = start
        for move in self.moves:
            if move.before != current:
                raise MoveError(f"{move} does not start at {current}")
            result = apply_move(move.kind, move.params, current)
            if result.after != move.after:
                raise MoveError(f"replaying {move} gave {result.after}")
            current = result.after
        return current

    def to_dict(self) -> List[Dict[str, Any]]:
        return [move.to_dict() for move in self.moves]


@dataclass(frozen=True)
class RunLengthForm:
    """
    Run-length decomposition of a binary eventually periodic sequence.

    The sequence is ``beginning`` followed by the blocks
    ``1^p1 0^q1 ... 1^pm 0^qm`` repeated. Blocks start at the first position
    of the period that opens a run of 1s, and the digits before it join the
    beginning.

    Attributes:
        beginning: the effective preperiod
        blocks: (p_j, q_j) pairs
        S_b: number of 1s in the beginning
        S_p: number of 1s in one period
    """
    beginning: Word
    blocks: Tuple[Tuple[int, int], ...]
    S_b: int
    S_p: int

    @property
    def m(self) -> int:
        return len(self.blocks)

    def ones_through(self, k: int) -> int:
        """p_1 + ... + p_k."""
        return sum(p for p, _ in self.blocks[:k])

    def rotation(self, k: int) -> Word:
        """The period read from block k+1 onwards (block 1 when k = m)."""
        order = self.blocks[k:] + self.blocks[:k]
        return tuple(itertools.chain.from_iterable((1,) * p + (0,) * q for p, q in order))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "beginning": format_word(self.beginning),
            "blocks": [list(b) for b in self.blocks],
            "S_b": self.S_b,
            "S_p": self.S_p,
        }


def _phi(word: Sequence[int]) -> Word:
    return tuple(itertools.chain.from_iterable((1,) * d + (0,) for d in word))


def _require_binary(g: EventuallyPeriodicSeq) -> None:
    if not g.is_binary:
        raise NotBinary(f"{g} uses digits above 1; binarize it first")


def _require_strictly_sofic(g: EventuallyPeriodicSeq) -> None:
    if classify(g) is not ShiftClass.STRICTLY_SOFIC:
        raise NotStrictlySofic(f"{g} is periodic (finite type); the rule needs a preperiod")


def leading_run(g: EventuallyPeriodicSeq) -> int:
    """Length of the initial run of 1s, which is the longest run anywhere."""
    bound = g.n + g.p
    run = 0
    while run < bound and g.digit(run) == 1:
        run += 1
    return run


def _validated(s: EventuallyPeriodicSeq, g: GeneratingSequence, rule: str) -> GeneratingSequence:
    try:
        result = validate_generating(s)
    except SequenceError as exc:
        raise RuleInapplicable(f"{rule} on {g} gives {s}, not a generating sequence: {exc}") from exc
    if classify(result) is not classify(g):
        raise RuleInapplicable(f"{rule} on {g} collapses to {result}, which changes the class")
    return result


def _rewrite(
    g: GeneratingSequence,
    emit: Callable[[int], Word],
    lookback: int,
    rule: str,
) -> GeneratingSequence:
    """
    Apply a local rule position by position and fold the output.

    ``emit(i)`` gives the digits written for input position i and may read
    positions i - lookback .. i. From position n + lookback on the output
    repeats with the input period, so the window up to the first period
    boundary past that point, plus one period, determines everything.
    """
    cycles = max(0, -(-lookback // g.p))
    start = g.n + cycles * g.p
    head = tuple(itertools.chain.from_iterable(emit(i) for i in range(start)))
    tail = tuple(itertools.chain.from_iterable(emit(i) for i in range(start, start + g.p)))
    if not any(tail):
        raise RuleInapplicable(f"{rule} on {g} leaves no nonzero digit in the period")
    return _validated(EventuallyPeriodicSeq(head, tail), g, rule)


def _record(kind: MoveKind, params: Dict[str, int], before: GeneratingSequence,
            after: GeneratingSequence) -> Move:
    move = Move(kind, params, before, after)
    logger.debug("move %s", move)
    return move


def binarize(g: GeneratingSequence) -> Move:
    """
    Replace every digit j by 1^j 0.

    The result is over {0, 1}, has the same period digit sum and is in the
    same class.

    Example:
        >>> str(binarize(parse_generating("(20)")).after)
        '(1100)'
    """
    after = _validated(EventuallyPeriodicSeq(_phi(g.preperiod), _phi(g.period)), g, "binarize")
    return _record(MoveKind.BINARIZE, {}, g, after)


def delete_zero(g: GeneratingSequence) -> Move:
    """
    Delete the 0 that follows each occurrence of 1^n, n the leading run.

    Since 1^{n+1} never occurs, every occurrence of 1^n is a maximal run and
    is followed by a 0.

    Raises:
        NotStrictlySofic, NotBinary, RuleInapplicable
    """
    _require_strictly_sofic(g)
    _require_binary(g)
    n = leading_run(g)

    def emit(i: int) -> Word:
        digit = g.digit(i)
        if digit == 0 and i >= n and all(g.digit(j) == 1 for j in range(i - n, i)):
            return ()
        return (digit,)

    after = _rewrite(g, emit, n, "delete_zero")
    return _record(MoveKind.DELETE_ZERO, {"n": n}, g, after)


def insert_zero(g: GeneratingSequence, k: int) -> Move:
    """
    Insert a 0 after the initial 1^k and after every later occurrence of 01^k.

    Valid for every k > n/2 with n the leading run. For k = n it undoes
    :func:`delete_zero`; for k > n no run of 1s is that long and g comes
    back unchanged.

    Raises:
        KTooSmall: 2k <= n
        RuleInapplicable: the result is not a strictly sofic generating
            sequence
    """
    _require_strictly_sofic(g)
    _require_binary(g)
    n = leading_run(g)
    if k < 1 or 2 * k <= n:
        raise KTooSmall(f"k = {k} must exceed n/2 = {n}/2")

    def emit(i: int) -> Word:
        digit = g.digit(i)
        opens = i - k + 1 >= 0 and all(g.digit(j) == 1 for j in range(i - k + 1, i + 1))
        if opens and (i - k == -1 or g.digit(i - k) == 0):
            return (digit, 0)
        return (digit,)

    after = _rewrite(g, emit, k, "insert_zero")
    return _record(MoveKind.INSERT_ZERO, {"k": k}, g, after)


def run_length_form(g: EventuallyPeriodicSeq) -> RunLengthForm:
    """
    Run-length blocks of the period of a binary sequence.

    Raises:
        NotBinary: digits above 1
        MoveError: the period has no 0, so it has no block structure
    """
    _require_binary(g)
    period = g.period
    starts = [i for i in range(g.p) if period[i] == 1 and period[i - 1] == 0]
    if not starts:
        raise MoveError(f"period of {g} has no 0; run-length blocks are undefined")
    r = starts[0]
    rotated = period[r:] + period[:r]
    blocks = []
    for bit, run in itertools.groupby(rotated):
        size = len(list(run))
        if bit == 1:
            blocks.append([size, 0])
        else:
            blocks[-1][1] = size
    beginning = g.preperiod + period[:r]
    return RunLengthForm(
        beginning,
        tuple((p, q) for p, q in blocks),
        sum(beginning),
        sum(period),
    )


def rotate_normalize(g: GeneratingSequence, k: int, l: int) -> Move:
    """
    Replace g by 1^E followed by the period rotated to block k+1, where
    E = S_b + l*S_p + p_1 + ... + p_k.

    Raises:
        NotStrictlySofic, NotBinary
        MoveError: k outside 1..m
        ExponentNotPositive: E <= 0
        RuleInapplicable: the result fails the generating-sequence criterion
    """
    _require_strictly_sofic(g)
    form = run_length_form(g)
    if not 1 <= k <= form.m:
        raise MoveError(f"block index k = {k} outside 1..{form.m}")
    exponent = form.S_b + l * form.S_p + form.ones_through(k)
    if exponent <= 0:
        raise ExponentNotPositive(f"exponent {exponent} for k = {k}, l = {l} is not positive")
    candidate = EventuallyPeriodicSeq((1,) * exponent, form.rotation(k))
    after = _validated(candidate, g, "rotate_normalize")
    return _record(MoveKind.ROTATE_NORMALIZE, {"k": k, "l": l}, g, after)


def _full_shift_target(S: int) -> GeneratingSequence:
    return validate_generating(EventuallyPeriodicSeq((), (1,) * S + (0,)))


def full_shift_move(g: GeneratingSequence) -> Move:
    """Replace a periodic g by (1^S 0)^inf, the same full-shift class."""
    if classify(g) is not ShiftClass.SFT:
        raise MoveError(f"{g} is strictly sofic; FullShift applies to periodic sequences")
    S = sum(g.period)
    return _record(MoveKind.FULL_SHIFT, {"S": S}, g, _full_shift_target(S))


def apply_move(kind: MoveKind, params: Dict[str, int], g: GeneratingSequence) -> Move:
    """Re-apply a recorded move to g."""
    kind = MoveKind(kind)
    if kind is MoveKind.BINARIZE:
        return binarize(g)
    if kind is MoveKind.DELETE_ZERO:
        return delete_zero(g)
    if kind is MoveKind.INSERT_ZERO:
        return insert_zero(g, params["k"])
    if kind is MoveKind.ROTATE_NORMALIZE:
        return rotate_normalize(g, params["k"], params["l"])
    move = full_shift_move(g)
    if move.params["S"] != params.get("S", move.params["S"]):
        raise MoveError(f"FullShift{{S={params['S']}}} does not match {g}")
    return move


def _canonical_candidates(g: GeneratingSequence) -> List[Move]:
    form = run_length_form(g)
    moves = []
    for k in range(1, form.m + 1):
        base = form.S_b + form.ones_through(k)
        exponent = (base - 1) % form.S_p + 1
        l = (exponent - base) // form.S_p
        try:
            moves.append(rotate_normalize(g, k, l))
        except RuleInapplicable as exc:
            logger.debug("canonical candidate k=%d l=%d rejected: %s", k, l, exc)
    return moves


def canonical_form(g: GeneratingSequence) -> Tuple[GeneratingSequence, MoveTrace]:
    """
    A normal form for the flow class of a binary g.

    A periodic g maps to (1^S 0)^inf. A strictly sofic g maps to the valid
    1^E(rotated period)^inf with 1 <= E <= S_p whose (period, E) is
    lexicographically least. The candidate set is the same for every member
    of a rotation family, so the form is idempotent; when g is already
    canonical the trace is empty.

    Raises:
        NotBinary: digits above 1
    """
    _require_binary(g)
    if classify(g) is ShiftClass.SFT:
        target = _full_shift_target(sum(g.period))
        if target == g:
            return g, MoveTrace()
        move = full_shift_move(g)
        return move.after, MoveTrace((move,))

    candidates = _canonical_candidates(g)
    if not candidates:
        raise RuleInapplicable(f"no rotation of {g} validates")
    best = min(candidates, key=lambda move: (move.after.period, move.after.n))
    logger.debug("canonical form of %s: %s out of %d candidates", g, best.after, len(candidates))
    if best.after == g:
        return g, MoveTrace()
    return best.after, MoveTrace((best,))


def example_family(g: GeneratingSequence, count: int) -> Dict[int, List[Move]]:
    """
    The first ``count`` valid members of each rotation family of g.

    For every block index k the parameter l runs upward from the smallest
    value giving a positive exponent.
    """
    form = run_length_form(g)
    families: Dict[int, List[Move]] = {}
    for k in range(1, form.m + 1):
        base = form.S_b + form.ones_through(k)
        l = -((base - 1) // form.S_p)
        members: List[Move] = []
        attempts = 0
        while len(members) < count and attempts < count + g.n + g.p:
            try:
                members.append(rotate_normalize(g, k, l))
            except RuleInapplicable:
                pass
            l += 1
            attempts += 1
        families[k] = members
    return families


@dataclass
class BinarizeLanguageReport:
    """
    Words witnessing a failure of the binarization language check.

    Attributes:
        length: the word length bound
        image_not_factor: phi(w) for factors w that the image forbids
        factor_not_in_image: binary factors not inside any phi(w)
    """
    length: int
    image_not_factor: List[str] = field(default_factory=list)
    factor_not_in_image: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.image_not_factor and not self.factor_not_in_image

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> Dict[str, Any]:
        return {
            "length": self.length,
            "ok": self.ok,
            "image_not_factor": self.image_not_factor,
            "factor_not_in_image": self.factor_not_in_image,
        }


def binarize_language_check(g: GeneratingSequence, L: int) -> BinarizeLanguageReport:
    """
    Check phi on words of length <= L.

    The image of every factor of g must be a factor of the binarized
    sequence, and every binarized factor of length <= L must sit inside the
    image of some factor of length <= L.
    """
    target = binarize(g).after
    report = BinarizeLanguageReport(L)
    images = set()
    for length in range(1, L + 1):
        for w in sorted(factor_words(g, length)):
            image = _phi(w)
            images.add(format_word(image))
            if not is_factor(image, target):
                report.image_not_factor.append(format_word(image))
    for length in range(1, L + 1):
        for u in sorted(factor_words(target, length)):
            text = format_word(u)
            if not any(text in image for image in images):
                report.factor_not_in_image.append(text)
    return report


__all__ = [
    'MoveKind',
    'Move',
    'MoveTrace',
    'RunLengthForm',
    'BinarizeLanguageReport',
    'leading_run',
    'binarize',
    'delete_zero',
    'insert_zero',
    'run_length_form',
    'rotate_normalize',
    'full_shift_move',
    'apply_move',
    'canonical_form',
    'example_family',
    'binarize_language_check',
]
