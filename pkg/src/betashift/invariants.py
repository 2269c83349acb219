"""
Exact integer linear algebra and flow invariants.

Smith normal form with unimodular certificates, determinants, Bowen-Franks
groups of ``Id - A`` and the closed forms they take on beta-shift covers.
Matrices are dense numpy arrays of dtype ``object`` holding Python ints,
so no entry ever overflows.

Example:
    >>> from betashift.invariants import bowen_franks
    >>> str(bowen_franks([[2]]))
    '0 (sign -)'
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Matrix

from .arith import ExpansionStatus, algebraic_beta, beta_expansion_of_one, expansion_from_generating
from .covers import fiber_product_cover, fischer_cover
from .protocols import SupportsAdjacency
from .seq import GeneratingSequence, ShiftClass, classify

logger = logging.getLogger(__name__)

MatrixLike = Union[np.ndarray, Sequence[Sequence[int]], SupportsAdjacency]


def integer_matrix(M: MatrixLike) -> np.ndarray:
    """
    Coerce to a 2-d object array of Python ints.

    Accepts nested sequences, numpy arrays and anything with an
    ``adjacency_matrix()``.

    Raises:
        ValueError: empty, ragged or non-integral input
    """
    if isinstance(M, SupportsAdjacency):
        M = M.adjacency_matrix()
    rows = [list(row) for row in M]
    if not rows or not rows[0]:
        raise ValueError("matrix must have at least one row and one column")
    if any(len(row) != len(rows[0]) for row in rows):
        raise ValueError("matrix rows must have equal length")
    entries = []
    for row in rows:
        converted = []
        for x in row:
            value = int(x)
            if value != x:
                raise ValueError(f"matrix entry {x!r} is not an integer")
            converted.append(value)
        entries.append(converted)
    return np.array(entries, dtype=object)


def identity(size: int) -> np.ndarray:
    return np.array([[int(i == j) for j in range(size)] for i in range(size)], dtype=object)


def determinant(M: MatrixLike) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    A = integer_matrix(M)
    if A.shape[0] != A.shape[1]:
        raise ValueError(f"determinant of a non-square {A.shape[0]}x{A.shape[1]} matrix")
    return int(Matrix(A.tolist()).det(method="bareiss"))


@dataclass(frozen=True)
class SmithNormalForm:
    """
    D = L * M * R with L, R unimodular and D diagonal.

    Attributes:
        D: the diagonal form, same shape as M
        L: row operations (rows x rows)
        R: column operations (cols x cols)
    """
    D: np.ndarray = field(repr=False)
    L: np.ndarray = field(repr=False)
    R: np.ndarray = field(repr=False)

    @property
    def divisors(self) -> Tuple[int, ...]:
        return tuple(int(self.D[i, i]) for i in range(min(self.D.shape)))

    def verify(self, M: MatrixLike) -> bool:
        """Check the certificate identity, unimodularity and the divisor chain."""
        A = integer_matrix(M)
        if not np.array_equal(self.L.dot(A).dot(self.R), self.D):
            return False
        if abs(determinant(self.L)) != 1 or abs(determinant(self.R)) != 1:
            return False
        rows, cols = self.D.shape
        off_diagonal = any(self.D[i, j] != 0 for i in range(rows) for j in range(cols) if i != j)
        if off_diagonal:
            return False
        d = self.divisors
        if any(x < 0 for x in d):
            return False
        return all(
            (d[i + 1] == 0) if d[i] == 0 else d[i + 1] % d[i] == 0
            for i in range(len(d) - 1)
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "divisors": list(self.divisors),
            "D": self.D.tolist(),
            "L": self.L.tolist(),
            "R": self.R.tolist(),
        }

    def __repr__(self) -> str:
        return f"SmithNormalForm(divisors={list(self.divisors)})"


def _pivot(D: np.ndarray, t: int) -> Optional[Tuple[int, int]]:
    rows, cols = D.shape
    candidates = [
        (abs(D[i, j]), i, j)
        for i in range(t, rows)
        for j in range(t, cols)
        if D[i, j] != 0
    ]
    if not candidates:
        return None
    _, i, j = min(candidates)
    return i, j


def smith_normal_form(M: MatrixLike) -> SmithNormalForm:
    """
    Smith normal form over the integers with certificates.

    The pivot is the nonzero entry of least absolute value in the remaining
    block, lowest (row, column) first. Row and column reductions use floor
    division, so every remainder is smaller than the pivot and the pivot
    magnitude strictly decreases until its row and column are clear. A
    remaining entry the pivot does not divide is pulled into the pivot row.

    Example:
        >>> snf = smith_normal_form([[-1]])
        >>> snf.divisors, snf.L.tolist(), snf.R.tolist()
        ((1,), [[-1]], [[1]])
    """
    D = integer_matrix(M).copy()
    rows, cols = D.shape
    L = identity(rows)
    R = identity(cols)

    t = 0
    while t < min(rows, cols):
        pivot = _pivot(D, t)
        if pivot is None:
            break
        i, j = pivot
        if i != t:
            D[[t, i], :] = D[[i, t], :]
            L[[t, i], :] = L[[i, t], :]
        if j != t:
            D[:, [t, j]] = D[:, [j, t]]
            R[:, [t, j]] = R[:, [j, t]]

        p = D[t, t]
        for r in range(t + 1, rows):
            q = D[r, t] // p
            if q:
                D[r, :] = D[r, :] - q * D[t, :]
                L[r, :] = L[r, :] - q * L[t, :]
        for c in range(t + 1, cols):
            q = D[t, c] // p
            if q:
                D[:, c] = D[:, c] - q * D[:, t]
                R[:, c] = R[:, c] - q * R[:, t]

        if any(D[r, t] != 0 for r in range(t + 1, rows)) or any(
            D[t, c] != 0 for c in range(t + 1, cols)
        ):
            continue

        stray = next(
            (r for r in range(t + 1, rows) for c in range(t + 1, cols) if D[r, c] % p != 0),
            None,
        )
        if stray is not None:
            D[t, :] = D[t, :] + D[stray, :]
            L[t, :] = L[t, :] + L[stray, :]
            continue

        if p < 0:
            D[t, :] = -D[t, :]
            L[t, :] = -L[t, :]
        t += 1

    return SmithNormalForm(D, L, R)


@dataclass(frozen=True)
class BowenFranks:
    """
    The group Z^n / Z^n (Id - A) with the sign of det(Id - A).

    Attributes:
        torsion: invariant factors greater than 1, a divisibility chain
        free_rank: number of Z summands
        det_sign: '-', '0' or '+'
    """
    torsion: Tuple[int, ...]
    free_rank: int
    det_sign: str

    @property
    def group(self) -> Tuple[Tuple[int, ...], int]:
        return self.torsion, self.free_rank

    def to_dict(self) -> Dict[str, Any]:
        return {"torsion": list(self.torsion), "rank": self.free_rank, "sign": self.det_sign}

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return f"{' + '.join(parts) or '0'} (sign {self.det_sign})"


def _sign_char(value: int) -> str:
    return "-" if value < 0 else "+" if value > 0 else "0"


def bowen_franks(A: MatrixLike) -> BowenFranks:
    """Bowen-Franks group and determinant sign of Id - A."""
    matrix = integer_matrix(A)
    if matrix.shape[0] != matrix.shape[1]:
        raise ValueError("bowen_franks needs a square matrix")
    M = identity(matrix.shape[0]) - matrix
    divisors = smith_normal_form(M).divisors
    return BowenFranks(
        torsion=tuple(d for d in divisors if d > 1),
        free_rank=sum(1 for d in divisors if d == 0),
        det_sign=_sign_char(determinant(M)),
    )


def period_sum(g: GeneratingSequence) -> int:
    """S, the digit sum of the minimal period."""
    return sum(g.period)


def preperiod_sum(g: GeneratingSequence) -> int:
    """N, the digit sum of the minimal preperiod."""
    return sum(g.preperiod)


def fischer_matrix(g: GeneratingSequence) -> np.ndarray:
    """
    Adjacency matrix of the Fischer cover written down directly.

    Column 0 holds the digits (edges back to v1), the superdiagonal holds
    the forward edges, and the wrap edge adds 1 at (n+p-1, n).
    """
    size = g.n + g.p
    A = np.zeros((size, size), dtype=object)
    for i in range(size):
        A[i, 0] += g.digit(i)
        if i + 1 < size:
            A[i, i + 1] += 1
    A[size - 1, g.n] += 1
    return A


@dataclass
class ClosedFormReport:
    """Computed invariants of a generating sequence against their closed forms."""
    S: int
    N: int
    bf_fischer: BowenFranks
    bf_fiber: Optional[BowenFranks] = None
    expansion_digit_sum: Optional[int] = None
    mismatches: List[str] = field(default_factory=list)

    @property
    def matches(self) -> bool:
        return not self.mismatches

    def __bool__(self) -> bool:
        return self.matches

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "S": self.S,
            "N": self.N,
            "bf_fischer": self.bf_fischer.to_dict(),
        }
        if self.bf_fiber is not None:
            data["bf_fiber"] = self.bf_fiber.to_dict()
        if self.expansion_digit_sum is not None:
            data["expansion_digit_sum"] = self.expansion_digit_sum
        data["matches"] = self.matches
        if self.mismatches:
            data["mismatches"] = list(self.mismatches)
        return data


def verify_closed_forms(g: GeneratingSequence) -> ClosedFormReport:
    """
    Compute BF of the Fischer cover (and of the fiber cover when strictly
    sofic) by Smith normal form and compare with Z/S (sign -) and
    Z/S + Z^2. For an SFT the finite expansion e(beta), computed from the
    exact beta, must have digit sum S + 1.
    """
    S = period_sum(g)
    torsion = (S,) if S > 1 else ()
    cover = fischer_cover(g)
    report = ClosedFormReport(S, preperiod_sum(g), bowen_franks(cover.graph))

    closed = fischer_matrix(g)
    if not np.array_equal(closed, cover.graph.adjacency_matrix()):
        report.mismatches.append(
            f"closed-form matrix {closed.tolist()} differs from cover adjacency "
            f"{cover.graph.adjacency_matrix().tolist()}"
        )
    expected = BowenFranks(torsion, 0, "-")
    if report.bf_fischer != expected:
        report.mismatches.append(f"BF(A_F) is {report.bf_fischer}, closed form {expected}")

    if classify(g) is ShiftClass.STRICTLY_SOFIC:
        report.bf_fiber = bowen_franks(fiber_product_cover(g).graph)
        expected_fiber = BowenFranks(torsion, 2, "0")
        if report.bf_fiber != expected_fiber:
            report.mismatches.append(f"BF(A_P) is {report.bf_fiber}, closed form {expected_fiber}")
    else:
        e = beta_expansion_of_one(algebraic_beta(g))
        if e.status is not ExpansionStatus.FINITE:
            report.mismatches.append(f"expansion of 1 for {g} is {e.status.value}, expected Finite")
        else:
            report.expansion_digit_sum = sum(e.digits)
            if e.digits != expansion_from_generating(g).digits:
                report.mismatches.append(
                    f"expansion {e.digits} differs from {expansion_from_generating(g).digits}"
                )
            if report.expansion_digit_sum != S + 1:
                report.mismatches.append(
                    f"expansion digit sum {report.expansion_digit_sum}, closed form {S + 1}"
                )

    logger.debug("closed forms for %s: %s", g, "ok" if report.matches else report.mismatches)
    return report


__all__ = [
    'integer_matrix',
    'identity',
    'determinant',
    'SmithNormalForm',
    'smith_normal_form',
    'BowenFranks',
    'bowen_franks',
    'period_sum',
    'preperiod_sum',
    'fischer_matrix',
    'ClosedFormReport',
    'verify_closed_forms',
]
