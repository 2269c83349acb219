"""
Structural types shared across betashift.

Graphs, covers and reports are plain dataclasses; these protocols name the
small interfaces other modules rely on, so that invariants and the CLI can
accept any object providing them.
"""

from typing import Any, Dict, Protocol, runtime_checkable

import numpy as np


@runtime_checkable
class SupportsAdjacency(Protocol):
    """
    Anything with a square integer adjacency matrix.

    Example:
        >>> from betashift.covers import fischer_cover
        >>> from betashift.seq import parse_generating
        >>> graph = fischer_cover(parse_generating("(110)")).graph
        >>> isinstance(graph, SupportsAdjacency)
        True
    """
    vertex_count: int

    def adjacency_matrix(self) -> np.ndarray:
        """Entry [u, v] counts the edges u -> v."""
        ...


@runtime_checkable
class SupportsToDict(Protocol):
    """Results the CLI can render as JSON."""

    def to_dict(self) -> Dict[str, Any]:
        ...


__all__ = ['SupportsAdjacency', 'SupportsToDict']
