"""
Labeled graph presentations of beta-shifts.

Builds the standard loop graph (truncated), the right Fischer cover and the
fiber product cover of a sofic beta-shift, and checks the presentation
properties they are supposed to have. Vertices are 0-based integers; vertex
``i`` of a Fischer cover is displayed as ``v{i+1}``.

Example:
    >>> from betashift.seq import parse_generating
    >>> from betashift.covers import fischer_cover, fiber_product_cover
    >>> cover = fischer_cover(parse_generating("11(10)"))
    >>> cover.graph.vertex_count, len(cover.graph.edges)
    (4, 7)
    >>> fiber = fiber_product_cover(parse_generating("1(10)"))
    >>> fiber.graph.vertex_count, len(fiber.graph.edges)
    (7, 11)
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Set, Tuple

import networkx as nx
import numpy as np

from .errors import CoverError
from .seq import (
    EventuallyPeriodicSeq,
    GeneratingSequence,
    ShiftClass,
    Word,
    classify,
    format_word,
    is_factor,
    normalize,
)

logger = logging.getLogger(__name__)


class Edge(NamedTuple):
    src: int
    dst: int
    label: int


@dataclass(frozen=True)
class LabeledGraph:
    """
    Finite directed multigraph with nonnegative integer edge labels.

    Attributes:
        vertex_count: number of vertices (ids 0..vertex_count-1)
        edges: (src, dst, label) triples
        vertex_names: display names (default v1, v2, ...)
    """
    vertex_count: int
    edges: Tuple[Edge, ...]
    vertex_names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        edges = tuple(Edge(*e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.vertex_count <= 0:
            raise CoverError("a labeled graph needs at least one vertex")
        for e in edges:
            if not (0 <= e.src < self.vertex_count and 0 <= e.dst < self.vertex_count):
                raise CoverError(f"edge {e} leaves the vertex range 0..{self.vertex_count - 1}")
            if e.label < 0:
                raise CoverError(f"edge {e} has a negative label")
        if self.vertex_names is not None:
            object.__setattr__(self, "vertex_names", tuple(self.vertex_names))
            if len(self.vertex_names) != self.vertex_count:
                raise CoverError("vertex_names must name every vertex")

    @property
    def names(self) -> Tuple[str, ...]:
        if self.vertex_names is not None:
            return self.vertex_names
        return tuple(f"v{i + 1}" for i in range(self.vertex_count))

    def out_edges(self, v: int) -> List[Edge]:
        return [e for e in self.edges if e.src == v]

    def in_edges(self, v: int) -> List[Edge]:
        return [e for e in self.edges if e.dst == v]

    def out_degree(self, v: int) -> int:
        return sum(1 for e in self.edges if e.src == v)

    def in_degree(self, v: int) -> int:
        return sum(1 for e in self.edges if e.dst == v)

    def is_essential(self) -> bool:
        """Every vertex emits and receives at least one edge."""
        return all(
            self.out_degree(v) > 0 and self.in_degree(v) > 0
            for v in range(self.vertex_count)
        )

    def alphabet(self) -> Tuple[int, ...]:
        return tuple(sorted({e.label for e in self.edges}))

    def adjacency_matrix(self) -> np.ndarray:
        """Integer adjacency matrix (entry [u, v] counts edges u -> v)."""
        A = np.zeros((self.vertex_count, self.vertex_count), dtype=object)
        for e in self.edges:
            A[e.src, e.dst] += 1
        return A

    def symbolic_adjacency(self) -> List[List[Tuple[int, ...]]]:
        """Cell [u][v] lists the labels of the edges u -> v, sorted."""
        cells: List[List[List[int]]] = [
            [[] for _ in range(self.vertex_count)] for _ in range(self.vertex_count)
        ]
        for e in self.edges:
            cells[e.src][e.dst].append(e.label)
        return [[tuple(sorted(cell)) for cell in row] for row in cells]

    def to_networkx(self) -> nx.MultiDiGraph:
        G = nx.MultiDiGraph()
        G.add_nodes_from(range(self.vertex_count))
        for e in self.edges:
            G.add_edge(e.src, e.dst, label=e.label)
        return G

    def induced(self, vertices: Iterable[int]) -> LabeledGraph:
        """Subgraph on the given vertices, renumbered in ascending order."""
        kept = sorted(set(vertices))
        index = {old: new for new, old in enumerate(kept)}
        return LabeledGraph(
            len(kept),
            tuple(
                Edge(index[e.src], index[e.dst], e.label)
                for e in self.edges
                if e.src in index and e.dst in index
            ),
            tuple(self.names[v] for v in kept),
        )

    def essential_vertices(self) -> List[int]:
        """
        Vertices of the maximal essential subgraph.

        Sinks and sources are removed until none remain.
        """
        G = self.to_networkx()
        rounds = 0
        while True:
            stranded = sorted(q for q in G if G.out_degree(q) == 0 or G.in_degree(q) == 0)
            if not stranded:
                break
            G.remove_nodes_from(stranded)
            rounds += 1
        logger.debug("essential subgraph: %d of %d vertices after %d passes",
                     G.number_of_nodes(), self.vertex_count, rounds)
        return sorted(G.nodes)

    def to_dict(self) -> Dict[str, Any]:
        names = self.names
        return {
            "vertices": list(names),
            "edges": [
                {"src": names[e.src], "dst": names[e.dst], "label": e.label}
                for e in self.edges
            ],
        }

    def to_dot(self, name: str = "G", attributes: Optional[Dict[int, str]] = None) -> str:
        """Graphviz DOT text; ``attributes`` adds per-vertex attribute strings."""
        names = self.names
        lines = [f'digraph "{name}" {{', "  rankdir=LR;"]
        for v in range(self.vertex_count):
            extra = f" [{attributes[v]}]" if attributes and v in attributes else ""
            lines.append(f'  "{names[v]}"{extra};')
        for e in self.edges:
            lines.append(f'  "{names[e.src]}" -> "{names[e.dst]}" [label="{format_word([e.label])}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"LabeledGraph({self.vertex_count} vertices, {len(self.edges)} edges)"


@dataclass(frozen=True)
class FischerCover:
    """
    Right Fischer cover of a sofic beta-shift.

    Vertex i (0-based) corresponds to v_{i+1}; n and p are the minimal
    preperiod and period lengths of the generating sequence.
    """
    graph: LabeledGraph
    n: int
    p: int

    def to_dict(self) -> Dict[str, Any]:
        return {**self.graph.to_dict(), "n": self.n, "p": self.p}

    def to_dot(self) -> str:
        return self.graph.to_dot("fischer")


@dataclass(frozen=True)
class FiberProductCover:
    """
    Essential part of the fiber product of the Fischer cover with itself.

    Attributes:
        graph: the labeled graph
        involution: vertex permutation induced by (u, v) -> (v, u)
        diagonal: vertices of the form (u, u), the fixed points
        pairs: the Fischer vertex pair behind each vertex
        is_sft: True when the input was periodic and only the diagonal survives
    """
    graph: LabeledGraph
    involution: Tuple[int, ...]
    diagonal: FrozenSet[int]
    pairs: Tuple[Tuple[int, int], ...] = field(default=())
    is_sft: bool = False

    @property
    def off_diagonal(self) -> List[int]:
        return [v for v in range(self.graph.vertex_count) if v not in self.diagonal]

    def involution_is_automorphism(self) -> bool:
        """Label-preserving graph automorphism of order dividing 2."""
        inv = self.involution
        if any(inv[inv[v]] != v for v in range(len(inv))):
            return False
        mapped = Counter(Edge(inv[e.src], inv[e.dst], e.label) for e in self.graph.edges)
        return mapped == Counter(self.graph.edges)

    def to_dict(self) -> Dict[str, Any]:
        names = self.graph.names
        data = self.graph.to_dict()
        data["involution"] = {names[v]: names[w] for v, w in enumerate(self.involution)}
        data["diagonal"] = [names[v] for v in sorted(self.diagonal)]
        data["is_sft"] = self.is_sft
        return data

    def to_dot(self) -> str:
        return self.graph.to_dot(
            "fiber", {v: "shape=doublecircle" for v in self.diagonal}
        )


@dataclass
class MultiplicityReport:
    """
    Largest number of closed-path presentations of a periodic label sequence.

    Attributes:
        max_preimages: the maximum over all words checked
        witnesses: (w^inf, count) for each word achieving the maximum
        max_period: longest word length checked
    """
    max_preimages: int
    witnesses: List[Tuple[EventuallyPeriodicSeq, int]]
    max_period: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "max_preimages": self.max_preimages,
            "witnesses": [{"word": str(w), "count": c} for w, c in self.witnesses],
            "max_period": self.max_period,
        }


@dataclass
class LanguageDiff:
    """Words of one length in exactly one of the two languages."""
    length: int
    only_in_cover: List[str]
    only_in_criterion: List[str]

    @property
    def is_empty(self) -> bool:
        return not self.only_in_cover and not self.only_in_criterion

    def to_dict(self) -> Dict[str, Any]:
        return {
            "length": self.length,
            "only_in_cover": self.only_in_cover,
            "only_in_criterion": self.only_in_criterion,
        }


def _loop_edges(g: EventuallyPeriodicSeq, i: int, forward: Optional[int]) -> List[Edge]:
    """Edges leaving v_{i+1}: labels below g_{i+1} return to v1, g_{i+1} goes forward."""
    digit = g.digit(i)
    edges = [Edge(i, 0, k) for k in range(digit)]
    if forward is not None:
        edges.append(Edge(i, forward, digit))
    return edges


def standard_loop_graph(g: GeneratingSequence, depth: int) -> LabeledGraph:
    """
    The standard loop graph restricted to v1..v_depth.

    The forward edge leaving v_depth has no target in the truncation and is
    dropped, so the result is never essential at the last vertex.

    Raises:
        CoverError: if depth < n + p
    """
    if depth < g.n + g.p:
        raise CoverError(f"depth {depth} is smaller than n + p = {g.n + g.p}")
    edges: List[Edge] = []
    for i in range(depth):
        edges.extend(_loop_edges(g, i, i + 1 if i + 1 < depth else None))
    return LabeledGraph(depth, tuple(edges))


def fischer_cover(g: GeneratingSequence) -> FischerCover:
    """
    Right Fischer cover: the loop graph on v1..v_{n+p} plus the wrap edge.

    The edge labeled g_{n+p} leaving v_{n+p} returns to v_{n+1} (to v1 when
    n = 0).
    """
    size = g.n + g.p
    edges: List[Edge] = []
    for i in range(size):
        edges.extend(_loop_edges(g, i, i + 1 if i + 1 < size else g.n))
    graph = LabeledGraph(size, tuple(edges))
    if not right_resolving_check(graph) or not follower_separated_check(graph):
        raise CoverError(f"cover of {g} is not a Fischer cover; is the sequence validated?")
    return FischerCover(graph, g.n, g.p)


def krieger_cover(g: GeneratingSequence) -> FischerCover:
    """
    Right Krieger cover.

    For a sofic beta-shift it coincides with the right Fischer cover, so this
    is an alias of :func:`fischer_cover`.
    """
    return fischer_cover(g)


def _pair_name(names: Tuple[str, ...], a: int, b: int) -> str:
    if a == b:
        return names[a]
    # the coordinate on the period cycle has the larger index
    return f"{names[b]}'" if b > a else f"{names[a]}''"


def fiber_product_cover(g: GeneratingSequence) -> FiberProductCover:
    """
    Maximal essential subgraph of the self fiber product of the Fischer cover.

    Vertices are ordered diagonal first (v1..v_{n+p}), then off-diagonal pairs
    in lexicographic order. For a periodic g only the diagonal survives and
    ``is_sft`` is set.
    """
    fischer = fischer_cover(g).graph
    size = fischer.vertex_count
    by_label: Dict[int, List[Edge]] = {}
    for e in fischer.edges:
        by_label.setdefault(e.label, []).append(e)

    all_pairs = [(a, b) for a in range(size) for b in range(size)]
    pair_index = {pair: i for i, pair in enumerate(all_pairs)}
    product_edges = [
        Edge(pair_index[(e.src, f.src)], pair_index[(e.dst, f.dst)], label)
        for label, group in by_label.items()
        for e in group
        for f in group
    ]
    product = LabeledGraph(len(all_pairs), tuple(product_edges))
    kept = [all_pairs[i] for i in product.essential_vertices()]

    ordered = sorted(kept, key=lambda ab: (ab[0] != ab[1], ab))
    index = {pair: i for i, pair in enumerate(ordered)}
    names = tuple(_pair_name(fischer.names, a, b) for a, b in ordered)
    edges = tuple(
        Edge(index[all_pairs[e.src]], index[all_pairs[e.dst]], e.label)
        for e in product.edges
        if all_pairs[e.src] in index and all_pairs[e.dst] in index
    )
    graph = LabeledGraph(len(ordered), edges, names)
    involution = tuple(index[(b, a)] for a, b in ordered)
    diagonal = frozenset(i for i, (a, b) in enumerate(ordered) if a == b)
    cover = FiberProductCover(
        graph,
        involution,
        diagonal,
        tuple(ordered),
        is_sft=classify(g) is ShiftClass.SFT,
    )
    logger.debug("fiber product of %s: %d diagonal, %d off-diagonal vertices",
                 g, len(diagonal), len(ordered) - len(diagonal))
    return cover


def _transitions(G: LabeledGraph) -> Dict[Tuple[int, int], int]:
    return {(e.src, e.label): e.dst for e in G.edges}


def _greatest_rotation(word: Word) -> Word:
    return max(word[i:] + word[:i] for i in range(len(word)))


def _is_primitive(word: Word) -> bool:
    size = len(word)
    return all(
        word[:d] * (size // d) != word
        for d in range(1, size)
        if size % d == 0
    )


def covering_multiplicity(g: GeneratingSequence, max_period: int) -> MultiplicityReport:
    """
    Count presentations of periodic label sequences in the Fischer cover.

    For every primitive word w with |w| <= max_period (one representative per
    rotation class, its greatest rotation) count the vertices from which w
    reads a closed path. The cover is right-resolving, so each such vertex is
    one bi-infinite presentation of w^inf.

    Raises:
        CoverError: if max_period < p
    """
    if max_period < g.p:
        raise CoverError(f"max_period {max_period} is smaller than p = {g.p}")
    G = fischer_cover(g).graph
    step = _transitions(G)
    alphabet = range(g.digit(0) + 1)

    counts: Dict[Word, int] = {}
    for length in range(1, max_period + 1):
        for word in itertools.product(alphabet, repeat=length):
            if not _is_primitive(word) or _greatest_rotation(word) != word:
                continue
            closed = 0
            for start in range(G.vertex_count):
                v: Optional[int] = start
                for label in word:
                    v = step.get((v, label))
                    if v is None:
                        break
                if v == start:
                    closed += 1
            if closed:
                counts[word] = closed

    best = max(counts.values())
    witnesses = [
        (EventuallyPeriodicSeq((), word), c)
        for word, c in sorted(counts.items())
        if c == best
    ]
    return MultiplicityReport(best, witnesses, max_period)


def right_resolving_check(G: LabeledGraph) -> bool:
    """No vertex emits two edges with the same label."""
    seen: Set[Tuple[int, int]] = set()
    for e in G.edges:
        key = (e.src, e.label)
        if key in seen:
            return False
        seen.add(key)
    return True


def follower_separated_check(G: LabeledGraph) -> bool:
    """
    Moore-style partition refinement on (label, target class) signatures.

    Separated iff the stable partition has singleton classes only.
    """
    classes = [0] * G.vertex_count
    while True:
        signatures = [
            (classes[v], tuple(sorted({(e.label, classes[e.dst]) for e in G.out_edges(v)})))
            for v in range(G.vertex_count)
        ]
        numbering: Dict[Any, int] = {}
        refined = [numbering.setdefault(sig, len(numbering)) for sig in signatures]
        if len(numbering) == len(set(classes)):
            break
        classes = refined
    return len(set(classes)) == G.vertex_count


def path_language(G: LabeledGraph, L: int) -> Set[Word]:
    """Label words of all paths with L edges."""
    frontier: Dict[Word, FrozenSet[int]] = {(): frozenset(range(G.vertex_count))}
    outgoing: Dict[int, List[Edge]] = {v: G.out_edges(v) for v in range(G.vertex_count)}
    for _ in range(L):
        extended: Dict[Word, Set[int]] = {}
        for word, vertices in frontier.items():
            for v in vertices:
                for e in outgoing[v]:
                    extended.setdefault(word + (e.label,), set()).add(e.dst)
        frontier = {w: frozenset(vs) for w, vs in extended.items()}
    return set(frontier)


def factor_words(g: GeneratingSequence, L: int) -> Set[Word]:
    """All words of length L accepted by the suffix criterion."""
    alphabet = range(g.digit(0) + 1)
    return {w for w in itertools.product(alphabet, repeat=L) if is_factor(w, g)}


def language_oracle_diff(g: GeneratingSequence, L: int) -> LanguageDiff:
    """Compare the Fischer cover path language with the suffix criterion."""
    cover_words = path_language(fischer_cover(g).graph, L)
    criterion_words = factor_words(g, L)
    return LanguageDiff(
        L,
        sorted(format_word(w) for w in cover_words - criterion_words),
        sorted(format_word(w) for w in criterion_words - cover_words),
    )


__all__ = [
    'Edge',
    'LabeledGraph',
    'FischerCover',
    'FiberProductCover',
    'MultiplicityReport',
    'LanguageDiff',
    'standard_loop_graph',
    'fischer_cover',
    'krieger_cover',
    'fiber_product_cover',
    'covering_multiplicity',
    'right_resolving_check',
    'follower_separated_check',
    'path_language',
    'factor_words',
    'language_oracle_diff',
]
