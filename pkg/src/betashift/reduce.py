"""
Flow moves on unlabeled graphs and the reduction of fiber product covers.

Symbol contraction removes a vertex with one incoming and one outgoing edge;
in-amalgamation merges two vertices with the same out-neighbours. Both keep
the Bowen-Franks group and both are applied equivariantly when the graph
carries an involution. :func:`reduce_fiber_cover` drives them to a normal
form with 3S vertices and 6S edges.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import categorical_multiedge_match, categorical_node_match

from .covers import FiberProductCover, fiber_product_cover
from .errors import AmalgamationError, ContractionError, NotBinary, NotStrictlySofic, ReductionError
from .invariants import BowenFranks, bowen_franks, period_sum
from .moves import MoveTrace, binarize, canonical_form
from .seq import GeneratingSequence, ShiftClass, classify

logger = logging.getLogger(__name__)

UnlabeledEdge = Tuple[int, int]


@dataclass(frozen=True)
class UnlabeledGraph:
    """
    Directed multigraph without labels, optionally with an involution.

    Attributes:
        vertex_count: number of vertices (ids 0..vertex_count-1)
        edges: (src, dst) pairs, repeated for parallel edges
        involution: vertex permutation of order dividing 2, or None
        vertex_names: display names carried through the moves
    """
    vertex_count: int
    edges: Tuple[UnlabeledEdge, ...]
    involution: Optional[Tuple[int, ...]] = None
    vertex_names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(s), int(d)) for s, d in self.edges))
        for s, d in self.edges:
            if not (0 <= s < self.vertex_count and 0 <= d < self.vertex_count):
                raise ReductionError(f"edge ({s}, {d}) leaves the vertex range")
        if self.involution is not None:
            inv = tuple(self.involution)
            object.__setattr__(self, "involution", inv)
            if len(inv) != self.vertex_count or any(inv[inv[v]] != v for v in range(len(inv))):
                raise ReductionError("involution must be a permutation of order dividing 2")
        if self.vertex_names is not None:
            object.__setattr__(self, "vertex_names", tuple(self.vertex_names))

    @classmethod
    def from_cover(cls, cover: FiberProductCover) -> UnlabeledGraph:
        """Underlying graph of a fiber product cover, labels forgotten."""
        graph = cover.graph
        return cls(
            graph.vertex_count,
            tuple((e.src, e.dst) for e in graph.edges),
            cover.involution,
            graph.names,
        )

    @property
    def names(self) -> Tuple[str, ...]:
        if self.vertex_names is not None:
            return self.vertex_names
        return tuple(f"v{i + 1}" for i in range(self.vertex_count))

    def image(self, v: int) -> int:
        return v if self.involution is None else self.involution[v]

    def out_targets(self, v: int) -> Counter:
        return Counter(d for s, d in self.edges if s == v)

    def in_degree(self, v: int) -> int:
        return sum(1 for _, d in self.edges if d == v)

    def out_degree(self, v: int) -> int:
        return sum(1 for s, _ in self.edges if s == v)

    def is_essential(self) -> bool:
        return all(self.in_degree(v) and self.out_degree(v) for v in range(self.vertex_count))

    def adjacency_matrix(self) -> np.ndarray:
        A = np.zeros((self.vertex_count, self.vertex_count), dtype=object)
        for s, d in self.edges:
            A[s, d] += 1
        return A

    def to_networkx(self) -> nx.MultiDiGraph:
        G = nx.MultiDiGraph()
        G.add_nodes_from(range(self.vertex_count))
        G.add_edges_from(self.edges)
        return G

    def strongly_connected_components(self) -> List[List[int]]:
        return sorted(sorted(c) for c in nx.strongly_connected_components(self.to_networkx()))

    def with_involution_graph(self) -> nx.MultiDiGraph:
        """Graph edges as kind 'edge' plus v -> image(v) as kind 'inv'."""
        G = nx.MultiDiGraph()
        for v in range(self.vertex_count):
            G.add_node(v, fixed=self.image(v) == v)
        for s, d in self.edges:
            G.add_edge(s, d, kind="edge")
        for v in range(self.vertex_count):
            G.add_edge(v, self.image(v), kind="inv")
        return G

    def to_dict(self) -> Dict[str, Any]:
        names = self.names
        data: Dict[str, Any] = {
            "vertices": list(names),
            "edges": [{"src": names[s], "dst": names[d]} for s, d in self.edges],
        }
        if self.involution is not None:
            data["involution"] = {names[v]: names[w] for v, w in enumerate(self.involution)}
        return data

    def to_dot(self, name: str = "G") -> str:
        names = self.names
        lines = [f'digraph "{name}" {{']
        for v in range(self.vertex_count):
            shape = " [shape=doublecircle]" if self.involution and self.image(v) == v else ""
            lines.append(f'  "{names[v]}"{shape};')
        for s, d in self.edges:
            lines.append(f'  "{names[s]}" -> "{names[d]}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"UnlabeledGraph({self.vertex_count} vertices, {len(self.edges)} edges)"


def _rebuild(
    G: UnlabeledGraph,
    edges: Iterable[UnlabeledEdge],
    representative: Dict[int, int],
) -> UnlabeledGraph:
    """
    Renumber after a move.

    ``representative`` sends every surviving old vertex to the old vertex
    that stands for it; vertices missing from it are removed.
    """
    alive = sorted(set(representative.values()))
    index = {old: new for new, old in enumerate(alive)}
    involution = None
    if G.involution is not None:
        involution = tuple(index[representative[G.involution[old]]] for old in alive)
    return UnlabeledGraph(
        len(alive),
        tuple((index[s], index[d]) for s, d in edges),
        involution,
        tuple(G.names[old] for old in alive),
    )


def is_unit_vertex(G: UnlabeledGraph, v: int) -> bool:
    """One incoming edge, one outgoing edge, no loop."""
    return G.in_degree(v) == 1 and G.out_degree(v) == 1 and (v, v) not in G.edges


def contract_unit_vertex(G: UnlabeledGraph, v: int) -> UnlabeledGraph:
    """
    Replace a -> v -> b by a single edge a -> b, removing v.

    With an involution the image of v is contracted in the same step.

    Raises:
        ContractionError: v is not a unit vertex, or its neighbours include
            the vertices being removed
    """
    if not 0 <= v < G.vertex_count:
        raise ContractionError(f"vertex {v} out of range")
    removed = {v, G.image(v)}
    edges = list(G.edges)
    for u in sorted(removed):
        if not is_unit_vertex(G, u):
            raise ContractionError(
                f"{G.names[u]} needs in-degree 1, out-degree 1 and no loop "
                f"(has {G.in_degree(u)}, {G.out_degree(u)})"
            )
        incoming = next(e for e in G.edges if e[1] == u)
        outgoing = next(e for e in G.edges if e[0] == u)
        if incoming[0] in removed or outgoing[1] in removed:
            raise ContractionError(f"{G.names[u]} is adjacent to a vertex removed with it")
        edges.remove(incoming)
        edges.remove(outgoing)
        edges.append((incoming[0], outgoing[1]))
    return _rebuild(G, edges, {x: x for x in range(G.vertex_count) if x not in removed})


def in_amalgamate(G: UnlabeledGraph, u: int, w: int) -> UnlabeledGraph:
    """
    Merge w into u when both emit edges to the same multiset of targets.

    The merged vertex keeps the lower id and all incoming edges of both; one
    copy of the shared out-edges survives. With an involution the image pair
    is merged as well.

    Raises:
        AmalgamationError: u == w or the out-target multisets differ
    """
    if u == w:
        raise AmalgamationError("cannot amalgamate a vertex with itself")
    pairs = {frozenset((u, w)), frozenset((G.image(u), G.image(w)))}
    for pair in pairs:
        a, b = sorted(pair)
        if G.out_targets(a) != G.out_targets(b):
            raise AmalgamationError(
                f"{G.names[a]} and {G.names[b]} emit to different vertices: "
                f"{sorted(G.out_targets(a).elements())} vs {sorted(G.out_targets(b).elements())}"
            )

    representative = {x: x for x in range(G.vertex_count)}

    def find(x: int) -> int:
        while representative[x] != x:
            x = representative[x]
        return x

    for pair in pairs:
        a, b = sorted(find(x) for x in pair)
        if a != b:
            representative[b] = a
    representative = {x: find(x) for x in representative}
    dropped = {x for x, r in representative.items() if x != r}

    edges = [
        (representative[s], representative[d])
        for s, d in G.edges
        if s not in dropped
    ]
    return _rebuild(G, edges, representative)


def amalgamation_candidates(G: UnlabeledGraph) -> List[Tuple[int, int]]:
    """One (u, w) per involution orbit of pairs with equal out-targets."""
    signatures: Dict[Tuple[int, ...], List[int]] = {}
    for v in range(G.vertex_count):
        signatures.setdefault(tuple(sorted(G.out_targets(v).elements())), []).append(v)
    seen = set()
    found = []
    for group in signatures.values():
        for i, a in enumerate(group):
            for b in group[i + 1:]:
                orbit = frozenset({frozenset((a, b)), frozenset((G.image(a), G.image(b)))})
                if orbit not in seen:
                    seen.add(orbit)
                    found.append((a, b))
    return found


@dataclass
class ReductionStep:
    """One contraction or amalgamation with the invariants around it."""
    op: str
    args: Tuple[str, ...]
    bf_before: BowenFranks
    bf_after: BowenFranks
    graph: UnlabeledGraph = field(repr=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "op": self.op,
            "args": list(self.args),
            "vertices_after": self.graph.vertex_count,
            "edges_after": len(self.graph.edges),
            "bf_before": self.bf_before.to_dict(),
            "bf_after": self.bf_after.to_dict(),
        }


@dataclass
class ReductionLog:
    """
    Audit trail of :func:`reduce_fiber_cover`.

    Attributes:
        sequence: the sequence whose fiber cover was reduced (canonical form)
        trace: moves from the input to that sequence
        start: the underlying graph before any step
        steps: every step in order
    """
    sequence: GeneratingSequence
    trace: MoveTrace
    start: UnlabeledGraph
    steps: List[ReductionStep] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sequence": str(self.sequence),
            "trace": self.trace.to_dict(),
            "start": {"vertices": self.start.vertex_count, "edges": len(self.start.edges)},
            "steps": [step.to_dict() for step in self.steps],
        }


def _step(log: ReductionLog, G: UnlabeledGraph, H: UnlabeledGraph, op: str,
          args: Sequence[str]) -> None:
    before, after = bowen_franks(G), bowen_franks(H)
    logger.debug("%s %s: %d -> %d vertices, BF %s -> %s",
                 op, ",".join(args), G.vertex_count, H.vertex_count, before, after)
    if before.group != after.group:
        raise ReductionError(f"{op} {args} changed the Bowen-Franks group: {before} -> {after}")
    log.steps.append(ReductionStep(op, tuple(args), before, after, H))


def reduce_fiber_cover(g: GeneratingSequence) -> Tuple[UnlabeledGraph, ReductionLog]:
    """
    Reduce the underlying graph of the fiber product cover.

    g is first replaced by its canonical form. Unit vertices are contracted,
    lowest id first, until none remain; then the unique eligible pair (up to
    the involution) is amalgamated until no pair is eligible. The group of
    Id - A is checked after every step.

    Raises:
        NotStrictlySofic: g is periodic
        NotBinary: g uses digits above 1
        AmalgamationError: more than one eligible pair at some stage
    """
    if classify(g) is not ShiftClass.STRICTLY_SOFIC:
        raise NotStrictlySofic(f"{g} is periodic; its fiber product is the Fischer cover")
    if not g.is_binary:
        raise NotBinary(f"{g} uses digits above 1; binarize it first")

    canonical, trace = canonical_form(g)
    G = UnlabeledGraph.from_cover(fiber_product_cover(canonical))
    log = ReductionLog(canonical, trace, G)

    while True:
        unit = next((v for v in range(G.vertex_count) if is_unit_vertex(G, v)), None)
        if unit is None:
            break
        names = sorted({G.names[unit], G.names[G.image(unit)]})
        H = contract_unit_vertex(G, unit)
        _step(log, G, H, "Contract", names)
        G = H

    while True:
        candidates = amalgamation_candidates(G)
        if not candidates:
            break
        if len(candidates) > 1:
            listed = ", ".join(f"{G.names[a]}/{G.names[b]}" for a, b in candidates)
            raise AmalgamationError(f"several amalgamation pairs for {canonical}: {listed}")
        u, w = candidates[0]
        H = in_amalgamate(G, u, w)
        _step(log, G, H, "Amalgamate", (G.names[u], G.names[w]))
        G = H

    logger.debug("reduced fiber cover of %s: %d vertices, %d edges in %d steps",
                 canonical, G.vertex_count, len(G.edges), len(log.steps))
    return G, log


def _binary(g: GeneratingSequence) -> GeneratingSequence:
    return g if g.is_binary else binarize(g).after


@dataclass
class EquivariantResult:
    """
    Equivariant flow equivalence of two fiber product covers.

    Truthy iff the period sums agree; ``isomorphic`` reports whether the
    reduced graphs with involution were found isomorphic.
    """
    S1: int
    S2: int
    isomorphic: bool
    reduced: Tuple[UnlabeledGraph, UnlabeledGraph] = field(repr=False)

    @property
    def equivalent(self) -> bool:
        return self.S1 == self.S2

    def __bool__(self) -> bool:
        return self.equivalent

    def to_dict(self) -> Dict[str, Any]:
        return {
            "equivalent": self.equivalent,
            "S1": self.S1,
            "S2": self.S2,
            "isomorphic": self.isomorphic,
            "reduced": [
                {"vertices": G.vertex_count, "edges": len(G.edges)} for G in self.reduced
            ],
        }


def equivariant_isomorphic(G: UnlabeledGraph, H: UnlabeledGraph) -> bool:
    """Isomorphism of graphs that also intertwines the involutions."""
    return nx.is_isomorphic(
        G.with_involution_graph(),
        H.with_involution_graph(),
        node_match=categorical_node_match("fixed", False),
        edge_match=categorical_multiedge_match("kind", None),
    )


def equivariant_fiber_compare(g1: GeneratingSequence, g2: GeneratingSequence) -> EquivariantResult:
    """
    Decide equivariant flow equivalence of the fiber product covers.

    Equivalent iff S1 = S2; in that case the reduced graphs must be
    isomorphic together with their involutions.

    Raises:
        NotStrictlySofic: either input is periodic
        ReductionError: equal period sums but non-isomorphic reductions
    """
    for g in (g1, g2):
        if classify(g) is not ShiftClass.STRICTLY_SOFIC:
            raise NotStrictlySofic(f"{g} is periodic; equivariant comparison needs a preperiod")
    G1, _ = reduce_fiber_cover(_binary(g1))
    G2, _ = reduce_fiber_cover(_binary(g2))
    result = EquivariantResult(period_sum(g1), period_sum(g2), equivariant_isomorphic(G1, G2), (G1, G2))
    if result.equivalent and not result.isomorphic:
        raise ReductionError(f"{g1} and {g2} have S = {result.S1} but non-isomorphic reductions")
    return result


__all__ = [
    'UnlabeledGraph',
    'ReductionStep',
    'ReductionLog',
    'EquivariantResult',
    'is_unit_vertex',
    'contract_unit_vertex',
    'in_amalgamate',
    'amalgamation_candidates',
    'reduce_fiber_cover',
    'equivariant_isomorphic',
    'equivariant_fiber_compare',
]
