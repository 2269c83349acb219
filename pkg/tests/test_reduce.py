"""
Tests for unlabeled flow moves and fiber cover reduction.
"""

import random

import pytest


def _g(text):
    from betashift.seq import parse_generating
    return parse_generating(text)


def _random_graph(rng, size):
    from betashift.reduce import UnlabeledGraph

    edges = [(rng.randrange(size), rng.randrange(size)) for _ in range(rng.randint(size, 3 * size))]
    return UnlabeledGraph(size, tuple(edges))


class TestUnlabeledGraph:
    """Test UnlabeledGraph."""

    def test_from_cover(self):
        """Test labels are forgotten and the involution is kept."""
        from betashift.covers import fiber_product_cover
        from betashift.reduce import UnlabeledGraph

        cover = fiber_product_cover(_g("1(10)"))
        G = UnlabeledGraph.from_cover(cover)
        assert G.vertex_count == 7
        assert len(G.edges) == 11
        assert G.involution == cover.involution
        assert G.names[3] == "v2'"
        assert G.is_essential()

    def test_rejects_bad_involution(self):
        """Test the involution must square to the identity."""
        from betashift.errors import ReductionError
        from betashift.reduce import UnlabeledGraph

        with pytest.raises(ReductionError):
            UnlabeledGraph(3, ((0, 1),), (1, 2, 0))
        with pytest.raises(ReductionError):
            UnlabeledGraph(2, ((0, 2),))

    def test_out_targets(self):
        """Test the out-target multiset."""
        from betashift.reduce import UnlabeledGraph

        G = UnlabeledGraph(2, ((0, 1), (0, 1), (0, 0)))
        assert G.out_targets(0) == {1: 2, 0: 1}
        assert G.adjacency_matrix().tolist() == [[1, 2], [0, 0]]

    def test_strongly_connected_components(self):
        """Test components through networkx."""
        from betashift.reduce import UnlabeledGraph

        G = UnlabeledGraph(3, ((0, 1), (1, 0), (2, 2), (1, 2)))
        assert G.strongly_connected_components() == [[0, 1], [2]]

    def test_to_dot(self):
        """Test fixed points are drawn as double circles."""
        from betashift.reduce import UnlabeledGraph

        G = UnlabeledGraph(2, ((0, 1), (1, 0)), (0, 1))
        dot = G.to_dot("g")
        assert dot.startswith('digraph "g"')
        assert '"v1" [shape=doublecircle];' in dot
        assert '"v1" -> "v2";' in dot


class TestContraction:
    """Test contract_unit_vertex."""

    def test_cycle(self):
        """Test a three-cycle contracts to a two-cycle."""
        from betashift.invariants import bowen_franks
        from betashift.reduce import UnlabeledGraph, contract_unit_vertex

        G = UnlabeledGraph(3, ((0, 1), (1, 2), (2, 0)))
        H = contract_unit_vertex(G, 1)
        assert H.vertex_count == 2
        assert sorted(H.edges) == [(0, 1), (1, 0)]
        assert H.names == ("v1", "v3")
        assert bowen_franks(H).group == bowen_franks(G).group

    def test_not_unit(self):
        """Test a vertex with two out-edges."""
        from betashift.errors import ContractionError
        from betashift.reduce import UnlabeledGraph, contract_unit_vertex

        G = UnlabeledGraph(2, ((0, 0), (0, 1), (1, 0)))
        with pytest.raises(ContractionError):
            contract_unit_vertex(G, 0)

    def test_loop_is_not_unit(self):
        """Test a lone loop cannot be contracted."""
        from betashift.errors import ContractionError
        from betashift.reduce import UnlabeledGraph, contract_unit_vertex, is_unit_vertex

        G = UnlabeledGraph(1, ((0, 0),))
        assert not is_unit_vertex(G, 0)
        with pytest.raises(ContractionError):
            contract_unit_vertex(G, 0)

    def test_equivariant(self):
        """Test the image of the vertex is contracted in the same step."""
        from betashift.reduce import UnlabeledGraph, contract_unit_vertex

        # 0 -> 1 -> 0 and 0 -> 2 -> 0 with 1 <-> 2 swapped
        G = UnlabeledGraph(3, ((0, 1), (1, 0), (0, 2), (2, 0)), (0, 2, 1))
        H = contract_unit_vertex(G, 1)
        assert H.vertex_count == 1
        assert H.edges == ((0, 0), (0, 0))
        assert H.involution == (0,)

    def test_random_subdivision(self):
        """Test subdividing an edge and contracting restores the graph."""
        from betashift.invariants import bowen_franks
        from betashift.reduce import UnlabeledGraph, contract_unit_vertex

        rng = random.Random(7)
        for _ in range(25):
            size = rng.randint(1, 5)
            G = _random_graph(rng, size)
            s, d = G.edges[rng.randrange(len(G.edges))]
            edges = list(G.edges)
            edges.remove((s, d))
            edges += [(s, size), (size, d)]
            subdivided = UnlabeledGraph(size + 1, tuple(edges))
            assert bowen_franks(subdivided).group == bowen_franks(G).group

            H = contract_unit_vertex(subdivided, size)
            assert H.adjacency_matrix().tolist() == G.adjacency_matrix().tolist()


class TestAmalgamation:
    """Test in_amalgamate."""

    def test_merge(self):
        """Test two vertices with equal out-targets merge."""
        from betashift.reduce import UnlabeledGraph, in_amalgamate

        G = UnlabeledGraph(3, ((0, 2), (1, 2), (2, 0), (2, 1)))
        H = in_amalgamate(G, 0, 1)
        assert H.vertex_count == 2
        assert sorted(H.edges) == [(0, 1), (1, 0), (1, 0)]

    def test_differing_targets(self):
        """Test unequal out-target multisets."""
        from betashift.errors import AmalgamationError
        from betashift.reduce import UnlabeledGraph, in_amalgamate

        G = UnlabeledGraph(3, ((0, 2), (1, 2), (1, 2), (2, 0)))
        with pytest.raises(AmalgamationError):
            in_amalgamate(G, 0, 1)
        with pytest.raises(AmalgamationError):
            in_amalgamate(G, 1, 1)

    def test_candidates(self):
        """Test candidate pairs up to the involution."""
        from betashift.reduce import UnlabeledGraph, amalgamation_candidates

        G = UnlabeledGraph(3, ((0, 2), (1, 2), (2, 0), (2, 1)))
        assert amalgamation_candidates(G) == [(0, 1)]

    def test_random_in_splitting(self):
        """Test in-splitting a vertex and amalgamating restores the graph."""
        from betashift.invariants import bowen_franks
        from betashift.reduce import UnlabeledGraph, in_amalgamate

        rng = random.Random(11)
        for _ in range(25):
            size = rng.randint(2, 5)
            G = _random_graph(rng, size)
            v = rng.randrange(size)
            G = UnlabeledGraph(size, tuple(e for e in G.edges if e != (v, v)))

            edges = []
            for s, d in G.edges:
                target = size if d == v and rng.random() < 0.5 else d
                edges.append((s, target))
            edges += [(size, d) for s, d in G.edges if s == v]
            split = UnlabeledGraph(size + 1, tuple(edges))
            assert bowen_franks(split).group == bowen_franks(G).group

            H = in_amalgamate(split, v, size)
            assert H.adjacency_matrix().tolist() == G.adjacency_matrix().tolist()


class TestReduceFiberCover:
    """Test reduce_fiber_cover."""

    def test_small_fiber(self):
        """Test 1(10) reduces to 3 vertices and 6 edges."""
        from betashift.invariants import bowen_franks
        from betashift.reduce import reduce_fiber_cover

        G, log = reduce_fiber_cover(_g("1(10)"))
        assert G.vertex_count == 3
        assert len(G.edges) == 6
        assert bowen_franks(G).group == ((), 2)
        assert len(G.strongly_connected_components()) == 3
        assert [step.op for step in log.steps] == ["Contract", "Contract", "Amalgamate"]
        assert [step.args for step in log.steps] == [("v3",), ("v3'", "v3''"), ("v1", "v2")]
        assert str(log.sequence) == "1(10)"
        assert len(log.trace) == 0

    def test_group_constant(self):
        """Test every step keeps the Bowen-Franks group."""
        from betashift.reduce import reduce_fiber_cover

        _, log = reduce_fiber_cover(_g("1(110)"))
        assert log.steps
        assert all(step.bf_before.group == step.bf_after.group for step in log.steps)

    @pytest.mark.parametrize("text,S", [("1(10)", 1), ("11(10)", 1), ("11(110)", 2), ("1(110)", 2)])
    def test_normal_form_size(self, text, S):
        """Test the normal form has 3S vertices and 6S edges."""
        from betashift.reduce import reduce_fiber_cover

        G, _ = reduce_fiber_cover(_g(text))
        assert G.vertex_count == 3 * S
        assert len(G.edges) == 6 * S

    def test_canonicalizes_first(self):
        """Test the input is replaced by its canonical form."""
        from betashift.reduce import reduce_fiber_cover

        _, log = reduce_fiber_cover(_g("11(10)"))
        assert str(log.sequence) == "1(10)"
        assert len(log.trace) == 1

    def test_requires_strictly_sofic(self):
        """Test periodic input is refused."""
        from betashift.errors import NotStrictlySofic
        from betashift.reduce import reduce_fiber_cover

        with pytest.raises(NotStrictlySofic):
            reduce_fiber_cover(_g("(110)"))

    def test_requires_binary(self):
        """Test digits above 1 are refused."""
        from betashift.errors import NotBinary
        from betashift.reduce import reduce_fiber_cover

        with pytest.raises(NotBinary):
            reduce_fiber_cover(_g("2(10)"))

    def test_log_to_dict(self):
        """Test serialization of the log."""
        from betashift.reduce import reduce_fiber_cover

        _, log = reduce_fiber_cover(_g("1(10)"))
        data = log.to_dict()
        assert data["start"] == {"vertices": 7, "edges": 11}
        assert data["steps"][-1]["vertices_after"] == 3
        assert data["steps"][-1]["bf_after"] == {"torsion": [], "rank": 2, "sign": "0"}


class TestEquivariantCompare:
    """Test equivariant_fiber_compare."""

    @pytest.mark.parametrize("first,second", [("1(10)", "11(10)"), ("1(110)", "11(110)")])
    def test_equivalent(self, first, second):
        """Test equal period sums give isomorphic reductions."""
        from betashift.reduce import equivariant_fiber_compare

        result = equivariant_fiber_compare(_g(first), _g(second))
        assert result.equivalent
        assert result.isomorphic
        assert result

    def test_distinct(self):
        """Test different period sums."""
        from betashift.reduce import equivariant_fiber_compare

        result = equivariant_fiber_compare(_g("11(10)"), _g("11(110)"))
        assert not result
        assert not result.isomorphic
        assert result.to_dict()["S1"] == 1
        assert result.to_dict()["S2"] == 2

    def test_binarizes(self):
        """Test a non-binary input is binarized first."""
        from betashift.reduce import equivariant_fiber_compare

        assert equivariant_fiber_compare(_g("2(10)"), _g("1(10)")).isomorphic

    def test_requires_strictly_sofic(self):
        """Test periodic input is refused."""
        from betashift.errors import NotStrictlySofic
        from betashift.reduce import equivariant_fiber_compare

        with pytest.raises(NotStrictlySofic):
            equivariant_fiber_compare(_g("(10)"), _g("1(10)"))

    def test_isomorphism_respects_involution(self):
        """Test equal graphs with different involutions."""
        from betashift.reduce import UnlabeledGraph, equivariant_isomorphic

        edges = ((0, 1), (1, 0))
        swapped = UnlabeledGraph(2, edges, (1, 0))
        fixed = UnlabeledGraph(2, edges, (0, 1))
        assert equivariant_isomorphic(swapped, swapped)
        assert not equivariant_isomorphic(swapped, fixed)


class TestReductionSweeps:
    """Test the reduction on every small strictly sofic sequence and the catalog."""

    def _strictly_sofic(self):
        from betashift.catalog import enumerate_generating, get_sequence, list_sequences
        from betashift.seq import ShiftClass, classify

        seqs = [get_sequence(name) for name in list_sequences()]
        seqs += list(enumerate_generating(4, 4, 1))
        return [g for g in seqs if g.is_binary and classify(g) is ShiftClass.STRICTLY_SOFIC]

    def test_normal_form_everywhere(self):
        """Test 3S vertices, 6S edges, three components and a constant group."""
        from betashift.invariants import bowen_franks, period_sum
        from betashift.reduce import reduce_fiber_cover

        seqs = self._strictly_sofic()
        assert len(seqs) > 50
        for g in seqs:
            S = period_sum(g)
            G, log = reduce_fiber_cover(g)
            assert (G.vertex_count, len(G.edges)) == (3 * S, 6 * S), str(g)
            assert len(G.strongly_connected_components()) == 3, str(g)
            torsion = (S,) if S > 1 else ()
            assert bowen_franks(G).group == (torsion, 2), str(g)
            assert all(step.bf_before.group == step.bf_after.group for step in log.steps), str(g)

    def test_equivariance_on_catalog_pairs(self):
        """Test equivariant equivalence holds exactly when S agrees."""
        import itertools

        from betashift.catalog import get_sequence, list_sequences
        from betashift.invariants import period_sum
        from betashift.reduce import equivariant_fiber_compare
        from betashift.seq import ShiftClass, classify

        seqs = [get_sequence(name) for name in list_sequences()]
        seqs = [g for g in seqs if classify(g) is ShiftClass.STRICTLY_SOFIC]
        assert len(seqs) >= 10
        for g1, g2 in itertools.combinations(seqs, 2):
            result = equivariant_fiber_compare(g1, g2)
            same = period_sum(g1) == period_sum(g2)
            assert result.equivalent is same, (str(g1), str(g2))
            assert bool(result) is same, (str(g1), str(g2))
            if same:
                assert result.isomorphic, (str(g1), str(g2))
