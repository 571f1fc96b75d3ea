import math
from itertools import combinations

import pytest

from vizrec.design_space import DesignGraph, NodeId
from vizrec.errors import InvalidBound, UnknownNode

from brute_force import all_nodes, bfs_distance

FIELDS_5 = ["a", "b", "c", "d", "e"]


def graph(n_fields, max_attrs=3):
    return DesignGraph([chr(ord("a") + i) for i in range(n_fields)], max_attrs)


class TestNodeCounts:
    @pytest.mark.parametrize("n,expected", [(14, 469), (15, 575), (3, 7)])
    def test_binomial_sums(self, n, expected):
        assert graph(n).node_count == expected

    def test_formula_up_to_12(self):
        for n in range(3, 13):
            g = graph(n)
            assert g.node_count == sum(math.comb(n, k) for k in range(1, 4))
            assert g.node_count == len(list(g.nodes()))

    def test_invalid_bound(self):
        with pytest.raises(InvalidBound):
            graph(3, max_attrs=0)
        with pytest.raises(InvalidBound):
            graph(3, max_attrs=4)


class TestNeighbors:
    def test_two_attr_node_n14(self):
        g = graph(14)
        nbs = g.neighbors(NodeId.of(["a", "b"]))
        assert len(nbs) == 14  # 12 additions + 2 removals

    def test_one_attr_node_n15(self):
        g = graph(15)
        assert len(g.neighbors(NodeId.of(["a"]))) == 14  # additions only

    def test_three_attr_node_n14(self):
        g = graph(14)
        assert len(g.neighbors(NodeId.of(["a", "b", "c"]))) == 3  # removals only

    def test_degree_formula_exhaustive(self):
        for n in range(2, 7):
            g = graph(n, max_attrs=min(3, n))
            for node in g.nodes():
                k = len(node)
                expected = (n - k) * (k < g.max_attrs) + k * (k > 1)
                assert len(g.neighbors(node)) == expected

    def test_deterministic_order_additions_then_removals(self):
        g = graph(4)
        nbs = g.neighbors(NodeId.of(["b", "c"]))
        assert nbs == [NodeId.of(x) for x in
                       [("a", "b", "c"), ("b", "c", "d"), ("c",), ("b",)]]

    def test_unknown_node(self):
        with pytest.raises(UnknownNode):
            graph(3).neighbors(NodeId.of(["zzz"]))

    def test_adjacency_iff_symmetric_difference_one(self):
        g = graph(5)
        for a in g.nodes():
            nbs = set(g.neighbors(a))
            for b in g.nodes():
                assert (b in nbs) == (len(set(a.attrs) ^ set(b.attrs)) == 1)


class TestShortestPath:
    def test_identity(self):
        g = graph(5)
        assert g.shortest_path_len(NodeId.of("ab"), NodeId.of("ab")) == 0

    def test_singleton_to_disjoint_pair(self):
        # brute force says 3: {a} -> {a,b} -> {a,b,c} -> {b,c} (one option)
        assert bfs_distance(FIELDS_5, 3, NodeId.of("a"), NodeId.of("bc")) == 3
        assert graph(5).shortest_path_len(NodeId.of("a"), NodeId.of("bc")) == 3

    def test_disjoint_triples(self):
        g = DesignGraph(list("abcxyz"), 3)
        assert bfs_distance(list("abcxyz"), 3, NodeId.of("abc"), NodeId.of("xyz")) == 6
        assert g.shortest_path_len(NodeId.of("abc"), NodeId.of("xyz")) == 6

    def test_matches_brute_force_on_all_pairs(self):
        g = graph(5)
        nodes = list(g.nodes())
        for a in nodes:
            for b in nodes:
                assert g.shortest_path_len(a, b) == bfs_distance(FIELDS_5, 3, a, b)

    def test_symmetry_and_triangle_inequality(self):
        g = graph(5)
        nodes = list(g.nodes())
        dist = {(a, b): g.shortest_path_len(a, b) for a in nodes for b in nodes}
        for a in nodes:
            for b in nodes:
                assert dist[a, b] == dist[b, a]
        for a in nodes[::7]:
            for b in nodes[::5]:
                for c in nodes[::3]:
                    assert dist[a, c] <= dist[a, b] + dist[b, c]

    def test_unbounded_interior_equals_symmetric_difference(self):
        for n in range(2, 6):
            fields = [chr(ord("a") + i) for i in range(n)]
            g = DesignGraph(fields, max_attrs=n)
            for a in g.nodes():
                for b in g.nodes():
                    assert g.shortest_path_len(a, b) == len(set(a.attrs) ^ set(b.attrs))


class TestConstraints:
    def test_reference_node_within_path_one(self):
        g = graph(5)
        n0 = NodeId.of("ab")
        assert g.within_constraints(n0, n0, max_path=1)

    def test_distance_one_and_two_inputs(self):
        g = graph(5)
        assert g.within_constraints(NodeId.of("ab"), NodeId.of("a"),
                                    max_path=1, max_inputs=2)

    def test_foresight_input_cap_rejects_three_attrs(self):
        g = graph(5)
        assert not g.within_constraints(NodeId.of("abc"), NodeId.of("a"),
                                        max_inputs=2)

    def test_no_constraints_always_true(self):
        g = graph(5)
        for node in g.nodes():
            assert g.within_constraints(node, NodeId.of("a"))
