from itertools import permutations

import networkx as nx
import pytest
from hypothesis import given, settings

from chromagallai.errors import PreconditionError
from chromagallai.graph import (
    ColoredGraph,
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    greedy_coloring,
    path_graph,
    star_graph,
)
from chromagallai.patterns import LeafProfile, PathWitness, TreePattern, classify_tree, odd_leaf_path
from chromagallai.search import (
    all_path_endpoint_pairs,
    enumerate_leaf_image_sets,
    find_bichromatic_path,
    find_double_star,
    find_path,
    find_path_between,
    is_valid_cycle,
    is_valid_double_star,
    is_valid_path,
    leaf_image_sets,
    smallest_long_cycle,
)

from conftest import graphs

SPIDER = TreePattern(4, ((0, 1), (0, 2), (0, 3), (3, 4)), name="spider-1,1,2")


def brute_endpoint_pairs(g, length):
    out = set()
    for seq in permutations(range(g.n), length + 1):
        if all(g.has_edge(a, b) for a, b in zip(seq, seq[1:])):
            out.add(frozenset((seq[0], seq[-1])))
    return out


def nx_leaf_sets(g, t):
    host = nx.Graph(g.edges())
    host.add_nodes_from(range(g.n))
    pattern = nx.Graph(t.edges)
    matcher = nx.algorithms.isomorphism.GraphMatcher(host, pattern)
    leaves = set(t.leaves)
    return {frozenset(h for h, p in m.items() if p in leaves) for m in matcher.subgraph_monomorphisms_iter()}


class TestEndpointPairs:
    def test_examples(self):
        c6 = cycle_graph(6)
        assert all_path_endpoint_pairs(c6, 3) == {frozenset(p) for p in [(0, 3), (1, 4), (2, 5)]}
        assert len(all_path_endpoint_pairs(complete_graph(4), 3)) == 6
        assert all_path_endpoint_pairs(complete_graph(3), 3) == set()

    @given(graphs(max_n=7))
    @settings(max_examples=150)
    def test_matches_brute_force(self, g):
        for length in range(1, 5):
            assert all_path_endpoint_pairs(g, length) == brute_endpoint_pairs(g, length)


class TestBichromatic:
    def test_examples(self):
        k6 = ColoredGraph(complete_graph(6), tuple(range(6)))
        p = find_bichromatic_path(k6, 5)
        assert p is not None and is_valid_path(k6.graph, p, 5)
        two_k5 = ColoredGraph(disjoint_union(complete_graph(5), complete_graph(5)), tuple(range(5)) * 2)
        assert find_bichromatic_path(two_k5, 5) is None
        c6 = ColoredGraph(cycle_graph(6), (0, 1, 2, 0, 1, 2))
        assert find_bichromatic_path(c6, 3) is None

    @given(graphs(max_n=8))
    @settings(max_examples=150)
    def test_existence_matches_pairs(self, g):
        colors = greedy_coloring(g, list(range(g.n)))
        cg = ColoredGraph(g, colors)
        for length in range(1, 5):
            expected = any(len({colors[x] for x in p}) == 2 for p in all_path_endpoint_pairs(g, length))
            found = find_bichromatic_path(cg, length)
            assert (found is not None) == expected
            if found is not None:
                a, b = found.endpoints
                assert is_valid_path(g, found, length) and colors[a] != colors[b]

    def test_path_between(self):
        g = cycle_graph(7)
        p = find_path_between(g, 0, 3, 4)
        assert p is not None and p.endpoints == (0, 3) and is_valid_path(g, p, 4)
        assert find_path_between(g, 0, 3, 2) is None


class TestCycles:
    def test_examples(self):
        c = smallest_long_cycle(cycle_graph(6), 3)
        assert c is not None and c.length == 6
        c = smallest_long_cycle(complete_graph(5), 5)
        assert c is not None and c.length == 5 and is_valid_cycle(complete_graph(5), c)
        assert smallest_long_cycle(path_graph(6), 3) is None
        assert smallest_long_cycle(star_graph(4), 3) is None

    @given(graphs(max_n=8))
    @settings(max_examples=100)
    def test_length_matches_networkx(self, g):
        h = nx.DiGraph()
        for u, v in g.edges():
            h.add_edge(u, v)
            h.add_edge(v, u)
        lengths = {len(c) for c in nx.simple_cycles(h) if len(c) >= 3}
        for lo in (3, 4, 5):
            c = smallest_long_cycle(g, lo)
            best = min((x for x in lengths if x >= lo), default=None)
            assert (c.length if c else None) == best
            if c:
                assert is_valid_cycle(g, c)

    def test_min_length_guard(self):
        with pytest.raises(PreconditionError):
            smallest_long_cycle(cycle_graph(4), 2)


class TestTrees:
    def test_examples(self):
        assert list(enumerate_leaf_image_sets(path_graph(4), TreePattern.path(3))) == [frozenset({0, 3})]
        sets = set(enumerate_leaf_image_sets(complete_graph(4), TreePattern.star(3)))
        assert len(sets) == 4 and all(len(s) == 3 for s in sets)
        assert list(enumerate_leaf_image_sets(complete_graph(3), TreePattern.path(3))) == []

    @pytest.mark.parametrize("t", [TreePattern.path(2), TreePattern.star(3), TreePattern.double_star(1, 2),
                                   SPIDER, TreePattern.double_star(2, 2)], ids=lambda t: t.name)
    @given(g=graphs(max_n=7))
    @settings(max_examples=60)
    def test_leaf_sets_match_networkx(self, t, g):
        assert set(leaf_image_sets(g, t)) == nx_leaf_sets(g, t)

    def test_classify(self):
        assert classify_tree(TreePattern.path(3)) is LeafProfile.MIXED_SIDES
        assert classify_tree(TreePattern.path(4)) is LeafProfile.ALL_SAME_SIDE
        assert classify_tree(TreePattern.star(4)) is LeafProfile.ALL_SAME_SIDE

    def test_odd_leaf_path(self):
        assert odd_leaf_path(TreePattern.path(3)).length == 3
        p = odd_leaf_path(TreePattern.double_star(1, 2))
        assert p.length == 3 and set(p.vertices[1:3]) == {0, 1}
        assert odd_leaf_path(SPIDER).length == 3
        with pytest.raises(PreconditionError):
            odd_leaf_path(TreePattern.star(3))

    def test_parse_round_trip(self):
        t = TreePattern.double_star(2, 1)
        assert TreePattern.parse(t.to_text()) == t

    def test_rejects_non_tree(self):
        with pytest.raises(PreconditionError):
            TreePattern(3, ((0, 1), (1, 2), (2, 0)))


class TestDoubleStar:
    def test_examples(self):
        w = find_double_star(path_graph(4), 1, 1)
        assert w is not None and {w.u, w.v} == {1, 2} and set(w.leaves) == {0, 3}
        assert find_double_star(star_graph(5), 1, 1) is None
        w = find_double_star(complete_graph(6), 2, 2)
        assert w is not None and is_valid_double_star(complete_graph(6), w, 2, 2)

    @given(graphs(max_n=7))
    @settings(max_examples=100)
    def test_existence_matches_networkx(self, g):
        for a, b in [(1, 2), (2, 2)]:
            t = TreePattern.double_star(a, b)
            w = find_double_star(g, a, b)
            assert (w is not None) == bool(nx_leaf_sets(g, t))
            if w is not None:
                assert is_valid_double_star(g, w, a, b)


def test_find_path_validates():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    p = find_path(g, 4)
    assert p is not None and is_valid_path(g, p, 4)
    assert not is_valid_path(g, PathWitness((0, 2)), 1)
