import networkx as nx
import pytest
from hypothesis import given

from chromagallai.errors import GraphFormatError, PreconditionError
from chromagallai.graph import (
    ColoredGraph,
    Graph,
    complete_graph,
    connected_components,
    cycle_graph,
    disjoint_union,
    empty_graph,
    emit_edge_list,
    emit_graph6,
    greedy_coloring,
    is_proper,
    k_core,
    parse_coloring,
    parse_edge_list,
    parse_graph6,
    parse_graph_text,
    path_graph,
)

from conftest import graphs


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


class TestGraph6:
    def test_known_strings(self):
        assert parse_graph6("Bw") == complete_graph(3)
        assert parse_graph6("D~{") == complete_graph(5)
        assert parse_graph6("A?") == empty_graph(2)
        assert emit_graph6(complete_graph(3)) == "Bw"
        assert emit_graph6(empty_graph(1)) == "@"

    def test_matches_networkx_encoder(self):
        for h in nx.graph_atlas_g()[1:200]:
            g = Graph.from_edges(h.number_of_nodes(), h.edges())
            expected = nx.to_graph6_bytes(h, header=False).decode().strip()
            assert emit_graph6(g) == expected

    @pytest.mark.parametrize("bad", ["", "B", "Bw?", "Bx", "~??", "B\x7f"])
    def test_rejects_malformed(self, bad):
        with pytest.raises(GraphFormatError):
            parse_graph6(bad)

    def test_error_carries_offset(self):
        with pytest.raises(GraphFormatError) as info:
            parse_graph6("Bw?")
        assert info.value.offset == 2

    @given(graphs(max_n=12))
    def test_round_trip(self, g):
        assert parse_graph6(emit_graph6(g)) == g


def test_edge_list_round_trip():
    g = disjoint_union(complete_graph(3), path_graph(4))
    assert parse_edge_list(emit_edge_list(g)) == g
    assert parse_graph_text(emit_edge_list(g)) == g
    assert parse_graph_text("Bw\n") == complete_graph(3)


def test_edge_list_rejects_loops_and_counts():
    with pytest.raises(GraphFormatError):
        parse_edge_list("3 1\n1 1\n")
    with pytest.raises(GraphFormatError):
        parse_edge_list("3 2\n0 1\n")


def test_graph_rejects_asymmetric_rows():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))


class TestProper:
    def test_examples(self):
        k3 = complete_graph(3)
        assert is_proper(k3, (0, 1, 2))
        assert not is_proper(k3, (0, 0, 1))
        assert is_proper(cycle_graph(6), (0, 1, 2, 0, 1, 2))

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            is_proper(complete_graph(3), (0, 1))

    def test_colored_graph_rejects_improper(self):
        with pytest.raises(PreconditionError):
            ColoredGraph(complete_graph(3), (0, 0, 1))

    def test_parse_coloring_length(self):
        assert parse_coloring("0 1 2\n", 3) == (0, 1, 2)
        with pytest.raises(GraphFormatError):
            parse_coloring("0 1", 3)

    @given(graphs())
    def test_greedy_is_proper(self, g):
        assert is_proper(g, greedy_coloring(g, list(range(g.n))[::-1]))


class TestCore:
    def test_path_vanishes(self):
        core, trace = k_core(path_graph(4), 2)
        assert core.n == 0 and len(trace.steps) == 4

    def test_clique_unchanged(self):
        core, trace = k_core(complete_graph(5), 2)
        assert core == complete_graph(5) and trace.steps == ()

    def test_pendant_removed(self):
        g = Graph.from_edges(6, list(complete_graph(5).edges()) + [(0, 5)])
        core, trace = k_core(g, 3)
        assert core == complete_graph(5)
        assert trace.steps == ((5, 1),)

    @given(graphs(max_n=11))
    def test_matches_networkx(self, g):
        for k in range(1, 4):
            core, trace = k_core(g, k)
            assert set(trace.kept) == set(nx.k_core(to_nx(g), k).nodes)
            assert core.n == 0 or core.min_degree() >= k

    @given(graphs(max_n=11))
    def test_density_preserved(self, g):
        # deleting a vertex of degree < k loses < k edges, so e > k n survives
        for k in range(1, 4):
            if g.edge_count() > k * g.n:
                core, _ = k_core(g, k)
                assert core.edge_count() > k * core.n


class TestComponents:
    def test_examples(self):
        two = disjoint_union(complete_graph(3), complete_graph(3))
        assert sorted(map(len, connected_components(two))) == [3, 3]
        assert len(connected_components(complete_graph(5))) == 1
        assert sorted(map(len, connected_components(empty_graph(3)))) == [1, 1, 1]

    @given(graphs(max_n=11))
    def test_matches_networkx(self, g):
        ours = {frozenset(c) for c in connected_components(g)}
        assert ours == {frozenset(c) for c in nx.connected_components(to_nx(g))}

    @given(graphs(max_n=11))
    def test_dense_graph_has_dense_component(self, g):
        for k in (1, 2):
            if g.edge_count() > k * g.n:
                sizes = [(g.induced_subgraph(sorted(c)).edge_count(), len(c)) for c in connected_components(g)]
                assert any(e > k * n for e, n in sizes)
