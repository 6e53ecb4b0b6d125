import networkx as nx
import pytest
from hypothesis import given, settings

from chromagallai.canon import canonical_form, canonical_labeling, is_isomorphic
from chromagallai.enumeration import count_by_edges, enumerate_canonical, enumerate_nonisomorphic, labeled_filter
from chromagallai.errors import UnsupportedSizeError
from chromagallai.graph import Graph, complete_graph, path_graph

from conftest import graphs, graphs_with_perm


def atlas(n):
    return [Graph.from_edges(n, h.edges()) for h in nx.graph_atlas_g() if h.number_of_nodes() == n]


def test_small_examples():
    k3 = complete_graph(3)
    assert canonical_form(k3) == canonical_form(k3.relabel([2, 0, 1]))
    a = Graph.from_edges(3, [(0, 1), (1, 2)])
    b = Graph.from_edges(3, [(1, 0), (0, 2)])
    assert canonical_form(a) == canonical_form(b)
    assert canonical_form(path_graph(3)) != canonical_form(k3)


def test_form_decodes_to_relabeled_input():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])
    cf = canonical_form(g)
    assert cf.n == 5
    assert is_isomorphic(cf.graph(), g)
    perm = canonical_labeling(g)
    assert g.relabel(perm) == cf.graph()


def test_size_guard():
    with pytest.raises(UnsupportedSizeError):
        canonical_form(Graph.from_edges(11, []))


@given(graphs_with_perm(max_n=10))
@settings(max_examples=300)
def test_permutation_invariance(gp):
    g, perm = gp
    assert canonical_form(g) == canonical_form(g.relabel(perm))


@pytest.mark.parametrize("n", range(1, 7))
def test_atlas_classes_stay_distinct(n):
    # the atlas lists each isomorphism class exactly once
    graphs_n = atlas(n)
    assert len({canonical_form(g) for g in graphs_n}) == len(graphs_n)


@given(graphs(min_n=1, max_n=7), graphs(min_n=1, max_n=7))
@settings(max_examples=200)
def test_agrees_with_networkx_isomorphism(g, h):
    if g.n != h.n:
        return
    ng, nh = nx.Graph(g.edges()), nx.Graph(h.edges())
    ng.add_nodes_from(range(g.n))
    nh.add_nodes_from(range(h.n))
    assert is_isomorphic(g, h) == nx.is_isomorphic(ng, nh)


def test_regular_graphs_with_many_automorphisms():
    petersen = Graph.from_edges(10, nx.petersen_graph().edges())
    relabeled = petersen.relabel([3, 7, 1, 9, 0, 5, 2, 8, 6, 4])
    assert canonical_form(petersen) == canonical_form(relabeled)
    prism = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
    k33 = Graph.from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)])
    assert canonical_form(prism) != canonical_form(k33)


@pytest.mark.parametrize("n, count", [(0, 1), (1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156), (7, 1044)])
def test_enumeration_counts(n, count):
    assert len(enumerate_canonical(n)) == count


@pytest.mark.parametrize("n", range(1, 6))
def test_enumeration_matches_labeled_filter(n):
    assert set(enumerate_canonical(n)) == labeled_filter(n)


@pytest.mark.parametrize("n", range(1, 8))
def test_enumeration_matches_atlas(n):
    assert set(enumerate_canonical(n)) == {canonical_form(g) for g in atlas(n)}


@pytest.mark.slow
def test_enumeration_n8():
    assert len(enumerate_canonical(8)) == 12346


def test_enumeration_order_and_guard():
    graphs_6 = list(enumerate_nonisomorphic(6))
    edges = [g.edge_count() for g in graphs_6]
    assert edges == sorted(edges)
    assert count_by_edges(graphs_6)[7] == 24
    with pytest.raises(UnsupportedSizeError):
        list(enumerate_nonisomorphic(9))
