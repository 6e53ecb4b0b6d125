import json

import pytest
from hypothesis import given, settings

from chromagallai.errors import UnsupportedSizeError
from chromagallai.feasibility import (
    Feasible,
    Infeasible,
    brute_force_feasible,
    check_certificate,
    decide_feasible,
    dumps_outcome,
    forced_partition,
    is_feasible,
    outcome_from_json,
    set_partitions,
)
from chromagallai.graph import Graph, complete_graph, cycle_graph, empty_graph, is_proper
from chromagallai.patterns import TreePattern

from conftest import graphs

P3 = TreePattern.path(3)
PATTERNS = [TreePattern.path(2), P3, TreePattern.path(4), TreePattern.star(3),
            TreePattern.double_star(1, 1), TreePattern.double_star(1, 2)]


def test_forced_partition_examples():
    assert forced_partition(cycle_graph(6), P3).classes() == [{0, 3}, {1, 4}, {2, 5}]
    assert forced_partition(complete_graph(4), P3).classes() == [{0, 1, 2, 3}]
    assert forced_partition(complete_graph(3), P3).classes() == [{0}, {1}, {2}]


def test_decide_examples():
    out = decide_feasible(cycle_graph(6), P3)
    assert isinstance(out, Feasible) and out.coloring == (0, 1, 2, 0, 1, 2)
    out = decide_feasible(complete_graph(4), P3)
    assert isinstance(out, Infeasible) and out.conflict_edge == (0, 1)
    assert decide_feasible(complete_graph(5), TreePattern.path(5)).feasible


def test_brute_force_examples():
    assert not brute_force_feasible(complete_graph(4), P3)
    assert brute_force_feasible(cycle_graph(6), P3)
    assert brute_force_feasible(empty_graph(5), TreePattern.double_star(1, 2))
    with pytest.raises(UnsupportedSizeError):
        brute_force_feasible(empty_graph(8), P3)


def test_set_partitions_are_bell_numbers():
    assert [sum(1 for _ in set_partitions(n)) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]


def test_certificate_examples():
    assert check_certificate(cycle_graph(6), P3, decide_feasible(cycle_graph(6), P3))
    k4 = complete_graph(4)
    out = decide_feasible(k4, P3)
    assert check_certificate(k4, P3, out)
    tampered = Infeasible(out.conflict_edge, (frozenset({0, 1, 2}),) + out.chain[1:])
    assert not check_certificate(k4, P3, tampered)
    assert not check_certificate(k4, P3, Infeasible((0, 1), ()))
    assert not check_certificate(cycle_graph(6), P3, Feasible((0, 1, 0, 1, 0, 1)))


def test_json_schema():
    out = decide_feasible(complete_graph(4), P3)
    data = json.loads(dumps_outcome(out))
    assert set(data) == {"feasible", "conflict_edge", "chain"}
    assert outcome_from_json(data) == out
    data = json.loads(dumps_outcome(decide_feasible(cycle_graph(6), P3)))
    assert data == {"feasible": True, "coloring": [0, 1, 2, 0, 1, 2]}


@given(graphs(max_n=7))
@settings(max_examples=150, deadline=None)
def test_closure_matches_brute_force(g):
    for t in PATTERNS:
        out = decide_feasible(g, t)
        assert out.feasible == brute_force_feasible(g, t) == is_feasible(g, t)
        assert check_certificate(g, t, out)


@given(graphs(max_n=8))
@settings(max_examples=100, deadline=None)
def test_feasible_coloring_is_proper_and_chain_connects(g):
    for t in PATTERNS:
        out = decide_feasible(g, t)
        if out.feasible:
            assert is_proper(g, out.coloring)
        else:
            u, v = out.conflict_edge
            assert g.has_edge(u, v)
            assert u in out.chain[0] and v in out.chain[-1]
            assert all(a & b for a, b in zip(out.chain, out.chain[1:]))


def test_induced_variant_differs_from_subgraph_copies():
    # K_4 has no induced P_3, so every colouring works in the induced reading
    assert decide_feasible(complete_graph(4), P3, induced=True).feasible
    assert brute_force_feasible(complete_graph(4), P3, induced=True)
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert decide_feasible(g, P3, induced=True).feasible == brute_force_feasible(g, P3, induced=True)
