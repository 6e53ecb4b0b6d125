"""Seeded instance generators shared by the verification battery and the tests."""

from __future__ import annotations

import random
from itertools import combinations

from .graph import ColoredGraph, Graph, complete_graph, disjoint_union, greedy_coloring


def random_graph(rng: random.Random, n: int, m: int) -> Graph:
    pairs = list(combinations(range(n), 2))
    return Graph.from_edges(n, rng.sample(pairs, m))


def random_greedy_coloring(rng: random.Random, g: Graph) -> tuple[int, ...]:
    order = list(range(g.n))
    rng.shuffle(order)
    return greedy_coloring(g, order)


def shuffled(rng: random.Random, g: Graph) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.relabel(perm)


def random_dense_colored(rng: random.Random, factor: float, n_max: int, n_min: int = 2) -> ColoredGraph:
    """Random graph with e > factor * n (mostly just above the threshold), greedily coloured."""
    while True:
        n = rng.randint(n_min, n_max)
        lo = int(factor * n) + 1
        hi = n * (n - 1) // 2
        if lo > hi:
            continue
        slack = rng.choice([0, 0, 1, 2, 4, 8, hi])
        g = random_graph(rng, n, rng.randint(lo, min(hi, lo + slack)))
        return ColoredGraph(g, random_greedy_coloring(rng, g))


def cliques_plus_edges(rng: random.Random, k: int, n_max: int) -> ColoredGraph | None:
    """Disjoint K_{2k+1} copies (the extremal family) plus one or two extra edges."""
    r = 2 * k + 1
    copies = n_max // r
    if copies < 2:
        return None
    g = disjoint_union(*[complete_graph(r)] * rng.randint(2, copies))
    for _ in range(rng.randint(1, 2)):
        a, b = rng.sample(range(g.n), 2)
        if a // r != b // r:
            g = g.with_edge(a, b)
    if g.edge_count() <= k * g.n:
        g = g.with_edge(0, r)
    g = shuffled(rng, g)
    return ColoredGraph(g, random_greedy_coloring(rng, g))


def theta_graph(lengths: list[int]) -> Graph:
    """Two poles joined by internally disjoint paths of the given lengths."""
    edges = []
    n = 2
    for length in lengths:
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, n))
            prev = n
            n += 1
        edges.append((prev, 1))
    return Graph.from_edges(n, edges)


def heawood_graph() -> Graph:
    edges = [(i, (i + 1) % 14) for i in range(14)]
    edges += [(i, (i + 5) % 14) for i in range(0, 14, 2)]
    return Graph.from_edges(14, edges)


def long_cycle_instances() -> list[Graph]:
    """Sparse graphs (k = 1) whose shortest cycle of length >= 3 is long."""
    thetas = [[4, 4, 4], [3, 3, 3], [5, 5, 5], [3, 4, 5], [2, 4, 4, 4], [3, 3, 3, 3], [4, 5, 6]]
    return [theta_graph(t) for t in thetas] + [heawood_graph()]


def extraction_corpus(rng: random.Random, size: int, n_max: int = 14) -> list[tuple[ColoredGraph, int]]:
    """Mixed instances (graph, k) with e > k*n for k in {1, 2, 3}."""
    out: list[tuple[ColoredGraph, int]] = []
    for g in long_cycle_instances():
        for _ in range(3):
            h = shuffled(rng, g)
            out.append((ColoredGraph(h, random_greedy_coloring(rng, h)), 1))
    while len(out) < size:
        k = rng.choice([1, 2, 3])
        if rng.random() < 0.15:
            cg = cliques_plus_edges(rng, k, n_max)
            if cg is not None:
                out.append((cg, k))
                continue
        out.append((random_dense_colored(rng, k, n_max, n_min=2 * k + 2), k))
    return out
