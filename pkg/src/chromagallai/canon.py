"""Exact canonical forms for graphs on at most 10 vertices.

The canonical labelling is the one maximising the upper-triangle bit string
among all leaves of an individualisation/refinement search tree.  The tree is
built from isomorphism-invariant choices only, so the maximum is invariant.
Two prunings keep it cheap:

* colour refinement to an equitable ordered partition at every node;
* twin pruning: swapping two vertices with the same neighbourhood (apart
  from each other) is an automorphism fixing every other vertex, so only
  one of them needs to be individualised at a given node.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, emit_graph6, parse_graph6, popcount
from .limits import CANONICAL_MAX_N, check_size


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """graph6 bytes of the canonical relabelling (so ``n`` is included)."""

    data: bytes

    @property
    def graph6(self) -> str:
        return self.data.decode("ascii")

    @property
    def n(self) -> int:
        return self.data[0] - 63

    def graph(self) -> Graph:
        return parse_graph6(self.graph6)

    def __str__(self) -> str:
        return self.graph6


def _refine(adj: tuple[int, ...], cells: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    while True:
        masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            masks.append(m)
        out: list[tuple[int, ...]] = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                row = adj[v]
                sig = tuple(popcount(row & m) for m in masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                split = True
                for sig in sorted(groups):
                    out.append(tuple(groups[sig]))
            else:
                out.append(cell)
        cells = out
        if not split:
            return cells


def _key(adj: tuple[int, ...], order: list[int]) -> int:
    key = 0
    for j in range(1, len(order)):
        row = adj[order[j]]
        for i in range(j):
            key = key << 1 | (row >> order[i] & 1)
    return key


def canonical_labeling(g: Graph) -> list[int]:
    """Return ``order`` with ``order[i]`` = the vertex placed at position ``i``."""
    check_size(g.n, CANONICAL_MAX_N, "canonical_form")
    adj = g.adj
    if g.n <= 1:
        return list(range(g.n))
    best_key = -1
    best_order: list[int] = []

    def search(cells: list[tuple[int, ...]]) -> None:
        nonlocal best_key, best_order
        cells = _refine(adj, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            key = _key(adj, order)
            if key > best_key:
                best_key, best_order = key, order
            return
        cell = cells[target]
        tried: list[int] = []
        for v in cell:
            if any((adj[v] & ~(1 << w)) == (adj[w] & ~(1 << v)) for w in tried):
                continue
            tried.append(v)
            rest = tuple(u for u in cell if u != v)
            search(cells[:target] + [(v,), rest] + cells[target + 1:])

    degree_groups: dict[int, list[int]] = {}
    for v in range(g.n):
        degree_groups.setdefault(popcount(adj[v]), []).append(v)
    search([tuple(degree_groups[d]) for d in sorted(degree_groups)])
    return best_order


def canonical_form(g: Graph) -> CanonicalForm:
    order = canonical_labeling(g)
    perm = [0] * g.n
    for pos, v in enumerate(order):
        perm[v] = pos
    return CanonicalForm(emit_graph6(g.relabel(perm)).encode("ascii"))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.edge_count() == h.edge_count() and canonical_form(g) == canonical_form(h)

