"""One representative per isomorphism class of graphs on n <= 8 vertices.

Graphs on n vertices are grown from the classes on n-1 vertices by adding a
vertex of minimum degree (every graph has one, and deleting it leaves some
graph of the previous level).  Children are deduplicated by canonical form.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Iterator

from .canon import CanonicalForm, canonical_form
from .graph import Graph
from .limits import ENUMERATION_MAX_N, check_size


def _children(parent: Graph) -> set[CanonicalForm]:
    m = parent.n
    degs = parent.degrees()
    out: set[CanonicalForm] = set()
    for size in range(m + 1):
        if m and size > min(degs) + 1:
            break
        for chosen in itertools.combinations(range(m), size):
            mask = sum(1 << v for v in chosen)
            # the new vertex must have minimum degree in the child
            if any(degs[v] + (mask >> v & 1) < size for v in range(m)):
                continue
            adj = [row | ((mask >> v & 1) << m) for v, row in enumerate(parent.adj)]
            adj.append(mask)
            out.add(canonical_form(Graph(m + 1, tuple(adj))))
    return out


def _sort_key(cf: CanonicalForm) -> tuple[int, bytes]:
    g = cf.graph()
    return g.edge_count(), cf.data


@lru_cache(maxsize=None)
def _level(n: int, workers: int = 1) -> tuple[CanonicalForm, ...]:
    if n == 0:
        return (canonical_form(Graph(0, ())),)
    parents = [cf.graph() for cf in _level(n - 1, workers)]
    found: set[CanonicalForm] = set()
    if workers > 1 and len(parents) > 64:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for shard in pool.map(_children, parents, chunksize=16):
                found |= shard
    else:
        for p in parents:
            found |= _children(p)
    return tuple(sorted(found, key=_sort_key))


def enumerate_canonical(n: int, workers: int = 1) -> tuple[CanonicalForm, ...]:
    check_size(n, ENUMERATION_MAX_N, "enumerate_nonisomorphic")
    return _level(n, max(1, workers))


def enumerate_nonisomorphic(n: int, workers: int = 1) -> Iterator[Graph]:
    """Graphs in ascending (edge count, canonical bytes) order."""
    for cf in enumerate_canonical(n, workers):
        yield cf.graph()


def labeled_filter(n: int) -> set[CanonicalForm]:
    """Independent route for small n: canonicalise every labelled graph."""
    pairs = list(itertools.combinations(range(n), 2))
    out = set()
    for mask in range(1 << len(pairs)):
        g = Graph.from_edges(n, (p for i, p in enumerate(pairs) if mask >> i & 1))
        out.add(canonical_form(g))
    return out


def count_by_edges(graphs: list[Graph]) -> dict[int, int]:
    counts: dict[int, int] = {}
    for g in graphs:
        counts[g.edge_count()] = counts.get(g.edge_count(), 0) + 1
    return counts

