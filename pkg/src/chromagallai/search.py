"""Exact searches for paths, long cycles, tree copies and double stars.

All searches iterate vertices and neighbours in ascending order, so the
witness returned for a given input is always the same one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .graph import ColoredGraph, Graph, bits, edges_within, popcount
from .patterns import PathWitness, TreePattern
from .errors import PreconditionError


@dataclass(frozen=True)
class CycleWitness:
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    def at(self, i: int) -> int:
        """Vertex ``v_i`` with the index taken modulo the length."""
        return self.vertices[i % len(self.vertices)]


@dataclass(frozen=True)
class DoubleStarWitness:
    """Centre ``u`` carries leaf set ``A``, centre ``v`` carries ``B``."""

    u: int
    v: int
    A: tuple[int, ...]
    B: tuple[int, ...]

    @property
    def leaves(self) -> tuple[int, ...]:
        return tuple(sorted(self.A + self.B))


# -- validators -------------------------------------------------------------

def is_valid_path(g: Graph, p: PathWitness, length: int | None = None) -> bool:
    vs = p.vertices
    if not vs or len(set(vs)) != len(vs) or any(not 0 <= v < g.n for v in vs):
        return False
    if length is not None and p.length != length:
        return False
    return all(g.has_edge(a, b) for a, b in zip(vs, vs[1:]))


def is_valid_cycle(g: Graph, c: CycleWitness) -> bool:
    vs = c.vertices
    if len(vs) < 3 or len(set(vs)) != len(vs) or any(not 0 <= v < g.n for v in vs):
        return False
    return all(g.has_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))


def is_valid_double_star(g: Graph, w: DoubleStarWitness, a: int, b: int) -> bool:
    every = (w.u, w.v) + w.A + w.B
    if len(set(every)) != a + b + 2 or len(w.A) != a or len(w.B) != b:
        return False
    if any(not 0 <= x < g.n for x in every) or not g.has_edge(w.u, w.v):
        return False
    return all(g.has_edge(w.u, x) for x in w.A) and all(g.has_edge(w.v, y) for y in w.B)


# -- paths ------------------------------------------------------------------

def _path_end_masks(adj: Sequence[int], active: int, length: int) -> list[int]:
    """``ends[s]`` = mask of vertices joined to ``s`` by a path of exactly ``length`` edges."""
    memo: dict[tuple[int, int], int] = {}

    def reach(cur: int, visited: int, left: int) -> int:
        if left == 0:
            return 1 << cur
        key = (cur, visited)
        hit = memo.get(key)
        if hit is not None:
            return hit
        out = 0
        for w in bits(adj[cur] & active & ~visited):
            out |= reach(w, visited | 1 << w, left - 1)
        memo[key] = out
        return out

    n = len(adj)
    return [reach(s, 1 << s, length) if active >> s & 1 else 0 for s in range(n)]


def all_path_endpoint_pairs(g: Graph, length: int) -> set[frozenset[int]]:
    """Unordered endpoint pairs of all simple paths with exactly ``length`` edges."""
    if length < 1:
        raise PreconditionError("path length must be >= 1")
    if length >= g.n:
        return set()
    ends = _path_end_masks(g.adj, g.vertex_mask, length)
    return {frozenset((s, t)) for s in range(g.n) for t in bits(ends[s] >> (s + 1) << (s + 1))}


def find_path(g: Graph, length: int) -> PathWitness | None:
    """Any path with exactly ``length`` edges (first in lexicographic order)."""
    return _first_path(g.adj, g.vertex_mask, length, None)


def _first_path(adj: Sequence[int], active: int, length: int,
                colors: Sequence[int] | None) -> PathWitness | None:
    if length < 1:
        raise PreconditionError("path length must be >= 1")
    if length + 1 > popcount(active):
        return None
    class_mask: dict[int, int] = {}
    if colors is not None:
        for v in bits(active):
            class_mask[colors[v]] = class_mask.get(colors[v], 0) | 1 << v
    seq: list[int] = []

    def extend(cur: int, visited: int, left: int, forbid: int) -> bool:
        cand = adj[cur] & active & ~visited
        if left == 1:
            cand &= ~forbid
            if cand:
                seq.append((cand & -cand).bit_length() - 1)
                return True
            return False
        for w in bits(cand):
            seq.append(w)
            if extend(w, visited | 1 << w, left - 1, forbid):
                return True
            seq.pop()
        return False

    for s in bits(active):
        forbid = class_mask[colors[s]] if colors is not None else 0
        if colors is not None and not (active & ~forbid):
            continue
        seq = [s]
        if extend(s, 1 << s, length, forbid):
            return PathWitness(tuple(seq))
    return None


def find_bichromatic_path(cg: ColoredGraph, length: int) -> PathWitness | None:
    """A path with exactly ``length`` edges whose endpoints differ in colour."""
    g = cg.graph
    return _first_path(g.adj, g.vertex_mask, length, cg.coloring)


def bichromatic_path_in(adj: Sequence[int], active: int, length: int,
                        colors: Sequence[int]) -> PathWitness | None:
    """Mask-level variant of ``find_bichromatic_path`` used by the extractor."""
    return _first_path(adj, active, length, colors)


# -- cycles -----------------------------------------------------------------

def _cycle_of_length(adj: Sequence[int], active: int, length: int) -> tuple[int, ...] | None:
    seq: list[int] = []

    def extend(s: int, cur: int, visited: int, allowed: int, depth: int) -> bool:
        if depth == length:
            return bool(adj[cur] >> s & 1) and seq[1] < seq[-1]
        if popcount(allowed & ~visited) < length - depth:
            return False
        for w in bits(adj[cur] & allowed & ~visited):
            seq.append(w)
            if extend(s, w, visited | 1 << w, allowed, depth + 1):
                return True
            seq.pop()
        return False

    for s in bits(active):
        allowed = active & ~((1 << (s + 1)) - 1)
        if popcount(allowed) < length - 1:
            break
        seq = [s]
        if extend(s, s, 0, allowed, 1):
            return tuple(seq)
    return None


def smallest_long_cycle_in(adj: Sequence[int], active: int, min_length: int) -> CycleWitness | None:
    for length in range(max(3, min_length), popcount(active) + 1):
        found = _cycle_of_length(adj, active, length)
        if found is not None:
            return CycleWitness(found)
    return None


def smallest_long_cycle(g: Graph, min_length: int) -> CycleWitness | None:
    """Shortest cycle among those of length >= ``min_length``.

    Ties go to the lexicographically least vertex sequence, written from
    its smallest vertex in the direction of the smaller neighbour.
    """
    if min_length < 3:
        raise PreconditionError("min_length must be >= 3")
    return smallest_long_cycle_in(g.adj, g.vertex_mask, min_length)


# -- tree copies ------------------------------------------------------------

class _TreePlan:
    """Embedding order for a pattern: BFS from a max-degree root."""

    def __init__(self, t: TreePattern):
        root = max(range(t.k + 1), key=lambda v: (t.degree(v), -v))
        order = [root]
        parent = {root: -1}
        for x in order:
            for y in t.adjacency[x]:
                if y not in parent:
                    parent[y] = x
                    order.append(y)
        pos = {x: i for i, x in enumerate(order)}
        leaves = set(t.leaves)
        # sibling leaves are interchangeable: force increasing images
        prev_sibling = [-1] * len(order)
        last_leaf_child: dict[int, int] = {}
        for i, x in enumerate(order[1:], start=1):
            if x in leaves:
                p = parent[x]
                if p in last_leaf_child:
                    prev_sibling[i] = last_leaf_child[p]
                last_leaf_child[p] = i
        self.order = order
        self.parent_pos = [pos[parent[x]] if parent[x] >= 0 else -1 for x in order]
        self.prev_sibling = prev_sibling
        self.need_degree = [t.degree(x) for x in order]
        self.leaf_positions = [i for i, x in enumerate(order) if x in leaves]
        self.k = t.k


def iter_embeddings(g: Graph, t: TreePattern, induced: bool = False) -> Iterator[list[int]]:
    """Subgraph embeddings of ``t`` into ``g``, one per orbit of sibling-leaf swaps.

    Yields ``image`` indexed by position in the plan order; use
    ``embedding_map`` to turn it into a dict keyed by tree vertex.
    """
    plan = _TreePlan(t)
    size = t.k + 1
    if size > g.n:
        return
    adj = g.adj
    deg_ok = [0] * (max(plan.need_degree) + 1)
    for d in range(len(deg_ok)):
        deg_ok[d] = sum(1 << v for v in range(g.n) if popcount(adj[v]) >= d)
    image = [0] * size

    def place(i: int, used: int) -> Iterator[list[int]]:
        if i == size:
            if not induced or edges_within(adj, used) == plan.k:
                yield image
            return
        cand = adj[image[plan.parent_pos[i]]] & ~used & deg_ok[plan.need_degree[i]]
        sib = plan.prev_sibling[i]
        if sib >= 0:
            cand &= ~((1 << (image[sib] + 1)) - 1)
        for v in bits(cand):
            image[i] = v
            yield from place(i + 1, used | 1 << v)

    for r in bits(deg_ok[plan.need_degree[0]]):
        image[0] = r
        yield from place(1, 1 << r)


def enumerate_leaf_image_sets(g: Graph, t: TreePattern, induced: bool = False) -> Iterator[frozenset[int]]:
    """Each distinct leaf-image set of a copy of ``t`` in ``g``, once.

    ``induced=True`` is experimental: only copies whose vertex set induces
    exactly the tree's edges are counted.
    """
    plan = _TreePlan(t)
    seen: set[frozenset[int]] = set()
    for image in iter_embeddings(g, t, induced):
        leaves = frozenset(image[i] for i in plan.leaf_positions)
        if leaves not in seen:
            seen.add(leaves)
            yield leaves


def leaf_image_sets(g: Graph, t: TreePattern, induced: bool = False) -> list[frozenset[int]]:
    """All leaf-image sets; paths use the endpoint-pair routine (same result, faster)."""
    if t.is_path and not induced:
        return sorted(all_path_endpoint_pairs(g, t.k), key=sorted)
    return list(enumerate_leaf_image_sets(g, t, induced))


def embedding_map(t: TreePattern, image: Sequence[int]) -> dict[int, int]:
    plan = _TreePlan(t)
    return {x: image[i] for i, x in enumerate(plan.order)}


def contains_tree(g: Graph, t: TreePattern) -> bool:
    if t.is_path:
        return find_path(g, t.k) is not None
    return next(iter_embeddings(g, t), None) is not None


# -- double stars -----------------------------------------------------------

def double_star_at(adj: Sequence[int], active: int, u: int, v: int,
                   a: int, b: int) -> DoubleStarWitness | None:
    """A copy of S_{a,b} on the edge (u, v), with ``u`` carrying ``a`` leaves."""
    nu = list(bits(adj[u] & active & ~(1 << v)))
    nv = list(bits(adj[v] & active & ~(1 << u)))
    if len(nu) < a or len(nv) < b or len(set(nu) | set(nv)) < a + b:
        return None
    A = nu[:a]
    B = [y for y in nv if y not in A][:b]
    if len(B) == b:
        return DoubleStarWitness(u, v, tuple(A), tuple(B))
    for A in combinations(nu, a):
        rest = [y for y in nv if y not in A]
        if len(rest) >= b:
            return DoubleStarWitness(u, v, tuple(A), tuple(rest[:b]))
    return None


def find_double_star(g: Graph, a: int, b: int) -> DoubleStarWitness | None:
    """A plain copy of S_{a,b}: greedy leaf assignment, exhaustive if greedy fails."""
    if a < 1 or b < 1:
        raise PreconditionError("double star needs a, b >= 1")
    for u, v in g.edges():
        for x, y in ((u, v), (v, u)):
            w = double_star_at(g.adj, g.vertex_mask, x, y, a, b)
            if w is not None:
                return w
    return None


def find_path_between(g: Graph, s: int, t: int, length: int) -> PathWitness | None:
    """A path from ``s`` to ``t`` with exactly ``length`` edges."""
    if s == t or length < 1:
        return None
    adj = g.adj
    seq = [s]

    def extend(cur: int, visited: int, left: int) -> bool:
        if left == 1:
            if adj[cur] >> t & 1:
                seq.append(t)
                return True
            return False
        for w in bits(adj[cur] & ~visited & ~(1 << t)):
            seq.append(w)
            if extend(w, visited | 1 << w, left - 1):
                return True
            seq.pop()
        return False

    return PathWitness(tuple(seq)) if extend(s, 1 << s, length) else None
