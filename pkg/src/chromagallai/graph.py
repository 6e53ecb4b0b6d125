"""Small simple graphs as bitmask adjacency rows, plus proper colorings.

Vertices are ``0..n-1``.  ``adj[v]`` is an int whose bit ``u`` is set iff
``{u, v}`` is an edge.  Everything here is immutable and pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import GraphFormatError, PreconditionError
from .limits import GRAPH_MAX_N, check_size

Coloring = tuple[int, ...]


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"row {v} references a vertex >= n")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric edge {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n = {n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(popcount(row) for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [popcount(row) for row in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def induced_subgraph(self, vertices: Iterable[int]) -> Graph:
        """Subgraph induced on ``vertices``, relabelled ``0..`` in ascending order."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        adj = []
        for v in keep:
            row = 0
            for u in bits(self.adj[v]):
                if u in index:
                    row |= 1 << index[u]
            adj.append(row)
        return Graph(len(keep), tuple(adj))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def with_edge(self, u: int, v: int) -> Graph:
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.n, tuple(adj))


@dataclass(frozen=True)
class ColoredGraph:
    graph: Graph
    coloring: Coloring = field()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coloring", tuple(self.coloring))
        bad = improper_edge(self.graph, self.coloring)
        if bad is not None:
            raise PreconditionError(f"coloring is not proper: edge {bad} is monochromatic")

    @property
    def n(self) -> int:
        return self.graph.n


# -- constructors -----------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def path_graph(num_vertices: int) -> Graph:
    return Graph.from_edges(num_vertices, ((i, i + 1) for i in range(num_vertices - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def disjoint_union(*graphs: Graph) -> Graph:
    edges: list[tuple[int, int]] = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph.from_edges(offset, edges)


# -- colorings --------------------------------------------------------------

def improper_edge(g: Graph, c: Sequence[int]) -> tuple[int, int] | None:
    """First monochromatic edge, or ``None`` if ``c`` is proper."""
    if len(c) != g.n:
        raise PreconditionError(f"coloring has {len(c)} entries, graph has {g.n} vertices")
    for u, v in g.edges():
        if c[u] == c[v]:
            return (u, v)
    return None


def is_proper(g: Graph, c: Sequence[int]) -> bool:
    return improper_edge(g, c) is None


def greedy_coloring(g: Graph, order: Sequence[int] | None = None) -> Coloring:
    """First-fit proper coloring, visiting vertices in ``order``."""
    colors = [-1] * g.n
    for v in order if order is not None else range(g.n):
        used = {colors[u] for u in bits(g.adj[v])}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return tuple(colors)


# -- reductions -------------------------------------------------------------

@dataclass(frozen=True)
class RemovalTrace:
    """Deletions performed by ``k_core``.

    ``steps`` lists ``(vertex, degree_at_removal)`` in deletion order, using
    the input graph's labels; ``kept`` maps core vertex ``i`` to ``kept[i]``.
    """

    k: int
    steps: tuple[tuple[int, int], ...]
    kept: tuple[int, ...]


def core_mask(adj: Sequence[int], active: int, k: int) -> tuple[int, list[tuple[int, int]]]:
    """Peel vertices of degree < k from the ``active`` vertex set.

    Always removes the smallest-labelled low-degree vertex next, so the
    trace is deterministic.
    """
    steps = []
    while True:
        for v in bits(active):
            d = popcount(adj[v] & active)
            if d < k:
                steps.append((v, d))
                active &= ~(1 << v)
                break
        else:
            return active, steps


def k_core(g: Graph, k: int) -> tuple[Graph, RemovalTrace]:
    if k < 1:
        raise PreconditionError("k_core needs k >= 1")
    active, steps = core_mask(g.adj, g.vertex_mask, k)
    kept = tuple(bits(active))
    return g.induced_subgraph(kept), RemovalTrace(k, tuple(steps), kept)


def component_masks(adj: Sequence[int], active: int) -> list[int]:
    comps = []
    remaining = active
    while remaining:
        seed = remaining & -remaining
        comp = frontier = seed
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= adj[v]
            frontier = grow & active & ~comp
            comp |= frontier
        comps.append(comp)
        remaining &= ~comp
    return comps


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Vertex sets of the components, ordered by smallest member."""
    return [frozenset(bits(m)) for m in component_masks(g.adj, g.vertex_mask)]


def edges_within(adj: Sequence[int], mask: int) -> int:
    return sum(popcount(adj[v] & mask) for v in bits(mask)) // 2


# -- text formats -----------------------------------------------------------

def emit_graph6(g: Graph) -> str:
    check_size(g.n, GRAPH_MAX_N, "graph6 output")
    out = [chr(g.n + 63)]
    acc = nbits = 0
    for j in range(1, g.n):
        for i in range(j):
            acc = acc << 1 | (g.adj[i] >> j & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    text = text.rstrip("\r\n")
    if not text:
        raise GraphFormatError("empty graph6 string", 0)
    if text.startswith(">>graph6<<"):
        raise GraphFormatError("graph6 headers are not accepted", 0)
    first = ord(text[0])
    if first == 126:
        raise GraphFormatError("multi-byte vertex counts (n > 62) are not supported", 0)
    if not 63 <= first <= 125:
        raise GraphFormatError(f"invalid length byte {text[0]!r}", 0)
    n = first - 63
    check_size(n, GRAPH_MAX_N, "graph6 input")
    total = n * (n - 1) // 2
    want = (total + 5) // 6
    body = text[1:]
    if len(body) < want:
        raise GraphFormatError(f"truncated: expected {want} data bytes, got {len(body)}", len(text))
    if len(body) > want:
        raise GraphFormatError("trailing garbage after graph6 data", 1 + want)
    stream = []
    for pos, ch in enumerate(body, start=1):
        val = ord(ch) - 63
        if not 0 <= val <= 63:
            raise GraphFormatError(f"invalid data byte {ch!r}", pos)
        stream.extend((val >> s) & 1 for s in range(5, -1, -1))
    if any(stream[total:]):
        raise GraphFormatError("nonzero padding bits", len(text) - 1)
    adj = [0] * n
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if stream[idx]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            idx += 1
    return Graph(n, tuple(adj))


def parse_edge_list(text: str) -> Graph:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise GraphFormatError("edge list must start with a 'n m' line")
    try:
        n, m = (int(x) for x in lines[0])
        pairs = [(int(a), int(b)) for a, b in lines[1:]]
    except ValueError as exc:
        raise GraphFormatError(f"bad edge list: {exc}") from None
    check_size(n, GRAPH_MAX_N, "edge-list input")
    if len(pairs) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(pairs)}")
    try:
        g = Graph.from_edges(n, pairs)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None
    if g.edge_count() != m:
        raise GraphFormatError("duplicate edges in edge list")
    return g


def emit_edge_list(g: Graph) -> str:
    edges = g.edges()
    return "\n".join([f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"


def parse_graph_text(text: str) -> Graph:
    """Accept either a single graph6 line or an edge list."""
    stripped = text.strip()
    if not stripped:
        raise GraphFormatError("empty graph file", 0)
    if len(stripped.split(None, 1)[0]) != len(stripped.splitlines()[0]):
        return parse_edge_list(stripped)
    return parse_graph6(stripped)


def parse_coloring(text: str, n: int | None = None) -> Coloring:
    try:
        colors = tuple(int(x) for x in text.split())
    except ValueError:
        raise GraphFormatError("coloring must be whitespace-separated integers") from None
    if any(c < 0 for c in colors):
        raise GraphFormatError("colors must be non-negative")
    if n is not None and len(colors) != n:
        raise GraphFormatError(f"coloring has {len(colors)} entries, expected {n}")
    return colors


def emit_coloring(c: Sequence[int]) -> str:
    return " ".join(str(x) for x in c) + "\n"
