"""Turn the edge-bound proofs into algorithms that return witnesses.

Every "contradiction" in the colored path argument has the same shape: a
sequence of paths of length 2k+1, each forcing its two endpoints to share a
colour, links two adjacent vertices.  A proper colouring cannot satisfy all
those constraints, so one of the paths is bichromatic.  The extractor builds
such a chain from the structure around a shortest long cycle *without
looking at colours*, and only then scans it.

Traces record each step (core peeling, component choice, cycle, case,
outgoing edges, recursion, chain, fallback) and can be replayed against the
input with ``replay_trace``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Sequence

from .errors import CertificateError, InvariantError, PreconditionError
from .graph import ColoredGraph, Graph, bits, component_masks, core_mask, edges_within, popcount
from .patterns import LeafProfile, PathWitness, TreePattern, classify_tree, odd_leaf_path
from .search import (
    CycleWitness,
    DoubleStarWitness,
    bichromatic_path_in,
    double_star_at,
    is_valid_cycle,
    is_valid_double_star,
    is_valid_path,
    smallest_long_cycle_in,
)


# -- forced chains ----------------------------------------------------------

@dataclass(frozen=True)
class ForcedChain:
    """Paths ``links[i]`` from ``x_i`` to ``x_{i+1}``, each of ``length`` edges.

    Consecutive links meet end-to-start and the chain's first and last
    vertices are adjacent in ``graph``.
    """

    graph: Graph
    length: int
    links: tuple[PathWitness, ...]

    def validate(self) -> None:
        if not self.links:
            raise CertificateError("empty chain")
        for i, p in enumerate(self.links):
            if not is_valid_path(self.graph, p, self.length):
                raise CertificateError(f"link {i} is not a path with {self.length} edges: {p.vertices}")
        for i, (p, q) in enumerate(zip(self.links, self.links[1:])):
            if p.vertices[-1] != q.vertices[0]:
                raise CertificateError(f"links {i} and {i + 1} do not share an endpoint")
        first, last = self.links[0].vertices[0], self.links[-1].vertices[-1]
        if not self.graph.has_edge(first, last):
            raise CertificateError(f"chain ends {first} and {last} are not adjacent")

    def to_json(self) -> list[list[int]]:
        return [list(p.vertices) for p in self.links]


def scan_forced_chain(chain: ForcedChain, c: Sequence[int]) -> PathWitness:
    """First link whose endpoints get different colours under ``c``."""
    chain.validate()
    for p in chain.links:
        a, b = p.endpoints
        if c[a] != c[b]:
            return p
    first, last = chain.links[0].vertices[0], chain.links[-1].vertices[-1]
    raise CertificateError(f"no bichromatic link: colouring is improper on edge ({first}, {last})")


# -- traces -----------------------------------------------------------------

@dataclass
class ExtractionTrace:
    k: int
    steps: list[dict[str, Any]] = field(default_factory=list)

    def add(self, op: str, depth: int, **data: Any) -> None:
        self.steps.append({"op": op, "depth": depth, **data})

    @property
    def fallbacks(self) -> int:
        return sum(1 for s in self.steps if s["op"] == "fallback")

    @property
    def cases(self) -> list[str]:
        return [s["case"] for s in self.steps if s["op"] == "case"]

    @property
    def max_depth(self) -> int:
        return max((s["depth"] for s in self.steps), default=0)

    def to_json(self) -> dict[str, Any]:
        return {"k": self.k, "steps": self.steps}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _case_label(length: int, k: int) -> str:
    if length == 2 * k + 1:
        return "2k+1"
    if length == 2 * k + 2:
        return "2k+2"
    if length == 2 * k + 3:
        return "2k+3"
    return ">=2k+4"


# -- link construction ------------------------------------------------------

def _cycle_links(adj: Sequence[int], comp: int, cyc: CycleWitness, k: int) -> list[PathWitness]:
    """All proof-derived same-colour links around the cycle.

    * arcs: 2k+1 consecutive cycle edges (only when the cycle is longer);
    * outgoing links: u, v_i, v_{i+1}, ..., v_{i+2k} for an outside
      neighbour u of v_i -- forces u to match v_{i+2k};
    * chord links: if v_i sees both v_{i+j} and v_{i+j+1}, the path
      v_{i+1}..v_{i+j}, v_i, v_{i+j+1}..v_{i+2k+1} rejoins the arc's end.

    Each family is generated for both orientations of the cycle.
    """
    L = cyc.length
    span = 2 * k + 1
    on_cycle = 0
    for v in cyc.vertices:
        on_cycle |= 1 << v
    links: list[PathWitness] = []
    for reverse in (False, True):
        seq = cyc.vertices[::-1] if reverse else cyc.vertices
        at = lambda i: seq[i % L]  # noqa: E731
        for i in range(L):
            if L > span:
                links.append(PathWitness(tuple(at(i + j) for j in range(span + 1))))
            outside = adj[at(i)] & comp & ~on_cycle
            for u in bits(outside):
                links.append(PathWitness((u,) + tuple(at(i + j) for j in range(span))))
            if L > span:
                vi = at(i)
                for j in range(1, span):
                    if adj[vi] >> at(i + j) & 1 and adj[vi] >> at(i + j + 1) & 1:
                        head = tuple(at(i + s) for s in range(1, j + 1))
                        tail = tuple(at(i + s) for s in range(j + 1, span + 1))
                        links.append(PathWitness(head + (vi,) + tail))
    return links


def _close_chain(g: Graph, comp: int, links: list[PathWitness]) -> ForcedChain | None:
    """BFS over the link graph for an edge whose ends are forced together."""
    if not links:
        return None
    span = links[0].length
    nbrs: dict[int, list[tuple[int, PathWitness]]] = {}
    for p in links:
        a, b = p.endpoints
        nbrs.setdefault(a, []).append((b, p))
        nbrs.setdefault(b, []).append((a, p.reversed()))
    for x in sorted(nbrs):
        back: dict[int, tuple[int, PathWitness] | None] = {x: None}
        queue = deque([x])
        while queue:
            cur = queue.popleft()
            for nxt, p in nbrs[cur]:
                if nxt not in back:
                    back[nxt] = (cur, p)
                    queue.append(nxt)
        for y in sorted(back):
            if y != x and g.adj[x] >> y & 1 and comp >> y & 1:
                out = []
                cur = y
                while back[cur] is not None:
                    prev, p = back[cur]
                    out.append(p)
                    cur = prev
                out.reverse()
                return ForcedChain(g, span, tuple(out))
    return None


# -- bichromatic P_{2k+1} ---------------------------------------------------

def _extract(g: Graph, active: int, colors: Sequence[int], k: int,
             trace: ExtractionTrace, depth: int) -> PathWitness:
    adj = g.adj
    span = 2 * k + 1
    if depth > g.n:
        raise InvariantError("recursion deeper than the vertex count", trace)
    trace.add("enter", depth, active=list(bits(active)))

    core, removed = core_mask(adj, active, k)
    trace.add("core", depth, removed=[list(s) for s in removed])
    comp = next((m for m in component_masks(adj, core) if edges_within(adj, m) > k * popcount(m)), 0)
    if not comp:
        raise InvariantError("no component keeps e > k*n after peeling", trace)
    trace.add("component", depth, vertices=list(bits(comp)))

    cyc = smallest_long_cycle_in(adj, comp, span)
    if cyc is None:
        raise InvariantError(f"dense component without a cycle of length >= {span}", trace)
    L = cyc.length
    trace.add("cycle", depth, vertices=list(cyc.vertices), length=L)
    case = _case_label(L, k)
    trace.add("case", depth, case=case)

    on_cycle = 0
    for v in cyc.vertices:
        on_cycle |= 1 << v
    outgoing = {v: list(bits(adj[v] & comp & ~on_cycle)) for v in cyc.vertices}
    outgoing = {v: us for v, us in outgoing.items() if us}
    trace.add("outgoing", depth, map=[[v, us[0]] for v, us in outgoing.items()])

    if case == "2k+1" and not outgoing:
        raise InvariantError("2k+1 cycle spans a dense component, which is impossible", trace)

    if case == "2k+1":
        pairs = [(i, cyc.at(i), cyc.at(i + 1)) for i in range(L)
                 if cyc.at(i) in outgoing and cyc.at(i + 1) in outgoing]
        # the argument picks a consecutive outgoing pair followed by a third outgoing vertex
        pairs.sort(key=lambda t: (cyc.at(t[0] + 2) not in outgoing, t[0]))
        n_comp, e_comp = popcount(comp), edges_within(adj, comp)
        for _, x, y in pairs:
            lost = popcount(adj[x] & comp) + popcount(adj[y] & comp) - 1
            if e_comp - lost > k * (n_comp - 2):
                trace.add("recurse", depth, removed=[x, y], edges_removed=lost)
                return _extract(g, comp & ~(1 << x) & ~(1 << y), colors, k, trace, depth + 1)
        if pairs:
            trace.add("recurse-skipped", depth, reason="every consecutive outgoing pair costs too many edges")

    chain = _close_chain(g, comp, _cycle_links(adj, comp, cyc, k))
    if chain is not None:
        trace.add("chain", depth, links=chain.to_json())
        path = scan_forced_chain(chain, colors)
        trace.add("witness", depth, path=list(path.vertices))
        return path

    trace.add("fallback", depth, reason=f"no forced chain closes in case {case}")
    path = bichromatic_path_in(adj, comp, span, colors)
    if path is None:
        path = bichromatic_path_in(adj, active, span, colors)
    if path is None:
        raise InvariantError("exhaustive search found no bichromatic path in a dense graph", trace)
    trace.add("witness", depth, path=list(path.vertices))
    return path


def _check_density(cg: ColoredGraph, factor: float, what: str) -> None:
    e, n = cg.graph.edge_count(), cg.n
    if not e > factor * n:
        raise PreconditionError(f"{what} needs e > {factor:g}*n, got e = {e}, n = {n}")


def extract_bichromatic_path(cg: ColoredGraph, k: int) -> tuple[PathWitness, ExtractionTrace]:
    """A path with 2k+1 edges and differently coloured ends, when e > k*n."""
    if k < 1:
        raise PreconditionError("k must be >= 1")
    _check_density(cg, k, "extract_bichromatic_path")
    trace = ExtractionTrace(k)
    path = _extract(cg.graph, cg.graph.vertex_mask, cg.coloring, k, trace, 0)
    a, b = path.endpoints
    if not is_valid_path(cg.graph, path, 2 * k + 1) or cg.coloring[a] == cg.coloring[b]:
        raise InvariantError(f"extracted path {path.vertices} does not validate", trace)
    return path, trace


def replay_trace(cg: ColoredGraph, trace: ExtractionTrace) -> bool:
    """Re-check every recorded step against the input graph."""
    g, k = cg.graph, trace.k
    adj, span = g.adj, 2 * k + 1
    active = core = comp = 0
    cyc: CycleWitness | None = None
    expected_active = g.vertex_mask
    for step in trace.steps:
        op = step["op"]
        if op == "enter":
            active = sum(1 << v for v in step["active"])
            if active != expected_active:
                return False
        elif op == "core":
            core = active
            for v, d in step["removed"]:
                if not core >> v & 1 or popcount(adj[v] & core) != d or d >= k:
                    return False
                core &= ~(1 << v)
            if any(popcount(adj[v] & core) < k for v in bits(core)):
                return False
        elif op == "component":
            comp = sum(1 << v for v in step["vertices"])
            if comp & ~core or comp not in component_masks(adj, core):
                return False
            if not edges_within(adj, comp) > k * popcount(comp):
                return False
        elif op == "cycle":
            cyc = CycleWitness(tuple(step["vertices"]))
            if not is_valid_cycle(g, cyc) or cyc.length < span or any(not comp >> v & 1 for v in cyc.vertices):
                return False
            best = smallest_long_cycle_in(adj, comp, span)
            if best is None or best.length != cyc.length:
                return False
        elif op == "case":
            if cyc is None or step["case"] != _case_label(cyc.length, k):
                return False
        elif op == "outgoing":
            for v, u in step["map"]:
                if cyc is None or v not in cyc.vertices or u in cyc.vertices or not g.has_edge(v, u):
                    return False
        elif op == "recurse":
            x, y = step["removed"]
            if cyc is None or not g.has_edge(x, y) or x not in cyc.vertices or y not in cyc.vertices:
                return False
            rest = comp & ~(1 << x) & ~(1 << y)
            if not edges_within(adj, rest) > k * popcount(rest):
                return False
            expected_active = rest
        elif op == "chain":
            chain = ForcedChain(g, span, tuple(PathWitness(tuple(p)) for p in step["links"]))
            try:
                chain.validate()
            except CertificateError:
                return False
        elif op == "witness":
            p = PathWitness(tuple(step["path"]))
            a, b = p.endpoints
            if not is_valid_path(g, p, span) or cg.coloring[a] == cg.coloring[b]:
                return False
    return True


# -- trees with bichromatic leaves ------------------------------------------

@dataclass(frozen=True)
class TreeEmbedding:
    mapping: dict[int, int]
    leaf_images: tuple[int, ...]
    path_trace: ExtractionTrace | None


def is_valid_embedding(g: Graph, t: TreePattern, mapping: dict[int, int]) -> bool:
    if sorted(mapping) != list(range(t.k + 1)) or len(set(mapping.values())) != t.k + 1:
        return False
    return all(g.has_edge(mapping[x], mapping[y]) for x, y in t.edges)


def embed_tree_bichromatic(cg: ColoredGraph, t: TreePattern) -> TreeEmbedding:
    """Copy of ``t`` whose leaves see at least two colours, when e > (k-1)*n."""
    if classify_tree(t) is not LeafProfile.MIXED_SIDES:
        raise PreconditionError(f"{t.name} has all leaves on one side")
    _check_density(cg, t.k - 1, "embed_tree_bichromatic")
    g, colors = cg.graph, cg.coloring
    core, _ = core_mask(g.adj, g.vertex_mask, t.k)
    if not core:
        raise InvariantError("minimum-degree core vanished despite the density hypothesis")

    tree_path = odd_leaf_path(t)
    half = (tree_path.length - 1) // 2
    trace = None
    if half == 0:
        x = next(bits(core))
        host_path = PathWitness((x, next(bits(g.adj[x] & core))))
    else:
        trace = ExtractionTrace(half)
        host_path = _extract(g, core, colors, half, trace, 0)

    mapping = dict(zip(tree_path.vertices, host_path.vertices))
    used = 0
    for v in host_path.vertices:
        used |= 1 << v
    queue = deque(tree_path.vertices)
    while queue:
        x = queue.popleft()
        for y in t.adjacency[x]:
            if y in mapping:
                continue
            free = g.adj[mapping[x]] & core & ~used
            if not free:
                raise InvariantError(f"greedy extension stuck at tree vertex {y}", trace)
            mapping[y] = (free & -free).bit_length() - 1
            used |= 1 << mapping[y]
            queue.append(y)

    leaf_images = tuple(mapping[x] for x in t.leaves)
    if not is_valid_embedding(g, t, mapping) or len({colors[v] for v in leaf_images}) < 2:
        raise InvariantError("tree embedding failed validation", trace)
    return TreeEmbedding(mapping, leaf_images, trace)


# -- double stars -----------------------------------------------------------

@dataclass(frozen=True)
class DoubleStarTrace:
    branch: str
    core: tuple[int, ...]
    initial: DoubleStarWitness | None

    @property
    def fallback(self) -> bool:
        return self.branch == "fallback"


def _leaf_colors(w: DoubleStarWitness, colors: Sequence[int]) -> int:
    return len({colors[x] for x in w.A + w.B})


def _exhaustive_double_star(g: Graph, colors: Sequence[int], a: int, b: int) -> DoubleStarWitness | None:
    for u, v in g.edges():
        for x, y in ((u, v), (v, u)):
            nx = list(bits(g.adj[x] & ~(1 << y)))
            ny = list(bits(g.adj[y] & ~(1 << x)))
            for A in combinations(nx, a):
                rest = [z for z in ny if z not in A]
                for B in combinations(rest, b):
                    w = DoubleStarWitness(x, y, A, B)
                    if _leaf_colors(w, colors) >= 2:
                        return w
    return None


def _pivot(adj: Sequence[int], core: int, w: DoubleStarWitness, a: int) -> tuple[str, DoubleStarWitness | None]:
    u, v, A, B = w.u, w.v, w.A, w.B
    for x in B:
        if not adj[u] >> x & 1:
            # recentre on {v, x}: v keeps B with u swapped in for x, x takes a fresh a-set
            pool = [z for z in bits(adj[x] & core) if z not in (u, v)]
            if len(pool) < a:
                return "pivot-nonadjacent", None
            B2 = tuple(sorted((set(B) | {u}) - {x}))
            return "pivot-nonadjacent", DoubleStarWitness(x, v, tuple(pool[:a]), B2)
    x = B[0]
    y = A[0]
    pool = [z for z in bits(adj[x] & core) if z != u]
    if len(pool) < a:
        return "pivot-dominated", None
    B2 = tuple(sorted((set(B) | {y}) - {x}))
    return "pivot-dominated", DoubleStarWitness(x, u, tuple(pool[:a]), B2)


def find_double_star_bichromatic(cg: ColoredGraph, a: int, b: int) -> tuple[DoubleStarWitness, DoubleStarTrace]:
    """Copy of S_{a,b} whose a+b leaves are not all one colour, when e > (a+b)/2 * n.

    The returned witness always has ``u`` carrying ``a`` leaves, even though
    the search runs with the smaller side first.
    """
    if a < 1 or b < 1:
        raise PreconditionError("double star needs a, b >= 1")
    _check_density(cg, (a + b) / 2, "find_double_star_bichromatic")
    swapped = a > b
    if swapped:
        a, b = b, a
    g, colors = cg.graph, cg.coloring
    adj = g.adj
    core, _ = core_mask(adj, g.vertex_mask, (a + b) // 2 + 1)

    initial = None
    for u, v in ((u, v) for u in bits(core) for v in bits(adj[u] & core)):
        initial = double_star_at(adj, core, u, v, a, b)
        if initial is not None:
            break

    branch, found = "fallback", None
    if initial is not None:
        if _leaf_colors(initial, colors) >= 2:
            branch, found = "direct", initial
        else:
            branch, found = _pivot(adj, core, initial, a)
            if found is not None and (not is_valid_double_star(g, found, a, b)
                                      or _leaf_colors(found, colors) < 2):
                found = None
    if found is None:
        branch = "fallback"
        found = _exhaustive_double_star(g, colors, a, b)
        if found is None:
            raise InvariantError("no double star with bichromatic leaves in a dense graph")
    if swapped:
        found = DoubleStarWitness(found.v, found.u, found.B, found.A)
        a, b = b, a
    if not is_valid_double_star(g, found, a, b) or _leaf_colors(found, colors) < 2:
        raise InvariantError(f"double star witness {found} failed validation")
    return found, DoubleStarTrace(branch, tuple(bits(core)), initial)
