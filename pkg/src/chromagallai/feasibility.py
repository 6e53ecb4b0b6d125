"""Does a graph admit a proper colouring with every copy of T leaf-monochromatic?

With an unbounded palette the answer is decided by a closure: every copy's
leaf set must be one colour, so merge them all (union-find).  The graph is
feasible iff no edge lands inside a merged class, and then colouring each
vertex by its class index is a witness.  When it is infeasible, the chain of
leaf sets that forced the offending edge's endpoints together is returned.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

from .errors import PreconditionError
from .graph import Coloring, Graph, is_proper
from .limits import BRUTE_FORCE_MAX_N, check_size
from .patterns import TreePattern
from .search import leaf_image_sets

LeafSet = frozenset


class ForcedPartition:
    """Union-find over vertices, remembering which leaf set caused each merge.

    The ``find`` structure uses union by size with path compression.  Merges
    are mirrored into an uncompressed proof forest: one edge per successful
    union, labelled with the forcing leaf set.  A path in that forest between
    two vertices is a chain of leaf sets linking them.
    """

    def __init__(self, n: int):
        self.n = n
        self._parent = list(range(n))
        self._size = [1] * n
        self._proof: list[list[tuple[int, LeafSet]]] = [[] for _ in range(n)]
        self.unions = 0

    def find(self, v: int) -> int:
        root = v
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[v] != root:
            self._parent[v], v = root, self._parent[v]
        return root

    def union(self, x: int, y: int, cause: LeafSet) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self._size[rx] < self._size[ry]:
            rx, ry = ry, rx
        self._parent[ry] = rx
        self._size[rx] += self._size[ry]
        self._proof[x].append((y, cause))
        self._proof[y].append((x, cause))
        self.unions += 1
        return True

    def force(self, leaf_set: Iterable[int]) -> None:
        members = sorted(leaf_set)
        cause = LeafSet(members)
        for other in members[1:]:
            self.union(members[0], other, cause)

    def same(self, x: int, y: int) -> bool:
        return self.find(x) == self.find(y)

    def classes(self) -> list[frozenset[int]]:
        """Classes ordered by smallest member."""
        groups: dict[int, list[int]] = {}
        for v in range(self.n):
            groups.setdefault(self.find(v), []).append(v)
        return sorted((frozenset(g) for g in groups.values()), key=min)

    def class_labels(self) -> Coloring:
        labels = [0] * self.n
        for i, cls in enumerate(self.classes()):
            for v in cls:
                labels[v] = i
        return tuple(labels)

    def chain(self, x: int, y: int) -> list[LeafSet]:
        """Leaf sets along the proof-forest path from ``x`` to ``y``."""
        if not self.same(x, y):
            raise PreconditionError(f"{x} and {y} are not in the same forced class")
        back: dict[int, tuple[int, LeafSet] | None] = {x: None}
        queue = deque([x])
        while queue:
            cur = queue.popleft()
            if cur == y:
                break
            for nxt, cause in self._proof[cur]:
                if nxt not in back:
                    back[nxt] = (cur, cause)
                    queue.append(nxt)
        out = []
        cur = y
        while back[cur] is not None:
            prev, cause = back[cur]
            out.append(cause)
            cur = prev
        out.reverse()
        return out


@dataclass(frozen=True)
class Feasible:
    coloring: Coloring

    feasible = True

    def to_json(self) -> dict:
        return {"feasible": True, "coloring": list(self.coloring)}


@dataclass(frozen=True)
class Infeasible:
    conflict_edge: tuple[int, int]
    chain: tuple[LeafSet, ...]

    feasible = False

    def to_json(self) -> dict:
        return {
            "feasible": False,
            "conflict_edge": list(self.conflict_edge),
            "chain": [sorted(s) for s in self.chain],
        }


FeasibilityOutcome = Union[Feasible, Infeasible]


def outcome_from_json(data: dict) -> FeasibilityOutcome:
    if data["feasible"]:
        return Feasible(tuple(data["coloring"]))
    return Infeasible(tuple(data["conflict_edge"]), tuple(LeafSet(s) for s in data["chain"]))


def dumps_outcome(out: FeasibilityOutcome) -> str:
    return json.dumps(out.to_json(), sort_keys=True)


def forced_partition(g: Graph, t: TreePattern, induced: bool = False) -> ForcedPartition:
    part = ForcedPartition(g.n)
    for leaves in leaf_image_sets(g, t, induced):
        part.force(leaves)
    return part


def decide_feasible(g: Graph, t: TreePattern, induced: bool = False) -> FeasibilityOutcome:
    part = forced_partition(g, t, induced)
    for u, v in g.edges():
        if part.same(u, v):
            return Infeasible((u, v), tuple(part.chain(u, v)))
    return Feasible(part.class_labels())


def is_feasible(g: Graph, t: TreePattern, induced: bool = False) -> bool:
    """Cheaper yes/no: stop merging as soon as an edge closes inside a class."""
    part = ForcedPartition(g.n)
    edges = g.edges()
    for leaves in leaf_image_sets(g, t, induced):
        before = part.unions
        part.force(leaves)
        if part.unions != before and any(part.same(u, v) for u, v in edges):
            return False
    return True


# -- independent oracle -----------------------------------------------------

def brute_leaf_sets(g: Graph, t: TreePattern, induced: bool = False) -> set[LeafSet]:
    """Leaf sets of all copies, from every injective vertex map (no pruning)."""
    size = t.k + 1
    out: set[LeafSet] = set()
    if size > g.n:
        return out
    for image in itertools.permutations(range(g.n), size):
        if all(g.has_edge(image[x], image[y]) for x, y in t.edges):
            if induced:
                chosen = set(image)
                inside = sum(1 for u, v in g.edges() if u in chosen and v in chosen)
                if inside != t.k:
                    continue
            out.add(LeafSet(image[x] for x in t.leaves))
    return out


def set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length ``n`` (one per set partition)."""
    if n == 0:
        yield ()
        return
    rgs = [0] * n

    def rec(i: int, top: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(rgs)
            return
        for c in range(top + 2):
            rgs[i] = c
            yield from rec(i + 1, max(top, c))

    rgs[0] = 0
    yield from rec(1, 0)


def brute_force_feasible(g: Graph, t: TreePattern, induced: bool = False) -> bool:
    check_size(g.n, BRUTE_FORCE_MAX_N, "brute_force_feasible")
    leaf_sets = brute_leaf_sets(g, t, induced)
    edges = g.edges()
    for colors in set_partitions(g.n):
        if any(colors[u] == colors[v] for u, v in edges):
            continue
        if all(len({colors[x] for x in s}) == 1 for s in leaf_sets):
            return True
    return False


# -- certificates -----------------------------------------------------------

def is_leaf_image_set(g: Graph, t: TreePattern, candidate: Iterable[int], induced: bool = False) -> bool:
    """Is there a copy of ``t`` whose leaf images are exactly ``candidate``?

    Tries every bijection from the pattern's leaves onto the candidate and
    then every injective placement of the internal vertices.
    """
    target = sorted(set(candidate))
    leaves = list(t.leaves)
    if len(target) != len(leaves) or any(not 0 <= v < g.n for v in target):
        return False
    internal = [x for x in range(t.k + 1) if x not in set(leaves)]
    others = [v for v in range(g.n) if v not in set(target)]
    for leaf_img in itertools.permutations(target):
        for int_img in itertools.permutations(others, len(internal)):
            image = dict(zip(leaves, leaf_img))
            image.update(zip(internal, int_img))
            if not all(g.has_edge(image[x], image[y]) for x, y in t.edges):
                continue
            if induced:
                chosen = set(image.values())
                if sum(1 for u, v in g.edges() if u in chosen and v in chosen) != t.k:
                    continue
            return True
    return False


def check_certificate(g: Graph, t: TreePattern, out: FeasibilityOutcome, induced: bool = False) -> bool:
    if isinstance(out, Feasible):
        c = out.coloring
        if len(c) != g.n or not is_proper(g, c):
            return False
        return all(len({c[x] for x in s}) == 1 for s in brute_leaf_sets_or_fast(g, t, induced))
    u, v = out.conflict_edge
    if not (0 <= u < g.n and 0 <= v < g.n and g.has_edge(u, v)):
        return False
    chain: Sequence[LeafSet] = out.chain
    if not chain or u not in chain[0] or v not in chain[-1]:
        return False
    if any(not (a & b) for a, b in zip(chain, chain[1:])):
        return False
    return all(is_leaf_image_set(g, t, s, induced) for s in chain)


def brute_leaf_sets_or_fast(g: Graph, t: TreePattern, induced: bool = False) -> set[LeafSet]:
    # the permutation scan is the independent route but blows up past n = 9
    if g.n <= 9:
        return brute_leaf_sets(g, t, induced)
    return set(leaf_image_sets(g, t, induced))
