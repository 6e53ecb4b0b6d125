"""Tree patterns: validation, 2-colouring, leaf-side classification."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .errors import GraphFormatError, PreconditionError


class LeafProfile(enum.Enum):
    ALL_SAME_SIDE = "AllSameSide"
    MIXED_SIDES = "MixedSides"


@dataclass(frozen=True)
class PathWitness:
    """A path given by its vertex sequence; ``length`` counts edges."""

    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    def reversed(self) -> PathWitness:
        return PathWitness(self.vertices[::-1])


@dataclass(frozen=True)
class TreePattern:
    """A tree with ``k`` edges on vertices ``0..k``."""

    k: int
    edges: tuple[tuple[int, int], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        edges = tuple(tuple(sorted(e)) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.k < 1:
            raise PreconditionError("a tree pattern needs at least one edge")
        if len(edges) != self.k or len(set(edges)) != self.k:
            raise PreconditionError(f"expected {self.k} distinct edges, got {len(edges)}")
        for u, v in edges:
            if u == v or not (0 <= u <= self.k and 0 <= v <= self.k):
                raise PreconditionError(f"bad tree edge ({u}, {v})")
        if len(self._bfs_depths(0)) != self.k + 1:
            raise PreconditionError("edges do not form a connected tree")
        if not self.name:
            object.__setattr__(self, "name", "T" + "".join(f"[{u}{v}]" for u, v in edges))

    # -- constructors -------------------------------------------------------

    @classmethod
    def path(cls, length: int) -> TreePattern:
        return cls(length, tuple((i, i + 1) for i in range(length)), name=f"P_{length}")

    @classmethod
    def star(cls, leaves: int) -> TreePattern:
        return cls(leaves, tuple((0, i) for i in range(1, leaves + 1)), name=f"K_1,{leaves}")

    @classmethod
    def double_star(cls, a: int, b: int) -> TreePattern:
        """Centres 0 (with ``a`` leaves) and 1 (with ``b`` leaves)."""
        edges = [(0, 1)]
        edges += [(0, 2 + i) for i in range(a)]
        edges += [(1, 2 + a + j) for j in range(b)]
        return cls(a + b + 1, tuple(edges), name=f"S_{a},{b}")

    @classmethod
    def parse(cls, text: str, name: str = "") -> TreePattern:
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        try:
            k = int(lines[0][0])
            edges = tuple((int(a), int(b)) for a, b in lines[1:])
        except (IndexError, ValueError):
            raise GraphFormatError("tree file must be 'k' followed by k lines 'u v'") from None
        if len(lines[0]) != 1:
            raise GraphFormatError("first line of a tree file holds only k")
        try:
            return cls(k, edges, name=name)
        except PreconditionError as exc:
            raise GraphFormatError(str(exc)) from None

    def to_text(self) -> str:
        return "\n".join([str(self.k)] + [f"{u} {v}" for u, v in self.edges]) + "\n"

    # -- structure ----------------------------------------------------------

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.k + 1)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    def _bfs_depths(self, root: int) -> dict[int, int]:
        nbrs: dict[int, list[int]] = {}
        for u, v in self.edges:
            nbrs.setdefault(u, []).append(v)
            nbrs.setdefault(v, []).append(u)
        depth = {root: 0}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in nbrs.get(x, ()):
                if y not in depth:
                    depth[y] = depth[x] + 1
                    queue.append(y)
        return depth

    @property
    def num_vertices(self) -> int:
        return self.k + 1

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def leaves(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.k + 1) if self.degree(v) == 1)

    @cached_property
    def two_coloring(self) -> tuple[int, ...]:
        depth = self._bfs_depths(0)
        return tuple(depth[v] % 2 for v in range(self.k + 1))

    @property
    def leaf_profile(self) -> LeafProfile:
        return classify_tree(self)

    @cached_property
    def is_path(self) -> bool:
        return all(self.degree(v) <= 2 for v in range(self.k + 1))

    def path_between(self, a: int, b: int) -> tuple[int, ...]:
        parent = {a: a}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            for y in self.adjacency[x]:
                if y not in parent:
                    parent[y] = x
                    queue.append(y)
        seq = [b]
        while seq[-1] != a:
            seq.append(parent[seq[-1]])
        return tuple(reversed(seq))


def classify_tree(t: TreePattern) -> LeafProfile:
    sides = {t.two_coloring[v] for v in t.leaves}
    return LeafProfile.MIXED_SIDES if len(sides) == 2 else LeafProfile.ALL_SAME_SIDE


def odd_leaf_path(t: TreePattern) -> PathWitness:
    """First leaf pair (lexicographically) at odd distance, as a path inside ``t``."""
    colors = t.two_coloring
    for a, b in combinations(t.leaves, 2):
        if colors[a] != colors[b]:
            return PathWitness(t.path_between(a, b))
    raise PreconditionError(f"{t.name} has all leaves on one side; no odd leaf-to-leaf path")
