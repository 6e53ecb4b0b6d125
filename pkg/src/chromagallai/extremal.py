"""Exhaustive extremal numbers at small n, and the families that attain them.

``compute_ex_c`` scans every isomorphism class on n vertices, edge counts
descending, and stops at the first count with a feasible graph (that count
is scanned completely so the extremal set is exact).  Bound comparisons are
attached as data; a characterization that fails is reported, not raised.
"""

from __future__ import annotations

from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence, Union

from .canon import CanonicalForm, canonical_form
from .enumeration import enumerate_nonisomorphic
from .errors import PreconditionError
from .feasibility import is_feasible
from .graph import (
    ColoredGraph,
    Graph,
    complete_bipartite,
    complete_graph,
    connected_components,
    cycle_graph,
    disjoint_union,
    is_proper,
)
from .limits import ENUMERATION_MAX_N, check_size
from .patterns import LeafProfile, TreePattern, classify_tree
from .search import contains_tree, find_path, leaf_image_sets, smallest_long_cycle_in


def _num(x: Fraction) -> int | float:
    return int(x) if x.denominator == 1 else float(x)


@dataclass(frozen=True)
class BoundCheck:
    name: str
    kind: str  # "theorem", "conjecture" or "large-n" (claimed only for n large)
    bound: Fraction
    value: int
    characterization: str | None = None  # "match" / "mismatch" / None
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.value <= self.bound

    @property
    def met(self) -> bool:
        return self.value == self.bound

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "kind": self.kind,
            "bound": _num(self.bound),
            "value": self.value,
            "holds": self.holds,
            "met": self.met,
            "characterization": self.characterization,
            "note": self.note,
        }


@dataclass
class ExtremalReport:
    n: int
    pattern: str
    value: int
    extremal: list[CanonicalForm]
    scanned: int
    feasible_count: int
    bounds: list[BoundCheck] = field(default_factory=list)

    def bound(self, name: str) -> BoundCheck:
        return next(b for b in self.bounds if b.name == name)

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "pattern": self.pattern,
            "value": self.value,
            "extremal": [cf.graph6 for cf in self.extremal],
            "bounds": [b.to_json() for b in self.bounds],
            "scanned": self.scanned,
            "feasible_count": self.feasible_count,
        }


def _by_edges(n: int) -> dict[int, list[Graph]]:
    groups: dict[int, list[Graph]] = defaultdict(list)
    for g in enumerate_nonisomorphic(n):
        groups[g.edge_count()].append(g)
    return groups


def _scan(n: int, accept: Callable[[Graph], bool], workers: int = 1) -> tuple[int, list[CanonicalForm], int, int]:
    """Largest edge count with an accepted graph: (value, achievers, scanned, accepted)."""
    check_size(n, ENUMERATION_MAX_N, "extremal scan")
    groups = _by_edges(n)
    scanned = accepted = 0
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for m in sorted(groups, reverse=True):
            graphs = groups[m]
            flags = list(pool.map(accept, graphs, chunksize=8)) if pool else [accept(g) for g in graphs]
            scanned += len(graphs)
            winners = [canonical_form(g) for g, ok in zip(graphs, flags) if ok]
            accepted += len(winners)
            if winners:
                return m, sorted(winners), scanned, accepted
    finally:
        if pool:
            pool.shutdown()
    raise AssertionError("the edgeless graph is always accepted")


class _Feasible:
    """Picklable predicate for worker pools."""

    def __init__(self, t: TreePattern, induced: bool):
        self.t, self.induced = t, induced

    def __call__(self, g: Graph) -> bool:
        return is_feasible(g, self.t, self.induced)


# -- pattern bookkeeping ----------------------------------------------------

def double_star_shape(t: TreePattern) -> tuple[int, int] | None:
    """(a, b) with a <= b if ``t`` is a double star, else None."""
    inner = [v for v in range(t.k + 1) if t.degree(v) > 1]
    if len(inner) != 2 or inner[1] not in t.adjacency[inner[0]]:
        return None
    a, b = sorted(t.degree(v) - 1 for v in inner)
    return a, b


def disjoint_cliques_form(n: int, r: int) -> CanonicalForm:
    return canonical_form(disjoint_union(*[complete_graph(r)] * (n // r)))


def shared_vertex_cliques_graph(n: int, l: int) -> Graph:
    """(n-1)/(l-2) copies of K_{l-1} glued at vertex 0."""
    size = l - 2
    edges = []
    for c in range((n - 1) // size):
        block = [0] + [1 + c * size + i for i in range(size)]
        edges += [(x, y) for i, x in enumerate(block) for y in block[i + 1:]]
    return Graph.from_edges(n, edges)


def _pattern_bounds(n: int, t: TreePattern, value: int, extremal: Sequence[CanonicalForm]) -> list[BoundCheck]:
    out = []
    k = t.k
    profile = classify_tree(t)
    if t.is_path and k % 2 == 1:
        half = (k - 1) // 2
        if half >= 1:
            out.append(_path_theorem_bound(n, half, value, extremal))
    if profile is LeafProfile.MIXED_SIDES:
        out.append(BoundCheck("mixed-tree (k-1)n", "theorem", Fraction((k - 1) * n), value))
        out.append(BoundCheck("conjecture (k-1)n/2", "conjecture", Fraction((k - 1) * n, 2), value))
        shape = double_star_shape(t)
        if shape is not None:
            a, b = shape
            out.append(BoundCheck("double-star (a+b)n/2", "theorem", Fraction((a + b) * n, 2), value))
    else:
        bip = canonical_form(complete_bipartite(n // 2, n - n // 2))
        note = ""
        kind = "large-n"
        if t.is_path and n >= 2 * k:
            kind, note = "theorem", "n >= 4k for P_2k: threshold known to suffice"
        out.append(BoundCheck("bipartite floor(n^2/4)", kind, Fraction(n * n // 4), value,
                              "match" if value == n * n // 4 and bip in extremal else "mismatch", note))
    return out


def _path_theorem_bound(n: int, k: int, value: int, extremal: Sequence[CanonicalForm]) -> BoundCheck:
    r = 2 * k + 1
    divisible = n % r == 0
    equal = value == k * n
    if divisible:
        ok = equal and list(extremal) == [disjoint_cliques_form(n, r)]
    else:
        ok = not equal
    note = f"predicts equality iff {r} | n, attained only by disjoint K_{r}"
    return BoundCheck("colored path kn", "theorem", Fraction(k * n), value, "match" if ok else "mismatch", note)


# -- public operations ------------------------------------------------------

def compute_ex_c(n: int, t: TreePattern, induced: bool = False, workers: int = 1) -> ExtremalReport:
    """Exact ex^c(n, t) over all isomorphism classes on ``n`` vertices."""
    check_size(n, ENUMERATION_MAX_N, "compute_ex_c")
    value, extremal, scanned, feasible = _scan(n, _Feasible(t, induced), workers)
    name = t.name + (" (induced copies)" if induced else "")
    report = ExtremalReport(n, name, value, extremal, scanned, feasible)
    report.bounds = _pattern_bounds(n, t, value, extremal)
    return report


@dataclass
class PathTheoremCheck:
    n: int
    k: int
    report: ExtremalReport

    @property
    def value(self) -> int:
        return self.report.value

    @property
    def bound(self) -> int:
        return self.k * self.n

    @property
    def within_bound(self) -> bool:
        return self.value <= self.bound

    @property
    def divisible(self) -> bool:
        return self.n % (2 * self.k + 1) == 0

    @property
    def characterization(self) -> str:
        return self.report.bound("colored path kn").characterization or "mismatch"

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "bound": self.bound,
            "within_bound": self.within_bound,
            "divisible": self.divisible,
            "characterization": self.characterization,
            "report": self.report.to_json(),
        }


def check_path_theorem(n: int, k: int, workers: int = 1) -> PathTheoremCheck:
    if k < 1 or 2 * k + 1 > n + 1:
        raise PreconditionError(f"need k >= 1 and 2k+1 <= n+1, got n={n}, k={k}")
    return PathTheoremCheck(n, k, compute_ex_c(n, TreePattern.path(2 * k + 1), workers=workers))


@dataclass(frozen=True)
class PathLen:
    """Forbid every path with ``l`` edges."""

    l: int


@dataclass(frozen=True)
class AllCyclesFrom:
    """Forbid every cycle of length >= ``l``."""

    l: int


Forbidden = Union[PathLen, AllCyclesFrom]


class _Avoids:
    def __init__(self, forbidden: Forbidden):
        self.forbidden = forbidden

    def __call__(self, g: Graph) -> bool:
        f = self.forbidden
        if isinstance(f, PathLen):
            return f.l >= g.n or find_path(g, f.l) is None
        return smallest_long_cycle_in(g.adj, g.vertex_mask, f.l) is None


def compute_ex_classic(n: int, forbidden: Forbidden, workers: int = 1) -> ExtremalReport:
    check_size(n, ENUMERATION_MAX_N, "compute_ex_classic")
    l = forbidden.l
    if isinstance(forbidden, PathLen):
        if l < 1:
            raise PreconditionError("path length must be >= 1")
        name = f"no P_{l}"
    else:
        if l < 3:
            raise PreconditionError("cycle length threshold must be >= 3")
        name = f"no C_m, m >= {l}"
    value, extremal, scanned, accepted = _scan(n, _Avoids(forbidden), workers)
    report = ExtremalReport(n, name, value, extremal, scanned, accepted)
    if isinstance(forbidden, PathLen):
        divisible = n % l == 0
        family = [disjoint_cliques_form(n, l)] if divisible else []
        bound = Fraction((l - 1) * n, 2)
        label = "path (l-1)n/2"
    else:
        divisible = (n - 1) % (l - 2) == 0
        family = [canonical_form(shared_vertex_cliques_graph(n, l))] if divisible else []
        bound = Fraction((l - 1) * (n - 1), 2)
        label = "cycle (l-1)(n-1)/2"
    equal = value == bound
    ok = (equal and extremal == family) if divisible else not equal
    report.bounds.append(BoundCheck(label, "theorem", bound, value, "match" if ok else "mismatch",
                                    "family attains the bound" if family and family[0] in extremal else ""))
    return report


# -- constructions ----------------------------------------------------------

@dataclass(frozen=True)
class DisjointCliques:
    n: int
    r: int


@dataclass(frozen=True)
class BalancedBipartite:
    n: int


@dataclass(frozen=True)
class SharedVertexCliques:
    n: int
    l: int


@dataclass(frozen=True)
class ModColoredCycle:
    n: int
    p: int


GraphClassSpec = Union[DisjointCliques, BalancedBipartite, SharedVertexCliques, ModColoredCycle]


def construct(spec: GraphClassSpec) -> ColoredGraph:
    if isinstance(spec, DisjointCliques):
        if spec.r < 1 or spec.n % spec.r:
            raise PreconditionError(f"clique size {spec.r} must divide n = {spec.n}")
        g = disjoint_union(*[complete_graph(spec.r)] * (spec.n // spec.r))
        return ColoredGraph(g, tuple(v % spec.r for v in range(spec.n)))
    if isinstance(spec, BalancedBipartite):
        if spec.n < 1:
            raise PreconditionError("n must be >= 1")
        a = spec.n // 2
        g = complete_bipartite(a, spec.n - a)
        return ColoredGraph(g, tuple(0 if v < a else 1 for v in range(spec.n)))
    if isinstance(spec, SharedVertexCliques):
        if spec.l < 3 or (spec.n - 1) % (spec.l - 2) or spec.n < 2:
            raise PreconditionError(f"l - 2 = {spec.l - 2} must divide n - 1 = {spec.n - 1}")
        g = shared_vertex_cliques_graph(spec.n, spec.l)
        colors = [0] + [1 + (v - 1) % (spec.l - 2) for v in range(1, spec.n)]
        return ColoredGraph(g, tuple(colors))
    if isinstance(spec, ModColoredCycle):
        if spec.p < 2 or spec.n < 3 or spec.n % spec.p:
            raise PreconditionError(f"need p >= 2 dividing n >= 3, got n={spec.n}, p={spec.p}")
        return ColoredGraph(cycle_graph(spec.n), tuple(v % spec.p for v in range(spec.n)))
    raise PreconditionError(f"unknown construction {spec!r}")


def associated_pattern(spec: GraphClassSpec) -> TreePattern | None:
    """The tree whose copies the construction keeps leaf-monochromatic."""
    if isinstance(spec, DisjointCliques):
        return TreePattern.path(spec.r)
    if isinstance(spec, BalancedBipartite):
        return TreePattern.path(2)
    if isinstance(spec, ModColoredCycle):
        return TreePattern.path(spec.p)
    return None


# -- conjecture scan --------------------------------------------------------

def tree_name(t: Graph) -> str:
    degs = t.degrees()
    k = t.edge_count()
    if max(degs) <= 2:
        return f"P_{k}"
    if max(degs) == k:
        return f"K_1,{k}"
    inner = [v for v in range(t.n) if degs[v] > 1]
    if len(inner) == 2:
        a, b = sorted(degs[v] - 1 for v in inner)
        return f"S_{a},{b}"
    return "T[" + ",".join(f"{u}{v}" for u, v in t.edges()) + "]"


def all_trees(k: int) -> list[TreePattern]:
    """Every tree with ``k`` edges, up to isomorphism."""
    out = []
    for g in enumerate_nonisomorphic(k + 1):
        if g.edge_count() == k and len(connected_components(g)) == 1:
            out.append(TreePattern(k, tuple(g.edges()), name=tree_name(g)))
    return out


class _AvoidsTree:
    def __init__(self, t: TreePattern):
        self.t = t

    def __call__(self, g: Graph) -> bool:
        return not contains_tree(g, self.t)


@dataclass
class ScanRow:
    tree: str
    k: int
    n: int
    profile: str
    ex: int
    ex_c: int | None

    @property
    def es_bound(self) -> Fraction:
        return Fraction((self.k - 1) * self.n, 2)

    @property
    def es_ok(self) -> bool:
        return self.ex <= self.es_bound

    @property
    def conj2_ok(self) -> bool | None:
        return None if self.ex_c is None else self.ex_c <= self.es_bound

    @property
    def violation(self) -> bool:
        return not self.es_ok or self.conj2_ok is False

    def to_json(self) -> dict[str, Any]:
        return {
            "tree": self.tree,
            "k": self.k,
            "n": self.n,
            "profile": self.profile,
            "ex": self.ex,
            "ex_c": self.ex_c,
            "bound": _num(self.es_bound),
            "status": "VIOLATION" if self.violation else "consistent",
        }


@dataclass
class ConjectureScan:
    rows: list[ScanRow]
    note: str = "empirical evidence at small n only; not a proof of either conjecture"

    @property
    def violations(self) -> list[ScanRow]:
        return [r for r in self.rows if r.violation]

    def to_json(self) -> dict[str, Any]:
        return {"note": self.note, "rows": [r.to_json() for r in self.rows],
                "violations": len(self.violations)}


def conjecture_scan(max_edges: int, max_n: int, workers: int = 1) -> ConjectureScan:
    check_size(max_n, ENUMERATION_MAX_N, "conjecture_scan")
    if not 1 <= max_edges <= 5:
        raise PreconditionError("conjecture_scan supports 1 <= max_edges <= 5")
    rows = []
    for k in range(1, max_edges + 1):
        for t in all_trees(k):
            profile = classify_tree(t)
            for n in range(1, max_n + 1):
                ex = _scan(n, _AvoidsTree(t), workers)[0]
                ex_c = None
                if profile is LeafProfile.MIXED_SIDES:
                    ex_c = compute_ex_c(n, t, workers=workers).value
                rows.append(ScanRow(t.name, k, n, profile.value, ex, ex_c))
    return ConjectureScan(rows)


def construction_is_valid(spec: GraphClassSpec) -> bool:
    """Proper, and no copy of the associated pattern has bichromatic leaves.

    The shared-vertex family has no colored pattern; it must avoid every
    cycle of length >= l instead.
    """
    cg = construct(spec)
    if not is_proper(cg.graph, cg.coloring):
        return False
    if isinstance(spec, SharedVertexCliques):
        return smallest_long_cycle_in(cg.graph.adj, cg.graph.vertex_mask, spec.l) is None
    t = associated_pattern(spec)
    if t is None:
        return True
    return all(len({cg.coloring[v] for v in s}) == 1 for s in leaf_image_sets(cg.graph, t))
