"""Graphs, dependency digraphs, bounds and instances.

Edges of ``G`` are identified by their 0-based position in ``Graph.edges``.
The dependency digraph ``D`` has those edge ids as vertices; the
dependencies of an edge ``e`` are the tails of the arcs entering it.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import (
    DuplicateArc,
    DuplicateEdge,
    IndexOutOfRange,
    InfeasibleBounds,
    LoopEdge,
    WeightOverflow,
)

INT64_MAX = 2**63 - 1

EdgeSet = tuple  # sorted tuple of distinct edge ids


class DSU:
    """Union-find with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.components = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of ``a`` and ``b``; False if already merged."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        return True

    def connected(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)


@dataclass(frozen=True)
class Graph:
    """Undirected graph on vertices ``0..n-1``.

    Edges are stored as ``(min, max)`` pairs; the position of a pair in
    ``edges`` is its edge id.
    """

    n: int
    edges: tuple
    simple: bool = True

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        norm = []
        seen = set()
        for e, pair in enumerate(self.edges):
            a, b = (int(x) for x in pair)
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise IndexOutOfRange(f"edge {e} = {pair} has an endpoint outside 0..{self.n - 1}")
            if a == b:
                raise LoopEdge(f"edge {e} is a loop at vertex {a}")
            key = (a, b) if a < b else (b, a)
            if self.simple and key in seen:
                raise DuplicateEdge(f"edge {e} duplicates {key}")
            seen.add(key)
            norm.append(key)
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    def incidence(self) -> list:
        """Per-vertex sorted list of incident edge ids."""
        inc = [[] for _ in range(self.n)]
        for e, (a, b) in enumerate(self.edges):
            inc[a].append(e)
            inc[b].append(e)
        return inc

    def degrees(self) -> list:
        deg = [0] * self.n
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def neighbors(self) -> list:
        adj = [set() for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj


@dataclass(frozen=True)
class Multigraph:
    """Edge list allowing parallel edges and loops (used for contractions)."""

    n: int
    edges: tuple

    @property
    def m(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class DepDigraph:
    """Arcs ``(tail, head)`` between edge ids, kept in sorted order."""

    arcs: tuple = ()

    def __post_init__(self):
        seen = set()
        for arc in self.arcs:
            t, h = (int(x) for x in arc)
            if t == h:
                raise LoopEdge(f"self-arc on edge {t}")
            if (t, h) in seen:
                raise DuplicateArc(f"duplicate arc ({t}, {h})")
            seen.add((t, h))
        object.__setattr__(self, "arcs", tuple(sorted(seen)))

    def __len__(self) -> int:
        return len(self.arcs)


@dataclass(frozen=True)
class Bounds:
    lower: tuple
    upper: tuple

    def __post_init__(self):
        object.__setattr__(self, "lower", tuple(int(x) for x in self.lower))
        object.__setattr__(self, "upper", tuple(int(x) for x in self.upper))
        if len(self.lower) != len(self.upper):
            raise ValueError("lower and upper bound vectors differ in length")


@dataclass(frozen=True)
class Instance:
    """A normalized G-DCST / G-DCMST instance; build with :func:`build_instance`."""

    graph: Graph
    deps: DepDigraph
    bounds: Bounds
    weights: Optional[tuple] = None
    name: str = field(default="", compare=False)
    edge_labels: Optional[tuple] = field(default=None, compare=False, repr=False)
    meta: dict = field(default_factory=dict, compare=False, repr=False, hash=False)
    dep: tuple = field(init=False, compare=False, repr=False)
    out: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        m = self.graph.m
        dep = [[] for _ in range(m)]
        out = [[] for _ in range(m)]
        for t, h in self.deps.arcs:
            if not (0 <= t < m and 0 <= h < m):
                raise IndexOutOfRange(f"arc ({t}, {h}) refers to a missing edge (m={m})")
            dep[h].append(t)
            out[t].append(h)
        object.__setattr__(self, "dep", tuple(tuple(sorted(x)) for x in dep))
        object.__setattr__(self, "out", tuple(tuple(sorted(x)) for x in out))

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    @property
    def lower(self) -> tuple:
        return self.bounds.lower

    @property
    def upper(self) -> tuple:
        return self.bounds.upper

    def weight_of(self, s: Iterable[int]) -> Optional[int]:
        if self.weights is None:
            return None
        return sum(self.weights[e] for e in s)

    def dep_masks(self) -> list:
        masks = []
        for d in self.dep:
            mask = 0
            for t in d:
                mask |= 1 << t
            masks.append(mask)
        return masks


def build_instance(
    graph: Graph,
    deps: DepDigraph = DepDigraph(),
    bounds: Optional[Bounds] = None,
    weights: Optional[Sequence[int]] = None,
    name: str = "",
    edge_labels: Optional[Sequence[str]] = None,
    meta: Optional[dict] = None,
) -> Instance:
    """Validate the parts and return a normalized instance.

    Upper bounds are clamped to ``|dep(e)|``. Missing bounds default to
    ``(0, |dep(e)|)``, which leaves the edge unconstrained.
    """
    m = graph.m
    indeg = [0] * m
    for t, h in deps.arcs:
        if not (0 <= t < m and 0 <= h < m):
            raise IndexOutOfRange(f"arc ({t}, {h}) refers to a missing edge (m={m})")
        indeg[h] += 1
    if bounds is None:
        lower, upper = [0] * m, list(indeg)
    else:
        if len(bounds.lower) != m:
            raise ValueError(f"expected {m} bounds, got {len(bounds.lower)}")
        lower, upper = list(bounds.lower), list(bounds.upper)
    for e in range(m):
        if lower[e] < 0 or upper[e] < 0:
            raise InfeasibleBounds(e, f"negative bound on edge {e}")
        if lower[e] > upper[e]:
            raise InfeasibleBounds(e, f"edge {e}: lower {lower[e]} > upper {upper[e]}")
        if lower[e] > indeg[e]:
            raise InfeasibleBounds(e, f"edge {e}: lower {lower[e]} exceeds |dep| = {indeg[e]}")
        upper[e] = min(upper[e], indeg[e])
    w = None
    if weights is not None:
        w = tuple(int(x) for x in weights)
        if len(w) != m:
            raise ValueError(f"expected {m} weights, got {len(w)}")
        # bounding the absolute total makes every subset sum fit in int64
        if sum(abs(x) for x in w) > INT64_MAX:
            raise WeightOverflow("total absolute weight does not fit in a signed 64-bit integer")
    if edge_labels is not None:
        edge_labels = tuple(edge_labels)
        if len(edge_labels) != m:
            raise ValueError("one label per edge expected")
    return Instance(
        graph=graph,
        deps=deps,
        bounds=Bounds(tuple(lower), tuple(upper)),
        weights=w,
        name=name,
        edge_labels=edge_labels,
        meta=dict(meta or {}),
    )


def as_edge_set(s: Iterable[int], m: int) -> EdgeSet:
    ids = sorted(int(e) for e in s)
    for i, e in enumerate(ids):
        if not 0 <= e < m:
            raise IndexOutOfRange(f"edge id {e} outside 0..{m - 1}")
        if i and ids[i - 1] == e:
            raise ValueError(f"edge id {e} repeated")
    return tuple(ids)


def is_spanning_tree(graph: Graph, s: Iterable[int]) -> bool:
    s = as_edge_set(s, graph.m)
    if len(s) != graph.n - 1:
        return False
    dsu = DSU(graph.n)
    for e in s:
        if not dsu.union(*graph.edges[e]):
            return False
    return dsu.components == 1


@dataclass(frozen=True)
class ValidationReport:
    is_spanning_tree: bool
    counts: dict  # chosen edge -> |dep(e) ∩ s|
    first_violation: Optional[int]
    passed: bool


def satisfies(instance: Instance, s: Iterable[int]) -> ValidationReport:
    """Check ``lower(e) <= |dep(e) ∩ s| <= upper(e)`` for every chosen ``e``."""
    s = as_edge_set(s, instance.m)
    chosen = set(s)
    counts = {}
    first = None
    for e in s:
        c = sum(1 for d in instance.dep[e] if d in chosen)
        counts[e] = c
        if first is None and not instance.lower[e] <= c <= instance.upper[e]:
            first = e
    spanning = is_spanning_tree(instance.graph, s)
    return ValidationReport(spanning, counts, first, spanning and first is None)


def components_excluding(graph: Graph, excluded: Iterable[int]) -> list:
    """Connected components of ``(V, E - excluded)`` as sorted vertex lists."""
    excluded = set(as_edge_set(excluded, graph.m))
    dsu = DSU(graph.n)
    for e, (a, b) in enumerate(graph.edges):
        if e not in excluded:
            dsu.union(a, b)
    groups = {}
    for v in range(graph.n):
        groups.setdefault(dsu.find(v), []).append(v)
    return sorted(groups.values(), key=lambda g: g[0])


@dataclass(frozen=True)
class Contraction:
    graph: Multigraph
    source: tuple  # H-edge index -> original edge id
    dropped: tuple  # candidates that became loops
    part_of: tuple  # original vertex -> H vertex


def contract(graph: Graph, partition: Sequence[Sequence[int]], crossing_candidates: Iterable[int]) -> Contraction:
    part_of = [-1] * graph.n
    for i, part in enumerate(partition):
        for v in part:
            if part_of[v] != -1:
                raise ValueError(f"vertex {v} appears in two parts")
            part_of[v] = i
    if -1 in part_of:
        raise ValueError(f"vertex {part_of.index(-1)} is not covered by the partition")
    h_edges, source, dropped = [], [], []
    for e in as_edge_set(crossing_candidates, graph.m):
        a, b = graph.edges[e]
        pa, pb = part_of[a], part_of[b]
        if pa == pb:
            dropped.append(e)
        else:
            h_edges.append((pa, pb))
            source.append(e)
    return Contraction(Multigraph(len(partition), tuple(h_edges)), tuple(source), tuple(dropped), tuple(part_of))


def bridges(graph: Graph) -> set:
    """Edge ids whose removal disconnects their component."""
    inc = graph.incidence()
    disc = [-1] * graph.n
    low = [0] * graph.n
    found = set()
    timer = 0
    for root in range(graph.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(inc[root]))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for e in it:
                if e == via:
                    continue
                a, b = graph.edges[e]
                w = b if a == v else a
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, e, iter(inc[w])))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        found.add(via)
    return found


@dataclass(frozen=True)
class StructureReport:
    diameter: Optional[int]  # None when disconnected
    is_chordal: bool
    edge_bound_outerplanar: bool

    @property
    def connected(self) -> bool:
        return self.diameter is not None


def _eccentricity(adj: list, src: int) -> Optional[int]:
    dist = [-1] * len(adj)
    dist[src] = 0
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    if min(dist) < 0:
        return None
    return max(dist)


def is_chordal(graph: Graph) -> bool:
    """Maximum cardinality search, then perfect elimination order check."""
    adj = graph.neighbors()
    n = graph.n
    weight = [0] * n
    numbered = [False] * n
    order = []
    for _ in range(n):
        v = max((u for u in range(n) if not numbered[u]), key=lambda u: (weight[u], -u))
        numbered[v] = True
        order.append(v)
        for w in adj[v]:
            if not numbered[w]:
                weight[w] += 1
    peo = order[::-1]
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [w for w in adj[v] if pos[w] > pos[v]]
        if not later:
            continue
        parent = min(later, key=pos.__getitem__)
        for w in later:
            if w != parent and w not in adj[parent]:
                return False
    return True


def check_structure(graph: Graph) -> StructureReport:
    adj = graph.neighbors()
    diameter = 0
    for v in range(graph.n):
        ecc = _eccentricity(adj, v)
        if ecc is None:
            diameter = None
            break
        diameter = max(diameter, ecc)
    # m <= 2n - 3 holds for every outerplanar graph with n >= 2
    outer = graph.m <= max(2 * graph.n - 3, 0)
    return StructureReport(diameter, is_chordal(graph), outer)
