"""Gadget reductions from classical constrained spanning-tree problems.

Every construction keeps the source edges first with their original ids,
appends gadget edges with weight 0, and records which gadget edges are
bridges, so a witness restricted to the source edges has the same weight.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import InfeasibleDegreeCap, InvalidWitness, NonConstantBounds
from .graph import (
    Bounds,
    DepDigraph,
    Graph,
    Instance,
    as_edge_set,
    build_instance,
    is_spanning_tree,
    satisfies,
)
from .problems import CCST, FCST, MDST, FmDST, MinDegree

KINDS = ("ccst", "fcst", "mdst", "mindeg", "fmdst", "lift")


@dataclass(frozen=True)
class ReductionOutput:
    instance: Instance
    kind: str
    source: object
    vertex_map: tuple  # source vertex -> output vertex
    new_edge_roles: dict  # output edge id -> role tag
    forced_edges: tuple  # gadget edges that are bridges of the output graph
    params: dict = field(default_factory=dict)

    @property
    def source_m(self) -> int:
        return self.source.graph.m


class _Gadget:
    """Output graph under construction, seeded with the source graph."""

    def __init__(self, graph: Graph, weights: Optional[Iterable[int]]):
        self.src_n, self.src_m = graph.n, graph.m
        self.n = graph.n
        self.edges = list(graph.edges)
        self.arcs = []
        self.lower = [0] * graph.m
        self.upper = [0] * graph.m
        self.roles = {}
        self.weights = None if weights is None else list(weights)

    def vertex(self) -> int:
        self.n += 1
        return self.n - 1

    def edge(self, a: int, b: int, role: str, lo: int = 0, hi: int = 0) -> int:
        self.edges.append((a, b))
        self.lower.append(lo)
        self.upper.append(hi)
        if self.weights is not None:
            self.weights.append(0)
        e = len(self.edges) - 1
        self.roles[e] = role
        return e

    def build(self, name: str) -> Instance:
        return build_instance(
            Graph(self.n, tuple(self.edges)),
            DepDigraph(tuple(self.arcs)),
            Bounds(tuple(self.lower), tuple(self.upper)),
            self.weights,
            name=name,
        )


def _output(kind, source, gadget: _Gadget, inst: Instance, forced, params=None) -> ReductionOutput:
    return ReductionOutput(
        instance=inst,
        kind=kind,
        source=source,
        vertex_map=tuple(range(gadget.src_n)),
        new_edge_roles=dict(gadget.roles),
        forced_edges=tuple(sorted(forced)),
        params=dict(params or {}),
    )


def lift_bounds(instance: Instance, c: int) -> ReductionOutput:
    """Shift constant bounds ``(l, u)`` to ``(l + c, u + c)``.

    ``l + c + 1`` pendant edges hang from vertex 0 and form a symmetric
    complete digraph; the first ``c`` of them feed every original edge.
    Edges without dependencies get exactly those ``c`` and bounds ``(c, c)``.
    """
    if c < 1:
        raise ValueError("lift amount c must be at least 1")
    constrained = [e for e in range(instance.m) if instance.dep[e]]
    pairs = {(instance.lower[e], instance.upper[e]) for e in constrained}
    if len(pairs) > 1:
        raise NonConstantBounds(f"bounds differ across dependent edges: {sorted(pairs)}")
    lo, hi = pairs.pop() if pairs else (0, 0)
    g = _Gadget(instance.graph, instance.weights)
    g.arcs = list(instance.deps.arcs)
    g.lower = [instance.lower[e] + c for e in range(instance.m)]
    g.upper = [instance.upper[e] + c for e in range(instance.m)]
    size = lo + c + 1
    new = [g.edge(0, g.vertex(), f"pendant[{i + 1}]", lo + c, lo + c) for i in range(size)]
    for a in new:
        for b in new:
            if a != b:
                g.arcs.append((a, b))
    for a in new[:c]:
        for e in range(instance.m):
            g.arcs.append((a, e))
    inst = g.build(instance.name + "+lift" if instance.name else "")
    assert inst.n == instance.n + size and inst.m == instance.m + size
    assert len(inst.deps) == len(instance.deps) + size * (size - 1) + c * instance.m
    return _output("lift", instance, g, inst, new, {"c": c, "lower": lo, "upper": hi})


def from_ccst(problem: CCST, c: int = 0, seed: int = 0) -> ReductionOutput:
    """Conflicts become arcs (seeded orientation); bounds ``(0, c)``.

    A hub ``p`` hangs from vertex 0 and carries ``c`` pendants per source
    edge, each feeding that edge, so a chosen edge may see no conflict.
    """
    if c < 0:
        raise ValueError("c must be nonnegative")
    graph = problem.graph
    g = _Gadget(graph, problem.weights)
    g.upper = [c] * graph.m
    rng = random.Random(seed)
    for a, b in problem.conflict:
        g.arcs.append((a, b) if rng.random() < 0.5 else (b, a))
    p = g.vertex()
    new = [g.edge(0, p, "pq")]
    for e in range(graph.m):
        for i in range(1, c + 1):
            f = g.edge(p, g.vertex(), f"p-p[{e + 1}.{i}]")
            g.arcs.append((f, e))
            new.append(f)
    inst = g.build("ccst")
    extra = 1 + c * graph.m
    assert (inst.n, inst.m) == (graph.n + extra, graph.m + extra)
    assert len(inst.deps) == len(problem.conflict) + c * graph.m
    return _output("ccst", problem, g, inst, new, {"c": c, "seed": seed})


def from_fcst(problem: FCST) -> ReductionOutput:
    """One pendant per forcing pair at vertex 0, depending on both edges, bounds ``(1, 2)``."""
    graph = problem.graph
    g = _Gadget(graph, problem.weights)
    new = []
    for a, b in problem.forcing:
        p = g.edge(0, g.vertex(), f"p[{a + 1},{b + 1}]", 1, 2)
        g.arcs += [(a, p), (b, p)]
        new.append(p)
    inst = g.build("fcst")
    k = len(problem.forcing)
    assert (inst.n, inst.m, len(inst.deps)) == (graph.n + k, graph.m + k, 2 * k)
    return _output("fcst", problem, g, inst, new)


def from_mdst(problem: MDST) -> ReductionOutput:
    """Copy ``v'`` per vertex; edge ``vv'`` depends on the edges at ``v`` with ``u = d*(v)``."""
    graph = problem.graph
    if graph.n >= 2 and min(problem.dstar) < 1:
        v = problem.dstar.index(min(problem.dstar))
        raise InfeasibleDegreeCap(f"vertex {v} has degree cap {problem.dstar[v]} < 1")
    g = _Gadget(graph, problem.weights)
    copy = [g.edge(v, graph.n + v, f"copy[{v + 1}]", 0, problem.dstar[v]) for v in range(graph.n)]
    g.n = 2 * graph.n
    for e, (a, b) in enumerate(graph.edges):
        g.arcs += [(e, copy[a]), (e, copy[b])]
    inst = g.build("mdst")
    assert (inst.n, inst.m, len(inst.deps)) == (2 * graph.n, graph.m + graph.n, 2 * graph.m)
    return _output("mdst", problem, g, inst, copy)


def _degree_gadgets(graph: Graph, g: _Gadget, keep):
    """Attach ``v v1, v v2, v1 v3, v2 v3`` per vertex; ``keep(v)`` gives the
    bounds of ``v v1`` and ``v v2`` (``None`` drops the edge)."""
    deg = graph.degrees()
    incident = graph.incidence()
    added = {}
    base = graph.n
    g.n = 4 * graph.n
    for v in range(graph.n):
        v1, v2, v3 = base + 3 * v, base + 3 * v + 1, base + 3 * v + 2
        b1, b2 = keep(v, deg[v])
        spokes = []
        for tag, end, bounds in (("1", v1, b1), ("2", v2, b2)):
            if bounds is not None:
                f = g.edge(v, end, f"v{tag}[{v + 1}]", *bounds)
                g.arcs += [(e, f) for e in incident[v]]
                spokes.append(f)
        s1 = g.edge(v1, v3, f"v1v3[{v + 1}]", 1, 1)
        s2 = g.edge(v2, v3, f"v2v3[{v + 1}]", 1, 1)
        g.arcs += [(s1, s2), (s2, s1)]
        added[v] = (spokes, s1, s2)
    return added


def from_min_degree(problem: MinDegree) -> ReductionOutput:
    """Per vertex a 4-cycle ``v, v1, v3, v2`` whose tree edges pick leaf or nonleaf.

    ``v v1`` (bounds ``lower(v)..upper(v)``) is used when ``v`` is a nonleaf,
    ``v v2`` (bounds ``1..1``) when it is a leaf. A vertex that cannot meet
    its lower bound loses ``v v1`` and must be a leaf.
    """
    graph = problem.graph
    if graph.n < 2:
        raise ValueError("need at least two vertices")
    deg = graph.degrees()
    if min(deg) == 0:
        raise ValueError(f"vertex {deg.index(0)} is isolated")
    g = _Gadget(graph, problem.weights)

    def keep(v, d):
        lo, hi = problem.lower[v], min(problem.upper[v], d)
        return ((lo, hi) if lo <= hi else None), (1, 1)

    added = _degree_gadgets(graph, g, keep)
    inst = g.build("mindeg")
    forced = []
    for spokes, s1, s2 in added.values():
        if len(spokes) == 1:
            forced += spokes + [s1, s2]
    dropped = sum(2 - len(s[0]) for s in added.values())
    assert (inst.n, inst.m) == (4 * graph.n, graph.m + 4 * graph.n - dropped)
    assert len(inst.deps) == 4 * graph.m + 2 * graph.n - _lost_arcs(graph, added, 2)
    return _output("mindeg", problem, g, inst, forced)


def _lost_arcs(graph: Graph, added, per_vertex: int) -> int:
    # arcs missing because a spoke was dropped below its per-vertex count
    deg = graph.degrees()
    return sum(deg[v] * (per_vertex - len(spokes)) for v, (spokes, _, _) in added.items())


def from_fmdst(problem: FmDST) -> ReductionOutput:
    """The degree gadget with one spoke removed per vertex.

    Vertices in ``c_set`` keep ``v v1`` (bounds ``lower(v)..deg(v)``), the
    others keep ``v v2`` (bounds ``1..1``), so every gadget edge is a bridge.
    A spoke whose lower bound exceeds the degree of ``v`` is dropped as
    well, which disconnects the output and makes it infeasible.
    """
    graph = problem.graph
    g = _Gadget(graph, problem.weights)

    def keep(v, d):
        if v in problem.c_set:
            lo = problem.lower[v]
            return ((lo, d) if lo <= d else None), None
        return None, ((1, 1) if d >= 1 else None)

    added = _degree_gadgets(graph, g, keep)
    inst = g.build("fmdst")
    forced = []
    for spokes, s1, s2 in added.values():
        forced += spokes + [s1, s2]
    kept = sum(len(s[0]) for s in added.values())
    assert (inst.n, inst.m) == (4 * graph.n, graph.m + 2 * graph.n + kept)
    assert len(inst.deps) == 2 * graph.m + 2 * graph.n - _lost_arcs(graph, added, 1)
    return _output("fmdst", problem, g, inst, forced)


def pull_back(output: ReductionOutput, witness: Iterable[int]) -> tuple:
    """Restrict a valid output witness to the source edges."""
    witness = as_edge_set(witness, output.instance.m)
    report = satisfies(output.instance, witness)
    if not report.passed:
        raise InvalidWitness(f"witness fails on the reduced instance (first violation: {report.first_violation})")
    tree = tuple(e for e in witness if e < output.source_m)
    if not is_spanning_tree(output.source.graph, tree):
        raise InvalidWitness("restriction to the source edges is not a spanning tree")
    return tree


def reduce_problem(problem, c: int = 0, seed: int = 0) -> ReductionOutput:
    """Dispatch on the source problem type."""
    if isinstance(problem, Instance):
        return lift_bounds(problem, c)
    if isinstance(problem, CCST):
        return from_ccst(problem, c, seed)
    if isinstance(problem, FCST):
        return from_fcst(problem)
    if isinstance(problem, MDST):
        return from_mdst(problem)
    if isinstance(problem, MinDegree):
        return from_min_degree(problem)
    if isinstance(problem, FmDST):
        return from_fmdst(problem)
    raise TypeError(f"no reduction for {type(problem).__name__}")
