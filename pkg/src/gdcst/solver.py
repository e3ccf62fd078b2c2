"""Front-door solving: two polynomial special cases and exact branch-and-bound."""
from __future__ import annotations

import time
from typing import Optional

from .errors import Infeasible
from .graph import DSU, Instance, components_excluding, contract, satisfies
from .matroid import (
    GraphicMatroid,
    PartitionMatroid,
    max_common_independent,
    min_weight_common_independent_of_size,
)
from .report import SolveReport, SolveStats, SolverPath, Verdict

FORCE_PATHS = ("generic", "matching", "partition", "oracle")


def _finish(instance: Instance, witness, path: SolverPath, stats: SolveStats, weighted: bool, start: float):
    stats.ms = (time.perf_counter() - start) * 1000
    if witness is None:
        return SolveReport(Verdict.INFEASIBLE, path=path, stats=stats)
    witness = tuple(sorted(witness))
    report = satisfies(instance, witness)
    assert report.passed, f"{path.value} produced an invalid witness {witness}"
    return SolveReport(
        Verdict.FEASIBLE,
        witness=witness,
        optimal_weight=instance.weight_of(witness) if weighted else None,
        path=path,
        stats=stats,
    )


# -- oriented matching ------------------------------------------------------


def detect_matching_case(instance: Instance) -> bool:
    """Every edge touches at most one arc, and ``lower = upper = |dep|``."""
    for e in range(instance.m):
        if len(instance.dep[e]) + len(instance.out[e]) > 1:
            return False
        if not instance.lower[e] == instance.upper[e] == len(instance.dep[e]):
            return False
    return True


def solve_matching_case(instance: Instance) -> SolveReport:
    """Feasibility through intersecting two graphic matroids on the dependent edges.

    ``S`` is the set of edges with a dependency. A chosen ``S'`` must be a
    spanning tree of ``G - S`` with its components contracted, and the
    dependencies of ``S'`` must be acyclic in ``G``.
    """
    start = time.perf_counter()
    graph = instance.graph
    s_edges = [e for e in range(instance.m) if instance.dep[e]]
    parts = components_excluding(graph, s_edges)
    k = len(parts)
    h = contract(graph, parts, s_edges)
    m1 = GraphicMatroid(graph.n, [graph.edges[instance.dep[e][0]] for e in s_edges])
    m2 = GraphicMatroid(k, [(h.part_of[graph.edges[e][0]], h.part_of[graph.edges[e][1]]) for e in s_edges])
    calls = {}
    common = max_common_independent(m1, m2, calls)
    stats = SolveStats(nodes=0, oracle_calls=calls.get("oracle_calls", 0))
    if len(common) != k - 1:
        return _finish(instance, None, SolverPath.MATCHING, stats, False, start)
    chosen = [s_edges[i] for i in common]
    dsu = DSU(graph.n)
    tree = []
    s_set = set(s_edges)
    # dependencies first so the forest is forced to contain them
    for e in sorted(instance.dep[x][0] for x in chosen):
        dsu.union(*graph.edges[e])
        tree.append(e)
    for e in range(instance.m):
        if e not in s_set and dsu.union(*graph.edges[e]):
            tree.append(e)
    for e in chosen:
        joined = dsu.union(*graph.edges[e])
        assert joined
        tree.append(e)
    return _finish(instance, tree, SolverPath.MATCHING, stats, False, start)


# -- symmetric cliques / partition matroid ---------------------------------


def _weak_components(instance: Instance) -> list:
    dsu = DSU(instance.m)
    for t, hd in instance.deps.arcs:
        dsu.union(t, hd)
    groups = {}
    for e in range(instance.m):
        if instance.dep[e] or instance.out[e]:
            groups.setdefault(dsu.find(e), []).append(e)
    return sorted(groups.values(), key=lambda g: g[0])


def detect_partition_case(instance: Instance) -> bool:
    """``lower == 0``, every weak component of D is a symmetric complete
    digraph, and ``upper`` is constant on each component."""
    if any(instance.lower):
        return False
    for block in _weak_components(instance):
        size = len(block)
        members = set(block)
        for e in block:
            if len(instance.dep[e]) != size - 1 or set(instance.dep[e]) != members - {e}:
                return False
        if len({instance.upper[e] for e in block}) != 1:
            return False
    return True


def solve_partition_case(instance: Instance, optimize: bool = False) -> SolveReport:
    """Graphic matroid of G intersected with one capacity-``u+1`` block per clique."""
    start = time.perf_counter()
    blocks = _weak_components(instance)
    caps = [instance.upper[b[0]] + 1 for b in blocks]
    part = PartitionMatroid(instance.m, blocks, caps)
    graphic = GraphicMatroid(instance.n, instance.graph.edges)
    weighted = optimize and instance.weights is not None
    calls = {}
    r = instance.n - 1
    if weighted:
        try:
            common = min_weight_common_independent_of_size(graphic, part, instance.weights, r, calls)
        except Infeasible:
            common = None
    else:
        common = max_common_independent(graphic, part, calls)
        if len(common) != r:
            common = None
    stats = SolveStats(nodes=0, oracle_calls=calls.get("oracle_calls", 0))
    return _finish(instance, common, SolverPath.PARTITION, stats, weighted, start)


# -- branch and bound --------------------------------------------------------

_OUT, _UNDECIDED, _IN = -1, 0, 1


class _Search:
    def __init__(self, instance: Instance, weighted: bool):
        self.inst = instance
        self.n, self.m = instance.n, instance.m
        self.edges = instance.graph.edges
        self.dep = instance.dep
        self.lower, self.upper = instance.lower, instance.upper
        self.weights = instance.weights
        self.weighted = weighted
        self.order = sorted(range(self.m), key=lambda e: (-(len(self.dep[e]) + len(instance.out[e])), e))
        if weighted:
            self.by_weight = sorted(range(self.m), key=lambda e: (self.weights[e], e))
        self.nodes = 0
        self.best = None
        self.best_w = None

    def _counts_ok(self, state, final: bool) -> bool:
        for e in range(self.m):
            if state[e] != _IN:
                continue
            inc = und = 0
            for d in self.dep[e]:
                if state[d] == _IN:
                    inc += 1
                elif state[d] == _UNDECIDED:
                    und += 1
            if inc > self.upper[e]:
                return False
            if inc + (0 if final else und) < self.lower[e]:
                return False
        return True

    def _bridges(self, state) -> list:
        """Undecided edges that are bridges of the graph of non-excluded edges."""
        adj = [[] for _ in range(self.n)]
        for e in range(self.m):
            if state[e] != _OUT:
                a, b = self.edges[e]
                adj[a].append((b, e))
                adj[b].append((a, e))
        disc = [-1] * self.n
        low = [0] * self.n
        found = []
        timer = 0
        for root in range(self.n):
            if disc[root] != -1:
                continue
            disc[root] = low[root] = timer
            timer += 1
            stack = [(root, -1, 0)]
            while stack:
                v, via, i = stack[-1]
                if i < len(adj[v]):
                    stack[-1] = (v, via, i + 1)
                    w, e = adj[v][i]
                    if e == via:
                        continue
                    if disc[w] == -1:
                        disc[w] = low[w] = timer
                        timer += 1
                        stack.append((w, e, 0))
                    else:
                        low[v] = min(low[v], disc[w])
                else:
                    stack.pop()
                    if stack:
                        p = stack[-1][0]
                        low[p] = min(low[p], low[v])
                        if low[v] > disc[p] and state[via] == _UNDECIDED:
                            found.append(via)
        return found

    def _propagate(self, state):
        """Apply forced moves until none is left; returns the included DSU."""
        while True:
            dsu = DSU(self.n)
            for e in range(self.m):
                if state[e] == _IN:
                    dsu.union(*self.edges[e])
            changed = False
            for e in range(self.m):
                if state[e] == _UNDECIDED and dsu.connected(*self.edges[e]):
                    state[e] = _OUT
                    changed = True
            for e in self._bridges(state):
                state[e] = _IN
                changed = True
            if not changed:
                return dsu

    def _connected(self, state) -> bool:
        dsu = DSU(self.n)
        for e in range(self.m):
            if state[e] != _OUT:
                dsu.union(*self.edges[e])
        return dsu.components == 1

    def _mst(self, state, dsu):
        """Cheapest spanning tree containing the included edges."""
        tree = [e for e in range(self.m) if state[e] == _IN]
        for e in self.by_weight:
            if state[e] == _UNDECIDED and dsu.union(*self.edges[e]):
                tree.append(e)
        return tree

    def run(self):
        if self.n == 1:
            self.nodes = 1
            self.best, self.best_w = [], 0
            return
        state = [_UNDECIDED] * self.m
        if self._connected(state):
            self._visit(state)

    def _record(self, tree):
        w = sum(self.weights[e] for e in tree) if self.weighted else 0
        if self.best is None or w < self.best_w:
            self.best, self.best_w = list(tree), w

    def _done(self) -> bool:
        return self.best is not None and not self.weighted

    def _visit(self, state):
        self.nodes += 1
        dsu = self._propagate(state)
        included = [e for e in range(self.m) if state[e] == _IN]
        if len(included) == self.n - 1:
            if self._counts_ok(state, final=True):
                self._record(included)
            return
        if not self._counts_ok(state, final=False):
            return
        if self.weighted:
            tree = self._mst(state, dsu)
            bound = sum(self.weights[e] for e in tree)
            if self.best is not None and bound >= self.best_w:
                return
            if satisfies(self.inst, tree).passed:
                # the cheapest completion is itself feasible
                self._record(tree)
                return
        e = next(x for x in self.order if state[x] == _UNDECIDED)
        with_e = list(state)
        with_e[e] = _IN
        self._visit(with_e)
        if self._done():
            return
        without = list(state)
        without[e] = _OUT
        self._visit(without)


def solve_generic(instance: Instance, optimize: bool = False) -> SolveReport:
    """Exact branch-and-bound over include/exclude decisions.

    Undecided edges that would close a cycle are excluded and undecided
    bridges of the remaining graph are included without branching, so
    every search node is a genuine two-way split and the node count never
    exceeds ``2**m``.
    """
    start = time.perf_counter()
    weighted = optimize and instance.weights is not None
    search = _Search(instance, weighted)
    search.run()
    assert search.nodes <= 2 ** instance.m, "search exceeded the 2^m node budget"
    stats = SolveStats(nodes=search.nodes)
    return _finish(instance, search.best, SolverPath.GENERIC, stats, weighted, start)


def solve(instance: Instance, optimize: bool = False, force_path: Optional[str] = None) -> SolveReport:
    """Dispatch to the cheapest applicable solver.

    The oriented-matching case only answers feasibility, so it is skipped
    when a weighted optimum is requested. ``force_path`` picks a solver by
    name and raises ``ValueError`` if that solver does not apply.
    """
    weighted = optimize and instance.weights is not None
    if force_path is not None:
        if force_path not in FORCE_PATHS:
            raise ValueError(f"unknown solver path {force_path!r}; expected one of {FORCE_PATHS}")
        if force_path == "oracle":
            from .oracle import oracle_solve

            return oracle_solve(instance, optimize, cap=None)
        if force_path == "generic":
            return solve_generic(instance, optimize)
        if force_path == "matching":
            if not detect_matching_case(instance):
                raise ValueError("instance is not an oriented matching with lower = upper = |dep|")
            if weighted:
                raise ValueError("the oriented-matching solver does not optimize weights")
            return solve_matching_case(instance)
        if not detect_partition_case(instance):
            raise ValueError("dependency digraph is not a union of symmetric cliques with uniform bounds")
        return solve_partition_case(instance, optimize)
    if not weighted and detect_matching_case(instance):
        return solve_matching_case(instance)
    if detect_partition_case(instance):
        return solve_partition_case(instance, optimize)
    return solve_generic(instance, optimize)
