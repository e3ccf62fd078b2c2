"""Independence oracles and matroid intersection.

Ground elements are the integers ``0..size-1``. Intersection routines work
against any object exposing ``size`` and ``is_independent(subset)``.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable, Optional, Sequence

from .errors import GroundSetMismatch, Infeasible
from .graph import DSU


class Matroid:
    """Abstract independence oracle."""

    size: int = 0
    rank_hint: Optional[int] = None

    def is_independent(self, subset: Iterable[int]) -> bool:
        raise NotImplementedError

    def rank(self) -> int:
        """Greedy rank; exact for any matroid."""
        basis = []
        for x in range(self.size):
            if self.is_independent(basis + [x]):
                basis.append(x)
        return len(basis)


class GraphicMatroid(Matroid):
    """Cycle matroid of a multigraph. Loops are always dependent."""

    def __init__(self, n: int, edges: Sequence[tuple]):
        self.n = n
        self.edges = tuple((int(a), int(b)) for a, b in edges)
        self.size = len(self.edges)

    def is_independent(self, subset: Iterable[int]) -> bool:
        dsu = DSU(self.n)
        for x in subset:
            if not dsu.union(*self.edges[x]):
                return False
        return True


class PartitionMatroid(Matroid):
    """``|S ∩ block_i| <= cap_i``; elements outside every block are free."""

    def __init__(self, size: int, blocks: Sequence[Sequence[int]], caps: Sequence[int]):
        if len(blocks) != len(caps):
            raise ValueError("one capacity per block")
        self.size = size
        self.blocks = tuple(tuple(b) for b in blocks)
        self.caps = tuple(int(c) for c in caps)
        self.block_of = [-1] * size
        for i, block in enumerate(self.blocks):
            if not 0 <= self.caps[i] <= len(block):
                raise ValueError(f"capacity {self.caps[i]} out of range for block {i}")
            for x in block:
                if self.block_of[x] != -1:
                    raise ValueError(f"element {x} in two blocks")
                self.block_of[x] = i

    def is_independent(self, subset: Iterable[int]) -> bool:
        used = [0] * len(self.blocks)
        for x in subset:
            b = self.block_of[x]
            if b >= 0:
                used[b] += 1
                if used[b] > self.caps[b]:
                    return False
        return True


class FreeMatroid(Matroid):
    def __init__(self, size: int):
        self.size = size

    def is_independent(self, subset: Iterable[int]) -> bool:
        return True


def graphic_independent(matroid: GraphicMatroid, s: Iterable[int]) -> bool:
    return matroid.is_independent(s)


def partition_independent(matroid: PartitionMatroid, s: Iterable[int]) -> bool:
    return matroid.is_independent(s)


class _Counted:
    """Wraps two oracles and counts independence queries."""

    def __init__(self, m1: Matroid, m2: Matroid):
        if m1.size != m2.size:
            raise GroundSetMismatch(f"ground sets differ: {m1.size} vs {m2.size}")
        self.m1, self.m2 = m1, m2
        self.size = m1.size
        self.calls = 0

    def ind1(self, s) -> bool:
        self.calls += 1
        return self.m1.is_independent(s)

    def ind2(self, s) -> bool:
        self.calls += 1
        return self.m2.is_independent(s)

    def exchange_graph(self, current: list):
        """Sources, sinks and arcs of the exchange graph for ``current``."""
        inside = set(current)
        outside = [x for x in range(self.size) if x not in inside]
        sources = [y for y in outside if self.ind1(current + [y])]
        sinks = {y for y in outside if self.ind2(current + [y])}
        arcs = {x: [] for x in range(self.size)}
        for x in current:
            rest = [z for z in current if z != x]
            for y in outside:
                swapped = rest + [y]
                if self.ind1(swapped):
                    arcs[x].append(y)
                if self.ind2(swapped):
                    arcs[y].append(x)
        return sources, sinks, arcs


def _apply_path(current: list, path: list) -> list:
    inside = set(current)
    for x in path:
        if x in inside:
            inside.remove(x)
        else:
            inside.add(x)
    return sorted(inside)


def max_common_independent(m1: Matroid, m2: Matroid, stats: Optional[dict] = None) -> list:
    """Maximum-cardinality common independent set (shortest augmenting paths)."""
    oracle = _Counted(m1, m2)
    current = []
    while True:
        sources, sinks, arcs = oracle.exchange_graph(current)
        pred = {}
        queue = deque()
        for s in sources:
            pred[s] = None
            queue.append(s)
        end = None
        while queue:
            x = queue.popleft()
            if x in sinks:
                end = x
                break
            for y in sorted(arcs[x]):
                if y not in pred:
                    pred[y] = x
                    queue.append(y)
        if end is None:
            break
        path = []
        while end is not None:
            path.append(end)
            end = pred[end]
        current = _apply_path(current, path)
    if stats is not None:
        stats["oracle_calls"] = stats.get("oracle_calls", 0) + oracle.calls
    return current


def min_weight_common_independent_of_size(
    m1: Matroid, m2: Matroid, w: Sequence[int], r: int, stats: Optional[dict] = None
) -> list:
    """Minimum-weight common independent set with exactly ``r`` elements.

    Each round augments along a shortest path of the exchange graph under
    vertex lengths ``w(y)`` for outside elements and ``-w(x)`` for inside
    ones, ties broken by arc count. Raises :class:`Infeasible` when no common
    independent set of size ``r`` exists.
    """
    oracle = _Counted(m1, m2)
    if len(w) != oracle.size:
        raise GroundSetMismatch("weight vector does not match the ground set")
    if r < 0:
        raise ValueError("target size must be nonnegative")
    current = []
    while len(current) < r:
        sources, sinks, arcs = oracle.exchange_graph(current)
        inside = set(current)
        length = [(-w[x] if x in inside else w[x]) for x in range(oracle.size)]
        dist = {}
        pred = {}
        for s in sources:
            dist[s] = (length[s], 0)
            pred[s] = None
        # lexicographic (weight, hops) Bellman-Ford; no negative cycles exist
        for _ in range(oracle.size):
            changed = False
            for x in sorted(dist):
                dx = dist[x]
                for y in arcs[x]:
                    cand = (dx[0] + length[y], dx[1] + 1)
                    if y not in dist or cand < dist[y]:
                        dist[y] = cand
                        pred[y] = x
                        changed = True
            if not changed:
                break
        reachable = [t for t in sinks if t in dist]
        if not reachable:
            if stats is not None:
                stats["oracle_calls"] = stats.get("oracle_calls", 0) + oracle.calls
            raise Infeasible(f"no common independent set of size {r} (maximum is {len(current)})")
        end = min(reachable, key=lambda t: (dist[t], t))
        path = []
        while end is not None:
            path.append(end)
            end = pred[end]
        current = _apply_path(current, path)
    if stats is not None:
        stats["oracle_calls"] = stats.get("oracle_calls", 0) + oracle.calls
    return current
