"""Source problems that the reductions embed into G-DCST."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import IndexOutOfRange
from .graph import Graph


def _pairs(pairs, m: int) -> tuple:
    out = set()
    for a, b in pairs:
        a, b = int(a), int(b)
        if not (0 <= a < m and 0 <= b < m):
            raise IndexOutOfRange(f"pair ({a}, {b}) refers to a missing edge (m={m})")
        if a == b:
            raise ValueError(f"pair ({a}, {a}) relates an edge to itself")
        out.add((min(a, b), max(a, b)))
    return tuple(sorted(out))


def _per_vertex(values, n: int, what: str) -> tuple:
    values = tuple(int(x) for x in values)
    if len(values) != n:
        raise ValueError(f"expected one {what} per vertex ({n}), got {len(values)}")
    return values


@dataclass(frozen=True)
class CCST:
    """Spanning tree avoiding both edges of every conflict pair."""

    graph: Graph
    conflict: tuple
    weights: Optional[tuple] = None
    kind = "ccst"

    def __post_init__(self):
        object.__setattr__(self, "conflict", _pairs(self.conflict, self.graph.m))


@dataclass(frozen=True)
class FCST:
    """Spanning tree using at least one edge of every forcing pair."""

    graph: Graph
    forcing: tuple
    weights: Optional[tuple] = None
    kind = "fcst"

    def __post_init__(self):
        object.__setattr__(self, "forcing", _pairs(self.forcing, self.graph.m))


@dataclass(frozen=True)
class MDST:
    """Spanning tree with ``deg_T(v) <= dstar[v]``."""

    graph: Graph
    dstar: tuple
    weights: Optional[tuple] = None
    kind = "mdst"

    def __post_init__(self):
        object.__setattr__(self, "dstar", _per_vertex(self.dstar, self.graph.n, "degree cap"))


@dataclass(frozen=True)
class MinDegree:
    """Spanning tree where every nonleaf ``v`` has ``lower[v] <= deg_T(v) <= upper[v]``."""

    graph: Graph
    lower: tuple
    upper: tuple
    weights: Optional[tuple] = None
    kind = "mindeg"

    def __post_init__(self):
        object.__setattr__(self, "lower", _per_vertex(self.lower, self.graph.n, "lower bound"))
        object.__setattr__(self, "upper", _per_vertex(self.upper, self.graph.n, "upper bound"))


@dataclass(frozen=True)
class FmDST:
    """Spanning tree whose leaves are exactly ``V - c_set``; ``deg_T(v) >= lower[v]`` on ``c_set``."""

    graph: Graph
    c_set: frozenset
    lower: dict
    weights: Optional[tuple] = None
    kind = "fmdst"

    def __post_init__(self):
        c_set = frozenset(int(v) for v in self.c_set)
        for v in c_set:
            if not 0 <= v < self.graph.n:
                raise IndexOutOfRange(f"vertex {v} outside 0..{self.graph.n - 1}")
        if set(self.lower) != set(c_set):
            raise ValueError("lower bounds must be given exactly on c_set")
        object.__setattr__(self, "c_set", c_set)
        object.__setattr__(self, "lower", {int(k): int(v) for k, v in self.lower.items()})

    __hash__ = None
