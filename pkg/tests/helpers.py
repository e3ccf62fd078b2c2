"""Shared builders for the test suite."""
from __future__ import annotations

import random
from itertools import combinations, product
from pathlib import Path

from gdcst import (
    CCST,
    CNF,
    DSU,
    FCST,
    MDST,
    Bounds,
    DepDigraph,
    FmDST,
    Graph,
    MinDegree,
    build_instance,
    validate_322,
)

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


def tri1(weighted: bool = True):
    g = Graph(3, ((0, 1), (1, 2), (0, 2)))
    return build_instance(
        g, DepDigraph(((0, 1),)), Bounds((0, 1, 0), (0, 1, 0)), (5, 1, 2) if weighted else None, name="TRI1"
    )


def bridge1():
    g = Graph(3, ((0, 1), (1, 2)))
    return build_instance(g, DepDigraph(((0, 1),)), Bounds((0, 0), (0, 0)), name="BRIDGE1")


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(combinations(range(n), 2)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def random_connected_graph(rng: random.Random, n_lo=2, n_hi=6, m_hi=8) -> Graph:
    while True:
        n = rng.randint(n_lo, n_hi)
        pairs = list(combinations(range(n), 2))
        m = rng.randint(n - 1, min(len(pairs), m_hi))
        edges = sorted(rng.sample(pairs, m))
        dsu = DSU(n)
        for a, b in edges:
            dsu.union(a, b)
        if dsu.components == 1:
            return Graph(n, tuple(edges))


def matching_instance(rng: random.Random, weighted: bool = False):
    """D an oriented matching, bounds lower = upper = |dep|.

    A small cyclic core carries pendant edges; pendants mostly depend on
    core edges, so forced pendants can demand a cycle and infeasible
    instances show up often.
    """
    while True:
        n0 = rng.randint(3, 5)
        core = random_connected_graph(rng, n0, n0, n0 + 1)
        if core.m >= n0:
            break
    edges = list(core.edges)
    pend = []
    for _ in range(rng.randint(1, core.m)):
        pend.append(len(edges))
        edges.append((rng.randrange(n0), n0 + len(pend) - 1))
    g = Graph(n0 + len(pend), tuple(edges))
    free = list(range(core.m))
    rng.shuffle(free)
    arcs = [(free.pop(), p) for p in pend if rng.random() < 0.9]
    heads = {h for _, h in arcs}
    rest = free + [p for p in pend if p not in heads]
    rng.shuffle(rest)
    for i in range(rng.randint(0, len(rest) // 2)):
        arcs.append((rest[2 * i], rest[2 * i + 1]))
    indeg = [0] * g.m
    for _, h in arcs:
        indeg[h] = 1
    w = [rng.randint(0, 9) for _ in range(g.m)] if weighted else None
    return build_instance(g, DepDigraph(tuple(arcs)), Bounds(tuple(indeg), tuple(indeg)), w)


def partition_instance(rng: random.Random):
    """Disjoint symmetric cliques in D, lower 0, one upper bound per clique."""
    g = random_connected_graph(rng, 2, 7, 12)
    ids = list(range(g.m))
    rng.shuffle(ids)
    arcs = []
    upper = [0] * g.m
    i = 0
    while i < len(ids):
        size = rng.randint(1, 4)
        block = ids[i : i + size]
        i += size
        if len(block) < 2 or rng.random() < 0.2:
            continue
        u = rng.randint(0, len(block) - 1)
        for a in block:
            upper[a] = u
            arcs += [(a, b) for b in block if b != a]
    w = [rng.randint(-3, 9) for _ in range(g.m)]
    return build_instance(g, DepDigraph(tuple(arcs)), Bounds((0,) * g.m, tuple(upper)), w)


def random_pairs(rng: random.Random, m: int, p: float = 0.3):
    return [pr for pr in combinations(range(m), 2) if rng.random() < p]


def random_source(kind: str, rng: random.Random, k: int = 2):
    g = random_connected_graph(rng)
    w = tuple(rng.randint(0, 9) for _ in range(g.m))
    if kind == "ccst":
        return CCST(g, random_pairs(rng, g.m), w)
    if kind == "fcst":
        return FCST(g, random_pairs(rng, g.m), w)
    if kind == "mdst":
        return MDST(g, [rng.randint(1, 3) for _ in range(g.n)], w)
    if kind == "mindeg":
        return MinDegree(g, [k] * g.n, g.degrees(), w)
    if kind == "fmdst":
        c_set = frozenset(v for v in range(g.n) if rng.random() < 0.5)
        return FmDST(g, c_set, {v: rng.randint(1, 3) for v in c_set}, w)
    raise ValueError(kind)


def _all_clauses(num_vars: int):
    out = []
    for width in (2, 3):
        for vs in combinations(range(1, num_vars + 1), width):
            for signs in product((1, -1), repeat=width):
                out.append(tuple(v * s for v, s in zip(vs, signs)))
    return out


def exhaustive_322_corpus(num_vars: int = 3, max_clauses: int = 4):
    """Every set of 1..max_clauses distinct clauses over 3 variables that is (3,2,2)."""
    clauses = _all_clauses(num_vars)
    corpus = [CNF(num_vars, ())]
    for k in range(1, max_clauses + 1):
        for combo in combinations(clauses, k):
            cnf = CNF(num_vars, combo)
            if validate_322(cnf):
                corpus.append(cnf)
    return corpus


def random_322(rng: random.Random, num_vars: int = 4, max_clauses: int = 5):
    """Random (3,2,2) formula built by rejection on the occurrence caps."""
    while True:
        clauses = []
        for _ in range(rng.randint(1, max_clauses)):
            width = rng.randint(2, min(3, num_vars))
            vs = rng.sample(range(1, num_vars + 1), width)
            clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
        cnf = CNF(num_vars, clauses)
        if validate_322(cnf):
            return cnf
