"""Brute-force references used to cross-check everything else."""
from __future__ import annotations

import time
from typing import Iterable, Iterator, Optional

from . import kernels
from .errors import CapExceeded, NotSpanningTree
from .graph import DSU, Graph, Instance, as_edge_set, is_spanning_tree, satisfies
from .problems import CCST, FCST, MDST, FmDST, MinDegree
from .report import SolveReport, SolveStats, SolverPath, Verdict

DEFAULT_EDGE_CAP = 25
DEFAULT_VAR_CAP = 24
MODES = ("trees", "subsets", "pruned")


def _mask_to_set(mask: int) -> tuple:
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def _endpoints(graph: Graph):
    return [a for a, _ in graph.edges], [b for _, b in graph.edges]


def enumerate_spanning_trees(graph: Graph) -> Iterator[tuple]:
    """Every spanning tree exactly once, by deletion-contraction in id order."""
    eu, ev = _endpoints(graph)
    for mask in kernels.spanning_tree_masks(graph.n, eu, ev):
        yield _mask_to_set(mask)


def kirchhoff_count(graph: Graph) -> int:
    """Number of spanning trees: det of the reduced Laplacian (Bareiss, exact)."""
    n = graph.n
    if n == 1:
        return 1
    lap = [[0] * n for _ in range(n)]
    for a, b in graph.edges:
        lap[a][a] += 1
        lap[b][b] += 1
        lap[a][b] -= 1
        lap[b][a] -= 1
    mat = [row[1:] for row in lap[1:]]
    size = n - 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if mat[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if mat[r][k] != 0), None)
            if swap is None:
                return 0
            mat[k], mat[swap] = mat[swap], mat[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) // prev
        prev = mat[k][k]
    return sign * mat[size - 1][size - 1]


def _component_order(instance: Instance) -> list:
    """Edges grouped by weak component of D (by smallest id), free edges last."""
    dsu = DSU(instance.m)
    for t, h in instance.deps.arcs:
        dsu.union(t, h)
    groups = {}
    free = []
    for e in range(instance.m):
        if instance.dep[e] or instance.out[e]:
            groups.setdefault(dsu.find(e), []).append(e)
        else:
            free.append(e)
    order = [e for g in sorted(groups.values()) for e in g]
    return order + free


def _pruned(instance: Instance, weighted: bool):
    """Pruned walk in dependency-component order; returns ``(nodes, best_mask)``."""
    order = _component_order(instance)
    pos = {e: i for i, e in enumerate(order)}
    edges = instance.graph.edges
    count, best, _ = kernels.scan_pruned(
        instance.n,
        [edges[e][0] for e in order],
        [edges[e][1] for e in order],
        [[pos[d] for d in instance.dep[e]] for e in order],
        [instance.lower[e] for e in order],
        [instance.upper[e] for e in order],
        [instance.weights[e] for e in order] if weighted else None,
        weighted,
    )
    if best is None:
        return count, -1
    return count, sum(1 << order[i] for i in best)


def oracle_solve(
    instance: Instance,
    optimize: bool = False,
    mode: str = "trees",
    cap: Optional[int] = DEFAULT_EDGE_CAP,
) -> SolveReport:
    """Exact reference answer.

    ``trees`` filters every spanning tree, ``subsets`` tests all ``2**m``
    edge subsets, ``pruned`` enumerates spanning trees but drops a partial
    tree as soon as an included edge can no longer meet its bounds. ``cap`` limits ``m``
    (``None`` disables the limit).
    """
    if mode not in MODES:
        raise ValueError(f"unknown oracle mode {mode!r}; expected one of {MODES}")
    if cap is not None and instance.m > cap:
        raise CapExceeded(f"m = {instance.m} exceeds the oracle cap {cap}")
    start = time.perf_counter()
    weighted = optimize and instance.weights is not None
    if mode == "pruned":
        count, best_mask = _pruned(instance, weighted)
    else:
        eu, ev = _endpoints(instance.graph)
        args = (
            instance.n,
            eu,
            ev,
            instance.dep_masks(),
            list(instance.lower),
            list(instance.upper),
            list(instance.weights) if instance.weights is not None else None,
            weighted,
        )
        scan = kernels.scan_trees if mode == "trees" else kernels.scan_subsets
        count, best_mask, _ = scan(*args)
    stats = SolveStats(nodes=count, ms=(time.perf_counter() - start) * 1000)
    if best_mask < 0:
        return SolveReport(Verdict.INFEASIBLE, path=SolverPath.ORACLE, stats=stats)
    witness = _mask_to_set(best_mask)
    return SolveReport(
        Verdict.FEASIBLE,
        witness=witness,
        optimal_weight=instance.weight_of(witness) if weighted else None,
        path=SolverPath.ORACLE,
        stats=stats,
    )


def brute_sat(cnf, cap: int = DEFAULT_VAR_CAP) -> bool:
    """Exhaustive satisfiability test over all assignments."""
    nv = cnf.num_vars
    if nv > cap:
        raise CapExceeded(f"{nv} variables exceed the brute-force cap {cap}")
    # each clause as (positive-bit mask, negative-bit mask)
    clauses = []
    for clause in cnf.clauses:
        pos = neg = 0
        for lit in clause:
            if lit > 0:
                pos |= 1 << (lit - 1)
            else:
                neg |= 1 << (-lit - 1)
        clauses.append((pos, neg))
    full = (1 << nv) - 1
    for assignment in range(1 << nv):
        false_bits = full & ~assignment
        if all(pos & assignment or neg & false_bits for pos, neg in clauses):
            return True
    return False


def _tree_degrees(graph: Graph, tree: tuple) -> list:
    deg = [0] * graph.n
    for e in tree:
        a, b = graph.edges[e]
        deg[a] += 1
        deg[b] += 1
    return deg


def check_source_solution(problem, tree: Iterable[int]) -> bool:
    """Evaluate the defining predicate of ``problem`` on a spanning tree.

    ``problem`` may also be an :class:`Instance`, in which case this is the
    G-DCST predicate itself.
    """
    graph = problem.graph
    tree = as_edge_set(tree, graph.m)
    if not is_spanning_tree(graph, tree):
        raise NotSpanningTree(f"{list(tree)} is not a spanning tree")
    chosen = set(tree)
    if isinstance(problem, Instance):
        return satisfies(problem, tree).passed
    if isinstance(problem, CCST):
        return not any(a in chosen and b in chosen for a, b in problem.conflict)
    if isinstance(problem, FCST):
        return all(a in chosen or b in chosen for a, b in problem.forcing)
    deg = _tree_degrees(graph, tree)
    if isinstance(problem, MDST):
        return all(deg[v] <= problem.dstar[v] for v in range(graph.n))
    if isinstance(problem, MinDegree):
        return all(
            problem.lower[v] <= deg[v] <= problem.upper[v]
            for v in range(graph.n)
            if deg[v] > 1
        )
    if isinstance(problem, FmDST):
        for v in range(graph.n):
            if v in problem.c_set:
                if deg[v] < problem.lower[v]:
                    return False
            elif deg[v] != 1:
                return False
        return True
    raise TypeError(f"unsupported source problem {type(problem).__name__}")


def source_oracle(problem, optimize: bool = False):
    """``(feasible, best_weight, best_tree)`` by spanning-tree enumeration."""
    weights = problem.weights
    best = None
    best_w = None
    for tree in enumerate_spanning_trees(problem.graph):
        if not check_source_solution(problem, tree):
            continue
        w = sum(weights[e] for e in tree) if weights is not None else None
        if best is None or (optimize and w is not None and w < best_w):
            best, best_w = tree, w
        if not optimize or weights is None:
            break
    if best is None:
        return False, None, None
    return True, (best_w if optimize else None), best
