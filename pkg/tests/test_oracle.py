import os
import subprocess
import sys
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gdcst import (
    CNF,
    CCST,
    FCST,
    MDST,
    CapExceeded,
    FmDST,
    Graph,
    MinDegree,
    NotSpanningTree,
    brute_sat,
    build_instance,
    check_source_solution,
    enumerate_spanning_trees,
    kirchhoff_count,
    oracle_solve,
    satisfies,
    source_oracle,
)

from helpers import bridge1, complete_graph, path_graph, tri1
from strategies import connected_graphs, graphs, instances, is_connected


def _brute_trees(g):
    out = []
    for s in combinations(range(g.m), g.n - 1):
        if is_connected(Graph(g.n, tuple(g.edges[e] for e in s))):
            out.append(s)
    return out


@pytest.mark.parametrize("n", range(1, 8))
def test_cayley(n):
    g = complete_graph(n)
    assert kirchhoff_count(g) == (n ** (n - 2) if n > 1 else 1)
    assert sum(1 for _ in enumerate_spanning_trees(g)) == kirchhoff_count(g)


def test_cycle_and_path_counts():
    cyc = Graph(6, tuple((i, (i + 1) % 6) for i in range(6)))
    assert kirchhoff_count(cyc) == 6
    assert kirchhoff_count(path_graph(5)) == 1
    assert kirchhoff_count(Graph(3, ((0, 1),))) == 0


@settings(max_examples=150)
@given(graphs(max_n=6, max_m=10))
def test_enumeration_matches_brute_and_kirchhoff(g):
    trees = list(enumerate_spanning_trees(g))
    assert len(trees) == len(set(trees))
    assert sorted(trees) == _brute_trees(g)
    assert len(trees) == kirchhoff_count(g)


@settings(max_examples=200)
@given(instances(max_n=6, max_m=10))
def test_modes_agree(inst):
    results = [oracle_solve(inst, optimize=True, mode=mode) for mode in ("trees", "subsets", "pruned")]
    assert len({(r.verdict, r.optimal_weight) for r in results}) == 1
    for r in results:
        if r.feasible:
            assert satisfies(inst, r.witness).passed
            assert inst.weight_of(r.witness) == r.optimal_weight
    feas = [oracle_solve(inst, mode=mode).verdict for mode in ("trees", "subsets", "pruned")]
    assert len(set(feas)) == 1 and feas[0] == results[0].verdict


@settings(max_examples=100)
@given(instances(max_n=6, max_m=10))
def test_optimum_is_minimum_over_satisfying_trees(inst):
    good = [t for t in _brute_trees(inst.graph) if satisfies(inst, t).passed]
    res = oracle_solve(inst, optimize=True)
    assert res.feasible == bool(good)
    if good:
        assert res.optimal_weight == min(inst.weight_of(t) for t in good)


def test_fixtures():
    assert oracle_solve(tri1(), optimize=True).optimal_weight == 6
    assert not oracle_solve(bridge1()).feasible


def test_subsets_counts_every_subset_when_optimizing():
    inst = tri1()
    assert oracle_solve(inst, optimize=True, mode="subsets").stats.nodes == 8


def test_cap_and_mode_errors():
    g = complete_graph(8)  # 28 edges
    inst = build_instance(g)
    with pytest.raises(CapExceeded):
        oracle_solve(inst)
    with pytest.raises(ValueError):
        oracle_solve(tri1(), mode="magic")


def test_cap_none_lifts_limit():
    inst = build_instance(complete_graph(8))
    assert oracle_solve(inst, mode="pruned", cap=None).feasible


def test_single_vertex():
    res = oracle_solve(build_instance(Graph(1, ())), optimize=True)
    assert res.feasible and res.witness == ()


class TestBruteSat:
    def test_simple(self):
        assert brute_sat(CNF(2, ((1, 2), (-1, -2))))
        assert not brute_sat(CNF(1, ((1,), (-1,))))
        assert brute_sat(CNF(0, ()))

    @given(st.lists(st.lists(st.integers(1, 4).flatmap(lambda v: st.sampled_from((v, -v))), min_size=1, max_size=3)))
    def test_matches_truth_table(self, raw):
        clauses = [tuple(dict.fromkeys(c)) for c in raw]
        clauses = [c for c in clauses if len({abs(x) for x in c}) == len(c)]
        cnf = CNF(4, tuple(clauses))
        expected = any(
            all(any((lit > 0) == bool(a >> (abs(lit) - 1) & 1) for lit in c) for c in clauses) for a in range(16)
        )
        assert brute_sat(cnf) == expected

    def test_cap(self):
        with pytest.raises(CapExceeded):
            brute_sat(CNF(30, ()), cap=24)


class TestSourceChecker:
    def test_rejects_non_tree(self):
        g = path_graph(3)
        with pytest.raises(NotSpanningTree):
            check_source_solution(CCST(g, ()), (0,))

    def test_ccst_fcst(self):
        g = Graph(3, ((0, 1), (1, 2), (0, 2)))
        assert not check_source_solution(CCST(g, ((0, 1),)), (0, 1))
        assert check_source_solution(CCST(g, ((0, 1),)), (0, 2))
        assert check_source_solution(FCST(g, ((0, 1),)), (0, 2))
        sq = Graph(4, ((0, 1), (1, 2), (2, 3), (0, 3), (0, 2)))
        assert not check_source_solution(FCST(sq, ((3, 4),)), (0, 1, 2))

    def test_mdst(self):
        star = Graph(4, ((0, 1), (0, 2), (0, 3), (1, 2)))
        assert not check_source_solution(MDST(star, (2, 3, 3, 3)), (0, 1, 2))
        assert check_source_solution(MDST(star, (2, 3, 3, 3)), (0, 2, 3))

    def test_mindegree_ignores_leaves(self):
        g = path_graph(4)
        assert check_source_solution(MinDegree(g, (5, 2, 2, 5), (5, 2, 2, 5)), (0, 1, 2))
        assert not check_source_solution(MinDegree(g, (1, 3, 1, 1), (1, 3, 1, 1)), (0, 1, 2))

    def test_fmdst(self):
        g = Graph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (2, 3)))
        # vertex 0 in C with lower 3, the rest must be leaves
        assert check_source_solution(FmDST(g, frozenset({0}), {0: 3}), (0, 1, 2))
        assert not check_source_solution(FmDST(g, frozenset({0}), {0: 3}), (0, 1, 4))

    @settings(max_examples=50)
    @given(connected_graphs(max_n=5, max_m=7))
    def test_source_oracle_ccst_without_conflicts_is_mst(self, g):
        w = tuple(range(g.m, 0, -1))
        feasible, best, tree = source_oracle(CCST(g, (), w), optimize=True)
        assert feasible
        assert best == min(sum(w[e] for e in t) for t in _brute_trees(g))


def test_pure_python_backend_selected_by_env():
    env = dict(os.environ, GDCST_PURE_PYTHON="1")
    code = "import gdcst; print(gdcst.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_pure_python_backend_agrees():
    script = (
        "from gdcst import GenParams, random_instance, oracle_solve\n"
        "out = []\n"
        "for s in range(40):\n"
        "    inst = random_instance(GenParams(6, 9, 0.2, 'random', s, max_weight=9))\n"
        "    for mode in ('trees', 'subsets', 'pruned'):\n"
        "        r = oracle_solve(inst, optimize=True, mode=mode)\n"
        "        out.append((r.verdict.value, r.optimal_weight, r.witness, r.stats.nodes))\n"
        "print(out)\n"
    )
    runs = []
    for flag in ("1", ""):
        env = dict(os.environ, GDCST_PURE_PYTHON=flag)
        res = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True, text=True, check=True)
        runs.append(res.stdout)
    assert runs[0] == runs[1]
