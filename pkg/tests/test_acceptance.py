"""Acceptance suite: ten oracle-anchored criteria with their time limits.

Each test prints one ``criterion N: PASS|FAIL`` line straight to the terminal.
"""
from __future__ import annotations

import random
import time
from itertools import combinations

import pytest

from gdcst import (
    Bounds,
    DepDigraph,
    FreeMatroid,
    GenParams,
    GraphicMatroid,
    Infeasible,
    PartitionMatroid,
    SolverPath,
    brute_sat,
    build_instance,
    check_source_solution,
    check_structure,
    dependency_shape,
    lift_bounds,
    max_common_independent,
    min_weight_common_independent_of_size,
    oracle_solve,
    parse_dimacs_cnf,
    parse_instance,
    parse_source,
    pull_back,
    random_instance,
    reduce_problem,
    render_instance,
    render_source,
    sat_to_gdcst_instars,
    sat_to_gdcst_outstars,
    sat_to_gdcst_paths,
    satisfies,
    solve,
    solve_matching_case,
    solve_partition_case,
    source_oracle,
)
from gdcst.generators import render_dimacs_cnf

import make_golden
from helpers import (
    FIXTURES,
    complete_graph,
    exhaustive_322_corpus,
    matching_instance,
    partition_instance,
    random_322,
    random_connected_graph,
    random_source,
)


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")

    return emit


def _bits(mask: int) -> list:
    return [e for e in range(mask.bit_length()) if mask >> e & 1]


# 1 --------------------------------------------------------------------------


def test_criterion_01_solver_matches_oracle(report):
    rng = random.Random(2024)
    modes = ("zero", "dep", "random")
    start = time.perf_counter()
    bad = []
    for i in range(500):
        n = rng.randint(2, 7)
        m = rng.randint(n - 1, min(12, n * (n - 1) // 2))
        params = GenParams(n, m, rng.uniform(0, 0.3), modes[i % 3], seed=i, max_weight=20)
        inst = random_instance(params)
        ref = oracle_solve(inst, optimize=True)
        got = solve(inst, optimize=True)
        feas = solve(inst)
        if (got.verdict, got.optimal_weight) != (ref.verdict, ref.optimal_weight) or feas.verdict != ref.verdict:
            bad.append(i)
        for r in (got, feas):
            if r.feasible and not satisfies(inst, r.witness).passed:
                bad.append(i)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    report(1, ok, f"500 instances, {len(bad)} mismatches, {elapsed:.1f}s")
    assert not bad, bad[:10]
    assert elapsed < 60


# 2 --------------------------------------------------------------------------


def test_criterion_02_matching_case(report):
    rng = random.Random(7)
    start = time.perf_counter()
    bad = 0
    feasible = 0
    for _ in range(300):
        inst = matching_instance(rng)
        got = solve_matching_case(inst)
        ref = oracle_solve(inst)
        good = got.verdict == ref.verdict and got.path is SolverPath.MATCHING
        if got.feasible:
            feasible += 1
            good = good and satisfies(inst, got.witness).passed
        bad += not good
    elapsed = time.perf_counter() - start
    report(2, bad == 0 and elapsed < 30, f"300 instances ({feasible} feasible), {bad} mismatches, {elapsed:.1f}s")
    assert bad == 0
    assert elapsed < 30


# 3 --------------------------------------------------------------------------


def test_criterion_03_partition_case(report):
    rng = random.Random(11)
    start = time.perf_counter()
    bad = 0
    feasible = 0
    for _ in range(300):
        inst = partition_instance(rng)
        got = solve_partition_case(inst, optimize=True)
        ref = oracle_solve(inst, optimize=True)
        good = (got.verdict, got.optimal_weight) == (ref.verdict, ref.optimal_weight)
        if got.feasible:
            feasible += 1
            good = good and satisfies(inst, got.witness).passed
        bad += not good
    elapsed = time.perf_counter() - start
    report(3, bad == 0 and elapsed < 60, f"300 instances ({feasible} feasible), {bad} mismatches, {elapsed:.1f}s")
    assert bad == 0
    assert elapsed < 60


# 4 and 5 --------------------------------------------------------------------


GENERATORS = (
    ("outstars", sat_to_gdcst_outstars),
    ("paths", sat_to_gdcst_paths),
    ("instars", sat_to_gdcst_instars),
)


@pytest.fixture(scope="module")
def sat_corpus():
    rng = random.Random(5)
    return exhaustive_322_corpus() + [random_322(rng) for _ in range(100)]


def test_criterion_04_sat_round_trip(report, sat_corpus):
    start = time.perf_counter()
    bad = []
    sat = 0
    for cnf in sat_corpus:
        truth = brute_sat(cnf)
        sat += truth
        for label, gen in GENERATORS:
            verdict = oracle_solve(gen(cnf), mode="pruned", cap=None).feasible
            if verdict != truth:
                bad.append((label, cnf))
    elapsed = time.perf_counter() - start
    detail = f"{len(sat_corpus)} formulas ({sat} satisfiable) x 3 generators, {len(bad)} disagreements, {elapsed:.1f}s"
    report(4, not bad and elapsed < 120, detail)
    assert not bad, bad[:5]
    assert elapsed < 120


def test_criterion_05_structure_audits(report, sat_corpus):
    violations = []
    for cnf in sat_corpus:
        out = sat_to_gdcst_outstars(cnf)
        st = check_structure(out.graph)
        sh = dependency_shape(out)
        if not (st.is_chordal and st.diameter is not None and st.diameter <= 2):
            violations.append(("outstars-graph", cnf))
        if not (sh.out_star_forest and sh.max_out <= 2):
            violations.append(("outstars-deps", cnf))
        sh = dependency_shape(sat_to_gdcst_instars(cnf))
        if not (sh.in_star_forest and sh.max_in <= 2):
            violations.append(("instars", cnf))
        sh = dependency_shape(sat_to_gdcst_paths(cnf))
        if not (sh.path_forest and sh.max_out <= 1 and sh.max_in <= 1):
            violations.append(("paths", cnf))
    report(5, not violations, f"{len(sat_corpus)} formulas, {len(violations)} violations")
    assert not violations, violations[:5]


# 6 --------------------------------------------------------------------------


def _reduction_cases():
    yield from (("ccst", {"c": c}, 0) for c in (0, 1, 2))
    yield ("fcst", {}, 0)
    yield ("mdst", {}, 0)
    yield from (("mindeg", {}, k) for k in (2, 3))
    yield ("fmdst", {}, 0)


def test_criterion_06_reductions(report):
    start = time.perf_counter()
    bad = []
    total = feasible = 0
    for kind, kw, k in _reduction_cases():
        rng = random.Random(f"{kind}-{kw}-{k}")
        for i in range(100):
            total += 1
            src = random_source(kind, rng, k=k)
            ok, best_w, _ = source_oracle(src, optimize=True)
            feasible += ok
            out = reduce_problem(src, seed=i, **kw)
            got = solve(out.instance, optimize=True)
            if got.feasible != ok or got.optimal_weight != best_w:
                bad.append((kind, kw, k, i))
                continue
            if got.feasible and not check_source_solution(src, pull_back(out, got.witness)):
                bad.append((kind, kw, k, i, "pull_back"))
    elapsed = time.perf_counter() - start
    report(6, not bad and elapsed < 120, f"{total} sources ({feasible} feasible), {len(bad)} disagreements, {elapsed:.1f}s")
    assert not bad, bad[:5]
    assert elapsed < 120


# 7 --------------------------------------------------------------------------


def _constant_bound_instance(rng: random.Random):
    g = random_connected_graph(rng, 2, 6, 8)
    arcs = [(t, h) for t in range(g.m) for h in range(g.m) if t != h and rng.random() < 0.25]
    indeg = [0] * g.m
    for _, h in arcs:
        indeg[h] += 1
    cap = min((d for d in indeg if d), default=0)
    lo = rng.randint(0, cap)
    hi = rng.randint(lo, cap)
    lower = tuple(lo if d else 0 for d in indeg)
    upper = tuple(hi if d else 0 for d in indeg)
    return build_instance(g, DepDigraph(tuple(arcs)), Bounds(lower, upper))


def test_criterion_07_lift(report):
    rng = random.Random(13)
    bad = []
    feasible = 0
    for i in range(200):
        inst = _constant_bound_instance(rng)
        base = oracle_solve(inst).feasible
        feasible += base
        for c in (1, 2):
            lifted = lift_bounds(inst, c).instance
            if oracle_solve(lifted, mode="pruned", cap=None).feasible != base:
                bad.append((i, c))
    report(7, not bad, f"200 instances ({feasible} feasible) x c in {{1,2}}, {len(bad)} disagreements")
    assert not bad, bad[:5]


# 8 --------------------------------------------------------------------------


def _random_matroid(rng: random.Random, size: int):
    kind = rng.choice(("graphic", "partition", "partition", "free") if size else ("free",))
    if kind == "graphic":
        n = rng.randint(2, 5)
        pairs = list(combinations(range(n), 2))
        # parallel edges allowed: a graphic matroid lives on a multigraph
        return GraphicMatroid(n, [rng.choice(pairs) for _ in range(size)])
    if kind == "partition":
        labels = [rng.randrange(max(1, size // 2)) for _ in range(size)]
        blocks = [[e for e in range(size) if labels[e] == b] for b in sorted(set(labels))]
        caps = [rng.randint(0, len(b)) for b in blocks]
        return PartitionMatroid(size, blocks, caps)
    return FreeMatroid(size)


def _independent_family(mat, size: int) -> set:
    return {mask for mask in range(1 << size) if mat.is_independent(_bits(mask))}


def _axioms_hold(family: set) -> bool:
    if 0 not in family:
        return False
    for a in family:
        sub = a
        while sub:
            sub = (sub - 1) & a
            if sub not in family:
                return False
    for a in family:
        for b in family:
            if b.bit_count() > a.bit_count():
                if not any((a | 1 << x) in family for x in _bits(b & ~a)):
                    return False
    return True


def test_criterion_08_matroids(report):
    rng = random.Random(17)
    bad = []
    for size in range(0, 9):
        for _ in range(4):
            mat = _random_matroid(rng, size)
            if not _axioms_hold(_independent_family(mat, size)):
                bad.append(("axioms", size))
    for i in range(200):
        size = rng.randint(1, 10)
        m1, m2 = _random_matroid(rng, size), _random_matroid(rng, size)
        common = _independent_family(m1, size) & _independent_family(m2, size)
        best = max(x.bit_count() for x in common)
        got = max_common_independent(m1, m2)
        if len(got) != best or not (m1.is_independent(got) and m2.is_independent(got)):
            bad.append(("max", i))
    for i in range(100):
        size = rng.randint(1, 10)
        m1, m2 = _random_matroid(rng, size), _random_matroid(rng, size)
        w = [rng.randint(-5, 9) for _ in range(size)]
        common = _independent_family(m1, size) & _independent_family(m2, size)
        top = max(x.bit_count() for x in common)
        for r in range(top + 2):
            sized = [sum(w[e] for e in _bits(x)) for x in common if x.bit_count() == r]
            try:
                got = min_weight_common_independent_of_size(m1, m2, w, r)
            except Infeasible:
                if sized:
                    bad.append(("weighted-raise", i, r))
                continue
            if not sized or len(got) != r or sum(w[e] for e in got) != min(sized):
                bad.append(("weighted", i, r))
            elif not (m1.is_independent(got) and m2.is_independent(got)):
                bad.append(("weighted-indep", i, r))
    report(8, not bad, f"axioms ground<=8, 200 max pairs, 100 weighted pairs, {len(bad)} failures")
    assert not bad, bad[:5]


# 9 --------------------------------------------------------------------------


def test_criterion_09_exponential_contract(report):
    inst = random_instance(GenParams(8, 20, 0.1, "random", seed=99, max_weight=50))
    start = time.perf_counter()
    res = oracle_solve(inst, optimize=True, mode="subsets")
    subsets_s = time.perf_counter() - start
    k7 = build_instance(complete_graph(7), DepDigraph(()), Bounds((0,) * 21, (0,) * 21), list(range(21)))
    start = time.perf_counter()
    trees = oracle_solve(k7, optimize=True, mode="trees")
    trees_s = time.perf_counter() - start
    ok = res.stats.nodes <= 1 << 20 and subsets_s < 60 and trees.stats.nodes == 16807 and trees_s < 1
    report(
        9,
        ok,
        f"subsets explored {res.stats.nodes} in {subsets_s:.2f}s; K7 {trees.stats.nodes} trees in {trees_s:.3f}s",
    )
    assert res.stats.nodes <= 1 << 20
    assert subsets_s < 60
    assert trees.stats.nodes == 16807
    assert trees_s < 1


# 10 -------------------------------------------------------------------------


def _round_trip(path) -> bool:
    text = path.read_text()
    if path.suffix == ".gdcst":
        return render_instance(parse_instance(text)) == text
    if path.suffix == ".cnf":
        return render_dimacs_cnf(parse_dimacs_cnf(text)) == text
    return render_source(parse_source(text, path.stem)) == text


def test_criterion_10_io_and_cli(report):
    fixtures = sorted(FIXTURES.iterdir())
    unstable = [p.name for p in fixtures if not _round_trip(p)]
    wrong = []
    steps = make_golden.scenario()
    for step in steps:
        code, out, _ = make_golden.run(step["args"])
        if code != step["exit"]:
            wrong.append((step["args"], code))
        elif "stdout" in step and out != (make_golden.GOLDEN / step["stdout"]).read_text():
            wrong.append((step["args"], "stdout"))
    ok = not unstable and not wrong
    report(10, ok, f"{len(fixtures)} fixtures, {len(unstable)} unstable; {len(steps)} CLI steps, {len(wrong)} wrong")
    assert not unstable, unstable
    assert not wrong, wrong
