"""Compare the compiled and pure-Python kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat N] [--quick]

Both backends must return identical results; the script aborts otherwise.
"""
import argparse
import time
from itertools import combinations

from gdcst import CNF, GenParams, Graph, build_instance, random_instance, sat_to_gdcst_instars
from gdcst import _kernels_py
from gdcst.oracle import _component_order

try:
    from gdcst import _ckernels
except ImportError:
    _ckernels = None


def _scan_args(inst, optimize=True):
    eu = [a for a, _ in inst.graph.edges]
    ev = [b for _, b in inst.graph.edges]
    w = list(inst.weights) if inst.weights is not None else None
    return (inst.n, eu, ev, inst.dep_masks(), list(inst.lower), list(inst.upper), w, optimize)


def _pruned_args(inst):
    order = _component_order(inst)
    pos = {e: i for i, e in enumerate(order)}
    edges = inst.graph.edges
    return (
        inst.n,
        [edges[e][0] for e in order],
        [edges[e][1] for e in order],
        [[pos[d] for d in inst.dep[e]] for e in order],
        [inst.lower[e] for e in order],
        [inst.upper[e] for e in order],
        None,
        False,
    )


def cases(quick: bool):
    sub_m = 14 if quick else 18
    yield (
        f"subsets m={sub_m}",
        "scan_subsets",
        _scan_args(random_instance(GenParams(8, sub_m, 0.1, "random", seed=1, max_weight=20))),
    )
    k = 6 if quick else 7
    kn = build_instance(Graph(k, tuple(combinations(range(k), 2))), weights=list(range(k * (k - 1) // 2)))
    yield (f"trees K{k}", "scan_trees", _scan_args(kn))
    yield (
        "trees random n=8 m=14",
        "scan_trees",
        _scan_args(random_instance(GenParams(8, 14, 0.15, "random", seed=2, max_weight=9))),
    )
    # an unsatisfiable formula forces the pruned walk to exhaust its space
    unsat = CNF(2, ((1, 2), (-1, 2), (1, -2), (-1, -2)))
    yield ("pruned instars UNSAT", "scan_pruned", _pruned_args(sat_to_gdcst_instars(unsat)))


def timed(fn, args, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller inputs")
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled backend not built; only timing pure Python")
    print(f"{'case':<26}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for label, name, call in cases(args.quick):
        py_s, py_res = timed(getattr(_kernels_py, name), call, args.repeat)
        if _ckernels is None:
            print(f"{label:<26}{py_s:>12.4f}{'-':>12}{'-':>10}")
            continue
        c_s, c_res = timed(getattr(_ckernels, name), call, args.repeat)
        if tuple(c_res) != tuple(py_res):
            raise SystemExit(f"{label}: backends disagree: {c_res} vs {py_res}")
        print(f"{label:<26}{py_s:>12.4f}{c_s:>12.4f}{py_s / max(c_s, 1e-9):>9.1f}x")


if __name__ == "__main__":
    main()
