"""Backend selection for the brute-force kernels.

The compiled extension is used when it was built and the mask width fits;
``GDCST_PURE_PYTHON=1`` forces the pure-Python implementation.
"""
import os

from . import _kernels_py

try:
    if os.environ.get("GDCST_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"
_C_MAX_EDGES = 63


def _impl(m: int):
    if _ckernels is not None and m <= _C_MAX_EDGES:
        return _ckernels
    return _kernels_py


def is_tree_mask(n, eu, ev, mask):
    return _impl(len(eu)).is_tree_mask(n, eu, ev, mask)


def scan_subsets(n, eu, ev, dep_masks, lower, upper, weights, optimize):
    return _impl(len(eu)).scan_subsets(n, eu, ev, dep_masks, lower, upper, weights, optimize)


def scan_trees(n, eu, ev, dep_masks, lower, upper, weights, optimize):
    return _impl(len(eu)).scan_trees(n, eu, ev, dep_masks, lower, upper, weights, optimize)


def spanning_tree_masks(n, eu, ev):
    return _impl(len(eu)).spanning_tree_masks(n, eu, ev)


def scan_pruned(n, eu, ev, deps, lower, upper, weights, optimize):
    # count-based in both backends, so no mask-width limit
    impl = _ckernels if _ckernels is not None else _kernels_py
    return impl.scan_pruned(n, eu, ev, deps, lower, upper, weights, optimize)
