"""Generalized dependency-constrained spanning trees.

Pick a spanning tree of ``G`` such that every chosen edge ``e`` has between
``lower(e)`` and ``upper(e)`` of its dependencies (in-neighbours in the
digraph ``D`` over the edges) also chosen; optionally minimize weight.
"""
from .errors import *  # noqa: F401,F403
from .graph import (
    DSU,
    Bounds,
    DepDigraph,
    Graph,
    Instance,
    Multigraph,
    ValidationReport,
    build_instance,
    check_structure,
    components_excluding,
    contract,
    is_spanning_tree,
    satisfies,
)
from .matroid import (
    FreeMatroid,
    GraphicMatroid,
    Matroid,
    PartitionMatroid,
    graphic_independent,
    max_common_independent,
    min_weight_common_independent_of_size,
    partition_independent,
)
from .report import SolveReport, SolveStats, SolverPath, Verdict
from .problems import CCST, FCST, MDST, FmDST, MinDegree
from .solver import (
    detect_matching_case,
    detect_partition_case,
    solve,
    solve_generic,
    solve_matching_case,
    solve_partition_case,
)
from .oracle import (
    brute_sat,
    check_source_solution,
    enumerate_spanning_trees,
    kirchhoff_count,
    oracle_solve,
    source_oracle,
)
from .reductions import (
    ReductionOutput,
    from_ccst,
    from_fcst,
    from_fmdst,
    from_mdst,
    from_min_degree,
    lift_bounds,
    pull_back,
    reduce_problem,
)
from .generators import (
    CNF,
    GenParams,
    dependency_shape,
    parse_dimacs_cnf,
    random_instance,
    sat_to_gdcst_instars,
    sat_to_gdcst_outstars,
    sat_to_gdcst_paths,
    validate_322,
)
from .io import parse_instance, parse_source, render_instance, render_source, to_dot
from .kernels import BACKEND

__version__ = "0.1.0"
