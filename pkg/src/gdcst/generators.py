"""Instance generators: (3,2,2)-SAT gadget constructions and seeded random instances."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .errors import (
    LiteralOutOfRange,
    MalformedHeader,
    Not322,
    UnreachableTarget,
    UnterminatedClause,
)
from .graph import DSU, Bounds, DepDigraph, Graph, Instance, build_instance

BOUND_MODES = ("zero", "dep", "random")
SAT_VARIANTS = ("outstars", "paths", "instars")
PATHS_ORIENTATION = "literal -> lower-index clause -> higher-index clause"


@dataclass(frozen=True)
class CNF:
    """A formula over variables ``1..num_vars``; literals are signed ints."""

    num_vars: int
    clauses: tuple = ()

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("variable count must be nonnegative")
        clauses = tuple(tuple(int(x) for x in c) for c in self.clauses)
        for c in clauses:
            if not c:
                raise ValueError("empty clause")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise LiteralOutOfRange(f"literal {lit} outside ±1..{self.num_vars}")
            if len({abs(x) for x in c}) != len(c):
                raise ValueError(f"clause {c} repeats a variable")
        object.__setattr__(self, "clauses", clauses)


@dataclass(frozen=True)
class GenParams:
    n: int
    m: int
    density: float = 0.0
    bound_mode: str = "zero"
    seed: int = 0
    max_weight: Optional[int] = None  # weights drawn from 0..max_weight when set
    retries: int = 1000

    def __post_init__(self):
        if not 0.0 <= self.density <= 1.0:
            raise ValueError(f"arc density {self.density} outside [0, 1]")
        if self.bound_mode not in BOUND_MODES:
            raise ValueError(f"bound mode must be one of {BOUND_MODES}")
        if self.n < 1 or self.m < 0 or self.m > self.n * (self.n - 1) // 2:
            raise ValueError(f"no simple graph has n={self.n}, m={self.m}")


def validate_322(cnf: CNF) -> bool:
    """Clause width 2..3, each variable at most twice per sign."""
    pos = [0] * (cnf.num_vars + 1)
    neg = [0] * (cnf.num_vars + 1)
    for c in cnf.clauses:
        if not 2 <= len(c) <= 3:
            return False
        for lit in c:
            if lit > 0:
                pos[lit] += 1
            else:
                neg[-lit] += 1
    return max(pos + neg) <= 2


def _require_322(cnf: CNF):
    if not validate_322(cnf):
        raise Not322("formula is not (3,2,2): need clause width 2..3 and at most two occurrences per literal")


class _Builder:
    """Accumulates vertices, edges and arcs with role labels."""

    def __init__(self):
        self.n = 0
        self.vertex_names = []
        self.edges = []
        self.labels = []
        self.index = {}
        self.arcs = []

    def vertex(self, name: str) -> int:
        self.vertex_names.append(name)
        self.n += 1
        return self.n - 1

    def edge(self, a: int, b: int) -> int:
        e = len(self.edges)
        self.edges.append((a, b))
        label = f"{self.vertex_names[a]}-{self.vertex_names[b]}"
        self.labels.append(label)
        self.index[(min(a, b), max(a, b))] = e
        return e

    def eid(self, a: int, b: int) -> int:
        return self.index[(min(a, b), max(a, b))]

    def arc(self, tail: int, head: int):
        self.arcs.append((tail, head))

    def build(self, name: str, meta: dict) -> Instance:
        graph = Graph(self.n, tuple(self.edges))
        deps = DepDigraph(tuple(self.arcs))
        indeg = [0] * len(self.edges)
        for _, h in self.arcs:
            indeg[h] += 1
        bounds = Bounds(tuple(indeg), tuple(indeg))
        return build_instance(graph, deps, bounds, name=name, edge_labels=self.labels, meta=meta)


def _variable_gadgets(b: _Builder, cnf: CNF) -> dict:
    """Vertices v_x, v_~x, w_x per variable; returns literal -> vertex."""
    lit_vertex = {}
    for x in range(1, cnf.num_vars + 1):
        lit_vertex[x] = b.vertex(f"v[x{x}]")
        lit_vertex[-x] = b.vertex(f"v[~x{x}]")
        b.vertex(f"w[x{x}]")
    return lit_vertex


def _w(x: int) -> int:
    return 3 * x  # w_x follows v_x (3x-2) and v_~x (3x-1)


def _literal_clause(cnf: CNF, name: str, paths: bool) -> Instance:
    _require_322(cnf)
    b = _Builder()
    v = b.vertex("v")
    lit_vertex = _variable_gadgets(b, cnf)
    clause_vertices = []
    for ci, c in enumerate(cnf.clauses, start=1):
        clause_vertices.append([b.vertex(f"v[c{ci}.{i}]") for i in range(1, len(c) + 1)])
    for u in range(1, b.n):
        b.edge(v, u)
    for x in range(1, cnf.num_vars + 1):
        b.edge(lit_vertex[x], lit_vertex[-x])
    for verts in clause_vertices:
        for a, c in zip(verts, verts[1:]):
            b.edge(a, c)
    for x in range(1, cnf.num_vars + 1):
        b.arc(b.eid(lit_vertex[x], lit_vertex[-x]), b.eid(v, _w(x)))
    # occurrences of each literal, by clause index then position
    occ = {}
    for ci, c in enumerate(cnf.clauses):
        for i, lit in enumerate(c):
            occ.setdefault(lit, []).append(b.eid(v, clause_vertices[ci][i]))
    for lit in sorted(occ, key=lambda t: (abs(t), t < 0)):
        root = b.eid(v, lit_vertex[lit])
        targets = occ[lit]
        if paths and len(targets) == 2:
            b.arc(root, targets[0])
            b.arc(targets[0], targets[1])
        else:
            for t in targets:
                b.arc(root, t)
    meta = {"construction": "paths" if paths else "outstars", "vars": cnf.num_vars, "clauses": len(cnf.clauses)}
    if paths:
        meta["orientation"] = PATHS_ORIENTATION
    inst = b.build(name, meta)
    n_exp = 1 + 3 * cnf.num_vars + sum(len(c) for c in cnf.clauses)
    m_exp = (n_exp - 1) + cnf.num_vars + sum(len(c) - 1 for c in cnf.clauses)
    a_exp = cnf.num_vars + sum(len(c) for c in cnf.clauses)
    assert (inst.n, inst.m, len(inst.deps)) == (n_exp, m_exp, a_exp)
    return inst


def sat_to_gdcst_outstars(cnf: CNF, name: str = "") -> Instance:
    """Variable/clause gadgets whose dependency digraph is a forest of out-stars.

    ``v`` is universal; ``v v_x`` encodes x true and ``v v_~x`` x false. The
    pendant ``v w_x`` depends on ``v_x v_~x``, which forces exactly one of
    the two assignment edges. Each clause spoke ``v v_c^i`` depends on the
    assignment edge of its literal. Bounds are ``lower = upper = |dep|``.
    """
    return _literal_clause(cnf, name, paths=False)


def sat_to_gdcst_paths(cnf: CNF, name: str = "") -> Instance:
    """As :func:`sat_to_gdcst_outstars`, but a literal with two occurrences
    yields the chain ``v v_lit -> spoke(first clause) -> spoke(second clause)``."""
    return _literal_clause(cnf, name, paths=True)


def sat_to_gdcst_instars(cnf: CNF, name: str = "") -> Instance:
    """Variant whose dependency digraph is a forest of in-stars (in-degree <= 2).

    Every clause literal gets ``v_c, a_c, b_c, w_c`` adjacent to ``v`` plus the
    edge ``a_c b_c``. Choosing ``v a_c`` says the literal satisfies the clause;
    ``v b_c`` requires the opposite assignment edge.
    """
    _require_322(cnf)
    b = _Builder()
    v = b.vertex("v")
    lit_vertex = _variable_gadgets(b, cnf)
    gadgets = []
    for ci, c in enumerate(cnf.clauses, start=1):
        row = []
        for i, lit in enumerate(c, start=1):
            tag = f"c{ci}.{i}"
            row.append((lit, b.vertex(f"v[{tag}]"), b.vertex(f"a[{tag}]"), b.vertex(f"b[{tag}]"), b.vertex(f"w[{tag}]")))
        gadgets.append(row)
    for u in range(1, b.n):
        b.edge(v, u)
    for x in range(1, cnf.num_vars + 1):
        b.edge(lit_vertex[x], lit_vertex[-x])
    for row in gadgets:
        for _, _, a, bb, _ in row:
            b.edge(a, bb)
    for row in gadgets:
        for g1, g2 in zip(row, row[1:]):
            b.edge(g1[1], g2[1])
    for x in range(1, cnf.num_vars + 1):
        b.arc(b.eid(lit_vertex[x], lit_vertex[-x]), b.eid(v, _w(x)))
    for row in gadgets:
        for lit, vc, a, bb, w in row:
            b.arc(b.eid(a, bb), b.eid(v, w))
            b.arc(b.eid(v, a), b.eid(v, vc))
            b.arc(b.eid(v, bb), b.eid(v, lit_vertex[-lit]))
    inst = b.build(name, {"construction": "instars", "vars": cnf.num_vars, "clauses": len(cnf.clauses)})
    k = sum(len(c) for c in cnf.clauses)
    n_exp = 1 + 3 * cnf.num_vars + 4 * k
    m_exp = (n_exp - 1) + cnf.num_vars + k + sum(len(c) - 1 for c in cnf.clauses)
    assert (inst.n, inst.m, len(inst.deps)) == (n_exp, m_exp, cnf.num_vars + 3 * k)
    return inst


SAT_GENERATORS = {
    "outstars": sat_to_gdcst_outstars,
    "paths": sat_to_gdcst_paths,
    "instars": sat_to_gdcst_instars,
}


@dataclass(frozen=True)
class DepShape:
    max_out: int
    max_in: int
    out_star_forest: bool
    in_star_forest: bool
    path_forest: bool
    components: list = field(default_factory=list)


def dependency_shape(instance: Instance) -> DepShape:
    """Degree maxima of D and which star/path forest shapes it has."""
    indeg = [len(d) for d in instance.dep]
    outdeg = [len(o) for o in instance.out]
    arcs = instance.deps.arcs
    out_stars = all(indeg[h] == 1 and outdeg[h] == 0 and indeg[t] == 0 for t, h in arcs)
    in_stars = all(outdeg[t] == 1 and indeg[t] == 0 and outdeg[h] == 0 for t, h in arcs)
    dsu = DSU(instance.m)
    acyclic = True
    for t, h in arcs:
        if not dsu.union(t, h):
            acyclic = False
    paths = acyclic and max(indeg + outdeg, default=0) <= 1
    return DepShape(max(outdeg, default=0), max(indeg, default=0), out_stars, in_stars, paths)


def _connected(n: int, edges) -> bool:
    dsu = DSU(n)
    for a, b in edges:
        dsu.union(a, b)
    return dsu.components == 1


def random_instance(params: GenParams, name: str = "") -> Instance:
    """Seeded connected ``G(n, m)`` graph with a random dependency digraph.

    Each ordered pair of distinct edges becomes an arc with probability
    ``density``. Bound modes: ``zero`` (lower 0, upper random),
    ``dep`` (lower = upper = |dep|), ``random`` (both random).
    """
    rng = random.Random(params.seed)
    n, m = params.n, params.m
    if m < n - 1:
        raise UnreachableTarget(f"{m} edges cannot connect {n} vertices")
    pairs = list(combinations(range(n), 2))
    for _ in range(params.retries):
        edges = sorted(rng.sample(pairs, m))
        if _connected(n, edges):
            break
    else:
        raise UnreachableTarget(f"no connected G({n}, {m}) within {params.retries} tries")
    arcs = []
    if params.density > 0:
        for t in range(m):
            for h in range(m):
                if t != h and rng.random() < params.density:
                    arcs.append((t, h))
    indeg = [0] * m
    for _, h in arcs:
        indeg[h] += 1
    lower, upper = [], []
    for e in range(m):
        d = indeg[e]
        if params.bound_mode == "zero":
            lo, hi = 0, rng.randint(0, d)
        elif params.bound_mode == "dep":
            lo = hi = d
        else:
            lo = rng.randint(0, d)
            hi = rng.randint(lo, d)
        lower.append(lo)
        upper.append(hi)
    weights = None
    if params.max_weight is not None:
        weights = [rng.randint(0, params.max_weight) for _ in range(m)]
    return build_instance(
        Graph(n, tuple(edges)),
        DepDigraph(tuple(arcs)),
        Bounds(tuple(lower), tuple(upper)),
        weights,
        name=name or f"random-n{n}-m{m}-s{params.seed}",
    )


def parse_dimacs_cnf(text: str) -> CNF:
    """Parse DIMACS CNF: ``c`` comments, a ``p cnf V C`` header, 0-terminated clauses."""
    header = None
    clauses = []
    current = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise MalformedHeader(f"line {lineno}: expected 'p cnf <vars> <clauses>'")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise MalformedHeader(f"line {lineno}: non-integer header field") from None
            if min(header) < 0:
                raise MalformedHeader(f"line {lineno}: negative header field")
            continue
        if header is None:
            raise MalformedHeader(f"line {lineno}: clause before 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise MalformedHeader(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > header[0]:
                raise LiteralOutOfRange(f"line {lineno}: literal {lit} but only {header[0]} variables")
            else:
                current.append(lit)
    if header is None:
        raise MalformedHeader("missing 'p cnf' header")
    if current:
        raise UnterminatedClause("last clause is not terminated by 0")
    if len(clauses) != header[1]:
        raise MalformedHeader(f"header declares {header[1]} clauses, found {len(clauses)}")
    return CNF(header[0], tuple(clauses))


def render_dimacs_cnf(cnf: CNF) -> str:
    lines = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    lines += [" ".join(str(x) for x in c) + " 0" for c in cnf.clauses]
    return "\n".join(lines) + "\n"
