"""Text formats: instances, source problems for reductions, Graphviz output.

Instance files are line oriented, ``#`` starts a comment, ids are 1-based::

    p gdcst <n> <m>
    e <u> <v> [w]        m lines, in edge-id order
    d <tail> <head>      dependency arc between edge ids
    b <edge> <ell> <u>   bounds; default (0, |dep|)

A leading ``# name: <text>`` comment carries the instance name.
"""
from __future__ import annotations

from typing import Optional

from .errors import GDCSTError, ParseError
from .graph import Bounds, DepDigraph, Graph, Instance, build_instance
from .problems import CCST, FCST, MDST, FmDST, MinDegree


def _ints(parts, lineno, count_min, count_max, what):
    if not count_min <= len(parts) <= count_max:
        raise ParseError(lineno, f"'{what}' line expects {count_min}..{count_max} fields, got {len(parts)}")
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise ParseError(lineno, f"non-integer field in '{what}' line") from None


class _Lines:
    """Shared scanner for the ``p``/``e`` sections of both file kinds."""

    def __init__(self, text: str, tag: str):
        self.tag = tag
        self.name = ""
        self.n = self.m = None
        self.edges = []
        self.weights = []
        self.edge_line = {}
        self.rest = []  # (lineno, kind, ints)
        self._scan(text)

    def _scan(self, text):
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if self.n is None and body.startswith("name:"):
                    self.name = body[5:].strip()
                continue
            kind, *parts = line.split()
            if kind == "p":
                if self.n is not None:
                    raise ParseError(lineno, "second header line")
                if len(parts) != 3 or parts[0] != self.tag:
                    raise ParseError(lineno, f"header must be 'p {self.tag} <n> <m>'")
                self.n, self.m = _ints(parts[1:], lineno, 2, 2, "p")
                if self.n < 1 or self.m < 0:
                    raise ParseError(lineno, "need n >= 1 and m >= 0")
                continue
            if self.n is None:
                raise ParseError(lineno, "content before the 'p' header")
            if kind == "e":
                vals = _ints(parts, lineno, 2, 3, "e")
                if len(self.edges) == self.m:
                    raise ParseError(lineno, f"more than the declared {self.m} edges")
                a, b = vals[0], vals[1]
                for x in (a, b):
                    if not 1 <= x <= self.n:
                        raise ParseError(lineno, f"vertex {x} outside 1..{self.n}")
                if a == b:
                    raise ParseError(lineno, f"self-loop at vertex {a}")
                key = (min(a, b) - 1, max(a, b) - 1)
                if key in self.edge_line:
                    raise ParseError(lineno, f"edge {a}-{b} repeats line {self.edge_line[key]}")
                self.edge_line[key] = lineno
                self.edges.append((a - 1, b - 1))
                self.weights.append(vals[2] if len(vals) == 3 else None)
                if (self.weights[-1] is None) != (self.weights[0] is None):
                    raise ParseError(lineno, "mixed weighted and unweighted edges")
                continue
            self.rest.append((lineno, kind, parts))
        if self.n is None:
            raise ParseError(0, "missing 'p' header")
        if len(self.edges) != self.m:
            raise ParseError(0, f"header declares {self.m} edges, found {len(self.edges)}")

    def edge_id(self, value: int, lineno: int) -> int:
        if not 1 <= value <= self.m:
            raise ParseError(lineno, f"edge id {value} outside 1..{self.m}")
        return value - 1

    def graph(self) -> Graph:
        return Graph(self.n, tuple(self.edges))

    def weight_vector(self) -> Optional[tuple]:
        if not self.weights or self.weights[0] is None:
            return None
        return tuple(self.weights)


def parse_instance(text: str) -> Instance:
    """Parse the instance format; errors carry the offending line number."""
    sc = _Lines(text, "gdcst")
    arcs = {}
    bounds = {}
    for lineno, kind, parts in sc.rest:
        if kind == "d":
            t, h = (sc.edge_id(x, lineno) for x in _ints(parts, lineno, 2, 2, "d"))
            if t == h:
                raise ParseError(lineno, f"self-arc on edge {t + 1}")
            if (t, h) in arcs:
                raise ParseError(lineno, f"arc {t + 1}->{h + 1} repeats line {arcs[(t, h)]}")
            arcs[(t, h)] = lineno
        elif kind == "b":
            e, lo, hi = _ints(parts, lineno, 3, 3, "b")
            e = sc.edge_id(e, lineno)
            if e in bounds:
                raise ParseError(lineno, f"second bound line for edge {e + 1}")
            if lo < 0 or lo > hi:
                raise ParseError(lineno, f"need 0 <= ell <= u, got ell={lo}, u={hi}")
            bounds[e] = (lo, hi, lineno)
        else:
            raise ParseError(lineno, f"unknown line type {kind!r}")
    indeg = [0] * sc.m
    for _, h in arcs:
        indeg[h] += 1
    lower = [0] * sc.m
    upper = list(indeg)
    for e, (lo, hi, lineno) in bounds.items():
        if lo > indeg[e]:
            raise ParseError(lineno, f"edge {e + 1}: ell={lo} exceeds |dep|={indeg[e]}")
        lower[e], upper[e] = lo, hi
    try:
        return build_instance(
            sc.graph(),
            DepDigraph(tuple(arcs)),
            Bounds(tuple(lower), tuple(upper)),
            sc.weight_vector(),
            name=sc.name,
        )
    except GDCSTError as exc:
        raise ParseError(0, str(exc)) from exc


def render_instance(instance: Instance) -> str:
    """Canonical text: ``parse_instance(render_instance(x)) == x``."""
    out = []
    if instance.name:
        out.append(f"# name: {instance.name}")
    out.append(f"p gdcst {instance.n} {instance.m}")
    for e, (a, b) in enumerate(instance.graph.edges):
        w = f" {instance.weights[e]}" if instance.weights is not None else ""
        out.append(f"e {a + 1} {b + 1}{w}")
    for t, h in sorted(instance.deps.arcs):
        out.append(f"d {t + 1} {h + 1}")
    for e in range(instance.m):
        lo, hi = instance.lower[e], instance.upper[e]
        if (lo, hi) != (0, len(instance.dep[e])):
            out.append(f"b {e + 1} {lo} {hi}")
    return "\n".join(out) + "\n"


SOURCE_KINDS = ("ccst", "fcst", "mdst", "mindeg", "fmdst")


def parse_source(text: str, kind: str, k: Optional[int] = None):
    """Parse a source problem for ``reduce``::

        p src <n> <m>
        e <u> <v> [w]
        r <edge> <edge>      conflict (ccst) or forcing (fcst) pair
        v <vertex> <lo> [hi] degree cap (mdst), bounds (mindeg), or membership
                             of ``C`` with its lower bound (fmdst)

    For ``mindeg`` a vertex without a ``v`` line gets ``(k, deg)``.
    """
    if kind not in SOURCE_KINDS:
        raise ValueError(f"unknown source kind {kind!r}")
    sc = _Lines(text, "src")
    pairs = []
    vert = {}
    for lineno, tag, parts in sc.rest:
        if tag == "r":
            a, b = (sc.edge_id(x, lineno) for x in _ints(parts, lineno, 2, 2, "r"))
            if a == b:
                raise ParseError(lineno, "a pair needs two different edges")
            pairs.append((a, b))
        elif tag == "v":
            vals = _ints(parts, lineno, 2, 3, "v")
            if not 1 <= vals[0] <= sc.n:
                raise ParseError(lineno, f"vertex {vals[0]} outside 1..{sc.n}")
            if vals[0] - 1 in vert:
                raise ParseError(lineno, f"second 'v' line for vertex {vals[0]}")
            vert[vals[0] - 1] = vals[1:]
        else:
            raise ParseError(lineno, f"unknown line type {tag!r}")
    graph = sc.graph()
    w = sc.weight_vector()
    deg = graph.degrees()
    try:
        if kind == "ccst":
            return CCST(graph, pairs, w)
        if kind == "fcst":
            return FCST(graph, pairs, w)
        if kind == "mdst":
            return MDST(graph, [vert.get(v, [graph.n - 1])[0] for v in range(graph.n)], w)
        if kind == "mindeg":
            lo_default = 1 if k is None else k
            lower = [vert[v][0] if v in vert else lo_default for v in range(graph.n)]
            upper = [vert[v][1] if v in vert and len(vert[v]) > 1 else deg[v] for v in range(graph.n)]
            return MinDegree(graph, lower, upper, w)
        return FmDST(graph, frozenset(vert), {v: vals[0] for v, vals in vert.items()}, w)
    except GDCSTError as exc:
        raise ParseError(0, str(exc)) from exc


def render_source(problem) -> str:
    out = [f"p src {problem.graph.n} {problem.graph.m}"]
    for e, (a, b) in enumerate(problem.graph.edges):
        w = f" {problem.weights[e]}" if problem.weights is not None else ""
        out.append(f"e {a + 1} {b + 1}{w}")
    if isinstance(problem, (CCST, FCST)):
        pairs = problem.conflict if isinstance(problem, CCST) else problem.forcing
        out += [f"r {a + 1} {b + 1}" for a, b in pairs]
    elif isinstance(problem, MDST):
        out += [f"v {v + 1} {d}" for v, d in enumerate(problem.dstar)]
    elif isinstance(problem, MinDegree):
        out += [f"v {v + 1} {lo} {hi}" for v, (lo, hi) in enumerate(zip(problem.lower, problem.upper))]
    elif isinstance(problem, FmDST):
        out += [f"v {v + 1} {problem.lower[v]}" for v in sorted(problem.c_set)]
    return "\n".join(out) + "\n"


def to_dot(instance: Instance, deps: bool = False) -> str:
    """Graphviz text for G, followed by D when ``deps`` is set."""
    out = ["graph G {"]
    for v in range(instance.n):
        out.append(f"  {v + 1};")
    for e, (a, b) in enumerate(instance.graph.edges):
        label = f"e{e + 1}"
        if instance.weights is not None:
            label += f" w={instance.weights[e]}"
        out.append(f'  {a + 1} -- {b + 1} [label="{label}"];')
    out.append("}")
    if deps:
        out.append("digraph D {")
        for e in range(instance.m):
            lo, hi = instance.lower[e], instance.upper[e]
            out.append(f'  e{e + 1} [label="e{e + 1} [{lo},{hi}]"];')
        for t, h in sorted(instance.deps.arcs):
            out.append(f"  e{t + 1} -> e{h + 1};")
        out.append("}")
    return "\n".join(out) + "\n"
