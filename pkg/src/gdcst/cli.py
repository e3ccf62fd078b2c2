"""``gdcst`` command-line driver.

Exit codes: 0 feasible / pass / done, 2 infeasible / fail, 1 error,
64 usage error, 74 I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .errors import GDCSTError
from .generators import SAT_GENERATORS, GenParams, dependency_shape, parse_dimacs_cnf, random_instance
from .graph import as_edge_set, satisfies
from .io import parse_instance, parse_source, render_instance, to_dot
from .oracle import DEFAULT_EDGE_CAP, MODES, oracle_solve
from .reductions import KINDS, lift_bounds, reduce_problem
from .solver import FORCE_PATHS, detect_matching_case, detect_partition_case, solve

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO = 2
EXIT_USAGE = 64
EXIT_IO = 74


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: Optional[str], text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _print_report(report, as_json: bool):
    data = report.to_dict()
    if as_json:
        print(json.dumps(data, sort_keys=True))
        return
    print(f"verdict: {data['verdict']}")
    if data["witness"] is not None:
        print("witness: " + ",".join(str(e) for e in data["witness"]))
    if data["weight"] is not None:
        print(f"weight: {data['weight']}")
    print(f"path: {data['path']}")
    st = data["stats"]
    print(f"nodes: {st['nodes']}  oracle calls: {st['oracle_calls']}  ms: {st['ms']}")


def _cmd_solve(args) -> int:
    inst = parse_instance(_read(args.file))
    report = solve(inst, optimize=args.optimize, force_path=args.force_path)
    _print_report(report, args.json)
    return EXIT_OK if report.feasible else EXIT_NO


def _cmd_oracle(args) -> int:
    inst = parse_instance(_read(args.file))
    cap = None if args.cap <= 0 else args.cap
    report = oracle_solve(inst, optimize=args.optimize, mode=args.mode, cap=cap)
    _print_report(report, args.json)
    return EXIT_OK if report.feasible else EXIT_NO


def _parse_tree(text: str) -> list:
    try:
        return [int(x) - 1 for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--tree expects comma-separated edge ids, got {text!r}") from None


def _cmd_validate(args) -> int:
    inst = parse_instance(_read(args.file))
    tree = as_edge_set(_parse_tree(args.tree), inst.m)
    rep = satisfies(inst, tree)
    print(f"spanning tree: {'yes' if rep.is_spanning_tree else 'no'}")
    for e in tree:
        print(f"  e{e + 1}: {rep.counts[e]} in [{inst.lower[e]}, {inst.upper[e]}]")
    if rep.first_violation is not None:
        print(f"first violation: e{rep.first_violation + 1}")
    print("PASS" if rep.passed else "FAIL")
    return EXIT_OK if rep.passed else EXIT_NO


def _cmd_reduce(args) -> int:
    text = _read(args.input)
    if args.kind == "lift":
        if args.c is None:
            raise UsageError("reduce lift needs --c")
        out = lift_bounds(parse_instance(text), args.c)
    else:
        problem = parse_source(text, args.kind, k=args.k)
        out = reduce_problem(problem, c=args.c or 0, seed=args.seed)
    _write(args.output, render_instance(out.instance))
    return EXIT_OK


def _cmd_generate(args) -> int:
    if args.variant == "random":
        if args.n is None or args.m is None:
            raise UsageError("generate random needs --n and --m")
        params = GenParams(args.n, args.m, args.density, args.bounds, args.seed, args.max_weight)
        inst = random_instance(params)
    else:
        if args.input is None:
            raise UsageError(f"generate {args.variant} needs a DIMACS CNF input file")
        inst = SAT_GENERATORS[args.variant](parse_dimacs_cnf(_read(args.input)), name=args.variant)
    _write(args.output, render_instance(inst))
    return EXIT_OK


def _cmd_export_dot(args) -> int:
    _write(None, to_dot(parse_instance(_read(args.file)), deps=args.deps))
    return EXIT_OK


def _cmd_stats(args) -> int:
    inst = parse_instance(_read(args.file))
    shape = dependency_shape(inst)
    cases = []
    if detect_matching_case(inst):
        cases.append("matching")
    if detect_partition_case(inst):
        cases.append("partition")
    print(f"n={inst.n} m={inst.m} |A|={len(inst.deps)}")
    print(f"special case: {'+'.join(cases) or 'none'}; Δ⁺={shape.max_out}, Δ⁻={shape.max_in}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gdcst", description="Dependency-constrained spanning tree toolkit.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("solve", help="solve an instance")
    s.add_argument("file")
    s.add_argument("--optimize", action="store_true")
    s.add_argument("--force-path", choices=FORCE_PATHS)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=_cmd_solve)

    s = sub.add_parser("validate", help="check a candidate tree")
    s.add_argument("file")
    s.add_argument("--tree", required=True, help="comma-separated 1-based edge ids")
    s.set_defaults(func=_cmd_validate)

    s = sub.add_parser("reduce", help="embed a source problem as an instance")
    s.add_argument("kind", choices=KINDS)
    s.add_argument("input")
    s.add_argument("-o", "--output")
    s.add_argument("--c", type=int, help="bound shift (lift) or upper bound (ccst)")
    s.add_argument("--k", type=int, help="default minimum degree for mindeg")
    s.add_argument("--seed", type=int, default=0, help="conflict orientation seed (ccst)")
    s.set_defaults(func=_cmd_reduce)

    s = sub.add_parser("generate", help="emit a SAT-gadget or random instance")
    s.add_argument("variant", choices=sorted(SAT_GENERATORS) + ["random"])
    s.add_argument("input", nargs="?")
    s.add_argument("-o", "--output")
    s.add_argument("--n", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--density", type=float, default=0.0)
    s.add_argument("--bounds", choices=("zero", "dep", "random"), default="zero")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-weight", type=int)
    s.set_defaults(func=_cmd_generate)

    s = sub.add_parser("oracle", help="brute-force reference answer")
    s.add_argument("file")
    s.add_argument("--optimize", action="store_true")
    s.add_argument("--mode", choices=MODES, default="trees")
    s.add_argument("--cap", type=int, default=DEFAULT_EDGE_CAP, help="edge cap; 0 disables")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=_cmd_oracle)

    s = sub.add_parser("export-dot", help="Graphviz text of G (and D)")
    s.add_argument("file")
    s.add_argument("--deps", action="store_true")
    s.set_defaults(func=_cmd_export_dot)

    s = sub.add_parser("stats", help="sizes, degrees of D, detected special case")
    s.add_argument("file")
    s.set_defaults(func=_cmd_stats)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"gdcst: {exc}", file=sys.stderr)
        return EXIT_IO
    except (GDCSTError, ValueError) as exc:
        print(f"gdcst: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
