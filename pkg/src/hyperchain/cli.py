"""Command-line interface: analyze, lift, verify, export-dot, discretize.

Exit codes: 0 success/pass, 1 verification failure, 2 input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys as _sys
from pathlib import Path

from .conley import enumerate_attractors
from .discretize import builtin, discretize
from .dynamics import EXACT, ChainAnalysis, DiscreteSystem, Eps, chain_components
from .errors import DomainError, HyperchainError, MetricError, PreconditionError, ResourceLimitError
from .hyperspace import c_j_set, lift
from .io import InputError, SystemDocument
from .suites import GENERATOR_DOC, SUITES, Case, builtin_case, random_systems, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


def _semantics(args):
    return EXACT if args.epsilon is None else Eps(args.epsilon)


def _sem_json(sem):
    return "exact" if sem.exact else {"epsilon": sem.eps}


def _names(sys: DiscreteSystem, members) -> list[str]:
    return [sys.labels[i] for i in sorted(members)]


def analysis_dict(analysis: ChainAnalysis, attractors: bool = True) -> dict:
    sys = analysis.system
    out = {
        "semantics": _sem_json(analysis.semantics),
        "points": list(sys.labels),
        "recurrent": analysis.recurrent.labels,
        "transient": _names(sys, set(range(len(sys))) - analysis.recurrent.members),
        "components": [P.labels for P in analysis.components],
        # [q, p]: some chain leads from component q into component p
        "condensation": sorted([q, p] for p, qs in enumerate(analysis.order) for q in qs),
    }
    if attractors:
        out["attractors"] = [
            {"attractor": r.attractor.labels, "dual": _names(sys, r.dual), "trap": r.trap.labels}
            for r in enumerate_attractors(sys, analysis.semantics, analysis=analysis)
        ]
    return out


def components_csv(analysis: ChainAnalysis) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["component", "size", "members"])
    for k, P in enumerate(analysis.components):
        w.writerow([k, len(P), ";".join(P.labels)])
    return buf.getvalue()


def condensation_dot(analysis: ChainAnalysis, name: str = "condensation") -> str:
    """Condensation digraph: one node per recurrent component, one per transient point."""
    sys = analysis.system
    node_of_scc: dict[int, str] = {}
    lines = [f"digraph {name} {{"]
    for k, P in enumerate(analysis.components):
        node_of_scc[analysis.scc_of[min(P.members)]] = f"c{k}"
        lines.append(f'  c{k} [label="component {k} (size {len(P)})"];')
    for v in range(len(sys)):
        if not analysis.is_recurrent(v):
            node_of_scc[analysis.scc_of[v]] = f"t{v}"
            label = sys.labels[v].replace('"', '\\"')
            lines.append(f'  t{v} [label="transient {label}", shape=box, style=dashed];')
    arcs = set()
    for v, succ in enumerate(analysis.edges):
        for w in succ:
            a, b = node_of_scc[analysis.scc_of[v]], node_of_scc[analysis.scc_of[w]]
            if a != b:
                arcs.add((a, b))
    key = lambda s: (s[0], int(s[1:]))  # noqa: E731
    for a, b in sorted(arcs, key=lambda e: (key(e[0]), key(e[1]))):
        lines.append(f"  {a} -> {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def lift_dict(sys: DiscreteSystem, max_card: int | None, sem) -> dict:
    hyper = lift(sys, max_card)
    ha = chain_components(hyper.as_system, sem)
    out = {
        "semantics": _sem_json(sem),
        "max_card": hyper.max_card,
        "hyper_points": len(hyper),
        "C_bar_size": len(ha.recurrent),
        "C_bar": hyper.describe(ha.recurrent.members),
        "component_count": len(ha.components),
        "components": [hyper.describe(Q.members) for Q in ha.components],
    }
    if hyper.full:
        base = chain_components(sys, sem)
        k = len(base.components)
        if k <= 12:
            out["C_J"] = [
                {
                    "J": [base.components[p].labels for p in J],
                    "members": hyper.describe(c_j_set(hyper, base, J)),
                }
                for J in ([p for p in range(k) if m >> p & 1] for m in range(1, 1 << k))
            ]
    return out


def _load(path: str) -> DiscreteSystem:
    return SystemDocument.load(path).to_system()


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        _sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_analyze(args) -> int:
    analysis = chain_components(_load(args.file), _semantics(args))
    if args.format == "csv":
        _emit(components_csv(analysis), args.out)
    else:
        _emit(_dump(analysis_dict(analysis, attractors=not args.no_attractors)), args.out)
    return EXIT_OK


def cmd_lift(args) -> int:
    max_card = None if args.all else args.max_card
    _emit(_dump(lift_dict(_load(args.file), max_card, _semantics(args))), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    grid = None
    if args.random is not None:
        if len(args.random) > 2:
            raise InputError("--random takes N and an optional SEED")
        if len(args.random) == 2:
            args.seed = args.random[1]
        args.random = args.random[0]
        systems = random_systems(args.random, args.seed, args.max_n)
        sem = _semantics(args)
        cases = [Case(f"random{i}", s, sem) for i, s in enumerate(systems)]
        header = {"source": "random", "count": args.random, "seed": args.seed, "max_n": args.max_n, "generator": GENERATOR_DOC}
    elif args.builtin is not None:
        spec_text, n = args.builtin
        case, grid = builtin_case(spec_text, int(n), args.epsilon)
        cases = [case]
        header = {"source": "builtin", "map": spec_text, "n": int(n), "epsilon": case.semantics.eps}
    elif args.file is not None:
        cases = [Case(Path(args.file).stem, _load(args.file), _semantics(args))]
        header = {"source": args.file}
    else:
        raise InputError("give a FILE, --random N or --builtin SPEC N")
    header["suite"] = args.suite
    report = run_suite(args.suite, cases, seed=args.seed, grid=grid, header=header)
    _emit(report.to_json(timings=args.timings), args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_export_dot(args) -> int:
    sys = _load(args.file)
    sem = _semantics(args)
    if args.level == "hyper":
        sys = lift(sys, args.max_card).as_system
    _emit(condensation_dot(chain_components(sys, sem), args.level), args.out)
    return EXIT_OK


def cmd_discretize(args) -> int:
    grid = discretize(builtin(args.map), args.n)
    _emit(SystemDocument.from_system(grid.system).dumps(), args.out)
    return EXIT_OK


def _add_semantics(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--epsilon", type=float, help="ε-chain semantics with this ε")
    g.add_argument("--exact", action="store_true", help="exact semantics (default)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperchain", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="chain recurrent set, components, condensation, attractors")
    p.add_argument("file")
    _add_semantics(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--no-attractors", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("lift", help="chain structure of the hyperspace lift")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--max-card", type=int)
    g.add_argument("--all", action="store_true", help="all nonempty subsets (default)")
    _add_semantics(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("file", nargs="?")
    p.add_argument("--random", type=int, nargs="+", metavar="N", help="N seeded random systems (optionally followed by SEED)")
    p.add_argument("--max-n", type=int, default=6, help="largest random system (default 6)")
    p.add_argument("--builtin", nargs=2, metavar=("SPEC", "N"), help="discretized builtin map, e.g. sinpi 1000")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timings", action="store_true", help="include per-check timings (breaks byte-stability)")
    _add_semantics(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-dot", help="condensation digraph in DOT")
    p.add_argument("file")
    p.add_argument("--level", choices=("base", "hyper"), default="base")
    p.add_argument("--max-card", type=int)
    _add_semantics(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("discretize", help="write a system document for a builtin interval map")
    p.add_argument("map", help="sinpi | tent[:slope] | logistic[:r] | identity")
    p.add_argument("n", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_discretize)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"hyperchain: {exc}", file=_sys.stderr)
        return EXIT_RESOURCE
    except (InputError, MetricError, DomainError, PreconditionError, OSError) as exc:
        print(f"hyperchain: {exc}", file=_sys.stderr)
        return EXIT_INPUT
    except HyperchainError as exc:
        print(f"hyperchain: {exc}", file=_sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
