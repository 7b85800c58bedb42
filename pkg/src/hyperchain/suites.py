"""Verification suites over batches of systems, plus the seeded random system generator."""

from __future__ import annotations

import time
from collections.abc import Callable, Iterable
from dataclasses import dataclass

import numpy as np

from . import graph
from .conley import BRUTE_CAP, conley_intersection, enumerate_attractors
from .discretize import GridSystem, builtin, discretize, fixed_point_oracle
from .dynamics import EXACT, DiscreteSystem, Eps, Semantics, chain_components, chain_graph
from .errors import ResourceLimitError
from .hyperspace import (
    attractor_lift_check,
    component_structure_check,
    lift,
    lift_cap,
    main_theorem_check,
    partition_check,
    set_identity_check,
)
from .metric import PointSet, below, euclidean_1d_space, hausdorff_distance, validate_metric, zero_one_space
from .report import INFO, SKIPPED, CheckRecord, VerificationReport, check

SUITES = ("metric", "conley", "lift", "partition", "components", "lemmas", "sinpi")
GENERATOR_DOC = (
    "uniform random map on n points (n uniform in [min_n, max_n]); metric zero-one or "
    "1-D coordinates drawn uniformly from {0, 1/1000, ..., 1} without repeats, each with probability 1/2"
)


@dataclass(frozen=True)
class Case:
    name: str
    system: DiscreteSystem
    semantics: Semantics = EXACT


def random_system(rng: np.random.Generator, n: int) -> DiscreteSystem:
    labels = [str(i) for i in range(n)]
    if rng.random() < 0.5:
        space = zero_one_space(labels)
    else:
        coords = np.sort(rng.choice(1001, size=n, replace=False)) / 1000
        space = euclidean_1d_space(labels, coords)
    return DiscreteSystem(space, rng.integers(0, n, size=n).tolist())


def random_systems(count: int, seed: int, max_n: int = 6, min_n: int = 1) -> list[DiscreteSystem]:
    rng = np.random.default_rng(seed)
    return [random_system(rng, int(rng.integers(min_n, max_n + 1))) for _ in range(count)]


def sample_eps(sys: DiscreteSystem) -> list[float]:
    """Three ε values: below the smallest gap, the median distance, above the diameter."""
    space = sys.space
    if len(space) == 1:
        return [0.5, 1.0, 2.0]
    pos = space.dist[space.dist > 0]
    return [0.5 * space.min_gap, float(np.median(pos)), 1.5 * space.diameter]


# ------------------------------------------------------------------ metric


def hausdorff_inf_scan(A: PointSet, B: PointSet, delta: float = 1e-9) -> float:
    """inf{ε > 0 : A ⊆ N_ε(B) and B ⊆ N_ε(A)} by searching ε over distance values.

    Uses only neighbourhood membership, not the max-min formula. Feasibility is
    monotone in ε, so the candidate values are bisected.
    """
    d = A.space.dist[np.ix_(sorted(A.members), sorted(B.members))]
    cands = np.unique(np.concatenate([[0.0], d.ravel()]))

    def feasible(u: float) -> bool:
        near = below(d, u + delta)
        return bool(near.any(axis=1).all() and near.any(axis=0).all())

    lo, hi = 0, len(cands) - 1
    if not feasible(cands[hi]):
        raise AssertionError("no feasible ε among distance values")
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(cands[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(cands[lo])


def hausdorff_axiom_records(space, rng: np.random.Generator, pairs: int, tol: float = 1e-12) -> list[CheckRecord]:
    n = len(space)

    def rand_set():
        k = int(rng.integers(1, n + 1))
        return PointSet(space, frozenset(rng.choice(n, size=k, replace=False).tolist()))

    identity, symmetry, triangle, positivity, inf_agree = [], [], [], [], []
    for _ in range(pairs):
        A, B, C = rand_set(), rand_set(), rand_set()
        dab, dba = hausdorff_distance(A, B), hausdorff_distance(B, A)
        dbc, dac = hausdorff_distance(B, C), hausdorff_distance(A, C)
        if abs(hausdorff_distance(A, A)) > tol:
            identity.append(repr(A))
        if (dab <= tol) != (A.members == B.members):
            positivity.append([repr(A), repr(B)])
        if abs(dab - dba) > tol:
            symmetry.append([repr(A), repr(B)])
        if dac > dab + dbc + tol:
            triangle.append([repr(A), repr(B), repr(C)])
        if abs(hausdorff_inf_scan(A, B) - dab) > tol:
            inf_agree.append([repr(A), repr(B)])
    return [
        check("hausdorff: d(A,A) = 0", not identity, identity[:3]),
        check("hausdorff: d(A,B) = 0 iff A = B", not positivity, positivity[:3]),
        check("hausdorff: symmetric", not symmetry, symmetry[:3]),
        check("hausdorff: triangle inequality", not triangle, triangle[:3]),
        check("hausdorff: max-min = inf definition", not inf_agree, inf_agree[:3], pairs=pairs),
    ]


def metric_suite(case: Case, rng: np.random.Generator, pairs: int = 50) -> list[CheckRecord]:
    report = validate_metric(case.system.space.dist)
    out = [check("metric axioms", report.ok, [f"{v.kind}{v.indices}" for v in report.violations[:5]])]
    return out + hausdorff_axiom_records(case.system.space, rng, pairs)


# ------------------------------------------------------------------ conley


def conley_suite(case: Case) -> list[CheckRecord]:
    sys, sem = case.system, case.semantics
    analysis = chain_components(sys, sem)
    records = enumerate_attractors(sys, sem, "condensation", analysis=analysis)
    rec = analysis.recurrent.members
    inter = conley_intersection(sys, sem, records=records).members
    out = [check("Conley formula: intersection of (A u A*) = C", inter == rec, [sorted(inter ^ rec)], attractors=len(records))]
    bad_trap = [r.attractor.labels for r in records if (r.trap.members & rec) - r.attractor.members]
    out.append(check("recurrent points of a trap lie in its attractor", not bad_trap, bad_trap[:3]))
    bad_dual = [r.attractor.labels for r in records if r.attractor.members & r.dual]
    out.append(check("attractor and dual disjoint", not bad_dual, bad_dual[:3]))
    if len(sys) <= BRUTE_CAP:
        brute = enumerate_attractors(sys, sem, "brute")
        same = [(r.attractor.members, r.trap.members, r.dual) for r in brute] == [
            (r.attractor.members, r.trap.members, r.dual) for r in records
        ]
        out.append(
            check(
                "brute and condensation enumeration agree",
                same,
                [{"brute": [r.attractor.labels for r in brute], "condensation": [r.attractor.labels for r in records]}],
            )
        )
    else:
        out.append(CheckRecord("brute and condensation enumeration agree", SKIPPED, detail={"reason": f"|X| > {BRUTE_CAP}"}))
    return out


# ------------------------------------------------------------------ lemmas


def lemma_easy_symmetry(sys: DiscreteSystem, eps: float) -> CheckRecord:
    """Chains inside C (the EXACT chain recurrent set) connect x to y iff y to x."""
    C = chain_components(sys, EXACT).recurrent.members
    edges = chain_graph(sys, Eps(eps))
    reach = {x: graph.reachable(edges, x, within=C) for x in C}
    bad = [[sys.labels[x], sys.labels[y]] for x in sorted(C) for y in sorted(C) if x != y and (y in reach[x]) != (x in reach[y])]
    return check(f"chain symmetry inside C at eps={eps:.6g}", not bad, bad[:3])


def lemmas_suite(case: Case) -> list[CheckRecord]:
    sys = case.system
    out = [lemma_easy_symmetry(sys, eps) for eps in sample_eps(sys)]
    if len(sys) > lift_cap():
        out.append(CheckRecord("hyperspace set identities", SKIPPED, detail={"reason": f"|X| > {lift_cap()}"}))
        return out
    n = len(sys)
    family = [{0}, {1}] if n >= 2 else [{0}]
    out.extend(set_identity_check(sys, family).checks)
    if n >= 2:
        out.extend(set_identity_check(sys, [{0}, set(range(n))]).checks)
    return out


# ------------------------------------------------------------------ hyperspace


def _lifted(case: Case, fn: Callable) -> list[CheckRecord]:
    try:
        hyper = lift(case.system)
    except ResourceLimitError as exc:
        return [CheckRecord(fn.__name__, SKIPPED, detail={"reason": str(exc)})]
    return fn(case, hyper)


def _lift_checks(case, hyper):
    out = main_theorem_check(case.system, case.semantics, hyper).checks
    return out + attractor_lift_check(case.system, case.semantics, hyper).checks


def _partition_checks(case, hyper):
    return partition_check(hyper, chain_components(case.system, case.semantics)).checks


def _component_checks(case, hyper):
    return component_structure_check(hyper, chain_components(case.system, case.semantics)).checks


# ------------------------------------------------------------------ sinpi grid


def sinpi_checks(grid: GridSystem, eps: float | None = None, k_max: int = 20) -> list[CheckRecord]:
    """Chain structure of the discretized x|sin(π/x)| against its fixed-point oracle."""
    eps = grid.default_eps if eps is None else eps
    sys = grid.system
    analysis = chain_components(sys, Eps(eps))
    roots = np.array(fixed_point_oracle(grid.spec, 1e-10))
    missing, not_recurrent = [], []
    for k in range(1, k_max + 1):
        p = 2 / (2 * k + 1)
        if np.min(np.abs(roots - p)) > 1e-6:
            missing.append(k)
            continue
        j = grid.nearest(float(roots[np.argmin(np.abs(roots - p))]))
        if not analysis.is_recurrent(j):
            not_recurrent.append({"k": k, "p": p, "grid_x": float(grid.grid[j]), "image_x": float(grid.grid[sys.image[j]])})
    out = [
        check(f"oracle finds 2/(2k+1) for k <= {k_max}", not missing, missing),
        check(f"grid point nearest each fixed point 2/(2k+1), k <= {k_max}, is chain recurrent", not not_recurrent, not_recurrent),
    ]
    drop = grid.grid - grid.spec.value_at(grid.grid)
    far = [float(grid.grid[i]) for i in analysis.recurrent.members if drop[i] > 10 * eps]
    out.append(check("no chain recurrent grid point with x - f(x) > 10 eps", not far, far[:5]))
    running = np.maximum.accumulate(np.array(sys.image))
    bad_prefix = [float(grid.grid[c]) for c in range(len(sys)) if running[c] > c]
    eps_trapping = sum(
        1 for c in range(len(sys)) if all(w <= c for v in range(c + 1) for w in analysis.edges[v])
    )
    out.append(
        check(
            "every grid prefix [0, c] is trapping for the grid map",
            not bad_prefix,
            bad_prefix[:5],
            eps_trapping_prefixes=eps_trapping,
            prefixes=len(sys),
        )
    )
    records = enumerate_attractors(sys, Eps(eps), analysis=analysis)
    inter = conley_intersection(sys, Eps(eps), records=records).members
    rec = analysis.recurrent.members
    out.append(check("Conley formula on the eps-chain graph", inter == rec, [sorted(inter ^ rec)[:10]], attractors=len(records)))
    published = [1 / (2 * k + 1) for k in range(0, 5)]
    values = [float(v) for v in grid.spec.value_at(np.array(published))]
    out.append(
        CheckRecord(
            "fixed-point formula {0} u {1/(2k+1)} versus oracle",
            INFO,
            detail={
                "f(1/(2k+1)), k=0..4": [round(v, 15) for v in values],
                "oracle roots above 0.1": [round(float(r), 9) for r in roots if r > 0.1],
                "note": "f(1/(2k+1)) = 0, so those points are not fixed; the oracle finds 2/(2k+1), where |sin(pi/x)| = 1",
            },
        )
    )
    return out


# ------------------------------------------------------------------ runner


def run_suite(
    suite: str,
    cases: Iterable[Case],
    *,
    seed: int = 0,
    grid: GridSystem | None = None,
    header: dict | None = None,
    timings: bool = False,
) -> VerificationReport:
    """Run one named suite (or ``all``) over every case; check ids are prefixed by case name."""
    names = SUITES if suite == "all" else (suite,)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    cases = list(cases)
    report = VerificationReport(suite, header=dict(header or {}))
    report.header.setdefault("cases", len(cases))
    rng = np.random.default_rng(seed)
    for name in names:
        if name == "sinpi":
            if grid is not None and grid.spec.name == "sinpi":
                _timed(report, f"sinpi/n={grid.n}/", lambda: sinpi_checks(grid, cases[0].semantics.eps))
            elif suite != "all":
                report.add(CheckRecord("sinpi", SKIPPED, detail={"reason": "needs --builtin sinpi"}))
            continue
        for case in cases:
            prefix = f"{case.name}/{name}/"
            if name == "metric":
                _timed(report, prefix, lambda: metric_suite(case, rng))
            elif name == "conley":
                _timed(report, prefix, lambda: conley_suite(case))
            elif name == "lemmas":
                _timed(report, prefix, lambda: lemmas_suite(case))
            elif name == "lift":
                _timed(report, prefix, lambda: _lifted(case, _lift_checks))
            elif name == "partition":
                _timed(report, prefix, lambda: _lifted(case, _partition_checks))
            elif name == "components":
                _timed(report, prefix, lambda: _lifted(case, _component_checks))
    return report


def _timed(report: VerificationReport, prefix: str, fn: Callable[[], list[CheckRecord]]) -> None:
    start = time.perf_counter()
    try:
        records = fn()
    except ResourceLimitError as exc:
        records = [CheckRecord("resource", SKIPPED, detail={"reason": str(exc)})]
    elapsed = time.perf_counter() - start
    for r in records:
        report.add(CheckRecord(prefix + r.id, r.status, r.witnesses, r.detail, elapsed))


def builtin_case(spec_text: str, n: int, eps: float | None = None) -> tuple[Case, GridSystem]:
    grid = discretize(builtin(spec_text), n)
    eps = grid.default_eps if eps is None else eps
    return Case(f"{grid.spec.name}-{n}", grid.system, Eps(eps)), grid
