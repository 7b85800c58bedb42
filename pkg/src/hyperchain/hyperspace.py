"""The hyperspace lift K(X) with the Hausdorff metric and induced map, and the
checks relating chain structure of the lift to that of the base system.

Subsets of the base are handled as bitmasks (bit i <-> point i). Hyper-points are
listed canonically: by cardinality, then lexicographically on sorted indices.
"""

from __future__ import annotations

import os
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb

import numpy as np

from . import graph
from .conley import LOWER_SET_CAP, attractor_of, enumerate_attractors, is_trapping, lower_sets
from .dynamics import (
    EXACT,
    ChainAnalysis,
    DiscreteSystem,
    Semantics,
    chain_components,
    chain_graph,
)
from .errors import DomainError, PreconditionError, ResourceLimitError
from .metric import FiniteMetricSpace, PointSet, _members
from .report import EXPECTED_FAIL, INFO, PASS, CheckRecord, VerificationReport, check

DEFAULT_LIFT_CAP = 12


def lift_cap() -> int:
    """|X| cap for full lifts; ``HYPERCHAIN_MAX_LIFT`` overrides the default 12."""
    value = os.environ.get("HYPERCHAIN_MAX_LIFT")
    return int(value) if value else DEFAULT_LIFT_CAP


def to_mask(S) -> int:
    m = 0
    for i in _members(S):
        m |= 1 << i
    return m


def from_mask(m: int) -> frozenset[int]:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return frozenset(out)


class HausdorffSpace(FiniteMetricSpace):
    """Metric space of listed subsets of a base space under ϱ_H.

    Rows are computed on demand from a point-to-set distance table, so a full
    ``m x m`` matrix is never required.
    """

    def __init__(self, base: FiniteMetricSpace, masks: tuple[int, ...]):
        n, m = len(base), len(masks)
        self.base = base
        self.masks = masks
        self.labels = tuple("{" + ",".join(base.labels[i] for i in sorted(from_mask(k))) + "}" for k in masks)
        self.coords = None
        self._index = {s: i for i, s in enumerate(self.labels)}
        bits = np.array([[k >> i & 1 for i in range(n)] for k in masks], dtype=bool)
        self.membership = bits
        # to_set[x, k] = min over b in subset k of ϱ(x, b)
        to_set = np.empty((n, m))
        for start in range(0, m, 1024):
            block = bits[start : start + 1024]
            to_set[:, start : start + 1024] = np.where(block[None, :, :], base.dist[:, None, :], np.inf).min(axis=2)
        self._to_set = to_set
        # distinct subsets are >= the base gap apart, and singletons attain it
        self.min_gap = base.min_gap if m > 1 else float("inf")
        self._rows: dict[int, np.ndarray] = {}

    def row(self, k: int) -> np.ndarray:
        r = self._rows.get(k)
        if r is None:
            members = np.flatnonzero(self.membership[k])
            forward = self._to_set[members].max(axis=0)
            back = np.where(self.membership, self._to_set[:, k][None, :], -np.inf).max(axis=1)
            r = np.maximum(forward, back)
            r.setflags(write=False)
            if len(self._rows) < 8192:
                self._rows[k] = r
        return r

    def distance(self, i: int, j: int) -> float:
        return float(self.row(i)[j])

    @cached_property
    def dist(self) -> np.ndarray:
        d = np.stack([self.row(k) for k in range(len(self.masks))])
        d.setflags(write=False)
        return d

    @property
    def diameter(self) -> float:
        return self.base.diameter


@dataclass(frozen=True, eq=False)
class HyperSystem:
    base: DiscreteSystem = field(repr=False)
    masks: tuple[int, ...] = field(repr=False)
    max_card: int
    as_system: DiscreteSystem = field(repr=False)

    @cached_property
    def index(self) -> dict[int, int]:
        return {m: k for k, m in enumerate(self.masks)}

    @property
    def full(self) -> bool:
        return self.max_card >= len(self.base)

    def __len__(self) -> int:
        return len(self.masks)

    def subset(self, k: int) -> frozenset[int]:
        return from_mask(self.masks[k])

    @cached_property
    def points(self) -> tuple[PointSet, ...]:
        return tuple(PointSet(self.base.space, self.subset(k)) for k in range(len(self.masks)))

    def index_of(self, S) -> int:
        try:
            return self.index[to_mask(S)]
        except KeyError:
            raise DomainError(f"subset {sorted(_members(S))} is not a point of this lift") from None

    def labels_of(self, k: int) -> list[str]:
        return [self.base.labels[i] for i in sorted(self.subset(k))]

    def describe(self, collection: Iterable[int]) -> list[list[str]]:
        """Hyper indices as sorted label lists, in canonical order."""
        return [self.labels_of(k) for k in sorted(collection)]

    def K(self, S) -> frozenset[int]:
        """Hyper indices of the nonempty subsets of S."""
        m = to_mask(S)
        return frozenset(k for k, a in enumerate(self.masks) if a & ~m == 0)

    @cached_property
    def mask_array(self) -> np.ndarray | None:
        if len(self.base) > 63:
            return None
        return np.array(self.masks, dtype=np.uint64)


def lift(sys: DiscreteSystem, max_card: int | None = None, *, cap: int | None = None) -> HyperSystem:
    """Hyperspace of nonempty subsets (of cardinality <= max_card) with f̄(A) = f(A)."""
    n = len(sys)
    cap = lift_cap() if cap is None else cap
    if max_card is None or max_card >= n:
        if n > cap:
            raise ResourceLimitError(
                f"full lift of {n} points exceeds the cap |X| <= {cap}; pass max_card or set HYPERCHAIN_MAX_LIFT"
            )
        max_card = n
    elif max_card < 1:
        raise DomainError("max_card must be >= 1")
    size = sum(comb(n, k) for k in range(1, max_card + 1))
    if size > 2**cap - 1:
        raise ResourceLimitError(f"lift would have {size} points (> {2**cap - 1}); lower max_card")
    masks = tuple(sum(1 << i for i in c) for k in range(1, max_card + 1) for c in combinations(range(n), k))
    index = {m: k for k, m in enumerate(masks)}
    images = []
    for m in masks:
        im = 0
        for i in from_mask(m):
            im |= 1 << sys.image[i]
        images.append(index[im])
    space = HausdorffSpace(sys.space, masks)
    return HyperSystem(sys, masks, max_card, DiscreteSystem(space, images))


def project(collection: Iterable, space: FiniteMetricSpace | None = None) -> PointSet:
    """π(U): the union of the members of a collection of subsets."""
    collection = list(collection)
    if not collection:
        raise DomainError("projection of an empty collection")
    if space is None:
        if not isinstance(collection[0], PointSet):
            raise DomainError("pass the base space when projecting raw index sets")
        space = collection[0].space
    return PointSet(space, frozenset().union(*(_members(S) for S in collection)))


def project_hyper(hyper: HyperSystem, collection: Iterable[int]) -> PointSet:
    out = 0
    for k in collection:
        out |= hyper.masks[k]
    return PointSet(hyper.base.space, from_mask(out))


# ---------------------------------------------------------------- lemma checks


def _K_masks(S_mask: int, universe: list[int]) -> set[int]:
    return {m for m in universe if m & ~S_mask == 0}


def set_identity_check(sys: DiscreteSystem, family: Iterable, *, cap: int | None = None) -> VerificationReport:
    """Exhaustive check of the subset-hyperspace identities on a family of subsets.

    The intersection identity and the image inclusion hold outright. For unions and
    complements only one inclusion holds in general; the equality is recorded as
    ``expected-fail`` with the smallest counterexample subset when it breaks.
    """
    n = len(sys)
    cap = lift_cap() if cap is None else cap
    if n > cap:
        raise ResourceLimitError(f"identity checks enumerate 2^{n} subsets (cap |X| <= {cap})")
    labels = sys.labels
    family = [to_mask(S) for S in family]
    if not family:
        raise DomainError("empty family")
    universe = list(range(1, 1 << n))
    full = (1 << n) - 1
    key = lambda m: (bin(m).count("1"), sorted(from_mask(m)))  # noqa: E731
    show = lambda m: [labels[i] for i in sorted(from_mask(m))]  # noqa: E731
    report = VerificationReport("lemmas", header={"family": [show(m) for m in family]})

    inter_mask = full
    for m in family:
        inter_mask &= m
    lhs = _K_masks(inter_mask, universe)
    rhs = set.intersection(*(_K_masks(m, universe) for m in family))
    report.add(check("K(intersection) = intersection of K", lhs == rhs, [show(m) for m in sorted(lhs ^ rhs, key=key)]))

    union_mask = 0
    for m in family:
        union_mask |= m
    big = _K_masks(union_mask, universe)
    small = set().union(*(_K_masks(m, universe) for m in family))
    report.add(check("union of K within K(union)", small <= big, [show(m) for m in sorted(small - big, key=key)]))
    report.add(_equality_record("K(union) = union of K", big - small, show, key))

    for U in family:
        tag = "U=" + "{" + ",".join(show(U)) + "}"
        comp = _K_masks(full & ~U, universe)
        minus = set(universe) - _K_masks(U, universe)
        report.add(check(f"K(X-U) within K(X)-K(U) [{tag}]", comp <= minus, [show(m) for m in sorted(comp - minus, key=key)]))
        report.add(_equality_record(f"K(X-U) = K(X)-K(U) [{tag}]", minus - comp, show, key))

        fU = 0
        for i in from_mask(U):
            fU |= 1 << sys.image[i]
        bad = []
        for m in _K_masks(U, universe):
            im = 0
            for i in from_mask(m):
                im |= 1 << sys.image[i]
            if im & ~fU:
                bad.append(m)
        report.add(check(f"image of K(U) within K(f(U)) [{tag}]", not bad, [show(m) for m in bad]))
    return report


def _equality_record(id: str, gap: set[int], show, key) -> CheckRecord:
    if not gap:
        return CheckRecord(id, PASS)
    first = min(gap, key=key)
    return CheckRecord(id, EXPECTED_FAIL, [show(first)], {"counterexamples": len(gap)})


# ------------------------------------------------------------- theorem checks


def main_theorem_check(
    sys: DiscreteSystem, semantics: Semantics = EXACT, hyper: HyperSystem | None = None
) -> VerificationReport:
    """Compare K(C) with the chain recurrent set of the lift.

    EXACT: set equality. EPS: the inclusion K(C_ε) ⊆ C̄_ε, with the excess reported.
    """
    hyper = lift(sys) if hyper is None else hyper
    if not hyper.full:
        raise PreconditionError("main theorem check needs the full lift")
    base_rec = chain_components(sys, semantics).recurrent
    hyper_rec = chain_components(hyper.as_system, semantics).recurrent.members
    KC = hyper.K(base_rec)
    report = VerificationReport("main-theorem", header={"semantics": repr(semantics)})
    detail = {"C": base_rec.labels, "C_bar": hyper.describe(hyper_rec)}
    if semantics.exact:
        report.add(check("K(C) = C_bar", KC == hyper_rec, hyper.describe(KC ^ hyper_rec), **detail))
    else:
        report.add(check("K(C_eps) within C_bar_eps", KC <= hyper_rec, hyper.describe(KC - hyper_rec), **detail))
        report.add(CheckRecord("C_bar_eps minus K(C_eps)", INFO, detail={"excess": hyper.describe(hyper_rec - KC)}))
    return report


def c_j_set(hyper: HyperSystem, analysis: ChainAnalysis, J: Iterable[int]) -> frozenset[int]:
    """C_J: hyper-points inside the union of the components in J meeting each of them."""
    J = sorted(set(J))
    if not J:
        raise DomainError("J must be nonempty")
    k = len(analysis.components)
    if any(not 0 <= p < k for p in J):
        raise DomainError(f"unknown component id in {J}; analysis has {k} components")
    if analysis.system is not hyper.base:
        raise DomainError("analysis is not of the lifted base system")
    comp_masks = [to_mask(analysis.components[p]) for p in J]
    union = 0
    for m in comp_masks:
        union |= m
    arr = hyper.mask_array
    if arr is not None:
        ok = (arr & np.uint64(~union & ((1 << 64) - 1))) == 0
        for m in comp_masks:
            ok &= (arr & np.uint64(m)) != 0
        return frozenset(np.flatnonzero(ok).tolist())
    return frozenset(
        i for i, a in enumerate(hyper.masks) if a & ~union == 0 and all(a & m for m in comp_masks)
    )


def _hyper_analysis(hyper: HyperSystem, semantics: Semantics, hyper_analysis):
    if hyper_analysis is None:
        return chain_components(hyper.as_system, semantics)
    if hyper_analysis.semantics != semantics:
        raise DomainError("hyper analysis uses different semantics than the base analysis")
    return hyper_analysis


def _all_J(k: int):
    for J in range(1, 1 << k):
        yield [p for p in range(k) if J >> p & 1]


def partition_check(
    hyper: HyperSystem, analysis: ChainAnalysis, hyper_analysis: ChainAnalysis | None = None
) -> VerificationReport:
    """C_J over all nonempty J ⊆ B: disjoint, f̄-invariant, nonempty, union = C̄."""
    if not hyper.full:
        raise PreconditionError("partition check needs the full lift")
    sem = analysis.semantics
    ha = _hyper_analysis(hyper, sem, hyper_analysis)
    k = len(analysis.components)
    image = hyper.as_system.image
    seen: dict[int, list[int]] = {}
    union: set[int] = set()
    not_invariant, empty, no_fixed = [], [], []
    sizes = []
    for J in _all_J(k):
        cj = c_j_set(hyper, analysis, J)
        sizes.append(len(cj))
        for a in cj:
            seen.setdefault(a, []).append(J)
        union |= cj
        if not cj:
            empty.append(J)
        bad = [a for a in sorted(cj) if image[a] not in cj]
        if bad:
            not_invariant.append({"J": J, "member": hyper.labels_of(bad[0])})
        top = hyper.index_of(frozenset().union(*(analysis.components[p].members for p in J)))
        if top not in cj or (sem.exact and image[top] != top):
            no_fixed.append(J)
    overlaps = [{"member": hyper.labels_of(a), "J": Js} for a, Js in sorted(seen.items()) if len(Js) > 1]
    rec = ha.recurrent.members
    report = VerificationReport("partition", header={"semantics": repr(sem), "components": k})
    report.add(check("C_J pairwise disjoint", not overlaps, overlaps))
    report.add(check("C_J invariant under induced map", not not_invariant, not_invariant))
    report.add(check("C_J nonempty, union of J is a fixed point inside", not empty and not no_fixed, empty + no_fixed))
    report.add(
        check(
            "union of C_J = C_bar",
            union == rec,
            [{"in_union_only": hyper.describe(union - rec), "in_C_bar_only": hyper.describe(rec - union)}],
            sizes=sizes,
        )
    )
    return report


def is_chain_transitive(
    hyper: HyperSystem | DiscreteSystem,
    collection: Iterable[int] | None = None,
    semantics: Semantics = EXACT,
    edges=None,
) -> bool:
    """Does the chain graph restricted to an invariant collection form one SCC on a cycle?"""
    system = hyper.as_system if isinstance(hyper, HyperSystem) else hyper
    members = set(range(len(system))) if collection is None else set(collection)
    if not members:
        raise DomainError("empty collection")
    bad = [a for a in members if system.image[a] not in members]
    if bad:
        raise DomainError(f"collection is not invariant: {system.labels[min(bad)]} leaves it")
    edges = chain_graph(system, semantics) if edges is None else edges
    _, sub = graph.restrict(edges, members)
    sccs, _ = graph.strongly_connected_components(sub)
    return len(sccs) == 1 and graph.cyclic_vertices(sub, sccs)[0]


def component_structure_check(
    hyper: HyperSystem, analysis: ChainAnalysis, hyper_analysis: ChainAnalysis | None = None
) -> VerificationReport:
    """Hyper chain components versus the C_J classes.

    (i) each hyper component lies in exactly one C_J; (ii) if K(P) is chain
    transitive for every P in J, C_J is a single hyper component; (iii) if that holds
    for all P, there are 2^|B| - 1 hyper components.
    """
    if not hyper.full:
        raise PreconditionError("component structure check needs the full lift")
    sem = analysis.semantics
    ha = _hyper_analysis(hyper, sem, hyper_analysis)
    k = len(analysis.components)
    classes = {tuple(J): c_j_set(hyper, analysis, J) for J in _all_J(k)}
    hyper_comps = [Q.members for Q in ha.components]

    homeless = []
    for Q in hyper_comps:
        hits = [J for J, cj in classes.items() if Q <= cj]
        if len(hits) != 1:
            homeless.append({"component": hyper.describe(Q), "classes": [list(J) for J in hits]})

    transitive = [is_chain_transitive(hyper, classes[(p,)], sem, ha.edges) for p in range(k)]
    per_J = []
    bad_J = []
    comp_sets = set(hyper_comps)
    for J, cj in classes.items():
        if all(transitive[p] for p in J):
            ok = cj in comp_sets
            per_J.append({"J": list(J), "applicable": True, "single_component": ok})
            if not ok:
                bad_J.append({"J": list(J), "C_J": hyper.describe(cj)})
        else:
            per_J.append({"J": list(J), "applicable": False})

    report = VerificationReport("components", header={"semantics": repr(sem), "base_components": k})
    report.add(check("each hyper component inside exactly one C_J", not homeless, homeless))
    report.add(
        check(
            "C_J is one hyper component when every K(P) is chain transitive",
            not bad_J,
            bad_J,
            K_P_transitive=transitive,
            per_J=per_J,
        )
    )
    if all(transitive):
        expected = 2**k - 1
        report.add(
            check(
                "hyper component count = 2^|B| - 1",
                len(hyper_comps) == expected,
                [{"expected": expected, "found": len(hyper_comps)}],
                count=len(hyper_comps),
            )
        )
    else:
        report.add(CheckRecord("hyper component count = 2^|B| - 1", "skipped", detail={"reason": "some K(P) not chain transitive"}))
    return report


def attractor_lift_check(
    sys: DiscreteSystem,
    semantics: Semantics = EXACT,
    hyper: HyperSystem | None = None,
    *,
    exhaustive_cap: int = 2**16,
) -> VerificationReport:
    """Lift every base attractor record (U, A, A*) and compare with the hyperspace.

    K(U) must be trapping with attractor K(A). For the dual, the inclusion
    K(A*) ⊆ K(A)* always holds; the published equality K(A)* = K(A*) fails as soon as
    A* is nonempty (e.g. A ∪ A* lies in K(A)* but not in K(A*)) and is recorded as
    ``expected-fail`` with a witness. Conversely every hyper-attractor must project
    onto a base attractor.
    """
    hyper = lift(sys) if hyper is None else hyper
    if not hyper.full:
        raise PreconditionError("attractor lift check needs the full lift")
    hs = hyper.as_system
    ha = chain_components(hs, semantics)
    base_records = enumerate_attractors(sys, semantics)
    report = VerificationReport("lift", header={"semantics": repr(semantics), "base_attractors": len(base_records)})
    lifted: set[frozenset[int]] = set()
    for rec in base_records:
        tag = "A={" + ",".join(rec.attractor.labels) + "}"
        KU = hyper.K(rec.trap)
        trapping = is_trapping(hs, semantics, KU, edges=ha.edges)
        report.add(check(f"K(U) trapping [{tag}]", trapping, [hyper.describe(KU)]))
        if not trapping:
            continue
        hrec = attractor_of(hs, semantics, KU, analysis=ha)
        KA = hyper.K(rec.attractor)
        lifted.add(KA)
        got = hrec.attractor.members
        if semantics.exact:
            report.add(check(f"attractor of K(U) = K(A) [{tag}]", got == KA, hyper.describe(got ^ KA)))
        else:
            report.add(check(f"K(A) within attractor of K(U) [{tag}]", KA <= got, hyper.describe(KA - got)))
        Kdual = hyper.K(rec.dual) if rec.dual else frozenset()
        report.add(
            check(f"K(A*) within K(A)* [{tag}]", Kdual <= hrec.dual, hyper.describe(Kdual - hrec.dual))
        )
        gap = hrec.dual - Kdual
        if gap:
            report.add(
                CheckRecord(
                    f"K(A)* = K(A*) [{tag}]",
                    EXPECTED_FAIL,
                    [hyper.labels_of(min(gap))],
                    {"hyper_dual_size": len(hrec.dual), "K_dual_size": len(Kdual)},
                )
            )
        else:
            report.add(CheckRecord(f"K(A)* = K(A*) [{tag}]", PASS))

    base_sets = {r.attractor.members for r in base_records}
    report.add(*_projection_records(hyper, ha, base_sets, lifted, exhaustive_cap))
    return report


def _projection_records(hyper, ha, base_sets, lifted, exhaustive_cap) -> list[CheckRecord]:
    comps = ha.components
    try:
        lows = list(lower_sets(ha, cap=exhaustive_cap))
        mode = "exhaustive"
    except ResourceLimitError:
        # every lower set is a union of principal ones, and π preserves unions
        lows = [ha.downstream_masks[p] | (1 << p) for p in range(len(comps))]
        mode = "principal"
    bad, not_lifted = [], []
    for L in lows:
        attractor = frozenset(a for p, Q in enumerate(comps) if L >> p & 1 for a in Q.members)
        proj = project_hyper(hyper, attractor).members
        if proj not in base_sets:
            bad.append(hyper.describe(attractor))
        if attractor not in lifted and len(not_lifted) < 5:
            not_lifted.append(hyper.describe(attractor))
    records = [check("projection of every hyper-attractor is a base attractor", not bad, bad[:5], mode=mode, hyper_attractors=len(lows))]
    if mode == "principal":
        closed = all(a | b in base_sets for a in base_sets for b in base_sets)
        records.append(check("base attractors closed under union", closed, ["union not an attractor"]))
    records.append(
        CheckRecord(
            "hyper-attractors not of the form K(A)",
            INFO,
            detail={"mode": mode, "examples": not_lifted},
        )
    )
    return records
