"""Trapping regions, attractors, repellor duals and the Conley intersection formula.

A trapping region is a set closed under the chain graph (under EXACT: ``f(U) ⊆ U``).
Its attractor is the recurrent part of U, which under EXACT is ``ω(U, f)``.
The dual of a trap U is the set of points outside U that admit an infinite chain
never entering U. Under EXACT the chain is the forward orbit, so this is
``{x : O(x, f) ∩ U = ∅}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from . import graph
from .dynamics import EXACT, ChainAnalysis, DiscreteSystem, Semantics, chain_components, chain_graph, omega_limit
from .errors import PreconditionError, ResourceLimitError
from .metric import PointSet, _members

BRUTE_CAP = 16
LOWER_SET_CAP = 2**20


@dataclass(frozen=True)
class AttractorRecord:
    trap: PointSet
    attractor: PointSet
    dual: frozenset[int] = field(default_factory=frozenset)

    def key(self):
        return _set_key(self.attractor.members)

    def __repr__(self) -> str:
        labels = self.trap.space.labels
        dual = "{" + ",".join(labels[i] for i in sorted(self.dual)) + "}"
        return f"AttractorRecord(attractor={self.attractor!r}, dual={dual}, trap={self.trap!r})"


def _set_key(s) -> tuple[int, tuple[int, ...]]:
    return (len(s), tuple(sorted(s)))


def _violating_arc(edges, U: frozenset[int]):
    for v in sorted(U):
        for w in edges[v]:
            if w not in U:
                return v, w
    return None


def is_trapping(sys: DiscreteSystem, semantics: Semantics, U, edges=None) -> bool:
    """EXACT: f(U) ⊆ U. EPS: every chain-graph arc leaving a point of U lands in U."""
    U = _members(U)
    if not U:
        raise PreconditionError("a trapping region must be nonempty")
    if edges is None:
        edges = chain_graph(sys, semantics)
    return _violating_arc(edges, U) is None


def repellor_dual(sys: DiscreteSystem, semantics: Semantics, trap, edges=None) -> frozenset[int]:
    """Largest set outside ``trap`` in which every point has a chain successor.

    Computed as a greatest fixed point by peeling off points whose successors all
    leave the candidate set.
    """
    U = _members(trap)
    if edges is None:
        edges = chain_graph(sys, semantics)
    if (arc := _violating_arc(edges, U)) is not None:
        raise PreconditionError(f"not a trapping region: arc {_arc_str(sys, arc)} leaves it")
    n = len(edges)
    alive = [v not in U for v in range(n)]
    preds: list[list[int]] = [[] for _ in range(n)]
    count = [0] * n
    for v in range(n):
        for w in edges[v]:
            preds[w].append(v)
            if alive[w]:
                count[v] += 1
    dead = [v for v in range(n) if alive[v] and count[v] == 0]
    while dead:
        w = dead.pop()
        if not alive[w]:
            continue
        alive[w] = False
        for v in preds[w]:
            count[v] -= 1
            if alive[v] and count[v] == 0:
                dead.append(v)
    return frozenset(v for v in range(n) if alive[v])


def _arc_str(sys, arc) -> str:
    v, w = arc
    return f"{sys.labels[v]}->{sys.labels[w]}"


def attractor_of(sys: DiscreteSystem, semantics: Semantics, U, analysis: ChainAnalysis | None = None) -> AttractorRecord:
    """Attractor ⋂_{n>=1} f^n(U) (EXACT) or recurrent part of U (EPS), with its dual."""
    U = _members(U)
    edges = analysis.edges if analysis is not None else chain_graph(sys, semantics)
    if not U:
        raise PreconditionError("a trapping region must be nonempty")
    if (arc := _violating_arc(edges, U)) is not None:
        raise PreconditionError(f"not a trapping region: arc {_arc_str(sys, arc)} leaves it")
    if semantics.exact:
        attractor = omega_limit(sys, U)
    else:
        flags = graph.cyclic_vertices(edges)
        attractor = PointSet(sys.space, frozenset(v for v in U if flags[v]))
    return AttractorRecord(PointSet(sys.space, U), attractor, repellor_dual(sys, semantics, U, edges))


def lower_sets(analysis: ChainAnalysis, cap: int = LOWER_SET_CAP):
    """Yield bitmasks of nonempty sets of components closed under downstream reachability.

    Raises ResourceLimitError once more than ``cap`` sets have been produced.
    """
    down = analysis.downstream_masks
    k = len(down)
    # any set of minimal components is already a lower set
    minimal = sum(1 for p in range(k) if down[p] & ~(1 << p) == 0)
    if 2**minimal - 1 > cap:
        raise ResourceLimitError(f"at least {2**minimal - 1} attractors (lower sets), more than {cap}; raise the cap")
    # downstream sets strictly shrink along the order, so popcount gives a linear extension
    order = sorted(range(k), key=lambda p: (bin(down[p]).count("1"), p))
    produced = 0
    stack = [(0, 0)]
    while stack:
        pos, chosen = stack.pop()
        if pos == k:
            if chosen:
                produced += 1
                if produced > cap:
                    raise ResourceLimitError(f"more than {cap} attractors (lower sets); raise the cap")
                yield chosen
            continue
        p = order[pos]
        stack.append((pos + 1, chosen))
        if down[p] & ~chosen == 0:
            stack.append((pos + 1, chosen | (1 << p)))


def _record_for_lower_set(sys, semantics, analysis: ChainAnalysis, L: int) -> AttractorRecord:
    attractor = frozenset(v for p, P in enumerate(analysis.components) if L >> p & 1 for v in P.members)
    basin = frozenset(v for v, r in enumerate(analysis.reach) if r & ~L == 0)
    dual = repellor_dual(sys, semantics, basin, analysis.edges)
    return AttractorRecord(PointSet(sys.space, basin), PointSet(sys.space, attractor), dual)


def enumerate_attractors(
    sys: DiscreteSystem,
    semantics: Semantics = EXACT,
    mode: Literal["brute", "condensation"] = "condensation",
    *,
    cap: int | None = None,
    analysis: ChainAnalysis | None = None,
) -> list[AttractorRecord]:
    """All attractors, deduplicated by attractor set, each with its largest trap (basin).

    ``brute`` tests every nonempty subset for the trapping property (``|X| <= cap``,
    default 16). ``condensation`` walks the lower sets of the component order
    (at most ``cap`` of them, default 2**20).
    """
    if mode == "brute":
        return _enumerate_brute(sys, semantics, BRUTE_CAP if cap is None else cap)
    if mode != "condensation":
        raise ValueError(f"unknown mode {mode!r}")
    if analysis is None:
        analysis = chain_components(sys, semantics)
    cap = LOWER_SET_CAP if cap is None else cap
    records = [_record_for_lower_set(sys, semantics, analysis, L) for L in lower_sets(analysis, cap)]
    records.sort(key=AttractorRecord.key)
    return records


def _enumerate_brute(sys: DiscreteSystem, semantics: Semantics, cap: int) -> list[AttractorRecord]:
    n = len(sys)
    if n > cap:
        raise ResourceLimitError(f"brute enumeration over 2^{n} subsets exceeds |X| <= {cap}; use mode='condensation'")
    edges = chain_graph(sys, semantics)
    succ_mask = [sum(1 << w for w in set(ws)) for ws in edges]
    cyclic = graph.cyclic_vertices(edges)
    best: dict[frozenset[int], frozenset[int]] = {}
    for U in range(1, 1 << n):
        members = [v for v in range(n) if U >> v & 1]
        if any(succ_mask[v] & ~U for v in members):
            continue
        trap = frozenset(members)
        if semantics.exact:
            attractor = omega_limit(sys, trap).members
        else:
            attractor = frozenset(v for v in members if cyclic[v])
        if attractor not in best or len(trap) > len(best[attractor]):
            best[attractor] = trap
    records = [
        AttractorRecord(PointSet(sys.space, trap), PointSet(sys.space, A), repellor_dual(sys, semantics, trap, edges))
        for A, trap in best.items()
    ]
    records.sort(key=AttractorRecord.key)
    return records


def conley_intersection(
    sys: DiscreteSystem,
    semantics: Semantics = EXACT,
    mode: Literal["brute", "condensation"] = "condensation",
    *,
    records: list[AttractorRecord] | None = None,
    cap: int | None = None,
) -> PointSet:
    """⋂ (A ∪ A*) over all attractors A."""
    if records is None:
        records = enumerate_attractors(sys, semantics, mode, cap=cap)
    result = frozenset(range(len(sys)))
    for rec in records:
        result &= rec.attractor.members | rec.dual
    return PointSet(sys.space, result)
