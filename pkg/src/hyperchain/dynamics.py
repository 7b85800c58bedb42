"""Discrete systems on finite metric spaces: orbits, ω-limits, ε-chains and chain components.

Two chain semantics are supported. ``EXACT`` is the limit over all ε > 0, which on a
finite space is reached by any ε at or below the smallest positive distance, so the
chain graph collapses to the functional graph ``i -> f(i)``. ``Eps(e)`` keeps the arc
``i -> j`` whenever ``ϱ(f(x_i), x_j) < e``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from . import graph
from .errors import DomainError
from .metric import FiniteMetricSpace, PointSet, _members, below


class DiscreteSystem:
    """A finite metric space with a total self-map given by image indices."""

    def __init__(self, space: FiniteMetricSpace, image: Sequence[int]):
        image = tuple(int(j) for j in image)
        n = len(space)
        if len(image) != n:
            raise DomainError(f"map has {len(image)} entries for a {n}-point space")
        bad = [i for i, j in enumerate(image) if not 0 <= j < n]
        if bad:
            raise DomainError(f"map entries out of range at indices {bad}")
        self.space = space
        self.image = image

    def __len__(self) -> int:
        return len(self.image)

    def __repr__(self) -> str:
        pairs = ", ".join(f"{self.space.labels[i]}->{self.space.labels[j]}" for i, j in enumerate(self.image))
        return f"DiscreteSystem({pairs})"

    @property
    def labels(self) -> tuple[str, ...]:
        return self.space.labels

    def apply(self, A) -> frozenset[int]:
        """Image of a set of indices."""
        return frozenset(self.image[i] for i in _members(A))

    def apply_set(self, A: PointSet) -> PointSet:
        return PointSet(self.space, self.apply(A))


@dataclass(frozen=True)
class Semantics:
    """Chain semantics: ``eps=None`` is EXACT, otherwise ε-chains with that ε."""

    eps: float | None = None

    def __post_init__(self):
        if self.eps is not None and not self.eps > 0:
            raise DomainError(f"eps must be positive, got {self.eps}")

    @property
    def exact(self) -> bool:
        return self.eps is None

    def __repr__(self) -> str:
        return "EXACT" if self.exact else f"EPS({self.eps:g})"


EXACT = Semantics()


def Eps(eps: float) -> Semantics:
    return Semantics(float(eps))


def iterate(sys: DiscreteSystem, x: int, n: int) -> int:
    """f^n(x); ``n == 0`` returns ``x``."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    for _ in range(n):
        x = sys.image[x]
    return x


class Orbit(NamedTuple):
    tail: tuple[int, ...]
    cycle: tuple[int, ...]

    @property
    def preperiod(self) -> int:
        return len(self.tail)

    @property
    def period(self) -> int:
        return len(self.cycle)

    @property
    def points(self) -> frozenset[int]:
        return frozenset(self.tail) | frozenset(self.cycle)


def forward_orbit(sys: DiscreteSystem, x: int) -> Orbit:
    seen: dict[int, int] = {}
    path: list[int] = []
    while x not in seen:
        seen[x] = len(path)
        path.append(x)
        x = sys.image[x]
    start = seen[x]
    return Orbit(tuple(path[:start]), tuple(path[start:]))


def omega_limit(sys: DiscreteSystem, A) -> PointSet:
    """Union of the image sets A, f(A), f²(A), ... that lie on the eventual cycle."""
    current = _members(A)
    if not current:
        raise DomainError("omega_limit needs a nonempty set")
    seen: dict[frozenset[int], int] = {}
    history: list[frozenset[int]] = []
    while current not in seen:
        seen[current] = len(history)
        history.append(current)
        current = sys.apply(current)
    return PointSet(sys.space, frozenset().union(*history[seen[current]:]))


def chain_graph(sys: DiscreteSystem, semantics: Semantics = EXACT) -> graph.Digraph:
    """Arc i -> j iff ϱ(f(x_i), x_j) < ε (EPS), or j = f(i) (EXACT)."""
    if semantics.exact:
        return tuple((j,) for j in sys.image)
    eps = semantics.eps
    rows: dict[int, tuple[int, ...]] = {}
    succ = []
    for j in sys.image:
        if j not in rows:
            rows[j] = tuple(np.flatnonzero(below(sys.space.row(j), eps)).tolist())
        succ.append(rows[j])
    return tuple(succ)


def chain_reachable(sys: DiscreteSystem, semantics: Semantics, x: int) -> frozenset[int]:
    """Ends of chains of length >= 1 starting at ``x``; C(x, f) under EXACT."""
    return frozenset(graph.reachable(chain_graph(sys, semantics), x))


@dataclass(frozen=True, eq=False)
class ChainAnalysis:
    """Chain graph, chain recurrent set, chain components and their order.

    ``order[p]`` holds the components q != p from which some chain leads into p
    (the arc P -> Q of the condensation order means "Q chains into P").
    ``reach[v]`` is the bitmask of components reachable from vertex v by a path of
    length >= 0, the basis for attractor basins.
    """

    system: DiscreteSystem = field(repr=False)
    semantics: Semantics
    edges: graph.Digraph = field(repr=False)
    recurrent: PointSet
    components: tuple[PointSet, ...]
    order: tuple[frozenset[int], ...]
    component_of: tuple[int, ...] = field(repr=False)  # -1 for transient vertices
    reach: tuple[int, ...] = field(repr=False)
    sccs: tuple[tuple[int, ...], ...] = field(repr=False)
    scc_of: tuple[int, ...] = field(repr=False)

    def downstream(self, p: int) -> frozenset[int]:
        """Components q != p reachable by chains from component p."""
        v = min(self.components[p].members)
        return frozenset(q for q in _bits(self.reach[v]) if q != p)

    @cached_property
    def downstream_masks(self) -> tuple[int, ...]:
        return tuple(self.reach[min(P.members)] & ~(1 << p) for p, P in enumerate(self.components))

    def is_recurrent(self, v: int) -> bool:
        return self.component_of[v] >= 0


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def chain_components(sys: DiscreteSystem, semantics: Semantics = EXACT, edges=None) -> ChainAnalysis:
    edges = chain_graph(sys, semantics) if edges is None else edges
    sccs, scc_of = graph.strongly_connected_components(edges)
    on_cycle = graph.cyclic_vertices(edges, sccs, scc_of)

    rec_sccs = sorted((c for c in sccs if on_cycle[c[0]]), key=lambda c: c[0])
    component_of = [-1] * len(edges)
    for p, comp in enumerate(rec_sccs):
        for v in comp:
            component_of[v] = p

    # Tarjan emits sinks first, so successors' reach sets are final when needed.
    scc_reach = [0] * len(sccs)
    for s, comp in enumerate(sccs):
        mask = 0
        for v in comp:
            for w in edges[v]:
                t = scc_of[w]
                if t != s:
                    mask |= scc_reach[t]
        head = comp[0]
        if component_of[head] >= 0:
            mask |= 1 << component_of[head]
        scc_reach[s] = mask
    reach = tuple(scc_reach[scc_of[v]] for v in range(len(edges)))

    order_sets: list[set[int]] = [set() for _ in rec_sccs]
    for q, comp in enumerate(rec_sccs):
        for p in _bits(reach[comp[0]]):
            if p != q:
                order_sets[p].add(q)

    space = sys.space
    return ChainAnalysis(
        system=sys,
        semantics=semantics,
        edges=edges,
        recurrent=PointSet(space, frozenset(v for c in rec_sccs for v in c)),
        components=tuple(PointSet(space, frozenset(c)) for c in rec_sccs),
        order=tuple(frozenset(s) for s in order_sets),
        component_of=tuple(component_of),
        reach=reach,
        sccs=tuple(tuple(c) for c in sccs),
        scc_of=tuple(scc_of),
    )


def chain_recurrent_set(sys: DiscreteSystem, semantics: Semantics = EXACT) -> PointSet:
    """Points returning to themselves by chains; the periodic points under EXACT."""
    edges = chain_graph(sys, semantics)
    flags = graph.cyclic_vertices(edges)
    return PointSet(sys.space, frozenset(i for i, f in enumerate(flags) if f))


def exists_chain_within(sys: DiscreteSystem, semantics: Semantics, x: int, y: int, S) -> bool:
    """Is there a chain of length >= 1 from x to y using only vertices of S?"""
    S = _members(S)
    if x not in S or y not in S:
        raise DomainError("x and y must belong to S")
    return y in graph.reachable(chain_graph(sys, semantics), x, within=S)
