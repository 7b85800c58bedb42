"""Finite metric spaces, point sets, ε-neighbourhoods and the Hausdorff distance."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DomainError, MetricError

#: Absolute tolerance used for metric axioms and for ties in strict ``< eps`` tests.
ATOL = 1e-12


def below(d, eps: float):
    """Strict ``d < eps`` with near-ties (floating-point noise) counted as ties."""
    return d < eps - min(ATOL, 1e-9 * eps)


class Violation(NamedTuple):
    kind: str  # "shape" | "negative" | "diagonal" | "zero_off_diagonal" | "symmetry" | "triangle"
    indices: tuple[int, ...]


@dataclass(frozen=True)
class MetricReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def of_kind(self, kind: str) -> list[Violation]:
        return [v for v in self.violations if v.kind == kind]


def validate_metric(matrix, atol: float = ATOL) -> MetricReport:
    """Check every metric axiom on a square matrix and list all violated instances.

    Triangle violations ``(i, j, k)`` mean ``dist[i][k] > dist[i][j] + dist[j][k]``.
    """
    d = np.asarray(matrix, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise MetricError(f"distance matrix must be square, got shape {d.shape}")
    n = d.shape[0]
    out: list[Violation] = []
    for i, j in zip(*np.nonzero(d < -atol)):
        out.append(Violation("negative", (int(i), int(j))))
    for i in np.flatnonzero(np.abs(np.diag(d)) > atol):
        out.append(Violation("diagonal", (int(i),)))
    off = ~np.eye(n, dtype=bool)
    for i, j in zip(*np.nonzero(off & (d <= atol))):
        out.append(Violation("zero_off_diagonal", (int(i), int(j))))
    asym = np.abs(d - d.T) > atol
    for i, j in zip(*np.nonzero(np.triu(asym, 1))):
        out.append(Violation("symmetry", (int(i), int(j))))
    for j in range(n):
        # via[i, k] = d[i, j] + d[j, k]
        via = d[:, j][:, None] + d[j, :][None, :]
        for i, k in zip(*np.nonzero(d > via + atol)):
            out.append(Violation("triangle", (int(i), j, int(k))))
    out.sort(key=lambda v: (v.kind, v.indices))
    return MetricReport(tuple(out))


class FiniteMetricSpace:
    """Labelled points with a validated distance matrix.

    Instances are immutable; equality is identity.
    """

    def __init__(
        self,
        labels: Sequence[str],
        dist,
        *,
        validate: bool = True,
        atol: float = ATOL,
        coords: np.ndarray | None = None,
    ):
        labels = tuple(str(s) for s in labels)
        if len(set(labels)) != len(labels):
            raise MetricError("point labels must be distinct")
        d = np.array(dist, dtype=float)
        if d.ndim != 2 or d.shape != (len(labels), len(labels)):
            raise MetricError(f"distance matrix shape {d.shape} does not match {len(labels)} labels")
        if not labels:
            raise MetricError("a space needs at least one point")
        if validate:
            report = validate_metric(d, atol)
            if not report.ok:
                shown = ", ".join(f"{v.kind}{v.indices}" for v in report.violations[:5])
                raise MetricError(f"metric axioms violated: {shown}")
        d.setflags(write=False)
        self.labels = labels
        self.coords = coords
        self._dist = d
        self._index = {s: i for i, s in enumerate(labels)}
        off = d[~np.eye(len(labels), dtype=bool)]
        self.min_gap = float(off.min()) if off.size else float("inf")

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={len(self)})"

    @property
    def dist(self) -> np.ndarray:
        return self._dist

    def row(self, i: int) -> np.ndarray:
        """Distances from point ``i`` to every point."""
        return self._dist[i]

    def distance(self, i: int, j: int) -> float:
        return float(self._dist[i, j])

    @property
    def diameter(self) -> float:
        return float(self._dist.max())

    def index_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise DomainError(f"unknown point label {label!r}") from None

    def points(self, *labels: str) -> PointSet:
        """Build a PointSet from labels: ``space.points("a", "b")``."""
        return PointSet(self, frozenset(self.index_of(s) for s in labels))

    def whole(self) -> PointSet:
        return PointSet(self, frozenset(range(len(self))))


def zero_one_space(labels: Sequence[str]) -> FiniteMetricSpace:
    n = len(labels)
    return FiniteMetricSpace(labels, 1.0 - np.eye(n))


def euclidean_1d_space(labels: Sequence[str], coords: Sequence[float]) -> FiniteMetricSpace:
    c = np.asarray(coords, dtype=float)
    if c.ndim != 1 or len(c) != len(labels):
        raise MetricError("need one coordinate per label")
    if len(np.unique(c)) != len(c):
        raise MetricError("coordinates must be distinct")
    c.setflags(write=False)
    # |x - y| on distinct reals is a metric by construction; skip the O(n^3) check.
    return FiniteMetricSpace(labels, np.abs(c[:, None] - c[None, :]), validate=False, coords=c)


@dataclass(frozen=True)
class PointSet:
    """A nonempty set of point indices of one space."""

    space: FiniteMetricSpace = field(repr=False)
    members: frozenset[int]

    def __post_init__(self):
        members = frozenset(int(i) for i in self.members)
        object.__setattr__(self, "members", members)
        if not members:
            raise DomainError("a PointSet must be nonempty")
        n = len(self.space)
        bad = [i for i in members if not 0 <= i < n]
        if bad:
            raise DomainError(f"indices {sorted(bad)} out of range for a {n}-point space")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __contains__(self, i) -> bool:
        return i in self.members

    def __le__(self, other: PointSet) -> bool:
        return self.members <= _members(other)

    @property
    def labels(self) -> list[str]:
        return [self.space.labels[i] for i in sorted(self.members)]

    def __repr__(self) -> str:
        return "{" + ",".join(self.labels) + "}"


def _members(A) -> frozenset[int]:
    if isinstance(A, PointSet):
        return A.members
    return frozenset(int(i) for i in A)


def eps_neighborhood(A: PointSet, eps: float) -> PointSet:
    """Points at distance strictly less than ``eps`` from some member of ``A``."""
    if eps <= 0:
        raise DomainError("eps must be positive")
    idx = sorted(A.members)
    near = below(A.space.dist[idx].min(axis=0), eps)
    return PointSet(A.space, frozenset(np.flatnonzero(near).tolist()))


def hausdorff_distance(A: PointSet, B: PointSet) -> float:
    """max(max_a min_b ϱ(a,b), max_b min_a ϱ(a,b)) over nonempty finite sets."""
    if A.space is not B.space:
        raise DomainError("point sets belong to different spaces")
    block = A.space.dist[np.ix_(sorted(A.members), sorted(B.members))]
    return float(max(block.min(axis=1).max(), block.min(axis=0).max()))


def as_point_sets(space: FiniteMetricSpace, family: Iterable) -> list[PointSet]:
    return [A if isinstance(A, PointSet) else PointSet(space, frozenset(A)) for A in family]
