"""Interval maps on uniform grids, and a root-finding oracle for their fixed points."""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import bisect

from .dynamics import DiscreteSystem
from .errors import DomainError
from .metric import euclidean_1d_space

log = logging.getLogger(__name__)

SAMPLES = 100_000
DOMAIN_TOL = 1e-9


@dataclass(frozen=True)
class IntervalMapSpec:
    """A real map on [lo, hi]; ``func`` must accept and return numpy arrays."""

    name: str
    lo: float
    hi: float
    func: Callable[[np.ndarray], np.ndarray] = field(repr=False, compare=False)
    params: tuple = ()

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError(f"empty domain [{self.lo}, {self.hi}]")

    def value_at(self, x):
        return self.func(np.asarray(x, dtype=float))

    def check_domain(self, samples: int = SAMPLES, tol: float = DOMAIN_TOL) -> None:
        """Dense-sample the map and raise if it leaves the domain."""
        xs = np.linspace(self.lo, self.hi, samples)
        ys = self.value_at(xs)
        out = (ys < self.lo - tol) | (ys > self.hi + tol) | ~np.isfinite(ys)
        if out.any():
            i = int(np.flatnonzero(out)[0])
            raise DomainError(f"{self.name}: value {ys[i]!r} at x={xs[i]!r} escapes [{self.lo}, {self.hi}]")


def _sinpi(x):
    x = np.asarray(x, dtype=float)
    safe = np.where(x > 0, x, 1.0)
    return np.where(x > 0, x * np.abs(np.sin(np.pi / safe)), 0.0)


def sinpi() -> IntervalMapSpec:
    """x |sin(π/x)| on [0, 1], with value 0 at x = 0."""
    return IntervalMapSpec("sinpi", 0.0, 1.0, _sinpi)


def tent(slope: float = 2.0) -> IntervalMapSpec:
    return IntervalMapSpec("tent", 0.0, 1.0, lambda x: slope * np.minimum(x, 1.0 - x), (slope,))


def logistic(r: float = 4.0) -> IntervalMapSpec:
    return IntervalMapSpec("logistic", 0.0, 1.0, lambda x: r * x * (1.0 - x), (r,))


def table(points: Sequence[tuple[float, float]]) -> IntervalMapSpec:
    """Piecewise-linear map through ``(x, y)`` nodes, x strictly increasing."""
    xs = np.array([p[0] for p in points], dtype=float)
    ys = np.array([p[1] for p in points], dtype=float)
    if len(xs) < 2 or np.any(np.diff(xs) <= 0):
        raise DomainError("table needs >= 2 nodes with increasing x")
    return IntervalMapSpec("table", float(xs[0]), float(xs[-1]), lambda x: np.interp(x, xs, ys), tuple(map(tuple, points)))


def builtin(text: str) -> IntervalMapSpec:
    """Parse ``sinpi``, ``tent[:slope]``, ``logistic[:r]`` or ``identity``."""
    name, _, arg = text.partition(":")
    if name == "sinpi":
        return sinpi()
    if name == "tent":
        return tent(float(arg) if arg else 2.0)
    if name == "logistic":
        return logistic(float(arg) if arg else 4.0)
    if name == "identity":
        return table([(0.0, 0.0), (1.0, 1.0)])
    raise DomainError(f"unknown builtin map {text!r}")


@dataclass(frozen=True, eq=False)
class GridSystem:
    n: int
    step: float
    grid: np.ndarray = field(repr=False)
    system: DiscreteSystem = field(repr=False)
    spec: IntervalMapSpec

    def nearest(self, x: float) -> int:
        return _nearest_index(np.asarray([x]), self.spec.lo, self.step, self.n)[0]

    @property
    def default_eps(self) -> float:
        return 2 * self.step


def _nearest_index(y: np.ndarray, lo: float, h: float, n: int) -> np.ndarray:
    # ceil(t - 1/2) rounds halves down, i.e. ties go to the lower index
    t = (y - lo) / h
    return np.clip(np.ceil(t - 0.5), 0, n).astype(int)


def discretize(spec: IntervalMapSpec, n: int) -> GridSystem:
    """Grid lo + i·h (i = 0..n) with each point sent to the grid point nearest its image."""
    if n < 2:
        raise DomainError("need at least 2 cells")
    spec.check_domain()
    h = (spec.hi - spec.lo) / n
    grid = spec.lo + h * np.arange(n + 1)
    grid[-1] = spec.hi
    values = spec.value_at(grid)
    bad = (values < spec.lo - DOMAIN_TOL) | (values > spec.hi + DOMAIN_TOL)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise DomainError(f"{spec.name}: image {values[i]!r} of grid point x={grid[i]!r} escapes the domain")
    image = _nearest_index(values, spec.lo, h, n)
    labels = [format(x, ".12g") for x in grid]
    grid.setflags(write=False)
    space = euclidean_1d_space(labels, grid)
    return GridSystem(n, h, grid, DiscreteSystem(space, image.tolist()), spec)


def fixed_point_oracle(spec: IntervalMapSpec, tol: float = 1e-10, scan: int = SAMPLES, touch_tol: float = 1e-9) -> list[float]:
    """Fixed points of ``spec`` found independently of any grid discretization.

    Sign changes of g(x) = f(x) - x are refined by bisection. Roots where g touches
    zero without crossing (as for x|sin(π/x)|, which never exceeds x) show up as
    sign changes of the discrete slope of g; those are bisected too and kept when
    |g| <= touch_tol there. Roots closer together than the scan step can merge.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    xs = np.linspace(spec.lo, spec.hi, scan + 1)
    g = spec.value_at(xs) - xs
    if np.all(np.abs(g) <= touch_tol):
        log.info("%s: identity detected, every scan point is fixed", spec.name)
        return xs.tolist()

    def gf(x: float) -> float:
        return float(spec.value_at(np.array([x]))[0] - x)

    roots: list[float] = []
    for i in np.flatnonzero(g == 0):
        roots.append(float(xs[i]))
    for i in np.flatnonzero(g[:-1] * g[1:] < 0):
        roots.append(bisect(gf, xs[i], xs[i + 1], xtol=tol))

    eta = 1e-3 * (xs[1] - xs[0])

    def slope(x: float) -> float:
        return gf(x + eta) - gf(x - eta)

    dg = np.diff(g)
    for i in np.flatnonzero((dg[:-1] > 0) & (dg[1:] <= 0)):
        a, b = xs[i], xs[i + 2]
        if max(g[i], g[i + 1], g[i + 2]) > 0 or min(g[i], g[i + 1], g[i + 2]) < -1e-3:
            continue
        a, b = max(a, spec.lo + eta), min(b, spec.hi - eta)
        if not slope(a) > 0 or not slope(b) < 0:
            continue
        x = bisect(slope, a, b, xtol=tol)
        if abs(gf(x)) <= touch_tol:
            roots.append(x)
    for end in (spec.lo, spec.hi):
        if abs(gf(end)) <= touch_tol:
            roots.append(end)

    roots.sort()
    merged: list[float] = []
    for r in roots:
        if merged and r - merged[-1] <= max(tol, 1e-9):
            continue
        merged.append(r)
    return merged
