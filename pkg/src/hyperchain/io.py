"""JSON system documents: points, metric and map."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

import numpy as np

from .dynamics import DiscreteSystem
from .errors import HyperchainError
from .metric import FiniteMetricSpace, euclidean_1d_space, zero_one_space


class InputError(HyperchainError, ValueError):
    """Unparseable or inconsistent system document."""


@dataclass(frozen=True)
class SystemDocument:
    points: tuple[str, ...]
    metric: dict[str, Any]
    map: tuple[int, ...]

    @classmethod
    def from_dict(cls, data: Any) -> SystemDocument:
        if not isinstance(data, dict):
            raise InputError("document must be a JSON object")
        missing = {"points", "metric", "map"} - set(data)
        if missing:
            raise InputError(f"missing keys: {sorted(missing)}")
        points, metric, fmap = data["points"], data["metric"], data["map"]
        if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
            raise InputError('"points" must be a list of strings')
        if not isinstance(fmap, list) or not all(isinstance(j, int) and not isinstance(j, bool) for j in fmap):
            raise InputError('"map" must be a list of integers')
        if len(fmap) != len(points):
            raise InputError(f'"map" has {len(fmap)} entries for {len(points)} points')
        if not isinstance(metric, dict) or metric.get("type") not in ("zero_one", "euclidean_1d", "explicit"):
            raise InputError('"metric" must be an object with type zero_one, euclidean_1d or explicit')
        kind = metric["type"]
        if kind == "zero_one":
            metric = {"type": "zero_one"}
        elif kind == "euclidean_1d":
            coords = metric.get("coords")
            if not isinstance(coords, list) or len(coords) != len(points):
                raise InputError('"coords" must list one number per point')
            metric = {"type": "euclidean_1d", "coords": [float(c) for c in coords]}
        else:
            matrix = metric.get("matrix")
            if not isinstance(matrix, list) or len(matrix) != len(points) or any(
                not isinstance(r, list) or len(r) != len(points) for r in matrix
            ):
                raise InputError('"matrix" must be a square list of lists matching "points"')
            metric = {"type": "explicit", "matrix": [[float(v) for v in r] for r in matrix]}
        return cls(tuple(points), metric, tuple(fmap))

    @classmethod
    def parse(cls, text: str) -> SystemDocument:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        return cls.from_dict(data)

    @classmethod
    def load(cls, path) -> SystemDocument:
        with open(path, encoding="utf-8") as fh:
            return cls.parse(fh.read())

    def to_dict(self) -> dict[str, Any]:
        return {"points": list(self.points), "metric": self.metric, "map": list(self.map)}

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_system(self) -> DiscreteSystem:
        kind = self.metric["type"]
        if kind == "zero_one":
            space = zero_one_space(self.points)
        elif kind == "euclidean_1d":
            space = euclidean_1d_space(self.points, self.metric["coords"])
        else:
            space = FiniteMetricSpace(self.points, self.metric["matrix"])
        return DiscreteSystem(space, self.map)

    @classmethod
    def from_system(cls, sys: DiscreteSystem) -> SystemDocument:
        space = sys.space
        n = len(space)
        if space.coords is not None:
            metric = {"type": "euclidean_1d", "coords": [float(c) for c in space.coords]}
        elif np.array_equal(space.dist, 1.0 - np.eye(n)):
            metric = {"type": "zero_one"}
        else:
            metric = {"type": "explicit", "matrix": space.dist.tolist()}
        return cls(tuple(space.labels), metric, tuple(sys.image))
