"""Finite labelled point sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DuplicatePointsError, InvalidInstanceError
from .norm import Vector, all_exact, to_scalar


@dataclass(frozen=True)
class PointSet:
    """An ordered set of pairwise distinct points in R^dim.

    Coordinates are stored as fractions (exact input) or floats.
    """

    dim: int
    points: tuple[Vector, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        pts = []
        for p in self.points:
            try:
                pts.append(tuple(to_scalar(x) for x in p))
            except (TypeError, ValueError) as exc:
                raise InvalidInstanceError(str(exc)) from exc
        pts = tuple(pts)
        if not isinstance(self.dim, int) or self.dim < 1:
            raise InvalidInstanceError(f"bad dimension {self.dim!r}")
        for k, p in enumerate(pts):
            if len(p) != self.dim:
                raise InvalidInstanceError(f"point {k} has dimension {len(p)}, expected {self.dim}")
        seen: dict[Vector, int] = {}
        for k, p in enumerate(pts):
            if p in seen:
                raise DuplicatePointsError(f"points {seen[p]} and {k} coincide")
            seen[p] = k
        object.__setattr__(self, "points", pts)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != len(pts):
                raise InvalidInstanceError("label count does not match point count")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_points(cls, points: Iterable[Sequence], labels: Sequence[str] | None = None) -> "PointSet":
        pts = [tuple(p) for p in points]
        if not pts:
            raise InvalidInstanceError("empty point set")
        return cls(len(pts[0]), tuple(pts), None if labels is None else tuple(labels))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Vector]:
        return iter(self.points)

    def __getitem__(self, k: int) -> Vector:
        return self.points[k]

    @property
    def exact(self) -> bool:
        return all(all_exact(p) for p in self.points)
