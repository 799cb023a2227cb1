"""Small named point sets and a random instance generator."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .points import PointSet


def unit_square() -> PointSet:
    return PointSet.from_points([(0, 0), (1, 0), (0, 1), (1, 1)])


def cross5() -> PointSet:
    """The origin and the four axis unit vectors."""
    return PointSet.from_points([(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)], ["o", "+x", "-x", "+y", "-y"])


def collinear013() -> PointSet:
    return PointSet.from_points([(0, 0), (1, 0), (3, 0)])


def hexagon_center() -> PointSet:
    """The centre and the six sixth roots of unity (float coordinates)."""
    pts = [(0.0, 0.0)] + [(math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)) for k in range(6)]
    return PointSet.from_points(pts)


def random_pointset(n: int, dim: int = 2, rng: random.Random | int | None = None, bound: int = 10, denominator: int = 10) -> PointSet:
    """``n`` distinct points with coordinates ``m / denominator`` in ``[-bound, bound]``."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    top = bound * denominator
    seen: set = set()
    pts = []
    while len(pts) < n:
        p = tuple(Fraction(rng.randint(-top, top), denominator) for _ in range(dim))
        if p not in seen:
            seen.add(p)
            pts.append(p)
    return PointSet(dim, tuple(pts))
