"""Angle sizes and pairwise distances under an arbitrary norm.

The size of the angle at ``b`` spanned by ``a`` and ``c`` is the norm
distance between the unit directions from ``b`` towards ``a`` and ``c``.
Only the size is ever used: when ``b`` lies between ``a`` and ``c`` on a
line, no choice of half-plane is needed.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .errors import DegenerateAngleError, DuplicatePointsError, InvalidInstanceError
from .norm import NormSpec, Scalar, vsub
from .points import PointSet


def angle_size(norm: NormSpec, a: Sequence, b: Sequence, c: Sequence) -> Scalar:
    """Size of the angle at apex ``b``; always in [0, 2]."""
    if tuple(a) == tuple(b) or tuple(c) == tuple(b):
        raise DegenerateAngleError("apex coincides with a ray endpoint")
    u = norm.normalize(vsub(a, b))
    w = norm.normalize(vsub(c, b))
    return norm.eval(vsub(u, w))


def min_pairwise_distance(points: PointSet | Sequence[Sequence], norm: NormSpec) -> Scalar:
    pts = list(points)
    if len(pts) < 2:
        raise InvalidInstanceError("need at least two points")
    best = None
    for i, j in combinations(range(len(pts)), 2):
        d = norm.distance(pts[i], pts[j])
        if d == 0:
            raise DuplicatePointsError(f"points {i} and {j} coincide")
        if best is None or d < best:
            best = d
    return best
