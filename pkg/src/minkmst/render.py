"""Static SVG drawings of planar point sets, trees and unit balls."""

from __future__ import annotations

import math
from html import escape
from typing import Sequence

from .errors import UnsupportedOperationError
from .norm import NormSpec
from .points import PointSet

_SIZE = 480
_PAD = 24


def _ball_outline(norm: NormSpec, samples: int = 256) -> list[tuple[float, float]]:
    """Boundary of the unit ball as a closed polygon, counter-clockwise."""
    if norm.kind == "polyhedral":
        verts = [(float(x), float(y)) for x, y in norm.vertices]
        # extreme vertices only: those attaining a facet
        extreme = [v for v, exact in zip(verts, norm.vertices) if any(sum(a * x for a, x in zip(f, exact)) == 1 for f in norm.facets)]
        return sorted(extreme, key=lambda v: math.atan2(v[1], v[0]))
    if norm.is_l1:
        return [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)]
    if norm.is_linf:
        return [(1.0, -1.0), (1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0)]
    out = []
    for k in range(samples):
        t = 2 * math.pi * k / samples
        x, y = math.cos(t), math.sin(t)
        r = norm.eval((x, y))
        out.append((x / r, y / r))
    return out


def render_svg(
    points: PointSet,
    norm: NormSpec,
    edges: Sequence[tuple[int, int]] = (),
    ball_center: int | None = None,
    ball_radius: float = 1.0,
    size: int = _SIZE,
) -> str:
    """SVG text for a planar instance; byte-identical for identical input."""
    if points.dim != 2 or norm.dim != 2:
        raise UnsupportedOperationError("rendering needs a planar instance")
    pts = [(float(x), float(y)) for x, y in points]
    ball = []
    if ball_center is not None:
        if not 0 <= ball_center < len(pts):
            raise IndexError(f"ball centre {ball_center} out of range")
        cx, cy = pts[ball_center]
        ball = [(cx + ball_radius * x, cy + ball_radius * y) for x, y in _ball_outline(norm)]
    xs = [p[0] for p in pts + ball]
    ys = [p[1] for p in pts + ball]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y) or 1.0
    scale = (size - 2 * _PAD) / span

    def sx(x: float) -> str:
        return f"{_PAD + (x - lo_x) * scale:.3f}"

    def sy(y: float) -> str:
        return f"{size - _PAD - (y - lo_y) * scale:.3f}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<title>{len(pts)} points, {len(edges)} edges, norm {escape(norm.spec_string())}</title>',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if ball_center is not None:
        if norm.is_l2:
            cx, cy = pts[ball_center]
            out.append(
                f'<circle class="unit-ball" cx="{sx(cx)}" cy="{sy(cy)}" r="{ball_radius * scale:.3f}" '
                'fill="none" stroke="#4a7ebb" stroke-dasharray="4 3"/>'
            )
        else:
            d = " ".join(f"{'M' if k == 0 else 'L'} {sx(x)} {sy(y)}" for k, (x, y) in enumerate(ball)) + " Z"
            out.append(f'<path class="unit-ball" d="{d}" fill="none" stroke="#4a7ebb" stroke-dasharray="4 3"/>')
    for i, j in edges:
        (x1, y1), (x2, y2) = pts[i], pts[j]
        out.append(f'<line class="edge" x1="{sx(x1)}" y1="{sy(y1)}" x2="{sx(x2)}" y2="{sy(y2)}" stroke="black" stroke-width="2"/>')
    for k, (x, y) in enumerate(pts):
        out.append(f'<circle class="point" cx="{sx(x)}" cy="{sy(y)}" r="4" fill="#c0392b"><title>{_label(points, k)}</title></circle>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _label(points: PointSet, k: int) -> str:
    return escape(points.labels[k]) if points.labels is not None else str(k)
