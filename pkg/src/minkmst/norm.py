"""Norms on R^d: the lp family and gauges of centrally symmetric polytopes.

Two arithmetic paths coexist. For l1, linf and polytopes with rational
vertices, rational inputs produce :class:`fractions.Fraction` results, so
distance ties are decided exactly. Every other case computes in floating
point and callers compare with the tolerance :data:`TAU`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .errors import (
    DimensionMismatchError,
    InvalidNormError,
    NormParseError,
    ZeroVectorError,
)

Scalar = Union[Fraction, float]
Vector = tuple  # tuple[Scalar, ...]

INF = math.inf
TAU = 1e-9
MAX_POLY_DIM = 4


# ---------------------------------------------------------------- scalars


def to_scalar(x) -> Scalar:
    """Coerce a coordinate to the internal representation.

    Integers, decimals and rational strings become exact fractions; floats
    stay floats.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite coordinate {x!r}")
        return x
    if isinstance(x, Decimal):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {x!r}") from exc
    if isinstance(x, np.integer):
        return Fraction(int(x))
    if isinstance(x, np.floating):
        return float(x)
    raise TypeError(f"unsupported coordinate type {type(x).__name__}")


def is_exact(x) -> bool:
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


def all_exact(v: Iterable) -> bool:
    return all(is_exact(x) for x in v)


def scalars_equal(a: Scalar, b: Scalar, tol: float = TAU) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    return abs(float(a) - float(b)) <= tol


def format_scalar(x: Scalar) -> str:
    """Canonical text for a scalar.

    Fractions with a terminating decimal expansion print as decimals, other
    fractions as ``p/q``; floats use the shortest round-trip repr.
    """
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        d = x.denominator
        twos = fives = 0
        while d % 2 == 0:
            d //= 2
            twos += 1
        while d % 5 == 0:
            d //= 5
            fives += 1
        if d != 1:
            return f"{x.numerator}/{x.denominator}"
        places = max(twos, fives)
        scaled = x * 10**places
        sign = "-" if scaled < 0 else ""
        digits = str(abs(scaled.numerator)).rjust(places + 1, "0")
        whole, frac = digits[:-places], digits[-places:].rstrip("0")
        return f"{sign}{whole}.{frac}"
    return repr(float(x))


# ---------------------------------------------------------------- vectors


def vsub(a: Sequence, b: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vadd(a: Sequence, b: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vscale(c, v: Sequence) -> Vector:
    return tuple(c * x for x in v)


def _solve_exact(rows: list[Sequence[Fraction]], rhs: list[Fraction]) -> tuple[Fraction, ...]:
    """Gaussian elimination over the rationals; raises on a singular system."""
    n = len(rows)
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular facet system")
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(m[r][n] for r in range(n))


def _facet_functionals(vertices: tuple[Vector, ...], dim: int) -> tuple[Vector, ...]:
    if dim == 1:
        top = max(abs(v[0]) for v in vertices)
        return ((1 / top,), (-1 / top,))
    try:
        hull = ConvexHull(np.array([[float(x) for x in v] for v in vertices]))
    except QhullError as exc:
        raise InvalidNormError("polytope vertices do not span R^d") from exc
    funcs = set()
    for simplex in hull.simplices:
        rows = [vertices[k] for k in simplex]
        try:
            funcs.add(_solve_exact(rows, [Fraction(1)] * dim))
        except ZeroDivisionError as exc:
            raise InvalidNormError("facet hyperplane passes through the origin") from exc
    for a in funcs:
        if any(sum(ai * vi for ai, vi in zip(a, v)) > 1 for v in vertices):
            raise InvalidNormError("numerically degenerate polytope: facet check failed")
    return tuple(sorted(funcs))


# ---------------------------------------------------------------- norms


@dataclass(frozen=True)
class NormSpec:
    """A norm on R^dim, either ``lp`` with exponent ``p`` or a polytope gauge.

    Instances are immutable; polytope facet functionals are computed once
    at construction.
    """

    kind: str
    dim: int
    p: Scalar | None = None
    vertices: tuple[Vector, ...] = ()
    facets: tuple[Vector, ...] = field(default=(), init=False, repr=False, compare=False)
    _facet_matrix: np.ndarray | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise InvalidNormError(f"dimension must be a positive integer, got {self.dim!r}")
        if self.kind == "lp":
            p = self.p
            if p is None:
                raise InvalidNormError("lp norm needs an exponent")
            if not (isinstance(p, float) and math.isinf(p)):
                p = to_scalar(p)
            if p < 1:
                raise InvalidNormError(f"lp norm requires p >= 1, got {p}")
            object.__setattr__(self, "p", p)
            object.__setattr__(self, "vertices", ())
        elif self.kind == "polyhedral":
            verts = tuple(tuple(to_scalar(x) for x in v) for v in self.vertices)
            if not verts:
                raise InvalidNormError("polyhedral norm needs vertices")
            if any(len(v) != self.dim for v in verts):
                raise InvalidNormError("vertex dimension does not match dim")
            if not all(all_exact(v) for v in verts):
                verts = tuple(tuple(Fraction(x) for x in v) for v in verts)
            if self.dim > MAX_POLY_DIM:
                raise InvalidNormError(f"polytope gauges are limited to dim <= {MAX_POLY_DIM}")
            vset = set(verts)
            if len(vset) != len(verts):
                raise InvalidNormError("repeated polytope vertex")
            if any(tuple(-x for x in v) not in vset for v in verts):
                raise InvalidNormError("vertex set is not centrally symmetric")
            verts = tuple(sorted(verts))
            object.__setattr__(self, "vertices", verts)
            object.__setattr__(self, "p", None)
            facets = _facet_functionals(verts, self.dim)
            object.__setattr__(self, "facets", facets)
            object.__setattr__(
                self,
                "_facet_matrix",
                np.array([[float(x) for x in a] for a in facets], dtype=float),
            )
        else:
            raise InvalidNormError(f"unknown norm kind {self.kind!r}")

    # constructors -------------------------------------------------------

    @classmethod
    def lp(cls, p, dim: int = 2) -> "NormSpec":
        return cls("lp", dim, p=p)

    @classmethod
    def l1(cls, dim: int = 2) -> "NormSpec":
        return cls("lp", dim, p=1)

    @classmethod
    def l2(cls, dim: int = 2) -> "NormSpec":
        return cls("lp", dim, p=2)

    @classmethod
    def linf(cls, dim: int = 2) -> "NormSpec":
        return cls("lp", dim, p=INF)

    @classmethod
    def polyhedral(cls, vertices: Iterable[Sequence]) -> "NormSpec":
        verts = tuple(tuple(v) for v in vertices)
        if not verts:
            raise InvalidNormError("polyhedral norm needs vertices")
        return cls("polyhedral", len(verts[0]), vertices=verts)

    # properties ---------------------------------------------------------

    @property
    def is_l1(self) -> bool:
        return self.kind == "lp" and self.p == 1

    @property
    def is_l2(self) -> bool:
        return self.kind == "lp" and self.p == 2

    @property
    def is_linf(self) -> bool:
        return self.kind == "lp" and self.p == INF

    @property
    def exact(self) -> bool:
        """True when rational inputs give rational lengths."""
        return self.kind == "polyhedral" or self.is_l1 or self.is_linf

    @property
    def bounding_radius(self) -> Scalar:
        """Radius of a cube centred at the origin that contains the unit ball."""
        if self.kind == "lp":
            return Fraction(1)
        return max(abs(x) for v in self.vertices for x in v)

    def spec_string(self) -> str:
        """The norm in the ``l1``/``l2``/``linf``/``lp:<p>``/``poly:[...]`` grammar."""
        if self.kind == "lp":
            if self.is_l1:
                return "l1"
            if self.is_l2:
                return "l2"
            if self.is_linf:
                return "linf"
            return f"lp:{format_scalar(self.p)}"
        coords = [[_json_coord(x) for x in v] for v in self.vertices]
        return "poly:" + json.dumps(coords, separators=(",", ":"))

    # evaluation ---------------------------------------------------------

    def _check_dim(self, v: Sequence) -> None:
        if len(v) != self.dim:
            raise DimensionMismatchError(f"vector of dimension {len(v)} under a {self.dim}-dimensional norm")

    def eval(self, v: Sequence) -> Scalar:
        """Length of ``v``. Exact when the norm is exact and ``v`` is rational."""
        self._check_dim(v)
        exact = self.exact and all_exact(v)
        if self.kind == "polyhedral":
            if exact:
                return Fraction(max(sum(a * x for a, x in zip(f, v)) for f in self.facets))
            return float(np.max(self._facet_matrix @ np.array([float(x) for x in v])))
        p = self.p
        if p == 1:
            if exact:
                return sum((abs(x) for x in v), Fraction(0))
            return math.fsum(abs(float(x)) for x in v)
        if p == INF:
            if exact:
                return Fraction(max(abs(x) for x in v))
            return max(abs(float(x)) for x in v)
        if p == 2:
            return math.hypot(*(float(x) for x in v))
        return _lp_float([float(x) for x in v], float(p))

    def normalize(self, v: Sequence) -> Vector:
        """The positive multiple of ``v`` with unit length."""
        length = self.eval(v)
        if length == 0:
            raise ZeroVectorError("cannot normalize the zero vector")
        if isinstance(length, Fraction):
            return tuple(x / length for x in v)
        return tuple(float(x) / length for x in v)

    def distance(self, a: Sequence, b: Sequence) -> Scalar:
        return self.eval(vsub(a, b))

    def eval_array(self, X: np.ndarray) -> np.ndarray:
        """Vectorised floating-point lengths along the last axis."""
        X = np.asarray(X, dtype=float)
        if X.shape[-1] != self.dim:
            raise DimensionMismatchError(f"array with last axis {X.shape[-1]} under a {self.dim}-dimensional norm")
        if self.kind == "polyhedral":
            return np.max(X @ self._facet_matrix.T, axis=-1)
        p = self.p
        if p == 1:
            return np.abs(X).sum(axis=-1)
        if p == INF:
            return np.abs(X).max(axis=-1)
        if p == 2:
            return np.sqrt((X * X).sum(axis=-1))
        p = float(p)
        A = np.abs(X)
        m = A.max(axis=-1, keepdims=True)
        safe = np.where(m > 0, m, 1.0)
        return (m[..., 0]) * ((A / safe) ** p).sum(axis=-1) ** (1.0 / p)


def _lp_float(v: list[float], p: float) -> float:
    m = max(abs(x) for x in v)
    if m == 0.0:
        return 0.0
    return m * math.fsum((abs(x) / m) ** p for x in v) ** (1.0 / p)


def _json_coord(x: Scalar):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else format_scalar(x)
    return float(x)


# ---------------------------------------------------------------- parsing


def parse_norm(text: str, dim: int | None = None) -> NormSpec:
    """Parse ``l1``, ``l2``, ``linf``, ``lp:<p>`` or ``poly:[[x,y],...]``.

    ``dim`` is required for the lp family and optional (but checked) for
    polytopes, whose dimension follows from the vertices.
    """
    s = text.strip()
    low = s.lower()
    try:
        if low.startswith("poly:"):
            try:
                verts = json.loads(s[5:])
            except json.JSONDecodeError as exc:
                raise NormParseError(f"bad vertex list in {text!r}: {exc}") from exc
            if not isinstance(verts, list) or not verts or not all(isinstance(v, list) for v in verts):
                raise NormParseError(f"vertex list must be a list of coordinate lists: {text!r}")
            verts = [[_parse_coord(x) for x in v] for v in verts]
            norm = NormSpec.polyhedral(verts)
            if dim is not None and norm.dim != dim:
                raise DimensionMismatchError(f"polytope has dimension {norm.dim}, expected {dim}")
            return norm
        if dim is None:
            dim = 2
        if low == "l1":
            return NormSpec.l1(dim)
        if low == "l2":
            return NormSpec.l2(dim)
        if low in ("linf", "lmax"):
            return NormSpec.linf(dim)
        if low.startswith("lp:"):
            ptext = low[3:].strip()
            if ptext in ("inf", "infinity", "oo"):
                return NormSpec.linf(dim)
            try:
                p = Fraction(ptext)
            except (ValueError, ZeroDivisionError) as exc:
                raise NormParseError(f"bad exponent in {text!r}") from exc
            return NormSpec.lp(p, dim)
    except InvalidNormError as exc:
        raise NormParseError(str(exc)) from exc
    raise NormParseError(f"unrecognised norm {text!r}")


def _parse_coord(x):
    if isinstance(x, float):
        return Fraction(repr(x))
    try:
        return to_scalar(x)
    except (TypeError, ValueError) as exc:
        raise NormParseError(str(exc)) from exc
