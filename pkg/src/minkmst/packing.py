"""Unit-vector packings: certificates for Hadwiger and strict Hadwiger numbers.

A set of ``k`` unit vectors with pairwise distances at least 1 shows
``H(B) >= k``; with pairwise distances strictly above 1 it shows
``H_s(B) >= k``. Verification is independent of how the vectors were found.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .errors import DimensionMismatchError, MinkError
from .norm import TAU, NormSpec, Scalar, all_exact, vsub

DEFAULT_STRICT_MARGIN = 1e-6


class UnknownPackingError(MinkError, KeyError):
    pass


@dataclass(frozen=True)
class PackingCertificate:
    norm: NormSpec
    vectors: tuple[tuple[Scalar, ...], ...]
    min_pairwise: Scalar | None
    strict: bool
    seed: int | None = None

    @classmethod
    def build(cls, norm: NormSpec, vectors, strict: bool, seed: int | None = None) -> "PackingCertificate":
        vecs = tuple(tuple(v) for v in vectors)
        return cls(norm, vecs, pairwise_min(norm, vecs), strict, seed)

    @property
    def k(self) -> int:
        return len(self.vectors)

    @property
    def exact(self) -> bool:
        return self.norm.exact and all(all_exact(v) for v in self.vectors)


def pairwise_min(norm: NormSpec, vectors) -> Scalar | None:
    best = None
    for u, v in combinations(vectors, 2):
        d = norm.eval(vsub(u, v))
        if best is None or d < best:
            best = d
    return best


def is_strictly_separated(cert: PackingCertificate, strict_margin: float = DEFAULT_STRICT_MARGIN) -> bool:
    """Pairwise distances exceed 1: exactly on the exact path, by a margin otherwise."""
    m = pairwise_min(cert.norm, cert.vectors)
    if m is None:
        return True
    if isinstance(m, Fraction):
        return m > 1
    return m >= 1 + strict_margin


def verify_certificate(cert: PackingCertificate, tol: float = TAU, strict_margin: float = DEFAULT_STRICT_MARGIN) -> bool:
    """Recheck unit lengths, the recorded minimum and the separation condition."""
    norm = cert.norm
    if not cert.vectors:
        return False
    for v in cert.vectors:
        if len(v) != norm.dim:
            raise DimensionMismatchError(f"vector of dimension {len(v)} in a {norm.dim}-dimensional certificate")
    for v in cert.vectors:
        length = norm.eval(v)
        if isinstance(length, Fraction):
            if length != 1:
                return False
        elif abs(length - 1) > tol:
            return False
    if len(set(cert.vectors)) != len(cert.vectors):
        return False
    m = pairwise_min(norm, cert.vectors)
    if m is None:
        return True
    if cert.min_pairwise is not None:
        recorded = cert.min_pairwise
        if isinstance(m, Fraction) and isinstance(recorded, Fraction):
            if m != recorded:
                return False
        elif abs(float(m) - float(recorded)) > tol:
            return False
    if cert.strict:
        return is_strictly_separated(cert, strict_margin)
    return m >= 1 if isinstance(m, Fraction) else m >= 1 - tol


# ---------------------------------------------------------------- constructions

PACKING_NAMES = (
    "hexagon-l2",
    "pentagon-l2-strict",
    "axes-l1-strict",
    "signs-linf-strict",
    "grid-linf",
    "icosahedron-l2-strict",
    "crosspolytope-l1",
)


def _axes(dim: int):
    out = []
    for i in range(dim):
        for s in (1, -1):
            out.append(tuple(Fraction(s) if k == i else Fraction(0) for k in range(dim)))
    return out


def _icosahedron():
    phi = (1 + math.sqrt(5)) / 2
    raw = []
    for a, b in product((1, -1), repeat=2):
        raw += [(0.0, a, b * phi), (a, b * phi, 0.0), (b * phi, 0.0, a)]
    r = math.sqrt(1 + phi * phi)
    return [tuple(x / r for x in v) for v in raw]


def known_packing(name: str, dim: int | None = None) -> PackingCertificate:
    """A deterministic packing from the list in :data:`PACKING_NAMES`.

    ``dim`` applies to the families (signs, grid, axes, cross-polytope);
    the polygon and icosahedron constructions have fixed dimension.
    """
    if name == "hexagon-l2":
        vecs = [(math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)) for k in range(6)]
        return PackingCertificate.build(NormSpec.l2(2), vecs, strict=False)
    if name == "pentagon-l2-strict":
        vecs = [(math.cos(2 * k * math.pi / 5), math.sin(2 * k * math.pi / 5)) for k in range(5)]
        return PackingCertificate.build(NormSpec.l2(2), vecs, strict=True)
    if name == "icosahedron-l2-strict":
        return PackingCertificate.build(NormSpec.l2(3), _icosahedron(), strict=True)
    d = 2 if dim is None else dim
    if d < 1:
        raise ValueError("dimension must be positive")
    if name in ("axes-l1-strict", "crosspolytope-l1"):
        return PackingCertificate.build(NormSpec.l1(d), _axes(d), strict=True)
    if name == "signs-linf-strict":
        vecs = [tuple(Fraction(s) for s in signs) for signs in product((-1, 1), repeat=d)]
        return PackingCertificate.build(NormSpec.linf(d), vecs, strict=True)
    if name == "grid-linf":
        vecs = [tuple(Fraction(s) for s in g) for g in product((-1, 0, 1), repeat=d) if any(g)]
        return PackingCertificate.build(NormSpec.linf(d), vecs, strict=False)
    raise UnknownPackingError(name)


# ---------------------------------------------------------------- known values


@dataclass(frozen=True)
class KnownValue:
    body: str
    quantity: str  # "H", "H_s", "delta_plus" or "delta_minus"
    lower: int
    upper: int
    statement: str
    dim: int | None = None

    @property
    def value(self) -> int | tuple[int, int]:
        return self.lower if self.lower == self.upper else (self.lower, self.upper)


MAX_TABLE_DIM = 8


def known_values_table() -> list[KnownValue]:
    rows = [
        KnownValue("euclidean-plane", "delta_plus", 6, 6, "Δ⁺(E²) = 6", 2),
        KnownValue("euclidean-plane", "delta_minus", 5, 5, "Δ⁻(E²) = 5", 2),
        KnownValue("l1-plane", "delta_plus", 8, 8, "Δ⁺(R², ‖·‖₁) = 8", 2),
        KnownValue("l1-plane", "delta_minus", 4, 4, "Δ⁻(R², ‖·‖₁) = 4", 2),
        KnownValue("parallelogram", "H", 8, 8, "H(parallelogram) = 8", 2),
        KnownValue("planar-other", "H", 6, 6, "H(C) = 6 for planar C not a parallelogram", 2),
        KnownValue("parallelogram", "H_s", 4, 4, "H_s(parallelogram) = 4", 2),
        KnownValue("planar-other", "H_s", 5, 5, "H_s(C) = 5 for planar C not a parallelogram", 2),
        KnownValue("octahedron", "H", 18, 18, "H(O) = 18", 3),
        KnownValue("octahedron", "H_s", 13, 14, "13 ≤ H_s(O) ≤ 14", 3),
        KnownValue("euclidean-ball-3d", "H", 12, 12, "H(B³) = 12", 3),
        KnownValue("euclidean-ball-3d", "H_s", 12, 12, "H_s(B³) = 12", 3),
    ]
    for d in range(1, MAX_TABLE_DIM + 1):
        rows.append(KnownValue("cube", "H", 3**d - 1, 3**d - 1, "H(C_d) = 3^d - 1", d))
        rows.append(KnownValue("cube", "H_s", 2**d, 2**d, "H_s(C_d) = 2^d", d))
    return rows


def lookup(body: str, quantity: str, dim: int | None = None) -> int | tuple[int, int]:
    for row in known_values_table():
        if row.body == body and row.quantity == quantity and (dim is None or row.dim is None or row.dim == dim):
            return row.value
    raise KeyError((body, quantity, dim))


def body_of(norm: NormSpec) -> str | None:
    """Name of the norm's unit ball in the known-values table, if listed."""
    if norm.dim == 1:
        return "cube"
    if norm.dim == 2:
        if norm.is_l1 or norm.is_linf or (norm.kind == "polyhedral" and len(norm.facets) == 4):
            return "parallelogram"
        return "planar-other"
    if norm.is_linf:
        return "cube"
    if norm.dim == 3 and norm.is_l1:
        return "octahedron"
    if norm.dim == 3 and norm.is_l2:
        return "euclidean-ball-3d"
    return None


def hadwiger_number(norm: NormSpec) -> int | tuple[int, int] | None:
    body = body_of(norm)
    return None if body is None else lookup(body, "H", norm.dim)


def strict_hadwiger_number(norm: NormSpec) -> int | tuple[int, int] | None:
    body = body_of(norm)
    return None if body is None else lookup(body, "H_s", norm.dim)


def strict_hadwiger_upper(norm: NormSpec) -> int | None:
    """Best known upper bound on the strict Hadwiger number, if any."""
    v = strict_hadwiger_number(norm)
    return v[1] if isinstance(v, tuple) else v
