"""Low-degree minimal spanning trees via random perturbation.

Each point is moved inside its own norm ball of radius epsilon, resampling
until no angle of the moved set has size within ``genericity_gap`` of 1.
A minimal spanning tree of such a set has every incident angle strictly
larger than 1, so its unit edge directions at any vertex are pairwise more
than 1 apart, which bounds the degree by the strict Hadwiger number of the
unit ball. Shrinking epsilon geometrically gives a sequence of tree
topologies; a topology is accepted only when its edge set, re-weighed on the
original points, has the minimal spanning tree weight.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import DuplicatePointsError, InvalidInstanceError, PerturbationError
from .geometry import min_pairwise_distance
from .mst import DEFAULT_CAP, Tree, degree_report, kruskal_mst, tree_weight
from .norm import TAU, NormSpec, Scalar, format_scalar, scalars_equal, vsub
from .oracle import MAX_ORACLE_POINTS
from .points import PointSet

# offsets are drawn on a lattice of this many steps per unit radius
_LATTICE = 1 << 20
_MAX_BALL_TRIES = 10_000
_GAP_RATIO = 1000


@dataclass(frozen=True)
class PerturbationParams:
    epsilon0: Scalar | None = None  # None: a quarter of the minimum pairwise distance
    shrink: Fraction = Fraction(1, 2)
    max_rounds: int = 20
    genericity_gap: float = 1e-6
    resample_limit: int = 100
    seed: int = 0

    def __post_init__(self):
        shrink = Fraction(self.shrink)
        if not 0 < shrink < 1:
            raise ValueError("shrink must lie in (0, 1)")
        object.__setattr__(self, "shrink", shrink)
        if self.genericity_gap <= 0:
            raise ValueError("genericity gap must be positive")
        if self.max_rounds < 1 or self.resample_limit < 1:
            raise ValueError("max_rounds and resample_limit must be positive")


@dataclass(frozen=True)
class Round:
    epsilon: Scalar
    resamples: int
    topology_id: int
    perturbed_mst_weight: Scalar
    genericity_gap: float


@dataclass
class PerturbationTrace:
    params: PerturbationParams
    epsilon0: Scalar | None
    mst_weight: Scalar
    rounds: list[Round] = field(default_factory=list)
    topologies: list[tuple[tuple[int, int], ...]] = field(default_factory=list)
    selected_topology: int | None = None
    fallback: bool = False
    final_tree: Tree | None = None
    final_is_mst_of_S: bool = False

    def to_dict(self) -> dict:
        p = asdict(self.params)
        p["shrink"] = format_scalar(self.params.shrink)
        p["epsilon0"] = None if self.epsilon0 is None else format_scalar(self.epsilon0)
        return {
            "params": p,
            "mst_weight": format_scalar(self.mst_weight),
            "rounds": [
                {
                    "epsilon": format_scalar(r.epsilon),
                    "resamples": r.resamples,
                    "topology_id": r.topology_id,
                    "perturbed_mst_weight": format_scalar(r.perturbed_mst_weight),
                    "genericity_gap": r.genericity_gap,
                }
                for r in self.rounds
            ],
            "topologies": [[list(e) for e in t] for t in self.topologies],
            "selected_topology": self.selected_topology,
            "fallback": self.fallback,
            "final_edges": None if self.final_tree is None else [list(e) for e in self.final_tree.edges],
            "final_is_mst_of_S": self.final_is_mst_of_S,
        }


@dataclass(frozen=True)
class LowDegreeResult:
    tree: Tree
    trace: PerturbationTrace


def _ball_offset(norm: NormSpec, epsilon: Scalar, rng: np.random.Generator, exact: bool):
    """A point of the norm ball of radius ``epsilon``, by lattice rejection."""
    R = norm.bounding_radius
    for _ in range(_MAX_BALL_TRIES):
        k = rng.integers(-_LATTICE, _LATTICE, size=norm.dim, endpoint=True)
        if exact:
            off = tuple(Fraction(int(x), _LATTICE) * R * epsilon for x in k)
        else:
            off = tuple(float(x) / _LATTICE * float(R) * float(epsilon) for x in k)
        if norm.eval(off) <= epsilon:
            return off
    raise PerturbationError("could not sample the norm ball")


def sample_perturbation(points: PointSet, epsilon: Scalar, norm: NormSpec, rng) -> PointSet:
    """Move every point to a random location within distance ``epsilon``.

    ``rng`` is a seed or a :class:`numpy.random.Generator`. Exact norms with
    rational points and a rational epsilon keep the result rational.
    """
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    if len(points) >= 2 and epsilon >= min_pairwise_distance(points, norm):
        raise ValueError("epsilon must be smaller than the minimum pairwise distance")
    if epsilon == 0:
        return points
    exact = norm.exact and points.exact and isinstance(epsilon, Fraction)
    moved = []
    for x in points:
        off = _ball_offset(norm, epsilon, rng, exact)
        moved.append(tuple(a + b for a, b in zip(x, off)) if exact else tuple(float(a) + b for a, b in zip(x, off)))
    return PointSet(points.dim, tuple(moved), points.labels)


def _unit_directions(points: PointSet, norm: NormSpec):
    n = len(points)
    u = [[None] * n for _ in range(n)]
    for b in range(n):
        for a in range(n):
            if a != b:
                u[b][a] = norm.normalize(vsub(points[a], points[b]))
    return u


def is_generic(points: PointSet, norm: NormSpec, tau_a: float = 1e-6) -> bool:
    """True when no angle of the set has size within ``tau_a`` of 1.

    Sizes near 2 are never rejected: they can be unavoidable for norms
    whose unit ball has parallel flat pieces.
    """
    n = len(points)
    u = _unit_directions(points, norm)
    for b in range(n):
        for a, c in combinations([k for k in range(n) if k != b], 2):
            if abs(norm.eval(vsub(u[b][a], u[b][c])) - 1) <= tau_a:
                return False
    return True


def _resolve_epsilon0(points: PointSet, norm: NormSpec, params: PerturbationParams) -> Scalar:
    dmin = min_pairwise_distance(points, norm)
    if params.epsilon0 is None:
        return dmin / 4
    eps0 = params.epsilon0
    if isinstance(eps0, int):
        eps0 = Fraction(eps0)
    if not 0 < eps0 < dmin:
        raise ValueError("epsilon0 must lie strictly between 0 and the minimum pairwise distance")
    return eps0


def low_degree_mst(points: PointSet, norm: NormSpec, params: PerturbationParams | None = None, tol: float = TAU) -> LowDegreeResult:
    """A minimal spanning tree of ``points`` with small maximum degree.

    Raises :class:`PerturbationError` when no sample passes the genericity
    test within ``resample_limit`` tries, or when no observed topology is
    an MST of the original set and the point set is too large for the
    enumeration fallback.
    """
    params = params or PerturbationParams()
    n = len(points)
    if n == 1:
        tree = Tree(1, (), Fraction(0))
        trace = PerturbationTrace(params, None, Fraction(0), final_tree=tree, final_is_mst_of_S=True)
        return LowDegreeResult(tree, trace)
    reference = kruskal_mst(points, norm, tol)
    if n == 2:
        trace = PerturbationTrace(params, None, reference.total_length, final_tree=reference, final_is_mst_of_S=True)
        return LowDegreeResult(reference, trace)

    eps = _resolve_epsilon0(points, norm, params)
    if not isinstance(eps, Fraction):
        eps = float(eps)
    trace = PerturbationTrace(params, eps, reference.total_length)
    rng = np.random.default_rng(params.seed)
    diameter = max(float(norm.distance(p, q)) for p, q in combinations(points.points, 2))
    ids: dict[tuple, int] = {}
    for _ in range(params.max_rounds):
        # a perturbation of radius eps moves angle sizes by roughly eps / diameter,
        # so the excluded band around 1 must shrink with eps
        gap = min(params.genericity_gap, float(eps) / (_GAP_RATIO * diameter))
        for attempt in range(params.resample_limit):
            try:
                moved = sample_perturbation(points, eps, norm, rng)
            except DuplicatePointsError:
                continue
            if is_generic(moved, norm, gap):
                break
        else:
            raise PerturbationError(
                f"no generic sample in {params.resample_limit} tries; the genericity gap is too large"
            )
        t = kruskal_mst(moved, norm, tol)
        if t.edges not in ids:
            ids[t.edges] = len(trace.topologies)
            trace.topologies.append(t.edges)
        trace.rounds.append(Round(eps, attempt, ids[t.edges], t.total_length, gap))
        eps = eps * params.shrink if isinstance(eps, Fraction) else eps * float(params.shrink)

    for r in reversed(trace.rounds):
        edges = trace.topologies[r.topology_id]
        if scalars_equal(tree_weight(points, norm, edges), reference.total_length, tol):
            trace.selected_topology = r.topology_id
            trace.final_tree = Tree.from_edges(points, norm, edges)
            break
    else:
        if n > MAX_ORACLE_POINTS:
            raise PerturbationError("no observed topology is minimal; increase max_rounds")
        report = degree_report(points, norm, DEFAULT_CAP, tol)
        trace.fallback = True
        trace.final_tree = report.min_tree
    trace.final_is_mst_of_S = scalars_equal(trace.final_tree.total_length, reference.total_length, tol)
    return LowDegreeResult(trace.final_tree, trace)


def star_hard_instance(norm: NormSpec, cert) -> PointSet:
    """The origin together with the vectors of a strict packing certificate.

    Every cross distance exceeds every spoke, so the star at the origin is
    the only minimal spanning tree and its centre has degree ``k``.
    """
    from .packing import is_strictly_separated

    if cert.norm != norm:
        raise ValueError("certificate was issued for a different norm")
    if not is_strictly_separated(cert):
        raise ValueError("certificate is not strict: a pairwise distance of 1 breaks uniqueness")
    zero = tuple(Fraction(0) for _ in range(norm.dim))
    labels = ("o",) + tuple(f"u{k}" for k in range(len(cert.vectors)))
    try:
        return PointSet(norm.dim, (zero,) + tuple(cert.vectors), labels)
    except DuplicatePointsError as exc:
        raise InvalidInstanceError(str(exc)) from exc
