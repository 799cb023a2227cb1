"""Minimal spanning trees under a norm: Kruskal, all-MST enumeration, degrees.

Enumeration uses the weight-class decomposition of the MST set. Processing
the edges class by class (ascending weight), the partition of the vertices
into components after each class is the same for every MST. Inside a
class, after contracting the components fixed by lighter classes, the MSTs
choose exactly the spanning forests of the class graph. The MST set is the
Cartesian product of those per-class forest sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, NamedTuple, Sequence

import numpy as np
from scipy.cluster.hierarchy import DisjointSet

from .errors import DuplicatePointsError, InvalidInstanceError
from .geometry import angle_size
from .norm import TAU, NormSpec, Scalar
from .points import PointSet

DEFAULT_CAP = 10**6

Edge = tuple[int, int]


class WeightedEdge(NamedTuple):
    i: int
    j: int
    weight: Scalar


def total_length(weights: Sequence[Scalar]) -> Scalar:
    """Exact sum for fractions, compensated float sum otherwise."""
    if all(isinstance(w, Fraction) for w in weights):
        return sum(weights, Fraction(0))
    return math.fsum(float(w) for w in weights)


@dataclass(frozen=True)
class Tree:
    n: int
    edges: tuple[Edge, ...]
    total_length: Scalar
    degree_sequence: tuple[int, ...] = field(default=())

    def __post_init__(self):
        edges = tuple(sorted((min(i, j), max(i, j)) for i, j in self.edges))
        object.__setattr__(self, "edges", edges)
        if len(edges) != max(self.n - 1, 0):
            raise ValueError(f"a tree on {self.n} vertices has {self.n - 1} edges, got {len(edges)}")
        ds = DisjointSet(range(self.n))
        for i, j in edges:
            if not ds.merge(i, j):
                raise ValueError(f"edge {(i, j)} closes a cycle")
        deg = [0] * self.n
        for i, j in edges:
            deg[i] += 1
            deg[j] += 1
        object.__setattr__(self, "degree_sequence", tuple(deg))

    @classmethod
    def from_edges(cls, points: PointSet, norm: NormSpec, edges) -> "Tree":
        edges = tuple(sorted((min(i, j), max(i, j)) for i, j in edges))
        weights = [norm.distance(points[i], points[j]) for i, j in edges]
        return cls(len(points), edges, total_length(weights))

    @property
    def max_degree(self) -> int:
        return max(self.degree_sequence, default=0)

    def neighbours(self, v: int) -> list[int]:
        return [j if i == v else i for i, j in self.edges if v in (i, j)]


def tree_weight(points: PointSet, norm: NormSpec, edges) -> Scalar:
    """Total length of an edge set evaluated on ``points``."""
    return total_length([norm.distance(points[i], points[j]) for i, j in edges])


# ---------------------------------------------------------------- edges


def build_edges(points: PointSet, norm: NormSpec, tol: float = TAU) -> list[WeightedEdge]:
    """All pairwise edges in Kruskal order: by weight class, then ``(i, j)``."""
    return [e for cls in weight_classes(points, norm, tol) for e in cls]


def weight_classes(points: PointSet, norm: NormSpec, tol: float = TAU) -> list[list[WeightedEdge]]:
    """Edges grouped into classes of equal weight.

    Exact weights group by equality. Float weights join the current class
    while within ``tol`` of its first (lightest) member, so near-ties can
    merge into one class.
    """
    n = len(points)
    if n < 2:
        raise InvalidInstanceError("need at least two points")
    if norm.dim != points.dim:
        raise InvalidInstanceError(f"{points.dim}-dimensional points under a {norm.dim}-dimensional norm")
    edges = []
    for i, j in combinations(range(n), 2):
        w = norm.distance(points[i], points[j])
        if w == 0:
            raise DuplicatePointsError(f"points {i} and {j} coincide")
        edges.append(WeightedEdge(i, j, w))
    edges.sort(key=lambda e: (e.weight, e.i, e.j))
    classes: list[list[WeightedEdge]] = []
    start = None
    for e in edges:
        if start is not None:
            if isinstance(e.weight, Fraction) and isinstance(start, Fraction):
                same = e.weight == start
            else:
                same = float(e.weight) - float(start) <= tol
            if same:
                classes[-1].append(e)
                continue
        classes.append([e])
        start = e.weight
    for cls in classes:
        cls.sort(key=lambda e: (e.i, e.j))
    return classes


# ---------------------------------------------------------------- kruskal


def kruskal_mst(points: PointSet, norm: NormSpec, tol: float = TAU) -> Tree:
    """A minimal spanning tree; ties broken by (weight class, i, j)."""
    n = len(points)
    ds = DisjointSet(range(n))
    chosen = []
    for e in build_edges(points, norm, tol):
        if ds.merge(e.i, e.j):
            chosen.append(e)
            if len(chosen) == n - 1:
                break
    chosen.sort(key=lambda e: (e.i, e.j))
    return Tree(n, tuple((e.i, e.j) for e in chosen), total_length([e.weight for e in chosen]))


# ---------------------------------------------------------------- enumeration


def _class_problems(points: PointSet, norm: NormSpec, tol: float):
    """Per weight class: contracted edges and the number of merges it performs."""
    n = len(points)
    ds = DisjointSet(range(n))
    problems = []
    for cls in weight_classes(points, norm, tol):
        items = [(ds[e.i], ds[e.j], e) for e in cls if ds[e.i] != ds[e.j]]
        before = ds.n_subsets
        for e in cls:
            ds.merge(e.i, e.j)
        merges = before - ds.n_subsets
        if merges:
            problems.append((items, merges))
    return problems


def _merges_available(comp: dict, items) -> int:
    parent: dict = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    count = 0
    for u, v, _ in items:
        a, b = find(comp[u]), find(comp[v])
        if a != b:
            parent[a] = b
            count += 1
    return count


def _class_forests(items, merges: int, cap: int) -> tuple[list[tuple[WeightedEdge, ...]], bool]:
    """All acyclic ``merges``-edge subsets of a contracted class graph.

    Including an edge never makes the target unreachable (matroid
    contraction), so only the exclusion branch needs a feasibility check.
    """
    out: list[tuple[WeightedEdge, ...]] = []
    m = len(items)
    complete = True

    def rec(k: int, comp: dict, chosen: list, need: int) -> None:
        nonlocal complete
        if not complete:
            return
        if need == 0:
            if len(out) >= cap:
                complete = False
                return
            out.append(tuple(chosen))
            return
        if k == m:
            return
        u, v, e = items[k]
        cu, cv = comp[u], comp[v]
        if cu != cv:
            merged = {x: (cu if c == cv else c) for x, c in comp.items()}
            chosen.append(e)
            rec(k + 1, merged, chosen, need - 1)
            chosen.pop()
        if _merges_available(comp, items[k + 1:]) >= need:
            rec(k + 1, comp, chosen, need)

    nodes = {u for u, _, _ in items} | {v for _, v, _ in items}
    rec(0, {x: x for x in nodes}, [], merges)
    return out, complete


def _forest_lists(points: PointSet, norm: NormSpec, cap: int, tol: float):
    forests, complete = [], True
    for items, merges in _class_problems(points, norm, tol):
        fs, ok = _class_forests(items, merges, cap)
        forests.append(fs)
        complete = complete and ok
    return forests, complete


def iter_msts(points: PointSet, norm: NormSpec, cap: int = DEFAULT_CAP, tol: float = TAU) -> Iterator[tuple[WeightedEdge, ...]]:
    """Yield minimal spanning trees as weighted edge tuples, unordered."""
    forests, _ = _forest_lists(points, norm, cap, tol)
    for combo in product(*forests):
        yield tuple(e for f in combo for e in f)


def enumerate_msts(points: PointSet, norm: NormSpec, cap: int = DEFAULT_CAP, tol: float = TAU) -> tuple[list[Tree], bool]:
    """All MSTs of ``points`` up to ``cap``, sorted by edge list.

    The flag is False when the cap cut the enumeration short; the returned
    trees are then a subset of the MST set.
    """
    if len(points) == 1:
        return [Tree(1, (), Fraction(0))], True
    forests, complete = _forest_lists(points, norm, cap, tol)
    n = len(points)
    trees = []
    for combo in product(*forests):
        if len(trees) >= cap:
            complete = False
            break
        es = sorted((e for f in combo for e in f), key=lambda e: (e.i, e.j))
        trees.append(Tree(n, tuple((e.i, e.j) for e in es), total_length([e.weight for e in es])))
    trees.sort(key=lambda t: t.edges)
    return trees, complete


@dataclass(frozen=True)
class DegreeReport:
    delta_plus: int
    delta_minus: int
    mst_count: int
    enumeration_complete: bool
    min_tree: Tree | None = None
    max_tree: Tree | None = None


def degree_report(points: PointSet, norm: NormSpec, cap: int = DEFAULT_CAP, tol: float = TAU) -> DegreeReport:
    """Largest and smallest maximum degree over the MSTs of ``points``.

    When the enumeration hits ``cap`` the extremes are bounds only and
    ``enumeration_complete`` is False.
    """
    n = len(points)
    if n == 1:
        t = Tree(1, (), Fraction(0))
        return DegreeReport(0, 0, 1, True, t, t)
    forests, complete = _forest_lists(points, norm, cap, tol)
    base = np.zeros(n, dtype=np.int64)
    fixed: list[WeightedEdge] = []
    choices = []
    for fs in forests:
        if len(fs) == 1:
            fixed.extend(fs[0])
            for e in fs[0]:
                base[e.i] += 1
                base[e.j] += 1
        else:
            degs = []
            for f in fs:
                d = np.zeros(n, dtype=np.int64)
                for e in f:
                    d[e.i] += 1
                    d[e.j] += 1
                degs.append(d)
            choices.append((fs, degs))

    count = 0
    lo = hi = None
    lo_combo = hi_combo = None
    for idx in product(*(range(len(fs)) for fs, _ in choices)):
        if count >= cap:
            complete = False
            break
        deg = base.copy()
        for (fs, degs), k in zip(choices, idx):
            deg += degs[k]
        dmax = int(deg.max())
        count += 1
        if lo is None or dmax < lo:
            lo, lo_combo = dmax, idx
        if hi is None or dmax > hi:
            hi, hi_combo = dmax, idx

    def build(idx) -> Tree:
        es = list(fixed)
        for (fs, _), k in zip(choices, idx):
            es.extend(fs[k])
        es.sort(key=lambda e: (e.i, e.j))
        return Tree(n, tuple((e.i, e.j) for e in es), total_length([e.weight for e in es]))

    return DegreeReport(hi, lo, count, complete, build(lo_combo), build(hi_combo))


# ---------------------------------------------------------------- angle check


@dataclass(frozen=True)
class AngleViolation:
    apex: int
    a: int
    c: int
    size: Scalar


@dataclass(frozen=True)
class AngleReport:
    min_size: Scalar | None
    violations: tuple[AngleViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_incident_angles(tree: Tree, points: PointSet, norm: NormSpec, tol: float = TAU) -> AngleReport:
    """Sizes of all angles between pairs of tree edges sharing a vertex.

    In a minimal spanning tree every such angle has size at least 1; pairs
    below ``1 - tol`` are reported as violations.
    """
    if tree.n != len(points):
        raise ValueError("tree does not span the point set")
    adj: list[list[int]] = [[] for _ in range(tree.n)]
    for i, j in tree.edges:
        adj[i].append(j)
        adj[j].append(i)
    threshold = 1 - tol if tol else 1
    smallest = None
    bad = []
    for b in range(tree.n):
        for a, c in combinations(sorted(adj[b]), 2):
            s = angle_size(norm, points[a], points[b], points[c])
            if smallest is None or s < smallest:
                smallest = s
            if s < threshold:
                bad.append(AngleViolation(b, a, c, s))
    return AngleReport(smallest, tuple(bad))
