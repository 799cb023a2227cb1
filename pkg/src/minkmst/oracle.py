"""Brute-force spanning tree oracle over all Prüfer sequences.

Independent of the Kruskal and weight-class code: every one of the
``n ** (n - 2)`` labelled trees is decoded and weighed.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import InvalidInstanceError
from .norm import TAU, NormSpec, Scalar
from .points import PointSet

MAX_ORACLE_POINTS = 9
_CHUNK = 1 << 17


def prufer_decode(seq, n: int) -> list[tuple[int, int]]:
    """Edges of the labelled tree encoded by ``seq`` (length ``n - 2``)."""
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(k for k in range(n) if degree[k] == 1)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[leaf] = 0
        degree[x] -= 1
    u, v = [k for k in range(n) if degree[k] == 1]
    edges.append((u, v))
    return sorted(edges)


def _decode_chunk(seqs: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised decoding; returns endpoint arrays of shape (rows, n - 1)."""
    rows = seqs.shape[0]
    degree = np.ones((rows, n), dtype=np.int16)
    ar = np.arange(rows)
    for t in range(n - 2):
        np.add.at(degree, (ar, seqs[:, t]), 1)
    us = np.empty((rows, n - 1), dtype=np.int16)
    vs = np.empty((rows, n - 1), dtype=np.int16)
    for t in range(n - 2):
        leaf = np.argmax(degree == 1, axis=1)
        us[:, t] = leaf
        vs[:, t] = seqs[:, t]
        degree[ar, leaf] = 0
        degree[ar, seqs[:, t]] -= 1
    ones = degree == 1
    us[:, n - 2] = np.argmax(ones, axis=1)
    vs[:, n - 2] = n - 1 - np.argmax(ones[:, ::-1], axis=1)
    return us, vs


def _weight_matrix(points: PointSet, norm: NormSpec):
    """Pairwise weights as (matrix, scale): integers over ``scale`` when exact."""
    n = len(points)
    w = [[Fraction(0) if i == j else norm.distance(points[i], points[j]) for j in range(n)] for i in range(n)]
    flat = [w[i][j] for i, j in combinations(range(n), 2)]
    if any(x == 0 for x in flat):
        raise InvalidInstanceError("duplicate points")
    if all(isinstance(x, Fraction) for x in flat):
        scale = math.lcm(*(x.denominator for x in flat)) if flat else 1
        ints = [[int(x * scale) for x in row] for row in w]
        top = max(max(r) for r in ints)
        dtype = np.int64 if top * n < 2**62 else object
        return np.array(ints, dtype=dtype), scale
    return np.array([[float(x) for x in row] for row in w], dtype=float), None


def _all_totals(points: PointSet, norm: NormSpec):
    n = len(points)
    if n > MAX_ORACLE_POINTS:
        raise InvalidInstanceError(f"brute force is limited to {MAX_ORACLE_POINTS} points, got {n}")
    if n < 2:
        raise InvalidInstanceError("need at least two points")
    W, scale = _weight_matrix(points, norm)
    if n == 2:
        return W, scale, [(np.zeros((1, 0), dtype=np.int16), np.array([W[0, 1]]))]
    total = n ** (n - 2)
    out = []
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        seqs = np.empty((idx.size, n - 2), dtype=np.int16)
        rest = idx.copy()
        for t in range(n - 3, -1, -1):
            seqs[:, t] = rest % n
            rest //= n
        us, vs = _decode_chunk(seqs, n)
        sums = W[us.astype(np.intp), vs.astype(np.intp)].sum(axis=1)
        out.append((seqs, sums))
    return W, scale, out


def brute_force_mst_weight(points: PointSet, norm: NormSpec) -> Scalar:
    """Minimum total length over every labelled spanning tree."""
    _, scale, chunks = _all_totals(points, norm)
    best = min(c[1].min() for c in chunks)
    if scale is not None:
        return Fraction(int(best), scale)
    return float(best)


def brute_force_msts(points: PointSet, norm: NormSpec, tol: float = TAU) -> list[tuple[tuple[int, int], ...]]:
    """Edge sets of all minimum-weight trees (float weights within ``tol``)."""
    n = len(points)
    _, scale, chunks = _all_totals(points, norm)
    best = min(c[1].min() for c in chunks)
    found = set()
    for seqs, sums in chunks:
        hit = sums == best if scale is not None else sums <= best + tol
        for row in np.nonzero(hit)[0]:
            if n == 2:
                found.add(((0, 1),))
            else:
                found.add(tuple(prufer_decode([int(x) for x in seqs[row]], n)))
    return sorted(found)
