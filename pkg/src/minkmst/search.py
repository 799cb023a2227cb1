"""Simulated annealing search for unit-vector packings.

All restarts advance together as one batch of configurations, so each
iteration is a handful of numpy operations regardless of the restart count.
The objective is the minimum pairwise distance. After annealing, every
restart is polished by single-vector moves that are kept only when they
raise the minimum distance or reduce the number of pairs attaining it,
which pushes apart the closest pairs one at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .norm import TAU, NormSpec
from .packing import DEFAULT_STRICT_MARGIN, PackingCertificate, pairwise_min, verify_certificate

DEFAULT_BUDGET = 100_000
DEFAULT_RESTARTS = 32

_T_START, _T_END = 3e-2, 1e-6
_STEP_START, _STEP_END = 0.5, 1e-4
_SNAP_DENOMINATORS = (1, 2, 3, 4, 6, 8, 12, 24, 60, 120, 720)


@dataclass(frozen=True)
class SearchResult:
    certificate: PackingCertificate | None
    objective: float
    vectors: tuple[tuple[float, ...], ...]
    strict: bool
    seed: int
    restarts: int
    budget: int

    @property
    def found(self) -> bool:
        return self.certificate is not None


def _normalize_rows(norm: NormSpec, X: np.ndarray) -> np.ndarray:
    return X / norm.eval_array(X)[..., None]


def _pairwise(norm: NormSpec, X: np.ndarray) -> np.ndarray:
    D = norm.eval_array(X[..., :, None, :] - X[..., None, :, :])
    k = X.shape[-2]
    D[..., np.arange(k), np.arange(k)] = np.inf
    return D


def _anneal(norm: NormSpec, k: int, restarts: int, budget: int, rng: np.random.Generator):
    d = norm.dim
    X = _normalize_rows(norm, rng.normal(size=(restarts, k, d)))
    D = _pairwise(norm, X)
    obj = D.min(axis=(1, 2))
    best_X, best_obj = X.copy(), obj.copy()
    rows = np.arange(restarts)
    for t in range(budget):
        frac = t / budget
        temp = _T_START * (_T_END / _T_START) ** frac
        step = _STEP_START * (_STEP_END / _STEP_START) ** frac
        i = rng.integers(k, size=restarts)
        cur = X[rows, i]
        g = rng.normal(size=(restarts, d))
        g -= (np.einsum("rd,rd->r", g, cur) / np.einsum("rd,rd->r", cur, cur))[:, None] * cur
        prop = _normalize_rows(norm, cur + step * g)
        row = norm.eval_array(prop[:, None, :] - X)
        row[rows, i] = np.inf
        rest = D.copy()
        rest[rows, i, :] = np.inf
        rest[rows, :, i] = np.inf
        new = np.minimum(rest.min(axis=(1, 2)), row.min(axis=1))
        delta = new - obj
        accept = (delta >= 0) | (rng.random(restarts) < np.exp(np.minimum(delta, 0) / temp))
        a = np.nonzero(accept)[0]
        if a.size:
            ia = i[a]
            X[a, ia] = prop[a]
            D[a, ia, :] = row[a]
            D[a, :, ia] = row[a]
            obj[a] = new[a]
            better = obj > best_obj
            if better.any():
                best_X[better] = X[better]
                best_obj[better] = obj[better]
    return best_X


def _min_keys(D: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Minimum distance and the number of pairs attaining it (relative 1e-12)."""
    m = D.min(axis=(-2, -1))
    ties = (D <= (m * (1 + 1e-12))[..., None, None]).sum(axis=(-2, -1)) // 2
    return m, ties


def _first_better(m2: np.ndarray, t2: np.ndarray, m: float, t: int) -> int | None:
    """First candidate with a larger minimum, or the same minimum attained by fewer pairs."""
    better = (m2 > m * (1 + 1e-15)) | ((m2 >= m) & (t2 < t))
    hits = np.nonzero(better)[0]
    return int(hits[0]) if hits.size else None


def _polish(norm: NormSpec, V: np.ndarray, rng: np.random.Generator, moves_per_level: int = 400) -> np.ndarray:
    V = V.copy()
    k, d = V.shape
    if k < 2:
        return V
    D = _pairwise(norm, V)
    m, ties = D.min(), int((D <= D.min() * (1 + 1e-12)).sum() // 2)
    for s in np.geomspace(1e-2, 1e-13, 45):
        for _ in range(moves_per_level):
            close = D <= m * (1 + 1e-12)
            active = np.nonzero(close.any(axis=1))[0]
            # push each active vector away from its closest partners, plus a few random tries
            away = np.einsum("ij,ijd->id", close[active].astype(float), V[active][:, None, :] - V[None, :, :])
            nrm = np.linalg.norm(away, axis=1)
            keep = nrm > 0
            idx = np.concatenate([active[keep], rng.permutation(active)[:4]])
            g = rng.normal(size=(min(4, active.size), d))
            dirs = np.concatenate([away[keep] / nrm[keep, None], g / np.linalg.norm(g, axis=1, keepdims=True)])
            P = V[idx] + s * dirs
            P = P / norm.eval_array(P)[:, None]
            rows = norm.eval_array(P[:, None, :] - V[None, :, :])
            c = np.arange(idx.size)
            rows[c, idx] = np.inf
            D2 = np.broadcast_to(D, (idx.size, k, k)).copy()
            D2[c, idx, :] = rows
            D2[c, :, idx] = rows
            m2, t2 = _min_keys(D2)
            hit = _first_better(m2, t2, m, ties)
            if hit is None:
                break
            V[idx[hit]] = P[hit]
            D, m, ties = D2[hit], m2[hit], int(t2[hit])
    return V


def _snap_exact(norm: NormSpec, V: np.ndarray, objective: float):
    """Rational unit vectors near ``V`` whose exact minimum is no worse."""
    for q in _SNAP_DENOMINATORS:
        vecs = []
        for v in V:
            r = tuple(Fraction(float(x)).limit_denominator(q) for x in v)
            if not any(r):
                break
            vecs.append(norm.normalize(r))
        else:
            if len(set(vecs)) < len(vecs):
                continue
            m = pairwise_min(norm, vecs)
            if m is not None and m >= objective - TAU:
                return vecs, m
    return None


def _canonical(V: np.ndarray) -> tuple[tuple[float, ...], ...]:
    return tuple(sorted(tuple(float(x) for x in v) for v in V))


def search_lower_bound(
    norm: NormSpec,
    k: int,
    *,
    strict: bool = False,
    strict_margin: float = DEFAULT_STRICT_MARGIN,
    budget: int = DEFAULT_BUDGET,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    tol: float = TAU,
) -> SearchResult:
    """Look for ``k`` unit vectors with large minimum pairwise distance.

    A certificate is returned when the best configuration reaches 1
    (within ``tol``) or, in strict mode, ``1 + strict_margin``; the best
    objective is reported either way. Among restarts tied at the best
    objective the lexicographically smallest sorted vector list wins.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    rng = np.random.default_rng(seed)
    annealed = _anneal(norm, k, restarts, budget, rng)
    finals = []
    for r in range(restarts):
        V = _polish(norm, annealed[r], rng)
        obj = float(_pairwise(norm, V).min())
        finals.append((obj, _canonical(V)))
    best = max(o for o, _ in finals)
    objective, vectors = min((c for c in finals if c[0] >= best - 1e-12), key=lambda c: c[1])

    cert_vectors, cert_min = vectors, objective
    if norm.exact:
        snapped = _snap_exact(norm, np.array(vectors), objective)
        if snapped is not None:
            cert_vectors, cert_min = tuple(sorted(snapped[0])), snapped[1]
    if isinstance(cert_min, Fraction):
        reached = cert_min > 1 if strict else cert_min >= 1
    else:
        reached = cert_min >= 1 + strict_margin if strict else cert_min >= 1 - tol
    cert = None
    if reached:
        candidate = PackingCertificate.build(norm, cert_vectors, strict, seed)
        if verify_certificate(candidate, tol, strict_margin):
            cert = candidate
    return SearchResult(cert, max(objective, float(cert_min)), vectors, strict, seed, restarts, budget)
