"""JSON and CSV formats for point sets, trees, reports and certificates.

Exact coordinates are written as JSON integers when integral and as
decimal (or ``p/q``) strings otherwise, under an ``"exact": true`` marker.
Floating coordinates are written as shortest round-trip JSON numbers under
``"exact": false``.
"""

from __future__ import annotations

import csv
import io
import json
from decimal import Decimal
from fractions import Fraction

from .errors import InvalidInstanceError, MinkError
from .lowdeg import LowDegreeResult
from .mst import DegreeReport, Tree
from .norm import NormSpec, Scalar, format_scalar, parse_norm
from .packing import KnownValue, PackingCertificate
from .points import PointSet
from .search import SearchResult


class FormatError(MinkError, ValueError):
    """Input text is not valid JSON/CSV or does not have the expected shape."""


def dumps(obj) -> str:
    return json.dumps(obj) + "\n"


def coord_to_json(x: Scalar):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else format_scalar(x)
    return float(x)


def coord_from_json(x, exact: bool) -> Scalar:
    if isinstance(x, bool) or not isinstance(x, (int, str, Decimal, float)):
        raise FormatError(f"bad coordinate {x!r}")
    try:
        if exact:
            return Fraction(x) if not isinstance(x, float) else Fraction(repr(x))
        return float(Fraction(x)) if isinstance(x, str) else float(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad coordinate {x!r}") from exc


def _loads(text: str):
    try:
        return json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc}") from exc


def _vectors(raw, exact: bool, what: str) -> list[tuple]:
    if not isinstance(raw, list) or not all(isinstance(p, list) for p in raw):
        raise FormatError(f"{what} must be a list of coordinate lists")
    return [tuple(coord_from_json(x, exact) for x in p) for p in raw]


# ---------------------------------------------------------------- point sets


def pointset_to_dict(points: PointSet) -> dict:
    out = {"dim": points.dim, "points": [[coord_to_json(x) for x in p] for p in points]}
    if points.labels is not None:
        out["labels"] = list(points.labels)
    out["exact"] = points.exact
    return out


def dumps_pointset(points: PointSet) -> str:
    return dumps(pointset_to_dict(points))


def pointset_from_dict(data) -> PointSet:
    if not isinstance(data, dict) or "points" not in data:
        raise FormatError('point set JSON needs a "points" list')
    exact = data.get("exact", True)
    pts = _vectors(data["points"], bool(exact), "points")
    if not pts:
        raise InvalidInstanceError("empty point set")
    dim = data.get("dim", len(pts[0]))
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise FormatError('"dim" must be an integer')
    labels = data.get("labels")
    if labels is not None and not isinstance(labels, list):
        raise FormatError('"labels" must be a list')
    return PointSet(dim, tuple(pts), None if labels is None else tuple(str(s) for s in labels))


def loads_pointset(text: str) -> PointSet:
    return pointset_from_dict(_loads(text))


def _is_number(cell: str) -> bool:
    try:
        Fraction(cell.strip())
        return True
    except (ValueError, ZeroDivisionError):
        return False


def loads_points_csv(text: str) -> PointSet:
    """One point per row; an optional non-numeric last column is the label.

    A first row without any numeric cell is a header and is skipped.
    """
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    rows = [r for r in rows if not r[0].lstrip().startswith("#")]
    if rows and not any(_is_number(c) for c in rows[0]):
        rows = rows[1:]
    pts, labels = [], []
    for k, row in enumerate(rows):
        cells = [c.strip() for c in row]
        label = None
        if cells and not _is_number(cells[-1]):
            label = cells.pop()
        if not cells or not all(_is_number(c) for c in cells):
            raise FormatError(f"row {k + 1}: non-numeric coordinate")
        pts.append(tuple(Fraction(c) for c in cells))
        labels.append(label)
    if not pts:
        raise InvalidInstanceError("empty point set")
    if len({len(p) for p in pts}) != 1:
        raise InvalidInstanceError("rows have different numbers of coordinates")
    has_labels = any(s is not None for s in labels)
    lab = tuple(s if s is not None else str(k) for k, s in enumerate(labels)) if has_labels else None
    return PointSet(len(pts[0]), tuple(pts), lab)


# ---------------------------------------------------------------- trees and reports


def tree_to_dict(tree: Tree) -> dict:
    return {
        "edges": [list(e) for e in tree.edges],
        "total_length": format_scalar(tree.total_length),
        "exact": isinstance(tree.total_length, Fraction),
        "degrees": list(tree.degree_sequence),
        "max_degree": tree.max_degree,
    }


def edges_from_dict(data) -> list[tuple[int, int]]:
    if not isinstance(data, dict) or not isinstance(data.get("edges"), list):
        raise FormatError('tree JSON needs an "edges" list')
    try:
        return [(int(i), int(j)) for i, j in data["edges"]]
    except (TypeError, ValueError) as exc:
        raise FormatError("edges must be index pairs") from exc


def loads_edges(text: str) -> list[tuple[int, int]]:
    data = _loads(text)
    if isinstance(data, dict) and "tree" in data:
        data = data["tree"]
    return edges_from_dict(data)


def report_to_dict(report: DegreeReport) -> dict:
    out = {
        "delta_plus": report.delta_plus,
        "delta_minus": report.delta_minus,
        "mst_count": report.mst_count,
        "enumeration_complete": report.enumeration_complete,
    }
    if report.min_tree is not None:
        out["min_degree_tree"] = [list(e) for e in report.min_tree.edges]
    if report.max_tree is not None:
        out["max_degree_tree"] = [list(e) for e in report.max_tree.edges]
    return out


def lowdeg_to_dict(result: LowDegreeResult, norm: NormSpec) -> dict:
    return {
        "norm": norm.spec_string(),
        "seed": result.trace.params.seed,
        "tree": tree_to_dict(result.tree),
        "trace": result.trace.to_dict(),
    }


# ---------------------------------------------------------------- certificates


def cert_to_dict(cert: PackingCertificate) -> dict:
    return {
        "norm": cert.norm.spec_string(),
        "dim": cert.norm.dim,
        "k": cert.k,
        "vectors": [[coord_to_json(x) for x in v] for v in cert.vectors],
        "min_pairwise": None if cert.min_pairwise is None else format_scalar(cert.min_pairwise),
        "strict": cert.strict,
        "seed": cert.seed,
        "exact": cert.exact,
    }


def cert_from_dict(data) -> PackingCertificate:
    if not isinstance(data, dict):
        raise FormatError("certificate JSON must be an object")
    for key in ("norm", "vectors"):
        if key not in data:
            raise FormatError(f'certificate JSON needs "{key}"')
    norm = parse_norm(str(data["norm"]), data.get("dim"))
    exact = bool(data.get("exact", False))
    vectors = _vectors(data["vectors"], exact, "vectors")
    if "k" in data and data["k"] != len(vectors):
        raise FormatError('"k" does not match the number of vectors')
    mp = data.get("min_pairwise")
    if mp is not None:
        mp = coord_from_json(mp, exact)
    seed = data.get("seed")
    return PackingCertificate(norm, tuple(vectors), mp, bool(data.get("strict", False)), seed)


def loads_cert(text: str) -> PackingCertificate:
    return cert_from_dict(_loads(text))


def search_to_dict(result: SearchResult, norm: NormSpec, k: int) -> dict:
    if result.certificate is not None:
        out = cert_to_dict(result.certificate)
    else:
        out = {
            "norm": norm.spec_string(),
            "dim": norm.dim,
            "k": k,
            "vectors": [list(v) for v in result.vectors],
            "min_pairwise": format_scalar(result.objective),
            "strict": result.strict,
            "seed": result.seed,
            "exact": False,
        }
    out.update(
        certified=result.certificate is not None,
        objective=format_scalar(result.objective),
        restarts=result.restarts,
        budget=result.budget,
    )
    return out


def known_value_to_dict(row: KnownValue) -> dict:
    return {
        "body": row.body,
        "quantity": row.quantity,
        "dim": row.dim,
        "value": row.value if isinstance(row.value, int) else list(row.value),
        "statement": row.statement,
    }
