import math
from fractions import Fraction

import pytest

from minkmst import NormSpec, PackingCertificate, known_packing, known_values_table, lookup, verify_certificate
from minkmst.errors import DimensionMismatchError
from minkmst.packing import (
    PACKING_NAMES,
    UnknownPackingError,
    body_of,
    hadwiger_number,
    pairwise_min,
    strict_hadwiger_number,
)

L2 = NormSpec.l2()


def test_hexagon_certificate():
    cert = known_packing("hexagon-l2")
    assert cert.k == 6 and not cert.strict
    assert abs(cert.min_pairwise - 1) <= 1e-12
    assert verify_certificate(cert)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_signs_linf(d):
    cert = known_packing("signs-linf-strict", d)
    assert cert.k == 2**d and cert.min_pairwise == 2 and cert.exact
    assert verify_certificate(cert)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_grid_linf(d):
    cert = known_packing("grid-linf", d)
    assert cert.k == 3**d - 1 and cert.min_pairwise >= 1 and cert.exact
    assert verify_certificate(cert)
    if d == 1:
        return
    assert cert.min_pairwise == 1
    # a grid is touching, not strict
    assert not verify_certificate(PackingCertificate.build(cert.norm, cert.vectors, strict=True))


def test_closed_forms():
    pent = known_packing("pentagon-l2-strict")
    assert abs(pent.min_pairwise - 2 * math.sin(math.radians(36))) <= 1e-12
    ico = known_packing("icosahedron-l2-strict")
    assert ico.k == 12 and ico.norm.dim == 3
    assert abs(ico.min_pairwise - math.sqrt(2 - 2 / math.sqrt(5))) <= 1e-12
    axes = known_packing("axes-l1-strict")
    assert axes.min_pairwise == 2 and axes.k == 4
    assert known_packing("crosspolytope-l1", 3).k == 6


@pytest.mark.parametrize("name", PACKING_NAMES)
def test_every_known_packing_verifies(name):
    assert verify_certificate(known_packing(name))


def test_unknown_packing():
    with pytest.raises(UnknownPackingError):
        known_packing("dodecagon")


def test_tampered_certificates_fail():
    cert = known_packing("hexagon-l2")
    vecs = list(cert.vectors)
    vecs[0] = tuple(1.1 * x for x in vecs[0])
    assert not verify_certificate(PackingCertificate(cert.norm, tuple(vecs), cert.min_pairwise, False, None))
    # wrong recorded minimum
    assert not verify_certificate(PackingCertificate(cert.norm, cert.vectors, 0.5, False, None))
    # duplicate vectors
    sq = known_packing("signs-linf-strict", 2)
    dup = PackingCertificate(sq.norm, sq.vectors + sq.vectors[:1], Fraction(0), False, None)
    assert not verify_certificate(dup)
    # seven points on the circle cannot be pairwise at distance one
    hept = [(math.cos(2 * k * math.pi / 7), math.sin(2 * k * math.pi / 7)) for k in range(7)]
    assert not verify_certificate(PackingCertificate.build(L2, hept, strict=False))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        verify_certificate(PackingCertificate(L2, ((1, 0, 0), (0, 1, 0)), 1, False, None))


def test_strict_margin():
    pent = known_packing("pentagon-l2-strict")
    assert verify_certificate(pent, strict_margin=0.17)
    assert not verify_certificate(pent, strict_margin=0.18)


def test_pairwise_min():
    assert pairwise_min(NormSpec.l1(), [(1, 0), (0, 1)]) == 2
    assert pairwise_min(NormSpec.l1(), [(1, 0)]) is None


def test_table_lookups():
    assert lookup("cube", "H", 3) == 26
    assert lookup("cube", "H_s", 4) == 16
    assert lookup("octahedron", "H_s") == (13, 14)
    assert lookup("octahedron", "H") == 18
    assert lookup("euclidean-ball-3d", "H_s") == 12
    assert lookup("euclidean-plane", "delta_minus") == 5
    with pytest.raises(KeyError):
        lookup("dodecahedron", "H")
    for row in known_values_table():
        assert row.lower <= row.upper and row.statement


def test_body_of():
    assert body_of(NormSpec.l1()) == body_of(NormSpec.linf()) == "parallelogram"
    assert body_of(L2) == body_of(NormSpec.lp(3)) == "planar-other"
    assert body_of(NormSpec.l1(3)) == "octahedron"
    assert hadwiger_number(NormSpec.linf(3)) == 26
    assert strict_hadwiger_number(L2) == 5
    assert strict_hadwiger_number(NormSpec.lp(3, 3)) is None
