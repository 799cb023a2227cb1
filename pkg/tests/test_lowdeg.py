import json
import math
from fractions import Fraction

import pytest

import minkmst.lowdeg as lowdeg
from minkmst import (
    NormSpec,
    PerturbationParams,
    PointSet,
    check_incident_angles,
    degree_report,
    enumerate_msts,
    is_generic,
    known_packing,
    low_degree_mst,
    sample_perturbation,
    star_hard_instance,
)
from minkmst.errors import PerturbationError
from minkmst.instances import cross5, hexagon_center, unit_square
from minkmst.oracle import brute_force_msts
from minkmst.packing import PackingCertificate, strict_hadwiger_upper

from conftest import random_instances

L1, L2, LINF = NormSpec.l1(), NormSpec.l2(), NormSpec.linf()


@pytest.mark.parametrize("norm", [L1, L2, LINF, NormSpec.lp(3)], ids=["l1", "l2", "linf", "lp3"])
def test_perturbation_stays_in_balls(norm):
    pts = random_instances(1, 4, sizes=[8])[0]
    eps = Fraction(1, 50)
    for seed in range(5):
        moved = sample_perturbation(pts, eps, norm, seed)
        assert len(moved) == len(pts)
        for x, y in zip(pts, moved):
            assert norm.distance(x, y) <= eps + (0 if norm.exact else 1e-12)
        for i in range(len(pts)):
            for j in range(i):
                d0, d1 = norm.distance(pts[i], pts[j]), norm.distance(moved[i], moved[j])
                assert abs(d0 - d1) <= 2 * eps + (0 if norm.exact else 1e-12)


def test_perturbation_exact_stays_rational():
    moved = sample_perturbation(cross5(), Fraction(1, 10), L1, 0)
    assert moved.exact


def test_perturbation_zero_and_too_large():
    pts = unit_square()
    assert sample_perturbation(pts, 0, L2, 1) == pts
    with pytest.raises(ValueError):
        sample_perturbation(pts, 1, L2, 1)


def test_is_generic_examples():
    tri = PointSet.from_points([(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2)])
    assert not is_generic(tri, L2, 1e-6)
    line = PointSet.from_points([(0, 0), (1, 0), (3, 0)])
    assert is_generic(line, L2, 0.5)


def test_size_two_angles_are_not_rejected():
    # perturbing along the flat sides of the cube keeps the opposite rays at size exactly 2
    pts = PointSet.from_points([(0, 0), (1, Fraction(1, 10)), (-1, Fraction(1, 5))])
    o = pts[0]
    from minkmst import angle_size

    assert angle_size(LINF, pts[1], o, pts[2]) == 2
    assert is_generic(pts, LINF, 1e-6)


def test_low_degree_examples():
    r = low_degree_mst(cross5(), L1, PerturbationParams(seed=7))
    assert r.tree.max_degree == 4 and r.trace.final_is_mst_of_S
    assert r.tree.total_length == 4
    r = low_degree_mst(hexagon_center(), L2, PerturbationParams(seed=7))
    assert r.tree.max_degree <= 5
    assert abs(r.tree.total_length - 6) <= 1e-9


def test_low_degree_small_cases():
    r = low_degree_mst(PointSet.from_points([(0, 0), (2, 1)]), L2)
    assert r.tree.edges == ((0, 1),) and r.trace.rounds == []
    r = low_degree_mst(PointSet.from_points([(5, 5)]), L2)
    assert r.tree.edges == () and r.tree.n == 1


def test_trace_invariants_and_determinism():
    pts = random_instances(1, 21, sizes=[7])[0]
    a = low_degree_mst(pts, LINF, PerturbationParams(seed=3))
    b = low_degree_mst(pts, LINF, PerturbationParams(seed=3))
    assert json.dumps(a.trace.to_dict()) == json.dumps(b.trace.to_dict())
    eps = [r.epsilon for r in a.trace.rounds]
    assert len(eps) == 20 and all(x > y for x, y in zip(eps, eps[1:]))
    assert eps[0] < min(LINF.distance(p, q) for k, p in enumerate(pts) for q in pts.points[:k])
    assert a.trace.final_is_mst_of_S


def test_sandwich_on_random_instances():
    for pts in random_instances(25, 31, sizes=range(4, 8)):
        for norm in (L1, L2, LINF):
            rep = degree_report(pts, norm)
            got = low_degree_mst(pts, norm, PerturbationParams(seed=0)).tree.max_degree
            assert rep.delta_minus <= got <= strict_hadwiger_upper(norm)


def test_generic_sets_have_strict_angles():
    checked = 0
    for pts in random_instances(20, 8, sizes=range(4, 8)):
        for norm in (L1, L2, LINF):
            moved = sample_perturbation(pts, Fraction(1, 40), norm, 0)
            if not is_generic(moved, norm, 1e-6):
                continue
            checked += 1
            for t in enumerate_msts(moved, norm)[0]:
                rep = check_incident_angles(t, moved, norm)
                assert rep.min_size is None or rep.min_size > 1
    assert checked > 40


def test_resample_limit(monkeypatch):
    monkeypatch.setattr(lowdeg, "is_generic", lambda *a, **k: False)
    with pytest.raises(PerturbationError):
        low_degree_mst(unit_square(), L2, PerturbationParams(resample_limit=3))


def test_params_validation():
    with pytest.raises(ValueError):
        PerturbationParams(shrink=Fraction(3, 2))
    with pytest.raises(ValueError):
        PerturbationParams(genericity_gap=0)
    with pytest.raises(ValueError):
        low_degree_mst(unit_square(), L2, PerturbationParams(epsilon0=Fraction(2)))


@pytest.mark.parametrize(
    "name, norm, k",
    [("pentagon-l2-strict", L2, 5), ("axes-l1-strict", L1, 4), ("signs-linf-strict", LINF, 4)],
)
def test_star_instances(name, norm, k):
    cert = known_packing(name, 2)
    pts = star_hard_instance(norm, cert)
    assert len(pts) == k + 1 and pts.labels[0] == "o"
    rep = degree_report(pts, norm)
    assert rep.mst_count == 1 and rep.delta_minus == k == rep.delta_plus
    assert brute_force_msts(pts, norm) == [tuple((0, j) for j in range(1, k + 1))]


def test_star_instance_needs_strict_certificate():
    with pytest.raises(ValueError):
        star_hard_instance(L2, known_packing("hexagon-l2"))
    with pytest.raises(ValueError):
        star_hard_instance(L1, known_packing("pentagon-l2-strict"))
    flat = PackingCertificate.build(LINF, [(1, 0), (0, 1), (-1, 0), (0, -1)], strict=False)
    with pytest.raises(ValueError):
        star_hard_instance(LINF, flat)
