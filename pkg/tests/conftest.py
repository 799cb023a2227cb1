import random

import pytest
from hypothesis import strategies as st

from minkmst import NormSpec, parse_norm
from minkmst.instances import random_pointset

NORM_NAMES = ["l1", "l2", "linf", "lp:3"]

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=20)


def rational_vectors(dim=2):
    return st.lists(rationals, min_size=dim, max_size=dim).map(tuple)


def square_poly():
    return NormSpec.polyhedral([(1, 1), (1, -1), (-1, 1), (-1, -1)])


def cross_poly(dim=2):
    verts = []
    for i in range(dim):
        for s in (1, -1):
            verts.append(tuple(s if k == i else 0 for k in range(dim)))
    return NormSpec.polyhedral(verts)


def hexagon_poly():
    # rational centrally symmetric hexagon
    return NormSpec.polyhedral([(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)])


@pytest.fixture(params=NORM_NAMES)
def norm(request):
    return parse_norm(request.param, 2)


def random_instances(count, seed, sizes=range(3, 9), dim=2):
    rng = random.Random(seed)
    sizes = list(sizes)
    return [random_pointset(rng.choice(sizes), dim, rng) for _ in range(count)]


# ------------------------------------------------------------------ acceptance summary

# name -> (True pass / False fail / None report-only, detail)
ACCEPTANCE_RESULTS: dict[str, tuple[bool | None, str]] = {}


def _order(name: str):
    head = name.split()[0].rstrip(".")
    digits = "".join(ch for ch in head if ch.isdigit())
    return int(digits), head


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS, key=_order):
        ok, detail = ACCEPTANCE_RESULTS[name]
        status = "INFO" if ok is None else "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{status}  {name}: {detail}")
