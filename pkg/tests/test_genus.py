import pytest

from corpus import CORPUS, THIRD_HEXAGON, MUTATION_SOURCE, PROJECTIVE_PLANE, THIRD_QUADRILATERAL, THIRD_TRIANGLE
from fanolab.cones import r_cone_interior_point_count
from fanolab.genus import (
    genus_for_assignment,
    genus_report,
    mutable_genus,
    operator_order,
    sectional_genus,
    t_cones,
)
from fanolab.polygon import polygon


def test_sectional_genus():
    assert sectional_genus(polygon(PROJECTIVE_PLANE)) == 1
    assert sectional_genus(polygon(MUTATION_SOURCE)) == 8
    assert sectional_genus(polygon(THIRD_HEXAGON)) == 6


def test_mutable_genus_and_order():
    assert mutable_genus(polygon(PROJECTIVE_PLANE)) == 1
    assert operator_order(polygon(PROJECTIVE_PLANE)) == 2
    assert mutable_genus(polygon(THIRD_HEXAGON)) == 3
    # both carry two 1/3(1,1) cones, each holding one interior point
    assert mutable_genus(polygon(THIRD_TRIANGLE)) == 3
    assert mutable_genus(polygon(THIRD_QUADRILATERAL)) == 3


def test_assignment_extremes():
    P = polygon(MUTATION_SOURCE)
    cones = t_cones(P)
    assert len(cones) == 9
    assert sorted(h for _, h in cones) == [1] * 5 + [2, 2, 2, 3]
    assert genus_for_assignment(P, cones) == mutable_genus(P) == 8 - 3 - 3
    assert genus_for_assignment(P, []) == sectional_genus(P)


@pytest.mark.parametrize("vertices", CORPUS)
def test_counting_routes_agree(vertices):
    P = polygon(vertices)
    cones = t_cones(P)
    assert genus_for_assignment(P, cones) == mutable_genus(P) == r_cone_interior_point_count(P) + 1
    assert genus_for_assignment(P, cones) + sum(h * (h - 1) // 2 for _, h in cones) == sectional_genus(P)
    assert operator_order(P) % 2 == 0 and operator_order(P) >= 2


def test_report():
    doc = genus_report(polygon(THIRD_HEXAGON)).to_json()
    assert doc["sectional_genus"] == 6 and doc["mutable_genus"] == 3 and doc["operator_order"] == 6
    assert sum(e["t_cones"] for e in doc["edges"]) == 7
