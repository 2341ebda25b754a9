from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from corpus import (
    CORPUS,
    THIRD_HEXAGON,
    MUTATION_SOURCE,
    PROJECTIVE_PLANE,
    SMOOTH_QUADRILATERAL,
    THIRD_TRIANGLE,
)
from fanolab.cones import r_cone_interior_point_count
from fanolab.errors import FanoError
from fanolab.lattice import AffineExpression
from fanolab.laurent import (
    EdgeMode,
    FactorAssignment,
    LaurentPolynomial,
    Param,
    SymbolicLaurentPolynomial,
    edge_coefficients,
    is_mutable,
    k_eff,
    mutate_laurent,
    newton_polygon,
    slice,
    standard_mmlp,
)
from fanolab.mutation import MutationData, available_mutations, mutate_polygon
from fanolab.periods import period_sequence
from fanolab.polygon import polygon
from strategies import unimodular_maps

P2_F = LaurentPolynomial.monomials((1, 0), (0, 1), (-1, -1))
SOURCE_DATA = MutationData((0, 1), (-1, 0))


def test_newton_polygons():
    assert newton_polygon(P2_F) == polygon(PROJECTIVE_PLANE)
    quad = LaurentPolynomial.monomials((1, 0), (0, 1), (-1, -1), (1, 1))
    assert newton_polygon(quad) == polygon(SMOOTH_QUADRILATERAL)
    with pytest.raises(FanoError, match="NOT_FANO"):
        newton_polygon(LaurentPolynomial({(0, 0): 3}))


def test_slices():
    assert slice(P2_F, (0, 1), 1) == {0: 1}
    assert slice(P2_F, (0, 1), 5) == {}


def test_edge_coefficients():
    assert edge_coefficients(2, 4, EdgeMode.BINOMIAL) == [1, 4, 6, 4, 1]
    assert edge_coefficients(3, 1, EdgeMode.BINOMIAL) == [1, 1]
    # T-part (1+x)^2 times the R-part 1 + x
    assert edge_coefficients(2, 3, EdgeMode.T_BINOMIAL) == [1, 3, 3, 1]
    assert edge_coefficients(3, 5, EdgeMode.T_BINOMIAL) == [1, 3, 4, 4, 3, 1]


def test_projective_plane_mmlp():
    res = standard_mmlp(polygon(PROJECTIVE_PLANE))
    assert res.f == P2_F
    assert res.free_params == []


def grid_coefficient(f, e):
    return AffineExpression.lift(f.terms.get(e, Fraction(0)))


def test_grid_mmlp():
    res = standard_mmlp(polygon(THIRD_HEXAGON))
    f = res.f
    p, q = Param(1, -1, 1), Param(1, 1, 1)
    assert res.free_params == [p, q]
    P, Q = AffineExpression.param(p), AffineExpression.param(q)
    assert grid_coefficient(f, (0, 1)) == P + Q - 2
    assert grid_coefficient(f, (-1, 0)) == P + 3
    assert grid_coefficient(f, (1, 0)) == Q + 3
    assert (0, 0) not in f.terms
    assert [f.terms[(x, -1)] for x in range(-2, 3)] == [1, 4, 6, 4, 1]
    assert [f.terms[(x, 2)] for x in (-1, 0, 1)] == [1, 2, 1]
    assert [f.terms[(-2, y)] for y in (-1, 0, 1)] == [1, 2, 1]
    assert [f.terms[(2, y)] for y in (-1, 0, 1)] == [1, 2, 1]


def test_grid_top_row_is_a_square():
    f = standard_mmlp(polygon(THIRD_HEXAGON)).f
    top = slice(f, (0, 1), 2, (1, 0))
    assert sorted(top.items()) == [(-1, 1), (0, 2), (1, 1)]


def test_mutability():
    f = standard_mmlp(polygon(THIRD_HEXAGON)).f.evaluate({Param(1, -1, 1): 5, Param(1, 1, 1): 5})
    Pg = polygon(THIRD_HEXAGON)
    assert all(is_mutable(f, d) for d in available_mutations(Pg))
    bad = LaurentPolynomial({**f.terms, (0, 2): Fraction(3)})
    top = MutationData((0, 1), (1, 0))
    assert not is_mutable(bad, top)
    with pytest.raises(FanoError, match="NOT_MUTABLE"):
        mutate_laurent(bad, top)
    assert all(is_mutable(P2_F, d) for d in available_mutations(polygon(PROJECTIVE_PLANE)))


def test_mutation_commutes_with_newton_polygon():
    P = polygon(MUTATION_SOURCE)
    f = standard_mmlp(P).f.evaluate({Param(1, -1, 1): 2})
    g = mutate_laurent(f, SOURCE_DATA)
    assert newton_polygon(g) == mutate_polygon(P, SOURCE_DATA).raw
    assert mutate_laurent(g, SOURCE_DATA.inverse()) == f
    assert period_sequence(f, 12) == period_sequence(g, 12)


@settings(max_examples=25, deadline=None)
@given(unimodular_maps())
def test_mutability_is_unimodular_invariant(M):
    f = standard_mmlp(polygon(MUTATION_SOURCE)).f.evaluate({Param(1, -1, 1): 2})
    for d in available_mutations(polygon(MUTATION_SOURCE)) + [MutationData((1, 0), (0, 1))]:
        moved = MutationData(M.dual(d.u), M(d.F))
        assert is_mutable(f, d) == is_mutable(f.transform(M), moved)


@pytest.mark.parametrize("vertices", CORPUS)
def test_free_parameters_match_r_cone_points(vertices):
    P = polygon(vertices)
    res = standard_mmlp(P, closure_depth=2)
    assert len(res.free_params) == r_cone_interior_point_count(P)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=2, max_size=2))
def test_specializations_stay_mutable(values):
    P = polygon(THIRD_HEXAGON)
    res = standard_mmlp(P)
    f = res.f.evaluate(dict(zip(res.free_params, values)))
    assert all(is_mutable(f, d) for d in available_mutations(P))


def test_symbolic_json_round_trip():
    f = standard_mmlp(polygon(THIRD_HEXAGON)).f
    doc = f.to_json()
    assert doc["params"] == ["a[-1,1]", "a[1,1]"]
    back = SymbolicLaurentPolynomial.from_json(doc)
    assert back.param_order == doc["params"]
    g = LaurentPolynomial.from_json(P2_F.to_json())
    assert g == P2_F


def test_k_eff():
    assert k_eff(polygon(PROJECTIVE_PLANE)) == 3
    T = polygon(THIRD_TRIANGLE)
    # only the top edge carries T-cones, and all six share the factor 1 + x
    assert k_eff(T) == 1
    std = FactorAssignment.standard(T)
    distinct = FactorAssignment(tuple(tuple((1, j + 1) for j in range(len(f))) for f in std.factors))
    assert k_eff(T, distinct) == sum(len(f) for f in std.factors) == 6
    with pytest.raises(FanoError, match="BAD_INPUT"):
        k_eff(T, FactorAssignment(std.factors[:1]))
