"""Hypothesis strategies for lattice data."""
from math import gcd

from hypothesis import assume, strategies as st

from fanolab.errors import FanoError
from fanolab.lattice import UnimodularMap
from fanolab.polygon import validate

ELEMENTARY = (
    UnimodularMap(1, 1, 0, 1),
    UnimodularMap(1, 0, 1, 1),
    UnimodularMap(0, -1, 1, 0),
    UnimodularMap(1, 0, 0, -1),
)


@st.composite
def unimodular_maps(draw, max_steps: int = 6):
    M = UnimodularMap(1, 0, 0, 1)
    for i in draw(st.lists(st.integers(0, len(ELEMENTARY) - 1), max_size=max_steps)):
        M = ELEMENTARY[i] @ M
    return M


primitive_points = st.tuples(st.integers(-4, 4), st.integers(-4, 4)).filter(lambda p: gcd(*p) == 1)


def _quadrant(sx, sy):
    return st.tuples(st.integers(1, 4).map(lambda v: sx * v), st.integers(1, 4).map(lambda v: sy * v)).filter(
        lambda p: gcd(*p) == 1
    )


@st.composite
def fano_polygons(draw):
    # one point per open quadrant keeps the origin strictly inside
    pts = [draw(_quadrant(sx, sy)) for sx, sy in ((1, 1), (-1, 1), (-1, -1), (1, -1))]
    pts += draw(st.lists(primitive_points, max_size=3))
    if draw(st.booleans()):
        pts = pts[:1] + pts[2:]
    try:
        return validate(pts)
    except FanoError:
        assume(False)
