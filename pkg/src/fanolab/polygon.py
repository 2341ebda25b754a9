"""Fano polygons: validation, edge data, lattice points, normal form and K^2."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import FanoError
from .lattice import Point, UnimodularMap, det, dot, is_primitive, primitive_part, sub


@dataclass(frozen=True)
class Edge:
    tail: Point
    head: Point
    normal: Point  # primitive, inward
    height: int
    width: int

    @property
    def direction(self) -> Point:
        return primitive_part(sub(self.head, self.tail))[0]

    def points(self) -> list[Point]:
        dx, dy = self.direction
        return [(self.tail[0] + i * dx, self.tail[1] + i * dy) for i in range(self.width + 1)]


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Strict hull vertices, counterclockwise (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and det(sub(out[-1], out[-2]), sub(p, out[-2])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = half(pts), half(reversed(pts))
    return lower[:-1] + upper[:-1]


def _anchor(vertices: Sequence[Point]) -> tuple[Point, ...]:
    i = vertices.index(min(vertices))
    return tuple(vertices[i:]) + tuple(vertices[:i])


@dataclass(frozen=True)
class FanoPolygon:
    """Counterclockwise vertex list starting at the lexicographically smallest vertex.

    Build through `validate`; the constructor trusts its input.
    """

    vertices: tuple[Point, ...]

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(edges(self))

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self):
        return len(self.vertices)

    def transform(self, U: UnimodularMap) -> "FanoPolygon":
        return validate([U(v) for v in self.vertices])

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices]}

    @staticmethod
    def from_json(obj: dict | str) -> "FanoPolygon":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            pts = [(int(x), int(y)) for x, y in obj["vertices"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise FanoError("BAD_INPUT", f"expected {{'vertices': [[x, y], ...]}}: {exc}") from exc
        return validate(pts)


def validate(vertices: Iterable[Point]) -> FanoPolygon:
    pts = [(int(x), int(y)) for x, y in vertices]
    hull = convex_hull(pts)
    if len(hull) < 3:
        raise FanoError("NOT_2D", "points do not span the plane")
    # boundary points that are not vertices are dropped; strictly interior ones are not
    on_boundary = set(hull)
    for p in set(pts) - on_boundary:
        strict = all(det(sub(hull[(i + 1) % len(hull)], q), sub(p, q)) > 0 for i, q in enumerate(hull))
        if strict:
            raise FanoError("NOT_CONVEX", f"{p} lies strictly inside the hull of the other points")
    for i, q in enumerate(hull):
        if det(q, hull[(i + 1) % len(hull)]) <= 0:
            raise FanoError("ORIGIN_NOT_INTERIOR", "origin is not a strict interior point")
    for q in hull:
        if not is_primitive(q):
            raise FanoError("NONPRIMITIVE_VERTEX", f"vertex {q} is not primitive")
    return FanoPolygon(_anchor(hull))


def edges(P: FanoPolygon) -> list[Edge]:
    vs = P.vertices
    out = []
    for i, tail in enumerate(vs):
        head = vs[(i + 1) % len(vs)]
        (ex, ey), w = primitive_part(sub(head, tail))
        u = (-ey, ex)  # interior is to the left of a ccw edge
        out.append(Edge(tail, head, u, -dot(u, tail), w))
    return out


def _bbox(P: FanoPolygon):
    xs = [v[0] for v in P.vertices]
    ys = [v[1] for v in P.vertices]
    return range(min(xs), max(xs) + 1), range(min(ys), max(ys) + 1)


def lattice_points(P: FanoPolygon) -> list[Point]:
    xs, ys = _bbox(P)
    E = P.edges
    return [(x, y) for x in xs for y in ys if all(dot(e.normal, (x, y)) >= -e.height for e in E)]


def interior_lattice_points(P: FanoPolygon) -> list[Point]:
    xs, ys = _bbox(P)
    E = P.edges
    return [(x, y) for x in xs for y in ys if all(dot(e.normal, (x, y)) > -e.height for e in E)]


def boundary_lattice_points(P: FanoPolygon) -> list[Point]:
    return sorted({p for e in P.edges for p in e.points()})


def vertex_cone_indices(P: FanoPolygon) -> list[int]:
    """Index |det(u_left, u_right)| of the normal-fan cone dual to each vertex."""
    E = P.edges
    return [abs(det(E[i - 1].normal, E[i].normal)) for i in range(len(E))]


def anticanonical_degree(P: FanoPolygon) -> Fraction:
    """K^2 of the surface of the spanning fan, summed vertex by vertex."""
    E = P.edges
    r = vertex_cone_indices(P)
    return sum((Fraction(r[i], E[i - 1].height * E[i].height) for i in range(len(E))), Fraction(0))


def _basis_frame(e: Point) -> UnimodularMap:
    """Unimodular map sending primitive e to (1, 0), preserving orientation."""
    ex, ey = e
    # find f with det(e, f) = 1 via extended gcd
    def egcd(a, b):
        if b == 0:
            return (a, 1, 0) if a >= 0 else (-a, -1, 0)
        g, x, y = egcd(b, a % b)
        return g, y, x - (a // b) * y

    g, s, t = egcd(ex, ey)
    assert g == 1
    # s*ex + t*ey = 1 so f = (-t, s) has det(e, f) = 1
    fx, fy = -t, s
    return UnimodularMap(ex, fx, ey, fy).inverse()


def normal_form(P: FanoPolygon) -> FanoPolygon:
    """Canonical representative of the GL(2, Z) orbit of P."""
    vs = P.vertices
    n = len(vs)
    flip = UnimodularMap(1, 0, 0, -1)
    best = None
    for i in range(n):
        for step in (1, -1):
            start, nxt = vs[i], vs[(i + step) % n]
            e, _ = primitive_part(sub(nxt, start))
            U = _basis_frame(e)
            if step == -1:
                U = flip @ U
            x0, y0 = U(start)
            h = -y0  # edge sits on y = -h with the interior above
            k = x0 // h  # shear x -> x - k*y... chosen so that x0 lands in [0, h)
            S = UnimodularMap(1, k, 0, 1)
            F = S @ U
            image = [F(vs[(i + step * j) % n]) for j in range(n)]
            assert image[0][0] in range(h) and image[0][1] == -h
            cand = _anchor(image)
            if best is None or cand < best:
                best = cand
    return FanoPolygon(best)


def polygon(vertices: Iterable[Sequence[int]]) -> FanoPolygon:
    """Shorthand for `validate` accepting any pair-like input."""
    return validate([tuple(v) for v in vertices])
