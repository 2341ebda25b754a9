"""Splitting edge cones into T-cones and an R-cone; singularity content."""
from __future__ import annotations

from dataclasses import dataclass, field

from .lattice import Point, add, cone_type, det, primitive_part, scale
from .polygon import Edge, FanoPolygon, interior_lattice_points


@dataclass(frozen=True, order=True)
class BasketEntry:
    """An R-cone of type 1/r(1,a) over a segment of height h and width w < h."""

    r: int
    a: int
    height: int
    width: int

    def __str__(self):
        return f"1/{self.r}(1,{self.a})[h={self.height},w={self.width}]"


@dataclass(frozen=True)
class RCone:
    span: tuple[Point, Point]
    width: int
    r: int
    a: int


@dataclass(frozen=True)
class EdgeDecomposition:
    edge: Edge
    k: int
    t_spans: tuple[tuple[Point, Point], ...]
    r_cone: RCone | None

    @property
    def cones(self):
        spans = list(self.t_spans)
        if self.r_cone:
            spans.append(self.r_cone.span)
        return spans


@dataclass(frozen=True)
class SingularityContent:
    k: int
    basket: tuple[BasketEntry, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "basket", tuple(sorted(self.basket)))

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "basket": [{"r": b.r, "a": b.a, "height": b.height, "width": b.width} for b in self.basket],
        }

    @staticmethod
    def from_json(obj: dict) -> "SingularityContent":
        return SingularityContent(
            int(obj["k"]),
            tuple(BasketEntry(int(b["r"]), int(b["a"]), int(b["height"]), int(b["width"])) for b in obj["basket"]),
        )


def decompose_edge(E: Edge, placement: int = 0) -> EdgeDecomposition:
    """Split the cone over E into floor(w/h) T-cones and at most one R-cone.

    `placement` is the number of T-cones laid down before the R-cone, walking
    from the tail; any value in [0, k] is a valid subdivision.
    """
    h, w = E.height, E.width
    k, e = divmod(w, h)
    if not 0 <= placement <= k:
        raise ValueError(f"placement must lie in [0, {k}]")
    d = E.direction
    at = lambda j: add(E.tail, scale(j, d))  # noqa: E731
    spans, r_cone, pos = [], None, 0
    for i in range(k + 1):
        if i == placement and e:
            lo, hi = at(pos), at(pos + e)
            r, a = cone_type(primitive_part(lo)[0], primitive_part(hi)[0])
            r_cone = RCone((lo, hi), e, r, a)
            pos += e
        if i < k:
            spans.append((at(pos), at(pos + h)))
            pos += h
    return EdgeDecomposition(E, k, tuple(spans), r_cone)


def singularity_content(P: FanoPolygon) -> SingularityContent:
    k, basket = 0, []
    for E in P.edges:
        dec = decompose_edge(E)
        k += dec.k
        if dec.r_cone:
            basket.append(BasketEntry(dec.r_cone.r, dec.r_cone.a, E.height, dec.r_cone.width))
    return SingularityContent(k, tuple(basket))


def strictly_inside(p: Point, span: tuple[Point, Point]) -> bool:
    lo, hi = span
    return det(lo, p) > 0 and det(p, hi) > 0


def r_cone_interior_points(P: FanoPolygon, placements: dict[int, int] | None = None) -> list[Point]:
    """Interior lattice points of P lying strictly inside some R-cone."""
    placements = placements or {}
    spans = []
    for i, E in enumerate(P.edges):
        dec = decompose_edge(E, placements.get(i, 0))
        if dec.r_cone:
            spans.append(dec.r_cone.span)
    return [p for p in interior_lattice_points(P) if any(strictly_inside(p, s) for s in spans)]


def r_cone_interior_point_count(P: FanoPolygon, placements: dict[int, int] | None = None) -> int:
    return len(r_cone_interior_points(P, placements))
