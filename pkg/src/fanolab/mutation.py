"""Polygon mutation and breadth-first exploration of mutation classes.

Convention: the grading u takes its maximum h > 0 on the edge being
contracted. The slice at height r > 0 loses r copies of the segment [0, F]
at its F-end; the slice at height r < 0 gains |r| copies at the same end.
The inverse of (u, F) is (-u, F).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import FanoError
from .lattice import Point, UnimodularMap, dot, is_primitive
from .polygon import FanoPolygon, convex_hull, normal_form, validate


@dataclass(frozen=True)
class MutationData:
    u: Point  # grading covector, positive on the contracted edge
    F: Point  # factor direction, <u|F> = 0

    def __post_init__(self):
        if not (is_primitive(self.u) and is_primitive(self.F)) or dot(self.u, self.F) != 0:
            raise FanoError("INVALID_DATA", f"need primitive u, F with <u|F> = 0, got u={self.u}, F={self.F}")

    def inverse(self) -> "MutationData":
        return MutationData((-self.u[0], -self.u[1]), self.F)

    def to_json(self) -> dict:
        return {"u": list(self.u), "F": list(self.F)}


@dataclass(frozen=True)
class MutationResult:
    raw: FanoPolygon
    normal: FanoPolygon


def slice_frame(u: Point, F: Point) -> UnimodularMap:
    """Map p -> (s, r) with r = <u|p> and F -> (1, 0)."""
    # s-row v solves <v|F> = 1; since F is perpendicular to u the matrix [v; u] is unimodular
    _, a, b = _egcd(F[0], F[1])
    return UnimodularMap(a, b, u[0], u[1])


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def _slices(coords: list[tuple[int, int]]):
    """Per integer height r, the [smin, smax] range of the polygon in (s, r) coordinates."""
    rs = [p[1] for p in coords]
    n = len(coords)
    out = {}
    for r in range(min(rs), max(rs) + 1):
        xs = []
        for i in range(n):
            (s0, r0), (s1, r1) = coords[i], coords[(i + 1) % n]
            if r0 == r1:
                if r0 == r:
                    xs += [Fraction(s0), Fraction(s1)]
            elif min(r0, r1) <= r <= max(r0, r1):
                xs.append(s0 + Fraction((r - r0) * (s1 - s0), r1 - r0))
        out[r] = (min(xs), max(xs))
    return out


def mutate_polygon(P: FanoPolygon, data: MutationData) -> MutationResult:
    M = slice_frame(data.u, data.F)
    coords = [M(v) for v in P.vertices]
    pieces = []
    for r, (lo, hi) in _slices(coords).items():
        if r > 0:
            if hi - lo < r:
                raise FanoError("NOT_MUTABLE", f"slice at height {r} is shorter than {r}*F")
            hi -= r
        elif r < 0:
            hi -= r
        pieces += [(lo, Fraction(r)), (hi, Fraction(r))]
    hull = convex_hull(pieces)
    if any(x.denominator != 1 for p in hull for x in p):
        raise FanoError("NOT_MUTABLE", "mutated polygon has non-lattice vertices")
    Minv = M.inverse()
    verts = [Minv((int(s), int(r))) for s, r in hull]
    raw = validate(verts)
    return MutationResult(raw, normal_form(raw))


def available_mutations(P: FanoPolygon) -> list[MutationData]:
    """One mutation per edge carrying a T-cone; F follows the counterclockwise edge direction."""
    out = []
    for E in P.edges:
        if E.width >= E.height:
            out.append(MutationData((-E.normal[0], -E.normal[1]), E.direction))
    return out


@dataclass
class MutationGraph:
    nodes: list[FanoPolygon]
    arrows: list[tuple[int, int, MutationData]]
    depth: int
    complete: bool
    index: dict = field(default_factory=dict, repr=False)

    def __contains__(self, P: FanoPolygon) -> bool:
        return normal_form(P) in self.index

    def to_json(self) -> dict:
        return {
            "nodes": [n.to_json() for n in self.nodes],
            "arrows": [{"from": a, "to": b, **d.to_json()} for a, b, d in self.arrows],
            "depth": self.depth,
            "complete": self.complete,
        }


def mutation_graph(P: FanoPolygon, max_nodes: int = 10000, max_depth: int = 12) -> MutationGraph:
    """Breadth-first search over normal forms reachable by single mutations."""
    root = normal_form(P)
    nodes, index, arrows = [root], {root: 0}, []
    frontier = deque([(0, 0)])
    complete, reached = True, 0
    while frontier:
        i, depth = frontier.popleft()
        if depth >= max_depth:
            if any(mutate_polygon(nodes[i], d).normal not in index for d in available_mutations(nodes[i])):
                complete = False
            continue
        for data in available_mutations(nodes[i]):
            Q = mutate_polygon(nodes[i], data).normal
            if Q not in index:
                if len(nodes) >= max_nodes:
                    complete = False
                    continue
                index[Q] = len(nodes)
                nodes.append(Q)
                frontier.append((index[Q], depth + 1))
                reached = max(reached, depth + 1)
            arrows.append((i, index[Q], data))
    return MutationGraph(nodes, arrows, reached, complete, index)
