"""Genus of the general fibre and the order of its Picard-Fuchs operator."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .cones import decompose_edge, r_cone_interior_point_count
from .polygon import FanoPolygon, interior_lattice_points


@dataclass(frozen=True)
class GenusReport:
    sectional_genus: int
    mutable_genus: int
    operator_order: int
    per_edge: tuple[dict, ...]

    def to_json(self) -> dict:
        return {
            "sectional_genus": self.sectional_genus,
            "mutable_genus": self.mutable_genus,
            "operator_order": self.operator_order,
            "edges": list(self.per_edge),
        }


def sectional_genus(P: FanoPolygon) -> int:
    return len(interior_lattice_points(P))


def mutable_genus(P: FanoPolygon) -> int:
    return r_cone_interior_point_count(P) + 1


def t_cones(P: FanoPolygon) -> list[tuple[int, int]]:
    """(edge index, height) for every T-cone of P."""
    return [(i, E.height) for i, E in enumerate(P.edges) for _ in range(decompose_edge(E).k)]


def genus_for_assignment(P: FanoPolygon, mutable_cones: Iterable[tuple[int, int]]) -> int:
    """Genus when f is mutable over exactly the given T-cones (edge index, height)."""
    return sectional_genus(P) - sum(h * (h - 1) // 2 for _, h in mutable_cones)


def operator_order(P: FanoPolygon) -> int:
    return 2 * mutable_genus(P)


def genus_report(P: FanoPolygon) -> GenusReport:
    per_edge = []
    for E in P.edges:
        dec = decompose_edge(E)
        per_edge.append({
            "tail": list(E.tail),
            "head": list(E.head),
            "height": E.height,
            "width": E.width,
            "t_cones": dec.k,
            "t_cone_interior": dec.k * E.height * (E.height - 1) // 2,
            "r_cone_width": dec.r_cone.width if dec.r_cone else 0,
        })
    g = mutable_genus(P)
    return GenusReport(sectional_genus(P), g, 2 * g, tuple(per_edge))
