"""Exact lattice-polygon toolkit: singularity content, mutation, maximally
mutable Laurent polynomials, monodromy blocks, and period operators."""
from .cones import singularity_content
from .errors import FanoError
from .mutation import MutationData, mutate_polygon
from .polygon import FanoPolygon, normal_form, polygon

__all__ = [
    "FanoError",
    "FanoPolygon",
    "MutationData",
    "mutate_polygon",
    "normal_form",
    "polygon",
    "singularity_content",
]
