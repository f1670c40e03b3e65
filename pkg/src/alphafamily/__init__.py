"""Exact alpha-shape families for 3D point sets.

The pipeline: an exact predicate kernel with symbolic tie-breaking, a
flip-based Delaunay triangulation over a packed triangle-edge structure,
per-simplex membership intervals, the sorted threshold spectrum, family
signatures (components, volume, area, face counts), and serialization of
the whole family for mesh export and interactive viewing.
"""

from .kernel import ExactPoint, KernelStats, RadiusSq, Sign
from .shell import FamilyBundle, PointSet, build_bundle, export_mesh, parse_points

__all__ = [
    "ExactPoint",
    "KernelStats",
    "RadiusSq",
    "Sign",
    "FamilyBundle",
    "PointSet",
    "build_bundle",
    "export_mesh",
    "parse_points",
]
