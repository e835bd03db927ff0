"""Exact computations in polytope-algebra models of line arrangements."""
from __future__ import annotations

from .arrangement import LineArrangement, SubspaceLattice, build_lattice, dowling_wilson_profile
from .degree_one import DegreeOneSpace, af_check, hr_equality_check, pair_top
from .exact_scalar import RadicalScalar
from .measures import WeightedDirections
from .polytope_geom import Polytope, Zonotope, hull, surface_class
from .sym_algebra import SymAlgebra, SymElement

__all__ = [
    "DegreeOneSpace",
    "LineArrangement",
    "Polytope",
    "RadicalScalar",
    "SubspaceLattice",
    "SymAlgebra",
    "SymElement",
    "WeightedDirections",
    "Zonotope",
    "af_check",
    "build_lattice",
    "dowling_wilson_profile",
    "hr_equality_check",
    "hull",
    "pair_top",
    "surface_class",
]
