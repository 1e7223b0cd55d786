"""Constructive Mayer-Vietoris gluing for differential cohomology on simplicial complexes."""

from .cohomology import cohomology_group, verify_diagram2
from .diffcoh import DiffClass, diff_equal, diff_make, verify_diagram1
from .gluing import glue, obstruction_group, omega, verify_lemmas
from .scene import parse_scene
from .simplicial import CoeffRing, GradedCoefficients, SimplicialComplex, validate_decomposition

__version__ = "0.1.0"

__all__ = [
    "CoeffRing",
    "DiffClass",
    "GradedCoefficients",
    "SimplicialComplex",
    "cohomology_group",
    "diff_equal",
    "diff_make",
    "glue",
    "obstruction_group",
    "omega",
    "parse_scene",
    "validate_decomposition",
    "verify_diagram1",
    "verify_diagram2",
    "verify_lemmas",
]
