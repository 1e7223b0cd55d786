"""Cohomology with Z, Q and Q/Z coefficients, coefficient maps, and Mayer-Vietoris."""

from .diagram2 import consistent_sign, verify_diagram2
from .groups import (
    CohClass,
    DualHomology,
    FlatCohomology,
    IntCohomology,
    LatticeData,
    NotACocycle,
    NotInLattice,
    RatCohomology,
    bockstein,
    ch,
    cohomology_group,
    compute_cohomology,
    lattice_data,
    mod_lattice_p,
)
from .mv import MayerVietoris, MvMaps, mayer_vietoris, mv_maps

__all__ = [
    "CohClass",
    "DualHomology",
    "FlatCohomology",
    "IntCohomology",
    "LatticeData",
    "MayerVietoris",
    "MvMaps",
    "NotACocycle",
    "NotInLattice",
    "RatCohomology",
    "bockstein",
    "ch",
    "cohomology_group",
    "compute_cohomology",
    "consistent_sign",
    "lattice_data",
    "mayer_vietoris",
    "mod_lattice_p",
    "mv_maps",
    "verify_diagram2",
]
