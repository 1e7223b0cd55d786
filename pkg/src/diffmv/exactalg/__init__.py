"""Exact integer/rational linear algebra and finitely generated abelian groups."""

from .groups import (
    AbHom,
    FgAbGroup,
    IllDefinedHomomorphism,
    cokernel_presentation,
    direct_sum,
    exact_at,
    hom_kernel_image,
    in_subgroup,
    preimage_solve,
    quotient_group,
    subgroup,
    subgroup_contains,
    subgroups_equal,
    torsion_subgroup,
    zero_hom,
)
from .matrix import IntMatrix, RatMatrix
from .snf import (
    IntegerSolver,
    RationalSolver,
    SmithForm,
    integer_kernel,
    invariant_factors,
    rational_rank,
    smith_decomposition,
    smith_normal_form,
    solve_linear,
)

__all__ = [
    "AbHom",
    "FgAbGroup",
    "IllDefinedHomomorphism",
    "IntMatrix",
    "IntegerSolver",
    "RatMatrix",
    "RationalSolver",
    "SmithForm",
    "cokernel_presentation",
    "direct_sum",
    "exact_at",
    "hom_kernel_image",
    "in_subgroup",
    "integer_kernel",
    "invariant_factors",
    "preimage_solve",
    "quotient_group",
    "rational_rank",
    "smith_decomposition",
    "smith_normal_form",
    "solve_linear",
    "subgroup",
    "subgroup_contains",
    "subgroups_equal",
    "torsion_subgroup",
    "zero_hom",
]
