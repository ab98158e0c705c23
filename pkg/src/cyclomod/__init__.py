"""Exact computational models of modular complexes, dihedral Lie coalgebras
and Voronoi cell complexes for GL_m(Z), m <= 4, over the rationals."""

from .exact_linalg import (
    BudgetExceeded,
    NotAComplexError,
    PresentedSpace,
    SparseMatrix,
    WellDefinednessError,
    complex_cohomology,
    induced_map,
    kernel_basis,
    quotient_dim,
    rank,
)

__all__ = [
    "BudgetExceeded",
    "NotAComplexError",
    "PresentedSpace",
    "SparseMatrix",
    "WellDefinednessError",
    "complex_cohomology",
    "induced_map",
    "kernel_basis",
    "quotient_dim",
    "rank",
]
