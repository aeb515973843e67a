"""Exact linear algebra: rings, matrices, Smith normal form, complexes, and
spectral sequences."""

from .rings import Ring, ZZ, QQ, GF, ring_from_tag
from .matrix import Mat, hstack_cols
from .kernel import snf, snf_diagonal, int_rank, field_rank, backend_name
from .snf import (
    bareiss_det,
    field_kernel_basis,
    field_solve,
    column_space_pivots,
)
from .complexes import (
    ComplexError,
    GradedInvariants,
    CochainComplex,
    ChainComplex,
    DoubleCochainComplex,
    graded_iso,
    betti_numbers,
)
from .spectral import SSPage, ss_pages, einf_dims
from .subquotient import Subquotient, cohomology_subquotient

__all__ = [
    "Ring", "ZZ", "QQ", "GF", "ring_from_tag",
    "Mat", "hstack_cols",
    "snf", "snf_diagonal", "int_rank", "field_rank", "backend_name",
    "bareiss_det", "field_kernel_basis", "field_solve", "column_space_pivots",
    "ComplexError", "GradedInvariants", "CochainComplex", "ChainComplex",
    "DoubleCochainComplex", "graded_iso", "betti_numbers",
    "SSPage", "ss_pages", "einf_dims",
    "Subquotient", "cohomology_subquotient",
]
