"""Exact scalar and matrix arithmetic."""

from .cyclotomic import CycScalar, cyclotomic_polynomial, embed, euler_phi
from .matrix import (
    CycMatrix,
    column_space_basis,
    is_invertible,
    kernel_matrix,
    mat_det,
    mat_inverse,
    mat_kernel,
    mat_rank,
    mat_solve,
    rref,
)
from .units import UnitScalar, common_conductor, format_rational, rational, unit_pow, unit_product

__all__ = [
    "CycMatrix",
    "CycScalar",
    "UnitScalar",
    "column_space_basis",
    "common_conductor",
    "cyclotomic_polynomial",
    "embed",
    "euler_phi",
    "format_rational",
    "is_invertible",
    "kernel_matrix",
    "mat_det",
    "mat_inverse",
    "mat_kernel",
    "mat_rank",
    "mat_solve",
    "rational",
    "rref",
    "unit_pow",
    "unit_product",
]
