"""Exact Jacobi symmetric functions, Jack and interpolation polynomials,
super Jacobi polynomials over the deformed BC(m, n) root system, and the
operators and Pieri rules that tie them together.

All arithmetic is over :class:`fractions.Fraction`.
"""

from .core import (
    CertificationError,
    ParamContext,
    conjugate,
    deformed_h,
    draw_generic_params,
    finite_h,
    make_context,
    parse_partition,
    parse_rational,
    partitions_upto,
)
from .deformed import (
    a_lambda,
    b_lambda,
    chi,
    deformed_pieri_coeff,
    super_jack,
    super_jacobi,
    super_jacobi_zero_product,
)
from .eigenfunctions import binomial_coeffs, eigenvalue, jack, jacobi, jacobi_zero_closed
from .interpolation import interpolation_comb, interpolation_value
from .operators import apply_L, verify_symmetry
from .pieri import pieri_coeff_r1, van_diejen_rhs
from .poly import MultiPoly
from .symfunc import SymFunc, expand_deformed, expand_finite

__all__ = [
    "CertificationError",
    "MultiPoly",
    "ParamContext",
    "SymFunc",
    "a_lambda",
    "apply_L",
    "b_lambda",
    "binomial_coeffs",
    "chi",
    "conjugate",
    "deformed_h",
    "deformed_pieri_coeff",
    "draw_generic_params",
    "eigenvalue",
    "expand_deformed",
    "expand_finite",
    "finite_h",
    "interpolation_comb",
    "interpolation_value",
    "jack",
    "jacobi",
    "jacobi_zero_closed",
    "make_context",
    "parse_partition",
    "parse_rational",
    "partitions_upto",
    "pieri_coeff_r1",
    "super_jack",
    "super_jacobi",
    "super_jacobi_zero_product",
    "van_diejen_rhs",
    "verify_symmetry",
]
