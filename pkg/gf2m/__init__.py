"""gf2m module - GF(2^m) and GF(2)[x] arithmetic."""

from .field import (
    PRIMITIVE_POLYS,
    FieldElement,
    FieldError,
    FieldTable,
    cyclotomic_coset,
    field_table_new,
    gf_add,
    gf_mul,
    minimal_polynomial,
    poly_eval,
)
from .poly import Gf2Poly, poly_divmod, poly_gcd, poly_lcm, poly_lcm_all, poly_mul

__all__ = [
    "PRIMITIVE_POLYS",
    "FieldElement",
    "FieldError",
    "FieldTable",
    "Gf2Poly",
    "cyclotomic_coset",
    "field_table_new",
    "gf_add",
    "gf_mul",
    "minimal_polynomial",
    "poly_divmod",
    "poly_eval",
    "poly_gcd",
    "poly_lcm",
    "poly_lcm_all",
    "poly_mul",
]
