"""code_factory module - BCH / punctured RM codes, permutations and check matrices."""

from .codes import (
    CodeConstructionError,
    CodeFamily,
    CodeSpec,
    build_bch,
    build_punctured_rm,
    check_polynomial,
    extend,
    puncture,
)
from .encoding import (
    encode,
    encode_batch,
    enumerate_codewords,
    generator_matrix,
    is_codeword,
    syndrome,
)
from .matrices import (
    StackedCheckMatrix,
    build_h0,
    build_stacked,
    eq1_check_matrix,
    extended_eq1_check_matrix,
)
from .permutations import IndexMap, SigmaPermutation, affine_sigma, index_map, sigma

__all__ = [
    "CodeConstructionError",
    "CodeFamily",
    "CodeSpec",
    "IndexMap",
    "SigmaPermutation",
    "StackedCheckMatrix",
    "affine_sigma",
    "build_bch",
    "build_h0",
    "build_punctured_rm",
    "build_stacked",
    "check_polynomial",
    "encode",
    "encode_batch",
    "enumerate_codewords",
    "eq1_check_matrix",
    "extend",
    "extended_eq1_check_matrix",
    "generator_matrix",
    "index_map",
    "is_codeword",
    "puncture",
    "sigma",
    "syndrome",
]
