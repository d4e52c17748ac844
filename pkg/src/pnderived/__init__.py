"""Exact computations in the derived category of line-bundle complexes on P^n."""

from .complex import ChainMap, LineBundleComplex, cone, direct_sum, dual, prune, shift, tensor, twist, validate
from .ext import (
    ExtTable,
    koszul_point,
    line_bundle_object_check,
    point_object_check,
    serre_duality_check,
    serre_functor,
    sheaf_cohomology,
    ext_table,
)
from .kernels import BACKEND
from .linalg import QQ, ExactMatrix, PrimeField, parse_field, rank, rank_kernel
from .poly import HomogPoly, parse_poly
from .errors import InvalidComplexError, ReductionError, ResourceLimitError
from .window import (
    WindowComplex,
    beilinson_multiplicities,
    is_quasi_iso,
    is_zero_object,
    reduce_to_window,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ChainMap",
    "ExactMatrix",
    "ExtTable",
    "HomogPoly",
    "InvalidComplexError",
    "LineBundleComplex",
    "PrimeField",
    "QQ",
    "ReductionError",
    "ResourceLimitError",
    "WindowComplex",
    "beilinson_multiplicities",
    "cone",
    "direct_sum",
    "dual",
    "ext_table",
    "is_quasi_iso",
    "is_zero_object",
    "koszul_point",
    "line_bundle_object_check",
    "parse_field",
    "parse_poly",
    "point_object_check",
    "prune",
    "rank",
    "rank_kernel",
    "reduce_to_window",
    "serre_duality_check",
    "serre_functor",
    "sheaf_cohomology",
    "shift",
    "tensor",
    "twist",
    "validate",
]
