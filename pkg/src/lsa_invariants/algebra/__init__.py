"""Exact rational polynomials and matrices."""

from .matrix import (
    Matrix,
    PolyMatrix,
    RatMatrix,
    all_minors,
    det_poly,
    det_rational,
    kernel_basis,
    rank_rational,
    rref,
    span_rank,
)
from .poly import MultiPoly, parse_poly
from .variables import VarId, parse_var, var_name

__all__ = [
    "Matrix",
    "MultiPoly",
    "PolyMatrix",
    "RatMatrix",
    "VarId",
    "all_minors",
    "det_poly",
    "det_rational",
    "kernel_basis",
    "parse_poly",
    "parse_var",
    "rank_rational",
    "rref",
    "span_rank",
    "var_name",
]
