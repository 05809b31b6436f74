"""Exact invariants of lightning self-attention ``X -> V X (X^T A X)``."""

from .algebra import Matrix, MultiPoly, parse_poly
from .families import generate
from .invariant_set import Family, InvariantSet
from .model import MonomialLabel, Shape, WeightAssignment, evaluate_mu, symbolic_coefficient
from .verify import SampleSpec, VerificationReport, check_vanishing, sample_weights, symbolic_zero_check

__version__ = "0.1.0"

__all__ = [
    "Family",
    "InvariantSet",
    "Matrix",
    "MonomialLabel",
    "MultiPoly",
    "SampleSpec",
    "Shape",
    "VerificationReport",
    "WeightAssignment",
    "check_vanishing",
    "evaluate_mu",
    "generate",
    "parse_poly",
    "sample_weights",
    "symbolic_coefficient",
    "symbolic_zero_check",
]
