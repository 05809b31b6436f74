"""Invariants of the cross-column coefficients (two factors in a context column, one in the target column)."""

from .flattening import determinantal_syzygies, low_rank_minors, phi_matrix, unbalanced_flattening
from .resultants import BinaryQuadric, Line, resultant_quartics, slice_quadrics, sylvester_resultant
from .slices import pencil_matrix, pencil_mixed_minors, slice_matrices
from .veronese import (
    FMap,
    block_veronese_minors,
    catalecticant_minors,
    cross_target_minors,
    veronese_determinant,
    veronese_fmap,
)

__all__ = [
    "BinaryQuadric",
    "FMap",
    "Line",
    "block_veronese_minors",
    "catalecticant_minors",
    "cross_target_minors",
    "determinantal_syzygies",
    "low_rank_minors",
    "pencil_matrix",
    "pencil_mixed_minors",
    "phi_matrix",
    "resultant_quartics",
    "slice_matrices",
    "slice_quadrics",
    "sylvester_resultant",
    "unbalanced_flattening",
    "veronese_determinant",
    "veronese_fmap",
]
