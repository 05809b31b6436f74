"""Determinantal relations across output rows.

Every scaled coefficient is linear in the row of ``V`` it belongs to:
``y_i(label) = sum_k v[i,k] * m_k(label)`` with ``m_k`` depending only on
``A``.  Stacking one selection of labels over all ``d'`` rows gives a matrix
``C_S = V M_S(A)`` of rank at most ``d``, so its ``(d+1)``-minors vanish.
"""

from __future__ import annotations

from .algebra.matrix import Matrix, all_minors
from .algebra.poly import MultiPoly
from .algebra.variables import param_v
from .invariant_set import Family, InvariantSet
from .model import Shape, labels_for_coordinate, symbolic_coefficient


def default_selection(shape: Shape, j: int = 1) -> list:
    """All row-1 labels of output column ``j``."""
    return labels_for_coordinate(shape.d, shape.t, j)


def cross_row_matrix(shape: Shape, selection: list | None = None) -> Matrix:
    """``d' x |S|`` matrix whose ``(i, s)`` entry is label ``s`` moved to row ``i``."""
    selection = selection if selection is not None else default_selection(shape)
    return Matrix(
        [[MultiPoly.var(lab.with_row(i).var) for lab in selection] for i in range(1, shape.d_prime + 1)]
    )


def cross_row_factor(shape: Shape, selection: list | None = None) -> Matrix:
    """``M_S(A)``: entry ``(k, s)`` is the coefficient of ``v[i,k]`` in label ``s`` (any row ``i``)."""
    selection = selection if selection is not None else default_selection(shape)
    rows = []
    for k in range(1, shape.d + 1):
        v = param_v(1, k)
        row = []
        for lab in selection:
            coeffs = symbolic_coefficient(lab.with_row(1)).coefficients_in([v])
            row.append(coeffs.get(((v, 1),), MultiPoly.zero()))
        rows.append(row)
    return Matrix(rows)


def value_matrix(shape: Shape) -> Matrix:
    """Symbolic ``V`` with entries ``v[i,k]``."""
    return Matrix(
        [[MultiPoly.var(param_v(i, k)) for k in range(1, shape.d + 1)] for i in range(1, shape.d_prime + 1)]
    )


def cross_row_minors(
    shape: Shape, selection: list | None = None, workers: int | None = None
) -> InvariantSet:
    """All ``(d+1)``-minors of ``C_S``; empty when ``d' <= d`` or ``|S| <= d``."""
    selection = selection if selection is not None else default_selection(shape)
    size = shape.d + 1
    polys = []
    if shape.d_prime >= size and len(selection) >= size:
        polys = all_minors(cross_row_matrix(shape, selection), size, workers=workers, max_size=max(size, 8))
    params = {"selection": [str(lab) for lab in selection]}
    return InvariantSet(Family.CROSS_ROW_MINORS, shape, polys, params)
