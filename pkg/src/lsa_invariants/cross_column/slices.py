"""Slice matrices of the cross-column tensor and the cubic mixed minors of their pencil.

Slice ``M^(k3)`` is the symmetric ``d x d`` matrix of coefficients with target
index ``k3``.  On the image of the parametrization every slice is
``(v a^T + a v^T) / 2`` for the ``k3``-th column ``a`` of ``A``, so every
combination ``sum pen[k] M^(k)`` has rank at most two.
"""

from __future__ import annotations

from itertools import combinations, combinations_with_replacement

from ..algebra.matrix import Matrix, det_poly
from ..algebra.poly import MultiPoly
from ..algebra.variables import aux_lambda
from ..errors import DimensionTooSmall
from ..invariant_set import Family, InvariantSet
from ..model import Shape, cross_y, distinct_orderings
from ._common import check_columns, default_shape


def slice_matrix(d: int, k3: int, n: int = 2, j: int = 1, row: int = 1) -> Matrix:
    check_columns(n, j)
    return Matrix([[cross_y((k1, k2), k3, n, j, row) for k2 in range(1, d + 1)] for k1 in range(1, d + 1)])


def slice_matrices(d: int, n: int = 2, j: int = 1, row: int = 1) -> list:
    return [slice_matrix(d, k3, n, j, row) for k3 in range(1, d + 1)]


def pencil_matrix(d: int, n: int = 2, j: int = 1, row: int = 1) -> Matrix:
    """``sum_k pen[k] M^(k)`` with symbolic pencil coefficients."""
    slices = slice_matrices(d, n, j, row)
    lam = [MultiPoly.var(aux_lambda(k)) for k in range(1, d + 1)]
    return Matrix(
        [[sum((lam[k] * slices[k][r, c] for k in range(d)), MultiPoly.zero()) for c in range(d)] for r in range(d)]
    )


def mixed_minor(slices: list, R: tuple, C: tuple, S: tuple) -> MultiPoly:
    """Sum over distinct orderings ``t`` of ``S`` of the minor whose row ``R[i]`` comes from slice ``t[i]``."""
    total = MultiPoly.zero()
    for t in distinct_orderings(S):
        rows = [[slices[ti - 1][r - 1, c - 1] for c in C] for r, ti in zip(R, t)]
        total = total + det_poly(Matrix(rows))
    return total


def _mixed_minors_direct(d, n, j, row):
    slices = slice_matrices(d, n, j, row)
    triples = list(combinations(range(1, d + 1), 3))
    multisets = list(combinations_with_replacement(range(1, d + 1), 3))
    return [mixed_minor(slices, R, C, S) for R in triples for C in triples for S in multisets]


def _mixed_minors_from_pencil(d, n, j, row):
    P = pencil_matrix(d, n, j, row)
    lam = [aux_lambda(k) for k in range(1, d + 1)]
    triples = list(combinations(range(1, d + 1), 3))
    multisets = list(combinations_with_replacement(range(1, d + 1), 3))
    out = []
    for R in triples:
        for C in triples:
            minor = det_poly(P.submatrix([r - 1 for r in R], [c - 1 for c in C]))
            coeffs = minor.coefficients_in(lam)
            for S in multisets:
                mono = {}
                for s in S:
                    mono[lam[s - 1]] = mono.get(lam[s - 1], 0) + 1
                out.append(coeffs.get(tuple(sorted(mono.items())), MultiPoly.zero()))
    return out


def pencil_mixed_minors(
    d: int, n: int = 2, j: int = 1, row: int = 1, shape: Shape | None = None, method: str = "direct"
) -> InvariantSet:
    """Cubic mixed minors, ordered lexicographically by (rows, columns, slice multiset).

    ``method="pencil"`` extracts the same polynomials as coefficients of the
    3x3 minors of the symbolic pencil.
    """
    if d < 3:
        raise DimensionTooSmall("pencil mixed minors need d >= 3")
    check_columns(n, j)
    if method == "direct":
        polys = _mixed_minors_direct(d, n, j, row)
    elif method == "pencil":
        polys = _mixed_minors_from_pencil(d, n, j, row)
    else:
        raise ValueError(f"unknown method {method!r}")
    shape = shape or default_shape(d, n, j)
    return InvariantSet(Family.PENCIL_MIXED_MINORS, shape, polys, {"n": n, "j": j, "row": row})
