"""Unbalanced flattening of the cross-column tensor and its determinantal invariants.

The flattening ``F`` has one row per unordered context pair and one column per
target index.  On the image of the parametrization ``F = Phi(v) A``, which
gives two families: ``(a+1)``-minors when ``rank A <= a < d``, and linear
relations among maximal minors inherited from relations among the maximal
minors of ``Phi``.
"""

from __future__ import annotations

import warnings
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb

from ..algebra.matrix import Matrix, all_minors, kernel_basis
from ..algebra.poly import MultiPoly
from ..algebra.variables import param_v
from ..errors import NotBottlenecked
from ..invariant_set import Family, InvariantSet
from ..model import Shape, cross_y
from ._common import check_columns, context_pairs, default_shape, omega


def unbalanced_flattening(d: int, n: int = 2, j: int = 1, row: int = 1) -> Matrix:
    check_columns(n, j)
    return Matrix([[cross_y(A, k3, n, j, row) for k3 in range(1, d + 1)] for A in context_pairs(d)])


def low_rank_minors(
    d: int, a: int, n: int = 2, j: int = 1, row: int = 1, shape: Shape | None = None, workers: int | None = None
) -> InvariantSet:
    if a >= d:
        raise NotBottlenecked(f"attention dimension a={a} is not below d={d}")
    F = unbalanced_flattening(d, n, j, row)
    polys = all_minors(F, a + 1, workers=workers, max_size=max(a + 1, 8))
    shape = shape or default_shape(d, n, j, a)
    return InvariantSet(Family.LOW_RANK_MINORS, shape, polys, {"a": a, "n": n, "j": j, "row": row})


def phi_matrix(d: int, row: int = 1) -> Matrix:
    """The factor ``Phi(v)`` with ``F(mu(W)) = Phi(v) A``."""
    rows = []
    for k1, k2 in context_pairs(d):
        entries = [MultiPoly.zero()] * d
        w = Fraction(1, omega(k1, k2))
        entries[k1 - 1] = MultiPoly.var(param_v(row, k2)).scale(w)
        entries[k2 - 1] = MultiPoly.var(param_v(row, k1)).scale(w)
        rows.append(entries)
    return Matrix(rows)


def syzygy_coefficient_matrix(d: int, row: int = 1) -> tuple[Matrix, list]:
    """Coefficients of the maximal minors of ``Phi`` in the degree-``d`` monomial basis.

    Rows follow the graded-lex monomial basis in ``v``; columns follow the
    row subsets of ``Phi`` in lexicographic order.  Returns the matrix and
    the list of row subsets.
    """
    phi = phi_matrix(d, row)
    subsets = list(combinations(range(phi.rows), d))
    minors = all_minors(phi, d, index=[(R, tuple(range(d))) for R in subsets], max_size=max(d, 8))
    basis = []
    for combo in combinations_with_replacement(range(1, d + 1), d):
        mono = {}
        for k in combo:
            mono[param_v(row, k)] = mono.get(param_v(row, k), 0) + 1
        basis.append(tuple(sorted(mono.items())))
    assert len(basis) == comb(2 * d - 1, d)
    coeff = Matrix([[m.coefficient(b) for m in minors] for b in basis])
    return coeff, subsets


def determinantal_syzygies(
    d: int, n: int = 2, j: int = 1, row: int = 1, shape: Shape | None = None
) -> InvariantSet:
    """Degree-``d`` invariants from linear relations among the maximal minors of ``F``.

    The relations are the RREF kernel basis of :func:`syzygy_coefficient_matrix`.
    """
    shape = shape or default_shape(d, n, j)
    if shape.a < d:
        warnings.warn(
            "determinantal syzygies are usually studied for a >= d; they still vanish for smaller a",
            RuntimeWarning,
            stacklevel=2,
        )
    coeff, subsets = syzygy_coefficient_matrix(d, row)
    kernel = kernel_basis(coeff)
    F = unbalanced_flattening(d, n, j, row)
    cols = tuple(range(d))
    minors = all_minors(F, d, index=[(R, cols) for R in subsets], max_size=max(d, 8))
    polys = []
    for vec in kernel:
        p = MultiPoly.zero()
        for c, m in zip(vec, minors):
            if c:
                p = p + m.scale(c)
        polys.append(p.primitive())
    return InvariantSet(Family.DETERMINANTAL_SYZYGIES, shape, polys, {"n": n, "j": j, "row": row})
