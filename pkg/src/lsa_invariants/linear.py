"""Linear relations among the scaled coefficients.

Two families:

* sequence copies: a coefficient only depends on its index multiset, not on
  which columns carry it, so copies across columns agree;
* symmetrization: inside one output coordinate, the single-column coefficient
  of ``K`` is a weighted sum of cross-column coefficients obtained by moving
  one element of ``K`` to the target column.

Relations are scaled to primitive integer form with a positive leading
coefficient.
"""

from __future__ import annotations

from itertools import combinations_with_replacement

from .errors import ContextEqualsTarget, IndexOutOfRange
from .invariant_set import Family, InvariantSet
from .model import Shape, cross_y, perm_orbit_size, single_y


def sequence_copy_relations(shape: Shape, row: int = 1) -> InvariantSet:
    """Copies relative to the representatives ``j = 1`` and ``(n, j) = (2, 1)``."""
    d, t = shape.d, shape.t
    polys = []
    if t >= 2:
        for K in combinations_with_replacement(range(1, d + 1), 3):
            for j in range(2, t + 1):
                polys.append(single_y(K, 1, row) - single_y(K, j, row))
        for A in combinations_with_replacement(range(1, d + 1), 2):
            for b in range(1, d + 1):
                base = cross_y(A, b, 2, 1, row)
                for n in range(1, t + 1):
                    for j in range(1, t + 1):
                        if n != j and (n, j) != (2, 1):
                            polys.append(base - cross_y(A, b, n, j, row))
    return InvariantSet(Family.SEQUENCE_COPY, shape, [p.primitive() for p in polys], {"row": row})


def symmetrization_relation(K, row: int = 1, j: int = 1, n: int = 2):
    K = tuple(sorted(K))
    poly = single_y(K, j, row).scale(perm_orbit_size(K))
    for b in sorted(set(K)):
        rest = list(K)
        rest.remove(b)
        poly = poly - cross_y(rest, b, n, j, row).scale(perm_orbit_size(rest))
    return poly.primitive()


def symmetrization_relations(shape: Shape, row: int = 1, j: int = 1, n: int = 2) -> InvariantSet:
    """One relation per 3-multiset of ``[d]``, in descending multiset order."""
    if n == j:
        raise ContextEqualsTarget("symmetrization needs a context column n != j")
    if not (1 <= j <= shape.t and 1 <= n <= shape.t and 1 <= row <= shape.d_prime):
        raise IndexOutOfRange(f"(row, j, n) = ({row}, {j}, {n}) outside shape {shape}")
    multisets = sorted(combinations_with_replacement(range(1, shape.d + 1), 3), reverse=True)
    polys = [symmetrization_relation(K, row, j, n) for K in multisets]
    return InvariantSet(Family.SYMMETRIZATION, shape, polys, {"row": row, "j": j, "n": n})
