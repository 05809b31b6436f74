"""Veronese-type invariants built from ``r x r`` determinants of cross-column coefficients.

For ordered context indices ``K`` and target indices ``L`` and a multi-index
``alpha`` of degree ``r``, the determinant ``D_alpha`` evaluates on the image
to ``v^alpha det(A[K, L])``.  The ``D_alpha`` therefore behave like Veronese
coordinates, and rank-one arrangements of them give quadratic relations:
catalecticant minors (fixed ``L``), cross-target minors (two target choices)
and block minors (several target choices side by side).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from ..algebra.matrix import Matrix, all_minors, det_poly
from ..algebra.poly import MultiPoly
from ..errors import DegreeMismatch, IndexOutOfRange
from ..invariant_set import Family, InvariantSet
from ..model import Shape, cross_y
from ._common import check_columns, default_shape, omega


def multi_indices(length: int, degree: int) -> list:
    """All exponent vectors of the given length and degree, in descending lex order."""
    if length == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        out.extend((first,) + rest for rest in multi_indices(length - 1, degree - first))
    return out


@dataclass(frozen=True)
class FMap:
    """A map ``f: [r] -> [r]`` (1-based) with prescribed fibre sizes and only self-loop cycles."""

    images: tuple

    def __call__(self, p: int) -> int:
        return self.images[p - 1]

    def multiplicities(self) -> tuple:
        r = len(self.images)
        return tuple(self.images.count(m) for m in range(1, r + 1))

    def has_only_self_loops(self) -> bool:
        for start in range(1, len(self.images) + 1):
            seen = []
            p = start
            while p not in seen:
                seen.append(p)
                p = self(p)
            cycle = seen[seen.index(p):]
            if len(cycle) > 1:
                return False
        return True


def veronese_fmap(alpha) -> FMap:
    alpha = tuple(alpha)
    r = len(alpha)
    if sum(alpha) != r or any(x < 0 for x in alpha):
        raise DegreeMismatch(f"multi-index {alpha} must be nonnegative with degree {r}")
    images = [0] * r
    spare = []
    for m, a in enumerate(alpha, start=1):
        if a >= 1:
            images[m - 1] = m
            spare.extend([m] * (a - 1))
    free = [p for p, a in enumerate(alpha, start=1) if a == 0]
    for p, m in zip(free, spare):
        images[p - 1] = m
    return FMap(tuple(images))


def _check_indices(r: int, K, L, d: int | None) -> int:
    K, L = tuple(K), tuple(L)
    if r < 2:
        raise DegreeMismatch("Veronese invariants need r >= 2")
    if len(K) != r or len(L) != r:
        raise IndexOutOfRange(f"K and L must have length r={r}")
    if len(set(K)) != r or len(set(L)) != r:
        raise IndexOutOfRange("K and L must consist of distinct indices")
    bound = d if d is not None else max(K + L)
    if min(K + L) < 1 or max(K + L) > bound:
        raise IndexOutOfRange(f"indices must lie in 1..{bound}")
    if r > bound:
        raise IndexOutOfRange(f"r={r} exceeds d={bound}")
    return bound


def veronese_matrix(alpha, K, L, n: int = 2, j: int = 1, row: int = 1, d: int | None = None) -> Matrix:
    alpha = tuple(alpha)
    r = len(alpha)
    _check_indices(r, K, L, d)
    check_columns(n, j)
    f = veronese_fmap(alpha)
    rows = []
    for p in range(1, r + 1):
        kf, kp = K[f(p) - 1], K[p - 1]
        rows.append([cross_y((kf, kp), l, n, j, row).scale(omega(kf, kp)) for l in L])
    return Matrix(rows)


def veronese_determinant(alpha, K, L, n: int = 2, j: int = 1, row: int = 1, d: int | None = None) -> MultiPoly:
    return det_poly(veronese_matrix(alpha, K, L, n, j, row, d))


class VeroneseCoordinates:
    def __init__(self, K, n, j, row, d):
        self.K, self.n, self.j, self.row, self.d = tuple(K), n, j, row, d
        self._cache: dict = {}

    def __call__(self, alpha, L) -> MultiPoly:
        key = (tuple(alpha), tuple(L))
        if key not in self._cache:
            self._cache[key] = veronese_determinant(alpha, self.K, L, self.n, self.j, self.row, self.d)
        return self._cache[key]


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _default_tuple(r: int):
    return tuple(range(1, r + 1))


def catalecticant_matrix(r: int, K=None, L=None, n: int = 2, j: int = 1, row: int = 1, d: int | None = None) -> Matrix:
    """Rows: degree-1 ``beta``; columns: degree-``(r-1)`` ``gamma``; entry ``D_{beta+gamma}``."""
    K = tuple(K) if K is not None else _default_tuple(r)
    L = tuple(L) if L is not None else _default_tuple(r)
    D = VeroneseCoordinates(K, n, j, row, d)
    return Matrix([[D(_add(b, g), L) for g in multi_indices(r, r - 1)] for b in multi_indices(r, 1)])


def catalecticant_minors(
    r: int, K=None, L=None, n: int = 2, j: int = 1, row: int = 1, shape: Shape | None = None
) -> InvariantSet:
    K = tuple(K) if K is not None else _default_tuple(r)
    L = tuple(L) if L is not None else _default_tuple(r)
    d = shape.d if shape else None
    _check_indices(r, K, L, d)
    M = catalecticant_matrix(r, K, L, n, j, row, d)
    shape = shape or default_shape(max(K + L), n, j)
    return InvariantSet(
        Family.CATALECTICANT, shape, all_minors(M, 2), {"r": r, "K": K, "L": L, "n": n, "j": j, "row": row}
    )


def cross_target_matrix(r: int, K, L, L2, n: int = 2, j: int = 1, row: int = 1, d: int | None = None) -> Matrix:
    D = VeroneseCoordinates(K, n, j, row, d)
    return Matrix([[D(alpha, L), D(alpha, L2)] for alpha in multi_indices(r, r)])


def cross_target_minors(
    r: int, K, L, L2, n: int = 2, j: int = 1, row: int = 1, shape: Shape | None = None
) -> InvariantSet:
    K, L, L2 = tuple(K), tuple(L), tuple(L2)
    d = shape.d if shape else None
    _check_indices(r, K, L, d)
    _check_indices(r, K, L2, d)
    if L == L2:
        raise IndexOutOfRange("cross-target minors need two different target choices")
    M = cross_target_matrix(r, K, L, L2, n, j, row, d)
    shape = shape or default_shape(max(K + L + L2), n, j)
    params = {"r": r, "K": K, "L": L, "L2": L2, "n": n, "j": j, "row": row}
    return InvariantSet(Family.CROSS_TARGET, shape, all_minors(M, 2), params)


def block_veronese_matrix(r: int, K, targets, n: int = 2, j: int = 1, row: int = 1, d: int | None = None) -> Matrix:
    """Columns ordered by target choice first, then ``gamma`` in descending lex order."""
    D = VeroneseCoordinates(K, n, j, row, d)
    gammas = multi_indices(r, r - 1)
    return Matrix([[D(_add(b, g), L) for L in targets for g in gammas] for b in multi_indices(r, 1)])


def block_veronese_minors(
    r: int, K, targets, n: int = 2, j: int = 1, row: int = 1, shape: Shape | None = None
) -> InvariantSet:
    K = tuple(K)
    targets = [tuple(L) for L in targets]
    d = shape.d if shape else None
    for L in targets:
        _check_indices(r, K, L, d)
    M = block_veronese_matrix(r, K, targets, n, j, row, d)
    shape = shape or default_shape(max(K + sum(targets, ())), n, j)
    params = {"r": r, "K": K, "targets": targets, "n": n, "j": j, "row": row}
    return InvariantSet(Family.BLOCK_VERONESE, shape, all_minors(M, 2), params)


def index_choices(d: int, r: int) -> list:
    """Increasing ``r``-subsets of ``[d]``; reordering only changes signs of ``D_alpha``."""
    return list(combinations(range(1, d + 1), r))


def ordered_index_choices(d: int, r: int) -> list:
    return list(permutations(range(1, d + 1), r))
