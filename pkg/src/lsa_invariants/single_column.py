"""Invariants of the single-column coefficients.

For a fixed output coordinate the single-column coefficients form a symmetric
tensor ``T`` of order three, i.e. a cubic ``f = sum |Perm K| T(K) x^K``.  On
the image of the parametrization this cubic is a linear form times a
quadratic form, which makes the Lie algebra flattening of ``f`` rank
deficient.  A small attention dimension also bounds the rank of the matrix
``N`` of coefficients with a repeated index.

Matrix conventions: rows are cubic monomials in graded-lex order; the column
for ``E_uv`` holds the coefficients of ``x_u g_v`` with
``g_v = sum_{k,m} T(k,m,v) x_k x_m`` (one third of ``x_u df/dx_v``), and the
column for ``H_u`` holds ``x_u g_u - x_d g_d``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Mapping, NamedTuple

from .algebra.matrix import DEFAULT_SIZE_CAP, Matrix, all_minors
from .algebra.poly import MultiPoly
from .errors import DimensionTooSmall, SizeCapExceeded
from .invariant_set import Family, InvariantSet
from .model import Shape, perm_orbit_size, single_y


class LieBasisElement(NamedTuple):
    kind: str  # "H" or "E"
    u: int
    v: int

    def __str__(self) -> str:
        return f"H{self.u}" if self.kind == "H" else f"E{self.u}{self.v}"


def lie_basis(d: int) -> list:
    """``H_1..H_{d-1}`` then ``E_uv`` (u != v) in lexicographic order."""
    basis = [LieBasisElement("H", u, d) for u in range(1, d)]
    basis += [LieBasisElement("E", u, v) for u in range(1, d + 1) for v in range(1, d + 1) if u != v]
    return basis


def cubic_monomials(d: int) -> list:
    """Sorted index triples, which is graded-lex order on cubic monomials."""
    return list(combinations_with_replacement(range(1, d + 1), 3))


class SymmetricTensorView:
    """Order-three symmetric tensor given by its values on sorted triples."""

    def __init__(self, d: int, entry: Callable[[tuple], object]):
        self.d = d
        self._entry = entry
        self._cache: dict = {}

    @classmethod
    def symbolic(cls, d: int, j: int = 1, row: int = 1) -> "SymmetricTensorView":
        return cls(d, lambda K: single_y(K, j, row))

    @classmethod
    def from_values(cls, d: int, values: Mapping[tuple, object]) -> "SymmetricTensorView":
        return cls(d, lambda K: values.get(K, Fraction(0)))

    def __call__(self, k1: int, k2: int, k3: int):
        key = tuple(sorted((k1, k2, k3)))
        if key not in self._cache:
            self._cache[key] = self._entry(key)
        return self._cache[key]

    def values(self) -> dict:
        return {K: self(*K) for K in cubic_monomials(self.d)}


def _x_times_g(T: SymmetricTensorView, u: int, v: int) -> dict:
    """Coefficients of ``x_u g_v`` keyed by sorted triple."""
    col: dict = {}
    for k in range(1, T.d + 1):
        for m in range(1, T.d + 1):
            key = tuple(sorted((u, k, m)))
            col[key] = T(k, m, v) + col.get(key, 0)
    return col


def _columns_to_matrix(d: int, columns: list) -> Matrix:
    rows = cubic_monomials(d)
    return Matrix([[col.get(K, 0) for col in columns] for K in rows])


def lie_flattening(d: int, T: SymmetricTensorView | None = None) -> Matrix:
    if d < 2:
        raise DimensionTooSmall("the Lie algebra flattening needs d >= 2")
    T = T or SymmetricTensorView.symbolic(d)
    columns = []
    for el in lie_basis(d):
        if el.kind == "H":
            plus, minus = _x_times_g(T, el.u, el.u), _x_times_g(T, d, d)
            keys = set(plus) | set(minus)
            columns.append({K: plus.get(K, 0) - minus.get(K, 0) for K in keys})
        else:
            columns.append(_x_times_g(T, el.u, el.v))
    return _columns_to_matrix(d, columns)


def gl_syzygy_matrix(d: int, T: SymmetricTensorView | None = None) -> Matrix:
    """The ``binom(d+2,3) x d^2`` linear syzygy matrix; column ``(v, u)`` is ``x_u g_v``."""
    T = T or SymmetricTensorView.symbolic(d)
    columns = [_x_times_g(T, u, v) for v in range(1, d + 1) for u in range(1, d + 1)]
    return _columns_to_matrix(d, columns)


def lie_maximal_minors(
    d: int,
    j: int = 1,
    shape: Shape | None = None,
    max_size: int = DEFAULT_SIZE_CAP,
    workers: int | None = None,
) -> InvariantSet:
    """All maximal minors of the symbolic Lie flattening, degree ``d^2 - 1``."""
    if d < 3:
        raise DimensionTooSmall("maximal Lie minors need d >= 3")
    size = d * d - 1
    if size > max_size:
        raise SizeCapExceeded(
            f"{size}x{size} symbolic minors exceed cap {max_size}; use sampled rank checks for d >= 4"
        )
    shape = shape or Shape(d, j, a=d)
    M = lie_flattening(d, SymmetricTensorView.symbolic(d, j))
    polys = all_minors(M, size, workers=workers, max_size=max_size)
    return InvariantSet(Family.LIE_MINORS, shape, polys, {"j": j})


def n_matrix(d: int, j: int = 1, row: int = 1) -> Matrix:
    """``N[k, k3]`` is the coefficient of the multiset ``{k, k, k3}``."""
    return Matrix([[single_y((k, k, k3), j, row) for k3 in range(1, d + 1)] for k in range(1, d + 1)])


def n_matrix_minors(
    d: int, a: int, j: int = 1, shape: Shape | None = None, workers: int | None = None
) -> InvariantSet:
    """All ``(2a+2)``-minors of ``N``; empty unless ``2a + 1 < d``."""
    shape = shape or Shape(d, j, a=a)
    size = 2 * a + 2
    polys = all_minors(n_matrix(d, j), size, workers=workers, max_size=max(size, DEFAULT_SIZE_CAP)) if size <= d else []
    return InvariantSet(Family.N_MATRIX_MINORS, shape, polys, {"a": a, "j": j})


def tensor_of_cubic(f: MultiPoly, variables: list) -> SymmetricTensorView:
    """Symmetric tensor of a cubic form: coefficient of ``x^K`` divided by ``|Perm K|``."""
    d = len(variables)
    values = {}
    for K in cubic_monomials(d):
        mono = {}
        for k in K:
            mono[variables[k - 1]] = mono.get(variables[k - 1], 0) + 1
        values[K] = f.coefficient(tuple(mono.items())) / perm_orbit_size(K)
    return SymmetricTensorView.from_values(d, values)
