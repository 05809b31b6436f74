"""Shapes, coefficient labels, and the parametrization from weights to coefficients.

A lightning self-attention layer with weights ``W = (Q, K, V)`` maps an input
``X`` (``d`` x ``t``) to ``V X (X^T A X)`` with ``A = K^T Q``.  Each output
coordinate is a cubic in the entries of ``X``.  A cubic monomial is either
supported in one column ``j`` (a *single-column* label, multiset ``K`` of
three row indices) or has two factors in a context column ``n`` and one in
the target column ``j`` (a *cross-column* label, multiset ``A`` of two row
indices plus the target row ``b``).

The scaled coefficient ``y`` of a label is its standard coefficient divided
by the number of distinct orderings of its index multiset.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement, permutations
from math import comb, factorial, prod
from typing import Iterable, NamedTuple, Sequence

from .algebra.matrix import Matrix, rank_rational
from .algebra.poly import MultiPoly, format_rational, to_fraction
from .algebra.variables import KIND_COEFF_Y, VarId, coeff_y, input_x, param_a, param_v
from .errors import (
    ContextEqualsTarget,
    DimensionMismatch,
    DimensionTooSmall,
    IndexOutOfRange,
    SizeCapExceeded,
)

EXPANSION_CAP = 16


@dataclass(frozen=True)
class Shape:
    d: int
    t: int
    a: int = 1
    d_prime: int = 1

    def __post_init__(self):
        for name in ("d", "t", "a", "d_prime"):
            if getattr(self, name) < 1:
                raise DimensionTooSmall(f"shape field {name} must be at least 1")

    def __str__(self) -> str:
        return f"(d={self.d}, t={self.t}, a={self.a}, d'={self.d_prime})"

    def as_dict(self) -> dict:
        return {"d": self.d, "t": self.t, "a": self.a, "d_prime": self.d_prime}


def perm_orbit_size(ms: Sequence[int]) -> int:
    """Number of distinct orderings of a multiset."""
    return factorial(len(ms)) // prod(factorial(c) for c in Counter(ms).values())


def distinct_orderings(ms: Sequence[int]) -> list:
    return sorted(set(permutations(ms)))


@dataclass(frozen=True)
class MonomialLabel:
    """Canonical index of one scaled coefficient.

    ``multiset`` holds ``K`` (length 3) for single-column labels and ``A``
    (length 2) for cross-column labels; ``b`` and ``n`` are ``None`` for the
    single-column kind.
    """

    multiset: tuple
    j: int
    b: int | None = None
    n: int | None = None
    row: int = 1

    def __post_init__(self):
        object.__setattr__(self, "multiset", tuple(sorted(self.multiset)))
        if self.is_cross:
            if len(self.multiset) != 2 or self.b is None:
                raise ValueError("cross-column labels need a 2-multiset and a target index b")
            if self.n == self.j:
                raise ContextEqualsTarget("context column must differ from target column")
        elif len(self.multiset) != 3 or self.b is not None:
            raise ValueError("single-column labels need a 3-multiset")

    @classmethod
    def single(cls, K: Iterable[int], j: int, row: int = 1) -> "MonomialLabel":
        return cls(tuple(K), j, row=row)

    @classmethod
    def cross(cls, A: Iterable[int], b: int, n: int, j: int, row: int = 1) -> "MonomialLabel":
        return cls(tuple(A), j, b=b, n=n, row=row)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]], row: int = 1) -> "MonomialLabel":
        """Build the label of the monomial ``x[k1,c1] x[k2,c2] x[k3,c3]`` in any factor order."""
        pairs = [tuple(p) for p in pairs]
        if len(pairs) != 3:
            raise ValueError("a cubic monomial has exactly three factors")
        cols = Counter(c for _, c in pairs)
        if len(cols) == 1:
            (j,) = cols
            return cls.single([k for k, _ in pairs], j, row)
        if len(cols) == 2:
            n = next(c for c, m in cols.items() if m == 2)
            j = next(c for c, m in cols.items() if m == 1)
            A = [k for k, c in pairs if c == n]
            (b,) = [k for k, c in pairs if c == j]
            return cls.cross(A, b, n, j, row)
        raise ValueError("factors spread over three columns do not occur in the model")

    @classmethod
    def from_var(cls, var: VarId) -> "MonomialLabel":
        if var.kind != KIND_COEFF_Y:
            raise ValueError(f"{var} is not a coefficient variable")
        row, pairs = var.index
        return cls.from_pairs(pairs, row)

    @property
    def is_cross(self) -> bool:
        return self.n is not None

    @property
    def kind(self) -> str:
        return "cross" if self.is_cross else "single"

    def pairs(self) -> tuple:
        if self.is_cross:
            return tuple((k, self.n) for k in self.multiset) + ((self.b, self.j),)
        return tuple((k, self.j) for k in self.multiset)

    @cached_property
    def var(self) -> VarId:
        return coeff_y(self.pairs(), self.row)

    @property
    def orbit_size(self) -> int:
        return perm_orbit_size(self.multiset)

    def with_row(self, row: int) -> "MonomialLabel":
        return MonomialLabel(self.multiset, self.j, self.b, self.n, row)

    def max_index(self) -> int:
        return max(self.multiset + ((self.b,) if self.is_cross else ()))

    def __lt__(self, other: "MonomialLabel") -> bool:
        return self.var < other.var

    def __str__(self) -> str:
        return str(self.var)


def y(pairs: Iterable[Sequence[int]], row: int = 1) -> MultiPoly:
    """Coefficient variable as a polynomial, from pairs in any order."""
    return MultiPoly.var(MonomialLabel.from_pairs(pairs, row).var)


def single_y(K: Iterable[int], j: int = 1, row: int = 1) -> MultiPoly:
    return MultiPoly.var(MonomialLabel.single(K, j, row).var)


def cross_y(A: Iterable[int], b: int, n: int = 2, j: int = 1, row: int = 1) -> MultiPoly:
    return MultiPoly.var(MonomialLabel.cross(A, b, n, j, row).var)


def labels_for_coordinate(d: int, t: int, j: int, row: int = 1) -> list:
    labels = [MonomialLabel.single(K, j, row) for K in combinations_with_replacement(range(1, d + 1), 3)]
    for n in range(1, t + 1):
        if n == j:
            continue
        for A in combinations_with_replacement(range(1, d + 1), 2):
            labels.extend(MonomialLabel.cross(A, b, n, j, row) for b in range(1, d + 1))
    return sorted(labels)


def enumerate_labels(shape: Shape) -> list:
    out = []
    for row in range(1, shape.d_prime + 1):
        for j in range(1, shape.t + 1):
            out.extend(labels_for_coordinate(shape.d, shape.t, j, row))
    return sorted(out)


class LabelCounts(NamedTuple):
    per_coordinate: int
    total: int
    ambient_cubics: int


def count_labels(shape: Shape) -> LabelCounts:
    """Closed-form label counts for a single output row."""
    d, t = shape.d, shape.t
    per = comb(d + 2, 3) + (t - 1) * comb(d + 1, 2) * d
    total = d * t * (d + 1) * (3 * d * t - 2 * d + 2) // 6
    return LabelCounts(per, total, comb(d * t + 2, 3))


def count_support_bruteforce(d: int, t: int) -> int:
    """Distinct cubic monomials of one output row, by running over every index tuple.

    All contributions to a coefficient carry sign +1 and distinct parameter
    monomials, so no cancellation can occur and the support is exactly the
    set of monomials hit by some index tuple.
    """
    support = set()
    rng = range(1, d + 1)
    for j in range(1, t + 1):
        for n in range(1, t + 1):
            for k in rng:
                for m in rng:
                    for l in rng:
                        support.add((j, tuple(sorted(((k, n), (m, n), (l, j))))))
    return len(support)


# -- coefficient formulas -------------------------------------------------


def symbolic_coefficient(label: MonomialLabel) -> MultiPoly:
    """Scaled coefficient as a bilinear polynomial in ``a[m,l]`` and ``v[i,k]``."""
    terms: dict = {}
    if label.is_cross:
        for p1, p2 in distinct_orderings(label.multiset):
            mono = ((param_a(p2, label.b), 1), (param_v(label.row, p1), 1))
            terms[mono] = terms.get(mono, 0) + 1
    else:
        for p1, p2, p3 in distinct_orderings(label.multiset):
            mono = ((param_a(p2, p3), 1), (param_v(label.row, p1), 1))
            terms[mono] = terms.get(mono, 0) + 1
    return MultiPoly(terms).scale(Fraction(1, label.orbit_size))


def symbolic_mu(shape: Shape) -> dict:
    """Map every coefficient variable of ``shape`` to its polynomial in the parameters."""
    return {lab.var: symbolic_coefficient(lab) for lab in enumerate_labels(shape)}


def symbolic_mu_for(variables: Iterable[VarId]) -> dict:
    """Like :func:`symbolic_mu` but only for the coefficient variables given."""
    return {v: symbolic_coefficient(MonomialLabel.from_var(v)) for v in variables if v.kind == KIND_COEFF_Y}


def _as_matrix(m) -> Matrix:
    return m if isinstance(m, Matrix) else Matrix(m)


class WeightAssignment:
    """Exact weights ``Q``, ``K`` (``a`` x ``d``) and ``V`` (``d'`` x ``d``)."""

    def __init__(self, Q, K, V):
        self.Q = _as_matrix(Q)
        self.K = _as_matrix(K)
        self.V = _as_matrix(V)
        if self.Q.shape != self.K.shape:
            raise DimensionMismatch("Q and K must have the same shape")
        if self.V.cols != self.Q.cols:
            raise DimensionMismatch("V must have d columns")
        self.a, self.d = self.Q.shape
        self.d_prime = self.V.rows
        assert rank_rational(self.A) <= self.a

    @classmethod
    def from_attention(cls, A, V) -> "WeightAssignment":
        """Weights with ``K = I`` and ``Q = A`` (so ``a = d``)."""
        A = _as_matrix(A)
        return cls(A, Matrix.identity(A.rows), V)

    @cached_property
    def A(self) -> Matrix:
        return self.K.transpose() @ self.Q

    def shape(self, t: int) -> Shape:
        return Shape(self.d, t, self.a, self.d_prime)

    def check_shape(self, shape: Shape) -> None:
        if (self.d, self.a, self.d_prime) != (shape.d, shape.a, shape.d_prime):
            raise DimensionMismatch(
                f"weights have d={self.d}, a={self.a}, d'={self.d_prime}; shape is {shape}"
            )

    def parameter_point(self) -> dict:
        """Values of the ``a[m,l]`` and ``v[i,k]`` variables."""
        point = {}
        for m in range(self.d):
            for l in range(self.d):
                point[param_a(m + 1, l + 1)] = self.A[m, l]
        for i in range(self.d_prime):
            for k in range(self.d):
                point[param_v(i + 1, k + 1)] = self.V[i, k]
        return point

    def to_json(self) -> dict:
        def enc(m):
            return [[format_rational(e) for e in r] for r in m]

        return {"d": self.d, "a": self.a, "d_prime": self.d_prime, "Q": enc(self.Q), "K": enc(self.K), "V": enc(self.V)}

    @classmethod
    def from_json(cls, data: dict) -> "WeightAssignment":
        def dec(rows):
            return [[to_fraction(e) for e in r] for r in rows]

        return cls(dec(data["Q"]), dec(data["K"]), dec(data["V"]))


def coefficient_value(label: MonomialLabel, A: Matrix, V: Matrix) -> Fraction:
    i = label.row - 1
    total = Fraction(0)
    if label.is_cross:
        b = label.b - 1
        for p1, p2 in distinct_orderings(label.multiset):
            total += A[p2 - 1, b] * V[i, p1 - 1]
    else:
        for p1, p2, p3 in distinct_orderings(label.multiset):
            total += A[p2 - 1, p3 - 1] * V[i, p1 - 1]
    return total / label.orbit_size


def evaluate_mu(shape: Shape, w: WeightAssignment) -> dict:
    """Value of every label of ``shape`` at the weights ``w``."""
    w.check_shape(shape)
    A, V = w.A, w.V
    return {lab: coefficient_value(lab, A, V) for lab in enumerate_labels(shape)}


def mu_point(shape: Shape, w: WeightAssignment) -> dict:
    """Same as :func:`evaluate_mu` but keyed by coefficient variable."""
    return {lab.var: val for lab, val in evaluate_mu(shape, w).items()}


def mu_point_for(variables: Iterable[VarId], w: WeightAssignment) -> dict:
    A, V = w.A, w.V
    out = {}
    for v in variables:
        lab = MonomialLabel.from_var(v)
        if lab.max_index() > w.d or lab.row > w.d_prime:
            raise IndexOutOfRange(f"{v} does not fit weights with d={w.d}, d'={w.d_prime}")
        out[v] = coefficient_value(lab, A, V)
    return out


def expand_output_polynomial(shape: Shape, w: WeightAssignment, cap: int = EXPANSION_CAP) -> dict:
    """Scaled coefficients read off the expanded polynomial ``V X (X^T A X)``.

    ``X`` is fully symbolic, so this is independent of the closed-form
    coefficient formulas.  Labels whose coefficient vanishes at ``w`` are
    reported with value 0.
    """
    w.check_shape(shape)
    d, t = shape.d, shape.t
    if d * t > cap:
        raise SizeCapExceeded(f"d*t = {d * t} exceeds the expansion cap {cap}")
    X = Matrix([[MultiPoly.var(input_x(k, n)) for n in range(1, t + 1)] for k in range(1, d + 1)])
    A = w.A.map(MultiPoly.constant)
    V = w.V.map(MultiPoly.constant)
    out_poly = V @ (X @ (X.transpose() @ A @ X))
    values = {lab: Fraction(0) for lab in enumerate_labels(shape)}
    for i in range(shape.d_prime):
        for j in range(t):
            entry = out_poly[i, j]
            if not isinstance(entry, MultiPoly):
                continue
            for mono, c in entry.terms.items():
                pairs = [v.index for v, e in mono for _ in range(e)]
                lab = MonomialLabel.from_pairs(pairs, i + 1)
                if lab.j != j + 1:
                    raise AssertionError("monomial landed in the wrong output column")
                values[lab] = c / lab.orbit_size
    return values
