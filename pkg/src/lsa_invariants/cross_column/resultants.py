"""Quartic invariants from Sylvester resultants of restricted slice quadrics.

The slice quadric ``q_s`` collects the cross-column coefficients with target
index ``s`` into a quadratic form in the context variables ``z``.  On the
image all ``q_s`` share the linear factor ``sum v_k z_k``, so after
restricting to a line ``z = lam1 * xi + lam2 * zeta`` every pair of the
resulting binary quadrics, and every pair of linear combinations of them,
has vanishing resultant.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..algebra.matrix import Matrix, det_poly, rank_rational
from ..algebra.poly import MultiPoly, format_rational, grlex_key, to_fraction
from ..algebra.variables import aux_u, aux_w, input_z, line_lambda
from ..errors import DependentLineVectors
from ..invariant_set import Family, InvariantSet
from ..model import Shape, cross_y
from ._common import check_columns, default_shape, omega


@dataclass(frozen=True)
class Line:
    """The projective line spanned by two independent vectors ``xi`` and ``zeta``."""

    xi: tuple
    zeta: tuple

    def __post_init__(self):
        xi = tuple(to_fraction(x) for x in self.xi)
        zeta = tuple(to_fraction(x) for x in self.zeta)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "zeta", zeta)
        if len(xi) != len(zeta) or rank_rational(Matrix([xi, zeta])) < 2:
            raise DependentLineVectors("line vectors must be linearly independent")

    @classmethod
    def coordinate(cls, d: int, p: int, q: int) -> "Line":
        """``span{e_p, e_q}``."""
        return cls(tuple(int(k == p) for k in range(1, d + 1)), tuple(int(k == q) for k in range(1, d + 1)))

    @property
    def d(self) -> int:
        return len(self.xi)

    def to_json(self) -> list:
        return [[format_rational(x) for x in self.xi], [format_rational(x) for x in self.zeta]]

    @classmethod
    def from_json(cls, data) -> "Line":
        return cls(tuple(data[0]), tuple(data[1]))


@dataclass(frozen=True)
class BinaryQuadric:
    """``A lam1^2 + B lam1 lam2 + C lam2^2``."""

    A: MultiPoly
    B: MultiPoly
    C: MultiPoly

    @classmethod
    def from_poly(cls, poly: MultiPoly) -> "BinaryQuadric":
        l1, l2 = line_lambda(1), line_lambda(2)
        coeffs = poly.coefficients_in([l1, l2])
        allowed = {((l1, 2),), ((l1, 1), (l2, 1)), ((l2, 2),)}
        if set(coeffs) - allowed:
            raise ValueError("not a binary quadratic form in lam[1], lam[2]")
        zero = MultiPoly.zero()
        return cls(coeffs.get(((l1, 2),), zero), coeffs.get(((l1, 1), (l2, 1)), zero), coeffs.get(((l2, 2),), zero))

    def combine(self, other: "BinaryQuadric", weight) -> "BinaryQuadric":
        return BinaryQuadric(self.A + other.A * weight, self.B + other.B * weight, self.C + other.C * weight)


def slice_quadrics(d: int, n: int = 2, j: int = 1, row: int = 1) -> list:
    check_columns(n, j)
    z = [MultiPoly.var(input_z(k)) for k in range(1, d + 1)]
    out = []
    for s in range(1, d + 1):
        q = MultiPoly.zero()
        for p in range(1, d + 1):
            for r in range(p, d + 1):
                q = q + cross_y((p, r), s, n, j, row).scale(omega(p, r)) * z[p - 1] * z[r - 1]
        out.append(q)
    return out


def restrict_to_line(q: MultiPoly, line: Line) -> BinaryQuadric:
    l1, l2 = MultiPoly.var(line_lambda(1)), MultiPoly.var(line_lambda(2))
    images = {input_z(k + 1): l1 * x + l2 * y for k, (x, y) in enumerate(zip(line.xi, line.zeta))}
    return BinaryQuadric.from_poly(q.substitute(images))


def sylvester_matrix(q1: BinaryQuadric, q2: BinaryQuadric) -> Matrix:
    z = MultiPoly.zero()
    return Matrix(
        [
            [q1.A, q1.B, q1.C, z],
            [z, q1.A, q1.B, q1.C],
            [q2.A, q2.B, q2.C, z],
            [z, q2.A, q2.B, q2.C],
        ]
    )


def sylvester_resultant(q1: BinaryQuadric, q2: BinaryQuadric) -> MultiPoly:
    return det_poly(sylvester_matrix(q1, q2))


def pencil_monomials(d: int) -> list:
    """Mixed monomials ``u_r^2 w_s w_t`` (s < t) then ``u_r u_s w_t^2`` (r < s), indices distinct."""
    out = []
    for r in range(1, d + 1):
        for s, t in combinations([k for k in range(1, d + 1) if k != r], 2):
            out.append(((aux_u(r), 2), (aux_w(s), 1), (aux_w(t), 1)))
    for r, s in combinations(range(1, d + 1), 2):
        for t in range(1, d + 1):
            if t not in (r, s):
                out.append(((aux_u(r), 1), (aux_u(s), 1), (aux_w(t), 2)))
    return out


def _pencil_quadric(quadrics: list, make_var) -> BinaryQuadric:
    zero = MultiPoly.zero()
    total = BinaryQuadric(zero, zero, zero)
    for s, q in enumerate(quadrics, start=1):
        total = total.combine(q, MultiPoly.var(make_var(s)))
    return total


def pencil_resultant(restricted: list) -> MultiPoly:
    """``Res(Q_u, Q_w)`` as a polynomial in ``u``, ``w`` and the coefficients."""
    return sylvester_resultant(_pencil_quadric(restricted, aux_u), _pencil_quadric(restricted, aux_w))


def _uw_vars(d: int) -> list:
    return [aux_u(s) for s in range(1, d + 1)] + [aux_w(s) for s in range(1, d + 1)]


def resultant_quartics(
    d: int,
    n: int = 2,
    j: int = 1,
    lines: list | None = None,
    mode: str = "both",
    all_coefficients: bool = False,
    row: int = 1,
    shape: Shape | None = None,
) -> InvariantSet:
    """Resultant quartics on each line, line by line.

    ``mode`` is ``"pairwise"`` (``Res(q_r, q_s)`` for ``r < s``), ``"pencil"``
    (coefficients of ``Res(Q_u, Q_w)``) or ``"both"``.  Pencil coefficients
    default to the mixed monomials of :func:`pencil_monomials`; with
    ``all_coefficients`` every nonzero coefficient is emitted in canonical
    monomial order.  Lines default to all coordinate lines ``span{e_p, e_q}``.
    """
    if mode not in ("pairwise", "pencil", "both"):
        raise ValueError(f"unknown mode {mode!r}")
    check_columns(n, j)
    if lines is None:
        lines = [Line.coordinate(d, p, q) for p, q in combinations(range(1, d + 1), 2)]
    quadrics = slice_quadrics(d, n, j, row)
    polys = []
    for line in lines:
        if line.d != d:
            raise DependentLineVectors(f"line lives in dimension {line.d}, expected {d}")
        restricted = [restrict_to_line(q, line) for q in quadrics]
        if mode in ("pairwise", "both"):
            for r, s in combinations(range(d), 2):
                polys.append(sylvester_resultant(restricted[r], restricted[s]))
        if mode in ("pencil", "both"):
            coeffs = pencil_resultant(restricted).coefficients_in(_uw_vars(d))
            if all_coefficients:
                polys.extend(coeffs[m] for m in sorted(coeffs, key=grlex_key) if coeffs[m])
            else:
                polys.extend(coeffs.get(tuple(sorted(m)), MultiPoly.zero()) for m in pencil_monomials(d))
    shape = shape or default_shape(d, n, j)
    params = {
        "n": n,
        "j": j,
        "row": row,
        "mode": mode,
        "all_coefficients": all_coefficients,
        "lines": [line.to_json() for line in lines],
    }
    return InvariantSet(Family.RESULTANT_QUARTICS, shape, polys, params)

