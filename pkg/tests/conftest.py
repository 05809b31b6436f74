from __future__ import annotations

import random
from fractions import Fraction

import pytest

from lsa_invariants.algebra import Matrix, MultiPoly
from lsa_invariants.algebra.variables import input_z


def laplace_det(rows):
    """Plain cofactor expansion along the first row."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for c in range(n):
        if rows[0][c]:
            minor = [r[:c] + r[c + 1 :] for r in rows[1:]]
            total += (-1) ** c * Fraction(rows[0][c]) * laplace_det(minor)
    return total


def random_rational_matrix(rng: random.Random, n: int, m: int | None = None, bound: int = 6) -> Matrix:
    m = n if m is None else m
    return Matrix(
        [[Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(m)] for _ in range(n)]
    )


def zs(k: int) -> MultiPoly:
    return MultiPoly.var(input_z(k))


@pytest.fixture
def rng():
    return random.Random(20240611)
