from __future__ import annotations

import json
from fractions import Fraction
from math import comb

import pytest

from lsa_invariants import MonomialLabel, Shape, WeightAssignment, evaluate_mu, symbolic_coefficient
from lsa_invariants.algebra import Matrix, MultiPoly, parse_poly, rank_rational
from lsa_invariants.algebra.variables import KIND_PARAM_A, KIND_PARAM_V
from lsa_invariants.errors import DimensionMismatch, SizeCapExceeded
from lsa_invariants.model import (
    count_labels,
    count_support_bruteforce,
    enumerate_labels,
    expand_output_polynomial,
    perm_orbit_size,
)
from lsa_invariants.verify import SampleSpec, sample_weights


def closed_form(d, t):
    return d * t * (d + 1) * (3 * d * t - 2 * d + 2) // 6


class TestLabels:
    def test_smallest_shape(self):
        assert enumerate_labels(Shape(1, 1, 1, 1)) == [MonomialLabel.single((1, 1, 1), 1)]

    @pytest.mark.parametrize("d,t,total", [(1, 1, 1), (3, 2, 56), (2, 3, 48), (2, 2, 20)])
    def test_counts(self, d, t, total):
        c = count_labels(Shape(d, t, d, 1))
        assert c.total == total == closed_form(d, t)
        assert len(enumerate_labels(Shape(d, t, d, 1))) == total

    def test_ambient(self):
        assert count_labels(Shape(1, 1, 1, 1)).ambient_cubics == 1
        assert count_labels(Shape(2, 3, 2, 1)).ambient_cubics == comb(8, 3)

    def test_per_coordinate_split(self):
        labels = [lab for lab in enumerate_labels(Shape(2, 2, 2, 1)) if lab.j == 1]
        assert sum(not lab.is_cross for lab in labels) == 4
        assert sum(lab.is_cross for lab in labels) == 6

    def test_rows_multiply(self):
        for d in range(1, 5):
            for t in range(1, 4):
                labels = enumerate_labels(Shape(d, t, d, 3))
                assert len(labels) == len(set(labels)) == 3 * closed_form(d, t)
                assert labels == sorted(labels)

    def test_enumeration_oracle(self):
        for d in range(1, 5):
            for t in range(1, 4):
                assert count_support_bruteforce(d, t) == closed_form(d, t)

    def test_orbits(self):
        assert [perm_orbit_size(m) for m in ((1, 1, 1), (1, 2, 2), (1, 2, 3), (1, 1), (1, 2))] == [1, 3, 6, 1, 2]

    def test_cross_needs_distinct_columns(self):
        with pytest.raises(ValueError):
            MonomialLabel.cross((1, 2), 2, n=1, j=1)

    def test_names(self):
        assert str(MonomialLabel.cross((1, 2), 2, 2, 1)) == "y[(1,2),(2,2),(2,1)]"
        assert str(MonomialLabel.single((2, 1, 1), 1, row=2)) == "y{2}[(1,1),(1,1),(2,1)]"
        sorted_name = MonomialLabel.from_pairs([(1, 2), (2, 1), (2, 2)])
        assert sorted_name == MonomialLabel.cross((1, 2), 2, 2, 1)


class TestSymbolic:
    def test_single_123(self):
        expected = parse_poly(
            "1/6*a[1,2]*v[3] + 1/6*a[1,3]*v[2] + 1/6*a[2,1]*v[3]"
            " + 1/6*a[2,3]*v[1] + 1/6*a[3,1]*v[2] + 1/6*a[3,2]*v[1]"
        )
        assert symbolic_coefficient(MonomialLabel.single((1, 2, 3), 1)) == expected

    def test_single_111(self):
        assert symbolic_coefficient(MonomialLabel.single((1, 1, 1), 1)) == parse_poly("a[1,1]*v[1]")

    def test_cross(self):
        expected = parse_poly("1/2*a[1,2]*v[2] + 1/2*a[2,2]*v[1]")
        assert symbolic_coefficient(MonomialLabel.cross((1, 2), 2, 2, 1)) == expected

    def test_bilinear_and_column_free(self):
        for lab in enumerate_labels(Shape(3, 3, 3, 2)):
            p = symbolic_coefficient(lab)
            for mono, _ in p.sorted_terms():
                kinds = sorted(v.kind for v, e in mono for _ in range(e))
                assert kinds == [KIND_PARAM_A, KIND_PARAM_V]
        base = symbolic_coefficient(MonomialLabel.cross((1, 3), 2, 2, 1))
        assert symbolic_coefficient(MonomialLabel.cross((1, 3), 2, 3, 2)) == base
        assert symbolic_coefficient(MonomialLabel.single((1, 2, 2), 3)) == symbolic_coefficient(
            MonomialLabel.single((1, 2, 2), 1)
        )


class TestEvaluation:
    def test_zero_weights(self):
        shape = Shape(2, 2, 2, 1)
        w = WeightAssignment(Matrix.zeros(2, 2), Matrix.zeros(2, 2), Matrix.zeros(1, 2))
        assert set(evaluate_mu(shape, w).values()) == {0}

    def test_rank_one_example(self):
        shape = Shape(2, 2, 2, 1)
        w = WeightAssignment.from_attention(Matrix([[1, 0], [0, 0]]), Matrix([[1, 0]]))
        values = evaluate_mu(shape, w)
        assert values[MonomialLabel.from_pairs([(1, 2), (1, 2), (1, 1)])] == 1
        for lab, v in values.items():
            if all(k == 2 for k, _ in lab.pairs()):
                assert v == 0

    def test_swap_columns(self):
        spec = SampleSpec(Shape(2, 2, 2, 1), seed=4)
        values = evaluate_mu(spec.shape, sample_weights(spec, 0))
        for A in ((1, 1), (1, 2), (2, 2)):
            for b in (1, 2):
                assert values[MonomialLabel.cross(A, b, 2, 1)] == values[MonomialLabel.cross(A, b, 1, 2)]

    @pytest.mark.parametrize("d,t", [(1, 1), (2, 1), (2, 2), (3, 2), (2, 3), (3, 3)])
    def test_matches_expansion(self, d, t):
        shape = Shape(d, t, d, 2)
        for s in range(20):
            w = sample_weights(SampleSpec(shape, seed=11), s)
            assert expand_output_polynomial(shape, w) == evaluate_mu(shape, w)

    def test_expansion_small_cases(self):
        w = WeightAssignment.from_attention(Matrix([[Fraction(2, 3)]]), Matrix([[5]]))
        assert expand_output_polynomial(Shape(1, 1, 1, 1), w) == {MonomialLabel.single((1, 1, 1), 1): Fraction(10, 3)}
        A = Matrix([[1, 2], [3, 4]])
        w = WeightAssignment.from_attention(A, Matrix([[5, 7]]))
        got = expand_output_polynomial(Shape(2, 1, 2, 1), w)[MonomialLabel.single((1, 1, 2), 1)]
        assert got == Fraction(2 * 5 + 3 * 5 + 1 * 7, 3)

    def test_expansion_cap(self):
        shape = Shape(6, 3, 1, 1)
        with pytest.raises(SizeCapExceeded):
            expand_output_polynomial(shape, sample_weights(SampleSpec(shape), 0))

    def test_mismatch(self):
        w = sample_weights(SampleSpec(Shape(3, 1, 3, 1)), 0)
        with pytest.raises(DimensionMismatch):
            evaluate_mu(Shape(2, 1, 2, 1), w)

    def test_rank_bound(self):
        for s in range(10):
            w = sample_weights(SampleSpec(Shape(3, 1, 1, 1), seed=2), s)
            assert w.A.shape == (3, 3)
            assert rank_rational(w.A) <= 1

    def test_json_round_trip(self):
        w = sample_weights(SampleSpec(Shape(3, 2, 2, 2), seed=9), 0)
        doc = json.loads(json.dumps(w.to_json()))
        back = WeightAssignment.from_json(doc)
        assert back.to_json() == w.to_json()
        assert back.A == w.A
        assert all(isinstance(x, str) for row in doc["Q"] for x in row)

    def test_symbolic_agrees_with_numeric(self):
        shape = Shape(3, 2, 2, 1)
        w = sample_weights(SampleSpec(shape, seed=1), 0)
        point = w.parameter_point()
        for lab, value in evaluate_mu(shape, w).items():
            p: MultiPoly = symbolic_coefficient(lab)
            assert p.evaluate(point) == value
