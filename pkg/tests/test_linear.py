from __future__ import annotations

import random

import pytest

from lsa_invariants import Shape, evaluate_mu, golden, symbolic_zero_check
from lsa_invariants.algebra import span_rank
from lsa_invariants.errors import ContextEqualsTarget
from lsa_invariants.linear import sequence_copy_relations, symmetrization_relation, symmetrization_relations
from lsa_invariants.model import MonomialLabel, mu_point_for
from lsa_invariants.verify import SampleSpec, ambient_point, check_vanishing, sample_weights


def test_sequence_copy_needs_two_columns():
    assert len(sequence_copy_relations(Shape(3, 1, 3, 1))) == 0


def test_sequence_copy_d1():
    texts = [p.to_text() for p in sequence_copy_relations(Shape(1, 2, 1, 1)).polys]
    assert texts[0] == "y[(1,1),(1,1),(1,1)] - y[(1,2),(1,2),(1,2)]"
    assert len(texts) == 2


def test_sequence_copy_d2_t3():
    rels = sequence_copy_relations(Shape(2, 3, 2, 1))
    single = [p for p in rels.polys if all(not MonomialLabel.from_var(v).is_cross for v in p.variables())]
    # 4 multisets, columns 2 and 3 each tied to column 1
    assert len(single) == 8
    # spanning tree: every label except one representative per class
    assert len(rels) == 48 - 10
    assert span_rank(rels.polys) == len(rels)


def test_sequence_copy_equalities_hold_under_mu():
    shape = Shape(2, 3, 2, 1)
    rels = sequence_copy_relations(shape)
    w = sample_weights(SampleSpec(shape, seed=5), 0)
    values = evaluate_mu(shape, w)
    point = {lab.var: v for lab, v in values.items()}
    assert all(p.evaluate(point) == 0 for p in rels.polys)


def test_displayed_generators():
    shape = Shape(2, 2, 2, 1)
    got = [p.to_text() for p in symmetrization_relations(shape).polys]
    assert got == list(golden.raw_lines("linear_2_2_2.txt", "linear"))
    assert symmetrization_relation((2, 2, 2)).to_text() == "y[(2,1),(2,1),(2,1)] - y[(2,2),(2,2),(2,1)]"
    assert (
        symmetrization_relation((1, 2, 2)).to_text()
        == "3*y[(1,1),(2,1),(2,1)] - 2*y[(1,2),(2,2),(2,1)] - y[(2,2),(2,2),(1,1)]"
    )


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_symmetrization_count_and_rank(d):
    rels = symmetrization_relations(Shape(d, 2, d, 1))
    expected = (d + 2) * (d + 1) * d // 6
    assert len(rels) == span_rank(rels.polys) == expected
    assert all(p.degree() == 1 and p.is_homogeneous() for p in rels.polys)
    assert all(c.denominator == 1 for p in rels.polys for _, c in p.sorted_terms())


def test_context_equals_target():
    with pytest.raises(ContextEqualsTarget):
        symmetrization_relations(Shape(2, 2, 2, 1), j=1, n=1)


@pytest.mark.parametrize("d,t", [(2, 2), (3, 2), (2, 3), (4, 2), (3, 3)])
@pytest.mark.parametrize("low_rank", [True, False])
def test_vanish_on_samples(d, t, low_rank):
    shape = Shape(d, t, 1 if low_rank else d, 1)
    for rels in (symmetrization_relations(shape), sequence_copy_relations(shape)):
        report = check_vanishing(rels, SampleSpec(shape, seed=d * 10 + t), 50)
        assert report.passed, report.to_text()


def test_symbolic_zero():
    for shape in (Shape(3, 2, 3, 1), Shape(2, 3, 2, 1)):
        assert symbolic_zero_check(symmetrization_relations(shape)).passed
        assert symbolic_zero_check(sequence_copy_relations(shape)).passed


def test_nonzero_off_variety():
    rels = symmetrization_relations(Shape(3, 2, 3, 1))
    point = ambient_point(rels.variables(), random.Random("off"))
    assert any(p.evaluate(point) for p in rels.polys)


def test_other_columns_and_rows():
    shape = Shape(2, 3, 2, 2)
    rels = symmetrization_relations(shape, row=2, j=3, n=1)
    w = sample_weights(SampleSpec(shape, seed=1), 0)
    point = mu_point_for(rels.variables(), w)
    assert all(p.evaluate(point) == 0 for p in rels.polys)
    assert all(MonomialLabel.from_var(v).row == 2 for v in rels.variables())
