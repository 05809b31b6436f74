from __future__ import annotations

import pytest

from lsa_invariants import Family, InvariantSet, Shape, golden
from lsa_invariants.algebra import parse_poly, rank_rational
from lsa_invariants.errors import SizeCapExceeded, VariableMismatch
from lsa_invariants.examples import reproduce_example
from lsa_invariants.linear import symmetrization_relations
from lsa_invariants.single_column import n_matrix_minors
from lsa_invariants.verify import (
    SampleSpec,
    VerificationReport,
    check_nonvanishing,
    check_vanishing,
    expected_syzygy_count,
    perturbation_check,
    sample_weights,
    symbolic_zero_check,
)

SHAPE = Shape(2, 2, 2, 1)


def test_sampling_is_deterministic():
    spec = SampleSpec(Shape(3, 2, 2, 2), seed=5)
    assert sample_weights(spec, 3).to_json() == sample_weights(spec, 3).to_json()
    assert sample_weights(spec, 3).to_json() != sample_weights(spec, 4).to_json()
    assert sample_weights(spec, 0).to_json() != sample_weights(SampleSpec(spec.shape, seed=6), 0).to_json()


def test_entries_in_range():
    w = sample_weights(SampleSpec(Shape(4, 1, 4, 2), seed=1), 0)
    entries = [x for m in (w.Q, w.K, w.V) for row in m.tolist() for x in row]
    assert all(-10 <= x <= 10 and x.denominator == 1 for x in entries)


def test_rank_one_attention():
    spec = SampleSpec(Shape(3, 2, 1, 1), seed=2)
    assert all(rank_rational(sample_weights(spec, s).A) <= 1 for s in range(30))


def test_full_rank_flag():
    spec = SampleSpec(Shape(3, 2, 3, 1), seed=2, full_rank=True)
    assert all(rank_rational(sample_weights(spec, s).A) == 3 for s in range(30))
    capped = SampleSpec(Shape(3, 2, 3, 1), seed=2, rank_constraint=2, full_rank=True)
    assert all(rank_rational(sample_weights(capped, s).A) == 2 for s in range(10))


def test_linear_family_vanishes():
    inv = symmetrization_relations(SHAPE)
    report = check_vanishing(inv, SampleSpec(SHAPE, 0), 25)
    assert report.passed
    assert report.vanish_count == 25 * len(inv)


def test_q_vanishes_at_100_samples():
    inv = InvariantSet(Family.CATALECTICANT, SHAPE, [golden.quartic_q()])
    assert check_vanishing(inv, SampleSpec(SHAPE, 0), 100).passed


def test_failures_carry_weights():
    inv = InvariantSet(Family.CATALECTICANT, SHAPE, [parse_poly("y[(1,1),(1,1),(1,1)]")])
    report = check_vanishing(inv, SampleSpec(SHAPE, 0), 3)
    assert not report.passed
    assert {"invariant", "sample", "value", "weights"} <= set(report.failures[0])


def test_parallel_matches_serial():
    inv = symmetrization_relations(Shape(3, 2, 3, 1))
    spec = SampleSpec(Shape(3, 2, 3, 1), 3)
    bad = inv.with_polys(list(inv.polys) + [parse_poly("y[(1,1),(1,1),(1,1)]")])
    serial = check_vanishing(bad, spec, 12, workers=1)
    parallel = check_vanishing(bad, spec, 12, workers=3)
    assert serial.to_dict(timing=False) == parallel.to_dict(timing=False)


def test_shape_mismatch():
    inv = symmetrization_relations(Shape(3, 2, 3, 1))
    with pytest.raises(VariableMismatch):
        check_vanishing(inv, SampleSpec(SHAPE), 1)


def test_symbolic_cap():
    with pytest.raises(SizeCapExceeded):
        symbolic_zero_check(n_matrix_minors(4, 1, shape=Shape(4, 1, 1, 1)))


def test_symbolic_reports_failure():
    inv = InvariantSet(Family.CATALECTICANT, SHAPE, [parse_poly("y[(1,1),(1,1),(1,1)]")])
    report = symbolic_zero_check(inv)
    assert report.symbolic_zero is False and not report.passed


def test_nonvanishing():
    assert check_nonvanishing(symmetrization_relations(SHAPE), 0).passed
    zero = InvariantSet(Family.CATALECTICANT, SHAPE, [parse_poly("0")])
    assert not check_nonvanishing(zero, 0).passed


def test_every_perturbation_detected():
    spec = SampleSpec(SHAPE, 0)
    for name, poly in golden.all_fixture_polys().items():
        s = spec if name != "resultant-12" else SampleSpec(Shape(3, 2, 3, 1), 0)
        hits = perturbation_check(poly, s, samples=5)
        assert len(hits) == len(poly)
        assert all(h is not None for h in hits.values()), name


def test_report_serialization():
    report = VerificationReport("demo", SHAPE)
    report.check("a", True)
    report.rank_observations["r"] = [1]
    assert report.passed
    assert "PASS demo" in report.to_text()
    assert '"wall_time"' not in report.to_json(timing=False)
    inner = VerificationReport("inner")
    inner.check("bad", False)
    assert not report.absorb(inner, "sub")
    assert not report.passed
    assert [c["name"] for c in report.checks] == ["a", "sub: bad", "sub"]


def test_expected_syzygy_count():
    assert expected_syzygy_count(3) == 10
    assert expected_syzygy_count(2) == 0


def test_reproduce_is_deterministic():
    a = reproduce_example("ex-cross-row", seed=3, samples=10)
    b = reproduce_example("Ex_Cross_Row", seed=3, samples=10)
    assert a.to_json(timing=False) == b.to_json(timing=False)
    assert a.to_text() == b.to_text()


def test_unknown_example():
    with pytest.raises(KeyError):
        reproduce_example("ex-nope")
