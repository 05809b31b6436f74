from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest

from lsa_invariants import Shape, golden, symbolic_zero_check
from lsa_invariants.algebra import Matrix, MultiPoly, kernel_basis, rank_rational, span_rank
from lsa_invariants.algebra.variables import input_z, param_a, param_v
from lsa_invariants.cross_column.flattening import (
    determinantal_syzygies,
    low_rank_minors,
    phi_matrix,
    syzygy_coefficient_matrix,
    unbalanced_flattening,
)
from lsa_invariants.cross_column.resultants import (
    Line,
    restrict_to_line,
    resultant_quartics,
    slice_quadrics,
    sylvester_resultant,
)
from lsa_invariants.cross_column.slices import pencil_matrix, pencil_mixed_minors, slice_matrices, slice_matrix
from lsa_invariants.cross_column.veronese import (
    FMap,
    block_veronese_matrix,
    block_veronese_minors,
    catalecticant_minors,
    cross_target_matrix,
    cross_target_minors,
    multi_indices,
    veronese_determinant,
    veronese_fmap,
    veronese_matrix,
)
from lsa_invariants.errors import (
    ContextEqualsTarget,
    DegreeMismatch,
    DependentLineVectors,
    DimensionTooSmall,
    IndexOutOfRange,
    NotBottlenecked,
)
from lsa_invariants.model import cross_y, mu_point_for, symbolic_mu
from lsa_invariants.verify import SampleSpec, check_nonvanishing, check_vanishing, sample_weights

FULL3 = Shape(3, 2, 3, 1)


def _weights(shape, seed=0, index=0, **kw):
    return sample_weights(SampleSpec(shape, seed, **kw), index)


def _at(m: Matrix, w) -> Matrix:
    return m.evaluate(mu_point_for(m.variables(), w))


def _symbolic_A(d):
    return Matrix([[MultiPoly.var(param_a(m, l)) for l in range(1, d + 1)] for m in range(1, d + 1)])


class TestSlices:
    def test_definition(self):
        M = slice_matrix(2, 1)
        assert M == Matrix(
            [
                [cross_y((1, 1), 1), cross_y((1, 2), 1)],
                [cross_y((1, 2), 1), cross_y((2, 2), 1)],
            ]
        )
        assert str(M[0, 1]) == "y[(1,2),(2,2),(1,1)]"

    def test_context_equals_target(self):
        with pytest.raises(ContextEqualsTarget):
            slice_matrix(2, 1, n=1, j=1)
        with pytest.raises(ContextEqualsTarget):
            slice_quadrics(2, n=2, j=2)

    def test_image_form(self):
        w = _weights(FULL3, seed=2)
        A, v = w.A, w.V.row(0)
        for k3, M in enumerate(slice_matrices(3), start=1):
            a = [A[k, k3 - 1] for k in range(3)]
            expected = Matrix([[(v[r] * a[c] + a[r] * v[c]) / 2 for c in range(3)] for r in range(3)])
            assert _at(M, w) == expected

    @pytest.mark.parametrize("d", [3, 4])
    def test_pencil_rank_at_most_two(self, d):
        shape = Shape(d, 2, d, 1)
        rng = random.Random(d)
        for s in range(5):
            w = _weights(shape, seed=1, index=s)
            slices = [_at(M, w) for M in slice_matrices(d)]
            for _ in range(10):
                lam = [rng.randint(-9, 9) for _ in range(d)]
                combo = Matrix(
                    [[sum(l * S[r, c] for l, S in zip(lam, slices)) for c in range(d)] for r in range(d)]
                )
                assert rank_rational(combo) <= 2

    def test_pencil_matrix_is_symmetric(self):
        P = pencil_matrix(3)
        assert P == P.transpose()


class TestPencilMinors:
    def test_counts(self):
        assert len(pencil_mixed_minors(3)) == 10
        assert len(pencil_mixed_minors(4)) == 16 * 20

    @pytest.mark.parametrize("d", [3, 4])
    def test_two_routes_agree(self, d):
        direct = pencil_mixed_minors(d, method="direct")
        pencil = pencil_mixed_minors(d, method="pencil")
        assert list(direct.polys) == list(pencil.polys)

    def test_vanish(self):
        minors = pencil_mixed_minors(3, shape=FULL3)
        assert check_vanishing(minors, SampleSpec(FULL3, 3), 30).passed
        assert symbolic_zero_check(minors).passed
        assert check_nonvanishing(minors, 3).passed

    def test_too_small(self):
        with pytest.raises(DimensionTooSmall):
            pencil_mixed_minors(2)


class TestFlattening:
    def test_shapes_and_reference(self):
        assert unbalanced_flattening(2).shape == (3, 2)
        F = unbalanced_flattening(3)
        assert F == golden.flattening_6x3()
        assert [str(e) for e in F.row(0)] == [
            "y[(1,2),(1,2),(1,1)]",
            "y[(1,2),(1,2),(2,1)]",
            "y[(1,2),(1,2),(3,1)]",
        ]

    def test_phi_rows(self):
        phi = phi_matrix(2)
        v1, v2 = MultiPoly.var(param_v(1, 1)), MultiPoly.var(param_v(1, 2))
        assert list(phi.row(0)) == [v1, 0]
        assert list(phi.row(1)) == [v2 / 2, v1 / 2]

    @pytest.mark.parametrize("d", [2, 3])
    def test_factorization_symbolic(self, d):
        shape = Shape(d, 2, d, 1)
        F = unbalanced_flattening(d).substitute(symbolic_mu(shape))
        assert F == phi_matrix(d) @ _symbolic_A(d)

    def test_factorization_at_samples(self):
        for s in range(5):
            w = _weights(FULL3, seed=4, index=s)
            phi = phi_matrix(3)
            assert _at(unbalanced_flattening(3), w) == phi.evaluate(w.parameter_point()) @ w.A

    @pytest.mark.parametrize("a", [1, 2, 3])
    def test_rank_bound(self, a):
        shape = Shape(3, 2, a, 1)
        for s in range(5):
            assert rank_rational(_at(unbalanced_flattening(3), _weights(shape, 5, s))) <= a

    def test_low_rank_counts(self):
        assert len(low_rank_minors(3, 1)) == 45
        assert len(low_rank_minors(2, 1)) == 3
        assert set(low_rank_minors(3, 2).degrees()) == {3}
        with pytest.raises(NotBottlenecked):
            low_rank_minors(3, 3)

    def test_low_rank_both_regimes(self):
        low = low_rank_minors(3, 1, shape=Shape(3, 2, 1, 1))
        assert check_vanishing(low, SampleSpec(Shape(3, 2, 1, 1), 6), 30).passed
        full = check_vanishing(low, SampleSpec(FULL3, 6, full_rank=True), 3)
        assert not full.passed and full.failures


class TestSyzygies:
    def test_d3_kernel(self):
        coeff, subsets = syzygy_coefficient_matrix(3)
        assert coeff.shape == (10, 20) and len(subsets) == 20
        assert len(kernel_basis(coeff)) == 10
        syz = determinantal_syzygies(3, shape=FULL3)
        assert len(syz) == 10 and set(syz.degrees()) == {3}
        assert symbolic_zero_check(syz).passed
        assert check_vanishing(syz, SampleSpec(FULL3, 7, full_rank=True), 20).passed

    def test_d2_kernel_is_computed(self):
        coeff, _ = syzygy_coefficient_matrix(2)
        assert coeff.shape == (3, 3)
        kernel = kernel_basis(coeff)
        assert len(kernel) == 3 - rank_rational(coeff)
        assert len(determinantal_syzygies(2, shape=Shape(2, 2, 2, 1))) == len(kernel)

    def test_differs_from_pencil(self):
        syz = {p.primitive() for p in determinantal_syzygies(3, shape=FULL3).polys}
        pen = {p.primitive() for p in pencil_mixed_minors(3).polys if p}
        assert syz != pen
        assert span_rank(list(syz) + list(pen)) > max(span_rank(syz), span_rank(pen))

    def test_low_attention_warns(self):
        with pytest.warns(RuntimeWarning):
            determinantal_syzygies(3, shape=Shape(3, 2, 1, 1))


class TestFMap:
    def test_examples(self):
        assert veronese_fmap((1, 1)) == FMap((1, 2))
        assert veronese_fmap((2, 0)) == FMap((1, 1))
        assert veronese_fmap((1, 2, 0)) == FMap((1, 2, 2))

    @pytest.mark.parametrize("r", [2, 3, 4])
    def test_all_multi_indices(self, r):
        for alpha in multi_indices(r, r):
            f = veronese_fmap(alpha)
            assert f.multiplicities() == alpha
            assert f.has_only_self_loops()

    def test_cycle_detection(self):
        assert not FMap((2, 1)).has_only_self_loops()

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            veronese_fmap((2, 1))


class TestVeronese:
    def test_displayed_matrix(self):
        M = veronese_matrix((2, 0), (1, 2), (2, 1), d=2)
        expected = Matrix(
            [
                [cross_y((1, 1), 2), cross_y((1, 1), 1)],
                [cross_y((1, 2), 2) * 2, cross_y((1, 2), 1) * 2],
            ]
        )
        assert M == expected
        d1 = golden.matrix("quartic_2_2_2.txt", "d1")
        d3 = golden.matrix("quartic_2_2_2.txt", "d3")
        det2 = lambda m: m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]  # noqa: E731
        assert veronese_determinant((2, 0), (1, 2), (2, 1), d=2) == det2(d1) * 2
        assert veronese_determinant((1, 1), (1, 2), (2, 1), d=2) == det2(d3)

    def test_identity_under_mu(self):
        shape = Shape(3, 2, 3, 1)
        mu = symbolic_mu(shape)
        for K in permutations((1, 2, 3), 2):
            for L in [(1, 2), (3, 1)]:
                det_A = _symbolic_A(3).submatrix([k - 1 for k in K], [l - 1 for l in L])
                det_A = det_A[0, 0] * det_A[1, 1] - det_A[0, 1] * det_A[1, 0]
                for alpha in multi_indices(2, 2):
                    mono = MultiPoly.one()
                    for k, e in zip(K, alpha):
                        mono = mono * MultiPoly.var(param_v(1, k)) ** e
                    assert veronese_determinant(alpha, K, L, d=3).substitute(mu) == mono * det_A

    def test_index_errors(self):
        with pytest.raises(IndexOutOfRange):
            veronese_determinant((1, 1), (1, 1), (1, 2), d=2)
        with pytest.raises(IndexOutOfRange):
            veronese_determinant((1, 1), (1, 3), (1, 2), d=2)
        with pytest.raises(DegreeMismatch):
            catalecticant_minors(1)

    def test_catalecticant_is_q(self):
        q = golden.quartic_q()
        assert catalecticant_minors(2, L=(2, 1), shape=Shape(2, 2, 2, 1)).polys == (q,)
        assert catalecticant_minors(2, shape=Shape(2, 2, 2, 1)).polys == (q,)
        assert q.degree() == 4

    def test_q_vanishes(self):
        shape = Shape(2, 2, 2, 1)
        inv = catalecticant_minors(2, shape=shape)
        assert check_vanishing(inv, SampleSpec(shape, 1), 100).passed
        assert check_nonvanishing(inv, 1).passed

    def test_cross_target(self):
        inv = cross_target_minors(2, (1, 2), (1, 2), (1, 3), shape=FULL3)
        assert len(inv) == 3
        assert check_vanishing(inv, SampleSpec(FULL3, 2, full_rank=True), 20).passed
        M = cross_target_matrix(2, (1, 2), (1, 2), (1, 3), d=3)
        for s in range(5):
            assert rank_rational(_at(M, _weights(FULL3, 3, s))) <= 1
        with pytest.raises(IndexOutOfRange):
            cross_target_minors(2, (1, 2), (1, 2), (1, 2))

    def test_block_contains_catalecticant(self):
        targets = [(1, 2), (1, 3), (2, 3)]
        block = block_veronese_minors(2, (1, 2), targets, shape=FULL3)
        for L in targets:
            cat = catalecticant_minors(2, (1, 2), L, shape=FULL3)
            assert set(cat.polys) <= set(block.polys)
        assert check_vanishing(block, SampleSpec(FULL3, 4, full_rank=True), 20).passed
        M = block_veronese_matrix(2, (1, 2), targets, d=3)
        for s in range(5):
            assert rank_rational(_at(M, _weights(FULL3, 4, s))) <= 1

    def test_r3_minor(self):
        inv = catalecticant_minors(3, (1, 2, 3), (1, 2, 3), shape=FULL3)
        assert set(inv.degrees()) == {6}
        assert check_vanishing(inv, SampleSpec(FULL3, 8), 10).passed


class TestResultants:
    def test_slice_quadric_definition(self):
        q = slice_quadrics(2)[0]
        z1, z2 = MultiPoly.var(input_z(1)), MultiPoly.var(input_z(2))
        expected = cross_y((1, 1), 1) * z1**2 + cross_y((1, 2), 1) * z1 * z2 * 2 + cross_y((2, 2), 1) * z2**2
        assert q == expected

    def test_common_linear_factor(self):
        z = [MultiPoly.var(input_z(k)) for k in (1, 2, 3)]
        mu = symbolic_mu(FULL3)
        v = [MultiPoly.var(param_v(1, k)) for k in (1, 2, 3)]
        ell = sum((vk * zk for vk, zk in zip(v, z)), MultiPoly.zero())
        for s, q in enumerate(slice_quadrics(3), start=1):
            other = sum((MultiPoly.var(param_a(k, s)) * z[k - 1] for k in (1, 2, 3)), MultiPoly.zero())
            assert q.substitute(mu) == ell * other

    def test_shared_root_on_random_lines(self):
        rng = random.Random(9)
        for s in range(5):
            w = _weights(FULL3, 9, s)
            xi = tuple(rng.randint(-5, 5) for _ in range(3))
            zeta = tuple(rng.randint(-5, 5) for _ in range(3))
            try:
                line = Line(xi, zeta)
            except DependentLineVectors:
                continue
            restricted = [restrict_to_line(q, line) for q in slice_quadrics(3)]
            for q1, q2 in combinations(restricted, 2):
                res = sylvester_resultant(q1, q2)
                assert res.evaluate(mu_point_for(res.variables(), w)) == 0

    def test_worked_example(self):
        pair = resultant_quartics(3, lines=[Line.coordinate(3, 1, 2)], mode="pairwise")
        assert len(pair) == 3
        assert pair.polys[0] == golden.resultant_quartic_3()

    def test_rank_six_per_line(self):
        for p, q in combinations((1, 2, 3), 2):
            one = resultant_quartics(3, lines=[Line.coordinate(3, p, q)])
            assert len(one) == 9
            assert span_rank(one.polys) == 6
            assert set(one.degrees()) == {4}

    def test_all_vanish(self):
        everything = resultant_quartics(3, shape=FULL3)
        assert len(everything) == 27
        assert check_vanishing(everything, SampleSpec(FULL3, 1, full_rank=True), 30).passed
        assert check_nonvanishing(everything, 1).passed

    def test_custom_line_and_all_coefficients(self):
        line = Line((1, 1, 0), (0, Fraction(1, 2), 1))
        inv = resultant_quartics(3, lines=[line], mode="pencil", all_coefficients=True, shape=FULL3)
        assert len(inv) > 6
        assert check_vanishing(inv, SampleSpec(FULL3, 2), 10).passed
        assert inv.params["lines"] == [line.to_json()]
        assert Line.from_json(line.to_json()) == line

    def test_bad_lines(self):
        with pytest.raises(DependentLineVectors):
            Line((1, 2, 3), (2, 4, 6))
        with pytest.raises(DependentLineVectors):
            resultant_quartics(3, lines=[Line.coordinate(2, 1, 2)])
        with pytest.raises(ValueError):
            resultant_quartics(3, mode="bogus")

    def test_symbolic_zero(self):
        assert symbolic_zero_check(resultant_quartics(3, lines=[Line.coordinate(3, 2, 3)], shape=FULL3)).passed
