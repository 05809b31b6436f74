"""Sampling and symbolic verification of invariant families.

Points on the variety come from seeded integer weights pushed through the
parametrization.  Off-variety points sample the coefficient coordinates
directly.  All arithmetic is exact, so "vanishes" always means exactly zero.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .algebra.matrix import Matrix, default_workers, det_rational, rank_rational
from .algebra.poly import MultiPoly, format_rational
from .algebra.variables import input_x
from .errors import SizeCapExceeded, VariableMismatch
from .invariant_set import InvariantSet, label_fits
from .model import (
    MonomialLabel,
    Shape,
    WeightAssignment,
    coefficient_value,
    mu_point_for,
    symbolic_mu_for,
)
from .single_column import SymmetricTensorView, cubic_monomials, lie_flattening, tensor_of_cubic

DEFAULT_RANGE = 10


@dataclass(frozen=True)
class SampleSpec:
    """Seeded recipe for weights of a given shape.

    ``rank_constraint`` caps ``rank(A)`` by drawing ``K`` and ``Q`` with that
    many nonzero rows; ``full_rank`` redraws until ``rank(A)`` reaches its cap.
    """

    shape: Shape
    seed: int = 0
    entry_range: int = DEFAULT_RANGE
    rank_constraint: int | None = None
    full_rank: bool = False

    @property
    def rank_cap(self) -> int:
        cap = min(self.shape.a, self.shape.d)
        return min(cap, self.rank_constraint) if self.rank_constraint is not None else cap

    def rng(self, index: int, salt: str = "weights") -> random.Random:
        return random.Random(f"{salt}:{self.seed}:{index}")


def _draw(rng: random.Random, rows: int, cols: int, bound: int) -> list:
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def sample_weights(spec: SampleSpec, index: int = 0) -> WeightAssignment:
    """The ``index``-th weight sample of ``spec``; identical across calls and processes."""
    s, rng, B = spec.shape, spec.rng(index), spec.entry_range
    k = spec.rank_cap
    while True:
        pad = [[0] * s.d for _ in range(s.a - k)]
        Q = _draw(rng, k, s.d, B) + pad
        K = _draw(rng, k, s.d, B) + pad
        V = _draw(rng, s.d_prime, s.d, B)
        w = WeightAssignment(Q, K, V)
        if not spec.full_rank or rank_rational(w.A) == k:
            return w


def ambient_point(variables, rng: random.Random, bound: int = DEFAULT_RANGE) -> dict:
    """Independent uniform integers for each coordinate: generically off the variety."""
    return {v: Fraction(rng.randint(-bound, bound)) for v in variables}


def random_symmetric_tensor(d: int, rng: random.Random, bound: int = DEFAULT_RANGE) -> SymmetricTensorView:
    return SymmetricTensorView.from_values(d, {K: Fraction(rng.randint(-bound, bound)) for K in cubic_monomials(d)})


def split_111_tensor(d: int, rng: random.Random, bound: int = DEFAULT_RANGE) -> SymmetricTensorView:
    """Tensor of a product of three random linear forms."""
    xs = [input_x(k, 1) for k in range(1, d + 1)]
    f = MultiPoly.one()
    for _ in range(3):
        f = f * sum((MultiPoly.var(x).scale(rng.randint(-bound, bound)) for x in xs), MultiPoly.zero())
    return tensor_of_cubic(f, xs)


def mu_tensor(d: int, w: WeightAssignment, j: int = 1, row: int = 1) -> SymmetricTensorView:
    """Single-column tensor of column ``j`` at the weights ``w``."""
    values = {K: coefficient_value(MonomialLabel.single(K, j, row), w.A, w.V) for K in cubic_monomials(d)}
    return SymmetricTensorView.from_values(d, values)


# -- reports -------------------------------------------------------------


@dataclass
class VerificationReport:
    """Outcome of one check or of a scripted reproduction.

    ``failures`` are hard failures: nonzero values where zero was required.
    ``nonvanish_witnesses`` record off-variety points with a nonzero value,
    which is the expected outcome of a genericity check.
    """

    name: str
    shape: Shape | None = None
    samples: int = 0
    invariants: int = 0
    vanish_count: int = 0
    failures: list = field(default_factory=list)
    nonvanish_witnesses: list = field(default_factory=list)
    rank_observations: dict = field(default_factory=dict)
    symbolic_zero: bool | None = None
    checks: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures and self.symbolic_zero is not False and all(c["passed"] for c in self.checks)

    def check(self, name: str, passed: bool, detail=None) -> bool:
        self.checks.append({"name": name, "passed": bool(passed), "detail": detail})
        return bool(passed)

    def absorb(self, other: "VerificationReport", prefix: str | None = None) -> bool:
        """Record ``other`` as one check of this report."""
        label = prefix or other.name
        detail = {"invariants": other.invariants, "samples": other.samples, "vanish_count": other.vanish_count}
        if other.symbolic_zero is not None:
            detail["symbolic_zero"] = other.symbolic_zero
        if other.rank_observations:
            detail["ranks"] = other.rank_observations
        if other.nonvanish_witnesses:
            detail["nonvanishing_points"] = len({w["sample"] for w in other.nonvanish_witnesses})
        self.failures.extend(dict(f, check=label) for f in other.failures)
        self.checks.extend(dict(c, name=f"{label}: {c['name']}") for c in other.checks if not c["passed"])
        return self.check(label, other.passed, detail)

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "name": self.name,
            "shape": self.shape.as_dict() if self.shape else None,
            "passed": self.passed,
            "samples": self.samples,
            "invariants": self.invariants,
            "vanish_count": self.vanish_count,
            "failures": self.failures,
            "nonvanish_witnesses": self.nonvanish_witnesses,
            "rank_observations": self.rank_observations,
            "symbolic_zero": self.symbolic_zero,
            "checks": self.checks,
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=1, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [f"{'PASS' if self.passed else 'FAIL'} {self.name}"]
        if self.shape:
            lines.append(f"  shape: {self.shape}")
        if self.invariants:
            lines.append(f"  invariants: {self.invariants}  samples: {self.samples}  vanished: {self.vanish_count}")
        if self.symbolic_zero is not None:
            lines.append(f"  symbolic zero: {self.symbolic_zero}")
        for k, v in self.rank_observations.items():
            lines.append(f"  ranks {k}: {v}")
        if self.nonvanish_witnesses:
            lines.append(f"  off-variety nonzero values: {len(self.nonvanish_witnesses)}")
        for c in self.checks:
            detail = f"  ({c['detail']})" if c["detail"] is not None else ""
            lines.append(f"  [{'ok' if c['passed'] else 'FAILED'}] {c['name']}{detail}")
        for f in self.failures[:10]:
            lines.append(f"  nonzero: {json.dumps(f, sort_keys=True)}")
        return "\n".join(lines) + "\n"


def _timed(report: VerificationReport, start: float) -> VerificationReport:
    report.wall_time = time.perf_counter() - start
    return report


# -- vanishing on the image ----------------------------------------------


def _check_variables(invset: InvariantSet, shape: Shape) -> tuple:
    variables = invset.variables()
    for v in variables:
        if not label_fits(MonomialLabel.from_var(v), shape):
            raise VariableMismatch(f"{v} does not belong to shape {shape}")
    return variables


def _evaluate_samples(args):
    polys, variables, spec, indices = args
    out = []
    for s in indices:
        w = sample_weights(spec, s)
        point = mu_point_for(variables, w)
        out.append((s, [p.evaluate(point) for p in polys], w))
    return out


def _chunks(items: list, parts: int) -> list:
    parts = max(1, min(parts, len(items)))
    return [items[i::parts] for i in range(parts)]


def check_vanishing(
    invset: InvariantSet, spec: SampleSpec, samples: int = 100, workers: int | None = None
) -> VerificationReport:
    """Evaluate every invariant at ``samples`` seeded points of the image."""
    start = time.perf_counter()
    variables = _check_variables(invset, spec.shape)
    report = VerificationReport(f"vanishing {invset.family.value}", spec.shape, samples, len(invset.polys))
    workers = workers or default_workers()
    jobs = [(invset.polys, variables, spec, chunk) for chunk in _chunks(list(range(samples)), workers)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [r for part in pool.map(_evaluate_samples, jobs) for r in part]
    else:
        results = [r for job in jobs for r in _evaluate_samples(job)]
    for s, values, w in sorted(results, key=lambda r: r[0]):
        for i, val in enumerate(values):
            if val == 0:
                report.vanish_count += 1
            else:
                report.failures.append(
                    {"invariant": i, "sample": s, "value": format_rational(val), "weights": w.to_json()}
                )
    return _timed(report, start)


def check_nonvanishing(
    invset: InvariantSet, seed: int = 0, samples: int = 5, bound: int = DEFAULT_RANGE
) -> VerificationReport:
    """Genericity: at random ambient points some invariant should be nonzero.

    Fails only when every invariant vanishes at every sampled point, which
    for a nonempty family of nonzero polynomials is a real defect.
    """
    start = time.perf_counter()
    variables = invset.variables()
    report = VerificationReport(f"ambient {invset.family.value}", invset.shape, samples, len(invset.polys))
    for s in range(samples):
        point = ambient_point(variables, random.Random(f"ambient:{seed}:{s}"), bound)
        for i, p in enumerate(invset.polys):
            val = p.evaluate(point)
            if val:
                report.nonvanish_witnesses.append({"invariant": i, "sample": s, "value": format_rational(val)})
            else:
                report.vanish_count += 1
    if invset.polys:
        report.check("some invariant is nonzero off the variety", bool(report.nonvanish_witnesses))
    return _timed(report, start)


def symbolic_zero_check(invset: InvariantSet, max_d: int = 3, max_degree: int = 8) -> VerificationReport:
    """Substitute the coefficient formulas and require the zero polynomial."""
    start = time.perf_counter()
    degree = max((p.degree() for p in invset.polys), default=0)
    if invset.shape.d > max_d or degree > max_degree:
        raise SizeCapExceeded(
            f"symbolic check limited to d <= {max_d}, degree <= {max_degree} (got d={invset.shape.d}, degree={degree})"
        )
    report = VerificationReport(f"symbolic {invset.family.value}", invset.shape, 0, len(invset.polys))
    mapping = symbolic_mu_for(invset.variables())
    for i, p in enumerate(invset.polys):
        image = p.substitute(mapping)
        if image.is_zero():
            report.vanish_count += 1
        else:
            report.failures.append({"invariant": i, "image_terms": len(image), "symbolic": True})
    report.symbolic_zero = not report.failures
    return _timed(report, start)


def perturbation_check(poly: MultiPoly, spec: SampleSpec, samples: int = 5, delta=1) -> dict:
    """Add ``delta`` to each coefficient in turn; each perturbed copy must be nonzero at some sample.

    Returns ``{monomial text: first sample index with a nonzero value, or None}``.
    """
    variables = poly.variables()
    points = [mu_point_for(variables, sample_weights(spec, s)) for s in range(samples)]
    out = {}
    for mono, _ in poly.sorted_terms():
        bumped = poly + MultiPoly({mono: Fraction(delta)})
        hit = next((s for s, pt in enumerate(points) if bumped.evaluate(pt) != 0), None)
        out[MultiPoly({mono: 1}).to_text()] = hit
    return out


# -- rank observations ---------------------------------------------------


def lie_ranks_on_image(d: int, spec: SampleSpec, samples: int) -> list:
    return [rank_rational(lie_flattening(d, mu_tensor(d, sample_weights(spec, s)))) for s in range(samples)]


def lie_ranks_generic(d: int, seed: int, samples: int, bound: int = DEFAULT_RANGE) -> list:
    return [
        rank_rational(lie_flattening(d, random_symmetric_tensor(d, random.Random(f"tensor:{seed}:{s}"), bound)))
        for s in range(samples)
    ]


def lie_ranks_split_111(d: int, seed: int, samples: int, bound: int = DEFAULT_RANGE) -> list:
    return [
        rank_rational(lie_flattening(d, split_111_tensor(d, random.Random(f"split:{seed}:{s}"), bound)))
        for s in range(samples)
    ]


def evaluated_rank(m: Matrix, point: dict) -> int:
    return rank_rational(m.evaluate(point))


def expected_syzygy_count(d: int) -> int:
    """Maximal minors of ``Phi`` minus the dimension of degree-``d`` forms in ``d`` variables."""
    return comb(comb(d + 1, 2), d) - comb(2 * d - 1, d)


def det_values(m: Matrix, points: list) -> list:
    return [det_rational(m.evaluate(pt)) for pt in points]
