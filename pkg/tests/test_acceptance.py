"""Acceptance checks, one per criterion, each with its wall-clock budget.

Every check prints a single line ``PASS``/``FAIL`` with the elapsed time and
the limit, then asserts both the mathematical outcome and the budget.
"""

from __future__ import annotations

import time

import pytest

from lsa_invariants import examples

CRITERIA = [
    (1, "monomial counts, closed form vs two enumerations (d, t <= 4)", examples.monomial_counts, {}, 5),
    (2, "shape (2,2,2,1): linear generators, q(y), 100 samples, symbolic", examples.example_2_2_2, {"samples": 100}, 5),
    (3, "shape (3,2,1,1): counts 10/45/10, 6x3 matrix, rank-1 vanishing", examples.example_3_2_1, {"samples": 100}, 30),
    (4, "shape (3,1,.,1): M_Lie, 45 minors symbolic and sampled, rank 8", examples.example_3_1_3, {"samples": 50}, 60),
    (5, "shape (4,1,1,1): rank 10 on image, 15 generic, det(N)", examples.example_4_1_1, {"samples": 30}, 30),
    (6, "syzygies d=3: kernel 10, vanishing, distinct from pencil cubics", examples.syzygies_d3, {"samples": 100}, 30),
    (7, "Veronese identities d, r <= 3 and the r=3 catalecticant minor", examples.veronese_identities, {}, 60),
    (8, "resultants: worked quartic, rank 6 per line, 100 samples", examples.resultants_d3, {"samples": 100}, 60),
    (9, "shape (3,2,3,1): all families vanish at 100 full-rank samples", examples.example_3_2_3, {"samples": 100}, 300),
    (10, "cross-row d=2, d'=3: minors vanish, C_S = V M_S(A)", examples.cross_row_d2, {"samples": 50}, 10),
    (11, "soundness: every single-coefficient perturbation detected", examples.soundness, {"samples": 5}, 10),
]


@pytest.mark.parametrize(
    "number,title,fn,kwargs,limit", CRITERIA, ids=[f"criterion-{c[0]:02d}" for c in CRITERIA]
)
def test_criterion(capsys, number, title, fn, kwargs, limit):
    start = time.perf_counter()
    report = fn(**kwargs)
    elapsed = time.perf_counter() - start
    ok = report.passed and elapsed < limit
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title} [{elapsed:.2f}s / {limit}s]")
    assert report.passed, report.to_text()
    assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"


def test_criterion_9_reports_quartic_rank():
    report = examples.example_3_2_3(samples=10)
    ranks = report.rank_observations
    assert ranks["all quartics"] > 0
    assert ranks["resultants"] <= ranks["all quartics"]
