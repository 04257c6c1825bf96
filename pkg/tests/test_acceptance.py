"""Acceptance criteria 1-12.  Arithmetic is exact: every check is equality.

The instance catalog is shared (session fixture) so verdicts computed for
one criterion are reused by the others.
"""

import time

import numpy as np
import pytest

from minspread import linalg as la
from minspread.code import codeword, covers, weight_distribution
from minspread.minimality import Verdict, ab_bound, monotonicity_check, restriction
from minspread.spread import dual_spread, validate
from minspread.suite import (
    THM31_SHAPES,
    THM32_SHAPES,
    codeword_oracle_disagreements,
    perp_failures,
    covering_counterexamples,
    run_suite,
    weight_law_violations,
)

criterion = pytest.mark.criterion


@criterion(1)
def test_criterion_01_large_s_minimal(catalog):
    instances = catalog.tagged("thm31")
    shapes = {(I.q, I.k) for I in instances}
    assert shapes == set(THM31_SHAPES)
    for q, k in THM31_SHAPES:
        sizes = {I.s for I in instances if (I.q, I.k) == (q, k) and I.name.startswith("des")}
        assert sizes == {q + 1, q**k + 1}
    for I in instances:
        t = time.perf_counter()
        assert I.geometric.verdict is Verdict.MINIMAL, I.name
        if I.small:
            assert I.bruteforce.verdict is Verdict.MINIMAL, I.name
        assert time.perf_counter() - t < 5.0, I.name


@criterion(2)
def test_criterion_02_small_s_not_minimal(catalog):
    instances = catalog.tagged("thm32")
    assert len(instances) == len(THM32_SHAPES) * 2 * 4
    for I in instances:
        r = I.geometric
        assert r.verdict is Verdict.NOT_MINIMAL, I.name
        x0, y0 = r.certificate, r.witness
        assert covers(codeword(x0, I.D), codeword(y0, I.D)), I.name
        assert la.span_dim([x0, y0], I.field) == 2, I.name


@criterion(3)
def test_criterion_03_eb_family_not_minimal(catalog):
    instances = catalog.tagged("thm33")
    assert sorted(I.q for I in instances) == [4, 5]
    for I in instances:
        assert I.s == I.q and I.k == 2
        assert I.geometric.verdict is Verdict.NOT_MINIMAL
        e1 = np.zeros(4, dtype=np.int64)
        e1[0] = 1
        assert restriction(e1, I.D).v_dim <= I.spread.m - 2


@criterion(4)
def test_criterion_04_four_member_family_minimal(catalog):
    instances = catalog.tagged("thm34")
    assert sorted(I.q for I in instances) == [4, 5]
    for I in instances:
        assert I.geometric.verdict is Verdict.MINIMAL
        assert I.bruteforce.verdict is Verdict.MINIMAL


@criterion(5)
def test_criterion_05_same_distribution_different_minimality(catalog):
    pairs = list(zip(catalog.tagged("same-eb"), catalog.tagged("same-thm34")))
    assert [(A.q, B.q) for A, B in pairs] == [(4, 4), (5, 5)]
    for A, B in pairs:
        assert A.s == B.s == 4
        assert weight_distribution(A.D) == weight_distribution(B.D)
        assert A.geometric.verdict is Verdict.NOT_MINIMAL
        assert B.geometric.verdict is Verdict.MINIMAL


@criterion(6)
def test_criterion_06_weight_law(catalog):
    assert sum(weight_law_violations(I) for I in catalog.instances) == 0


@criterion(7)
def test_criterion_07_dual_spread_valid(catalog):
    for I in catalog.instances:
        d = dual_spread(I.spread)
        assert validate(d.members).s == I.s


@criterion(8)
def test_criterion_08_geometric_bruteforce_equivalence(catalog):
    small = [I for I in catalog.instances if I.small]
    assert len(small) == len(catalog.instances)
    for I in small:
        assert I.geometric.verdict is I.bruteforce.verdict, I.name
        assert codeword_oracle_disagreements(I, samples=200) == 0, I.name


@criterion(9)
def test_criterion_09_covering_iff_hyperplane_inclusion(catalog):
    for I in catalog.instances:
        bad, positives, n = covering_counterexamples(I, pairs=1000)
        assert n >= 1000
        assert positives > 0
        assert bad == 0, I.name


@criterion(10)
def test_criterion_10_ab_soundness_and_boundary(catalog):
    for I in catalog.instances:
        if ab_bound(I.weights, I.field).minimal:
            assert I.geometric.minimal, I.name
    boundary = [I for I in catalog.tagged("thm32") if (I.q, I.k, I.s) == (3, 2, 3)]
    assert boundary
    for I in boundary:
        ab = ab_bound(I.weights, I.field)
        assert (ab.stats["w_min"], ab.stats["w_max"]) == (12, 18)
        assert 3 * 12 == (3 - 1) * 18
        assert ab.verdict is Verdict.INCONCLUSIVE
        assert I.geometric.verdict is Verdict.NOT_MINIMAL


@criterion(11)
def test_criterion_11_monotonicity(catalog):
    ups = catalog.tagged("mono-up")
    assert len(ups) == 2
    for I in ups:
        base = next(J for J in catalog.tagged("thm34") if J.q == I.q)
        assert I.s == base.s + 2
        assert I.geometric.verdict is Verdict.MINIMAL
        assert monotonicity_check(base.D, I.D)
    downs = catalog.tagged("mono-down")
    assert len(downs) == (2**4 - 1 - 4 - 1) + (2**5 - 1 - 5 - 1)
    for I in downs:
        parent = next(J for J in catalog.tagged("thm33") if J.q == I.q)
        assert parent.s >= 4
        assert I.geometric.verdict is Verdict.NOT_MINIMAL
        assert monotonicity_check(I.D, parent.D)


@criterion(12)
def test_criterion_12_structural(catalog):
    shapes = set()
    for I in catalog.instances:
        assert I.D.n == I.s * (I.q**I.k - 1)
        assert I.D.rank == I.spread.m
        shapes.add((I.q, I.spread.m))
    for q, m in sorted(shapes):
        assert perp_failures(q, m, cases=500, seed=1) == 0


def test_verify_suite_all_rows(catalog):
    results = run_suite(catalog=catalog)
    failed = [(r.row, r.details[:3]) for r in results if not r.passed]
    assert not failed
    assert [r.criterion for r in results] == list(range(1, 13))
