import itertools
import math

import numpy as np
import pytest

from logcauchy import (DomainError, ParameterError, estimate_invariant_mean,
                       geometric_mean, invariance_residual, iterate_pair,
                       log_cauchy_mean)
from logcauchy.dynamics import (MEAN_CATALOG, arithmetic_mean, catalog_mean,
                                harmonic_mean, log_cauchy_conjugate)
from logcauchy.means import complementary_mean

LOG = math.log

COMP = MEAN_CATALOG["comp-L2"]

# regression value: common limit of the conjugate pair from (2, 3),
# produced by this engine at tol 1e-15 and frozen here
CONJUGATE_PAIR_LIMIT = 2.3399934045816395


def closed_conjugate(x, y):
    return x * y * (LOG(x) + LOG(y)) / (x * LOG(x) + y * LOG(y))


class TestCatalog:
    def test_lookup(self):
        assert catalog_mean("G") is geometric_mean
        with pytest.raises(ParameterError):
            catalog_mean("nope")

    def test_conjugate_closed_form_values(self):
        # 6 log 6 / (2 log 2 + 3 log 3), evaluated directly
        want = 6.0 * LOG(6.0) / (2.0 * LOG(2.0) + 3.0 * LOG(3.0))
        assert math.isclose(log_cauchy_conjugate((2.0, 3.0)), want,
                            rel_tol=1e-13)
        assert math.isclose(want, 2.2960819109658654, rel_tol=1e-12)

    def test_conjugate_rejects_mixed(self):
        with pytest.raises(DomainError):
            log_cauchy_conjugate((0.5, 2.0))

    def test_means_are_means_on_samples(self):
        rng = np.random.default_rng(3)
        pts = np.exp(rng.uniform(np.log(1.01), np.log(100.0), (200, 2)))
        for name, mean in MEAN_CATALOG.items():
            vals = np.array([float(mean(p)) for p in pts])
            assert np.all(vals >= pts.min(axis=1) - 1e-12), name
            assert np.all(vals <= pts.max(axis=1) + 1e-12), name


class TestIteratePair:
    def test_complementary_pair_product_preserving(self):
        trace = iterate_pair(COMP, log_cauchy_mean, (2.0, 3.0), tol=1e-12)
        assert trace.limit is not None
        assert abs(trace.limit - math.sqrt(6.0)) < 1e-12
        assert trace.iterations_used <= 200
        for step in trace.steps:
            assert abs(step.invariance_residual) < 1e-14
            assert abs(step.x * step.y - 6.0) < 1e-13 * 6.0

    def test_identical_means_collapse_in_one_step(self):
        trace = iterate_pair(geometric_mean, geometric_mean, (2.0, 3.0),
                             tol=1e-12)
        assert trace.iterations_used == 1
        assert trace.steps[1].gap == 0.0
        assert math.isclose(trace.limit, math.sqrt(6.0), rel_tol=1e-15)

    def test_conjugate_pair_first_step_and_limit(self):
        trace = iterate_pair(log_cauchy_conjugate, log_cauchy_mean,
                             (2.0, 3.0), tol=1e-12)
        step1 = trace.steps[1]
        assert math.isclose(step1.x, closed_conjugate(2.0, 3.0), rel_tol=1e-13)
        assert math.isclose(step1.y, LOG(72.0) / LOG(6.0), rel_tol=1e-13)
        # drift of the geometric mean after one application, by hand
        want = math.sqrt(step1.x * step1.y) - math.sqrt(6.0)
        assert math.isclose(step1.invariance_residual, want, rel_tol=1e-10)
        assert math.isclose(step1.invariance_residual, -0.108462,
                            abs_tol=1e-5)
        assert trace.limit is not None
        assert closed_conjugate(2.0, 3.0) < trace.limit < LOG(72.0) / LOG(6.0)
        assert math.isclose(trace.limit, CONJUGATE_PAIR_LIMIT, rel_tol=1e-11)

    def test_diagonal_start_returns_immediately(self):
        trace = iterate_pair(log_cauchy_conjugate, log_cauchy_mean,
                             (5.0, 5.0), tol=1e-12)
        assert trace.iterations_used == 0
        assert trace.limit == 5.0

    def test_limit_between_start_min_max(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            x, y = np.exp(rng.uniform(np.log(1.1), np.log(100.0), 2))
            trace = iterate_pair(log_cauchy_conjugate, log_cauchy_mean,
                                 (x, y), tol=1e-12)
            assert trace.limit is not None
            assert min(x, y) <= trace.limit <= max(x, y)

    def test_gap_decreases_geometrically(self):
        trace = iterate_pair(log_cauchy_conjugate, log_cauchy_mean,
                             (2.0, 80.0), tol=1e-12)
        gaps = [s.gap for s in trace.steps]
        for a, b in zip(gaps[1:-1], gaps[2:]):
            assert b <= 0.9 * a + 1e-15
        assert trace.gap_violations == 0

    def test_swapping_the_pair_keeps_the_limit(self):
        rng = np.random.default_rng(13)
        pairs = [(COMP, log_cauchy_mean),
                 (log_cauchy_conjugate, log_cauchy_mean),
                 (arithmetic_mean, harmonic_mean)]
        for m1, m2 in pairs:
            for _ in range(5):
                start = tuple(np.exp(rng.uniform(np.log(1.1), np.log(100.0), 2)))
                a = iterate_pair(m1, m2, start, tol=1e-13).limit
                b = iterate_pair(m2, m1, start, tol=1e-13).limit
                assert a is not None and b is not None
                assert abs(a - b) <= 1e-11 * abs(a)

    def test_catalog_pairs_converge_within_cap(self):
        starts = [(1.5, 90.0), (2.0, 3.0), (40.0, 41.0)]
        for (n1, m1), (n2, m2) in itertools.combinations(MEAN_CATALOG.items(), 2):
            for start in starts:
                trace = iterate_pair(m1, m2, start, tol=1e-12, max_iter=200)
                assert trace.limit is not None, (n1, n2, start)
                assert trace.iterations_used <= 200

    def test_relative_gap_mode(self):
        trace = iterate_pair(arithmetic_mean, geometric_mean, (1e8, 3e8),
                             tol=1e-13, relative_gap=True)
        assert trace.limit is not None
        assert trace.steps[-1].gap < 1e-13

    def test_midorbit_failure_truncates(self):
        def bad_mean(point):
            return 0.5   # leaves (1, +inf) immediately

        trace = iterate_pair(bad_mean, log_cauchy_mean, (2.0, 3.0), tol=1e-12)
        assert trace.limit is None
        assert trace.error is not None
        assert "step 2" in trace.error
        assert len(trace.steps) == 2

    def test_bad_tolerance(self):
        with pytest.raises(ParameterError):
            iterate_pair(geometric_mean, geometric_mean, (2.0, 3.0), tol=0.0)


class TestInvarianceResidual:
    def test_complementary_invariance(self):
        rng = np.random.default_rng(19)
        for _ in range(50):
            x, y = np.exp(rng.uniform(np.log(1.01), np.log(1000.0), 2))
            resid = invariance_residual(geometric_mean, COMP,
                                        log_cauchy_mean, (x, y))
            assert abs(resid) <= 1e-14 * math.sqrt(x * y)

    def test_conjugate_pair_residual_hand_value(self):
        got = invariance_residual(geometric_mean, log_cauchy_conjugate,
                                  log_cauchy_mean, (2.0, 3.0))
        want = math.sqrt(closed_conjugate(2.0, 3.0) * (LOG(72) / LOG(6))) \
            - math.sqrt(6.0)
        assert math.isclose(got, want, rel_tol=1e-12)
        assert math.isclose(got, -0.10846228569743754, rel_tol=1e-10)

    def test_geometric_fixed_by_itself(self):
        got = invariance_residual(geometric_mean, geometric_mean,
                                  geometric_mean, (2.0, 3.0))
        assert got == 0.0


class TestEstimateInvariantMean:
    def test_complementary_pair_with_reference(self):
        est = estimate_invariant_mean(COMP, log_cauchy_mean, (2.0, 3.0),
                                      tol=1e-12, reference=geometric_mean)
        assert abs(est.limit - math.sqrt(6.0)) < 1e-12
        assert est.reference_gap < 1e-12

    def test_conjugate_pair_regression_value(self):
        est = estimate_invariant_mean(log_cauchy_conjugate, log_cauchy_mean,
                                      (2.0, 3.0), tol=1e-14)
        assert math.isclose(est.limit, CONJUGATE_PAIR_LIMIT, rel_tol=1e-12)

    def test_diagonal_point(self):
        est = estimate_invariant_mean(log_cauchy_conjugate, log_cauchy_mean,
                                      (7.0, 7.0), tol=1e-12)
        assert est.limit == 7.0 and est.iterations == 0

    def test_nonconvergence_reports_none(self):
        def stubborn(point):
            x, y = float(point[0]), float(point[1])
            return 0.7 * min(x, y) + 0.3 * max(x, y)

        est = estimate_invariant_mean(stubborn, arithmetic_mean, (2.0, 3.0),
                                      tol=1e-12, max_iter=3)
        assert est.limit is None
        assert est.trace.error is None
        assert est.iterations == 3

    def test_complement_of_generic_mean_preserves_product(self):
        comp_a = complementary_mean(arithmetic_mean)
        trace = iterate_pair(comp_a, arithmetic_mean, (2.0, 5.0), tol=1e-12)
        assert abs(trace.limit - math.sqrt(10.0)) < 1e-12
