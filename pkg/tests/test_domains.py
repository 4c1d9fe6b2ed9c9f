import math

import numpy as np
import pytest

from logcauchy import ArityError, Domain, DomainError, MeanPoint, mean_report
from logcauchy.domains import check_point


def test_membership_is_strict():
    assert Domain.ABOVE_ONE.contains(1.0 + 1e-9)
    assert not Domain.ABOVE_ONE.contains(1.0)
    assert not Domain.UNIT_INTERVAL.contains(0.0)
    assert not Domain.UNIT_INTERVAL.contains(1.0)
    assert Domain.UNIT_INTERVAL.contains(0.5)
    assert Domain.POSITIVE.contains(1e-300)
    assert not Domain.POSITIVE.contains(0.0)


def test_membership_rejects_nonfinite():
    for bad in (math.nan, math.inf, -math.inf):
        assert not Domain.ABOVE_ONE.contains(bad)
        assert not Domain.POSITIVE.contains(bad)


def test_domains_closed_under_multiplication():
    rng = np.random.default_rng(5)
    for domain, lo, hi in [(Domain.ABOVE_ONE, 1.0 + 1e-6, 1e3),
                           (Domain.UNIT_INTERVAL, 1e-3, 1.0 - 1e-6),
                           (Domain.POSITIVE, 1e-3, 1e3)]:
        xs = np.exp(rng.uniform(np.log(lo), np.log(hi), (200, 2)))
        assert Domain(domain).contains(xs.prod(axis=1)).all()


def test_check_point_band_around_one():
    with pytest.raises(DomainError):
        check_point([2.0, 1.0 + 1e-13], Domain.ABOVE_ONE)
    with pytest.raises(DomainError):
        check_point([0.5, 1.0 - 1e-13], Domain.UNIT_INTERVAL)
    # the extension domain tolerates the band; it maps it to the seam value
    arr = check_point([2.0, 1.0 + 1e-13], Domain.POSITIVE)
    assert arr.shape == (2,)


def test_mean_point_validation():
    point = MeanPoint((2.0, 3.0), Domain.ABOVE_ONE)
    assert point.k == 2
    assert point.as_array().tolist() == [2.0, 3.0]
    with pytest.raises(ArityError):
        MeanPoint((2.0,), Domain.ABOVE_ONE)
    with pytest.raises(DomainError):
        MeanPoint((2.0, 0.5), Domain.ABOVE_ONE)
    with pytest.raises(DomainError):
        MeanPoint((2.0, math.inf), Domain.ABOVE_ONE)
    with pytest.raises(DomainError):
        MeanPoint((2.0, math.nan), Domain.POSITIVE)


def test_reciprocal_domains():
    assert Domain.ABOVE_ONE.reciprocal is Domain.UNIT_INTERVAL
    assert Domain.UNIT_INTERVAL.reciprocal is Domain.ABOVE_ONE
    assert Domain.POSITIVE.reciprocal is Domain.POSITIVE


def test_mean_report_strictness():
    rep = mean_report((2.0, 3.0), 2.4)
    assert rep.min == 2.0 and rep.max == 3.0 and rep.strict
    assert not mean_report((2.0, 2.0), 2.0).strict
    assert not mean_report((2.0, 3.0), 3.0).strict
    assert rep.min <= rep.value <= rep.max
