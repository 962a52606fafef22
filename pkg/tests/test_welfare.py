import math

import numpy as np
import pytest

from infomarket import dist
from infomarket.errors import PreconditionError
from infomarket.market import CapacitatedUnit, MarketConfig, Regime, Uncapacitated
from infomarket.welfare import (
    analytic_welfare, estimate_gap, estimate_welfare, mean_and_stderr,
)

P2 = dist.make_pareto(1, 2)
E1 = dist.make_exponential(1, 1)
# 0.5 * 128/35 + 0.5 * 2, from the mpmath-frozen Pareto max-of-4 moment.
UNCAP_QUALITY_N4 = 0.5 * 3.657142857142857 + 1.0


def within(est, value, k=3.0):
    return abs(est.mean - value) <= k * est.stderr


@pytest.mark.parametrize("supply", [Uncapacitated(), CapacitatedUnit()])
def test_no_information_matches_mean(supply):
    c = MarketConfig(30, 0.5, supply, P2, P2, base_seed=1)
    est = estimate_welfare(c, 4000)
    assert within(est[Regime.NO_INFORMATION], 2.0)


def test_capacitated_only_quality_matches_mean():
    c = MarketConfig(30, 0.5, CapacitatedUnit(), P2, P2, base_seed=2)
    assert within(estimate_welfare(c, 4000)[Regime.ONLY_QUALITY], 2.0)


def test_single_item_regimes_agree():
    c = MarketConfig(1, 0.5, Uncapacitated(), P2, P2)
    est = estimate_welfare(c, 1000)
    assert est[Regime.NO_INFORMATION].mean == est[Regime.FULL_INFORMATION].mean


def test_capacitated_ranking_gap_is_zero_at_n100():
    c = MarketConfig(100, 0.7, CapacitatedUnit(), E1, E1, base_seed=3)
    g = estimate_gap(c, 2000, "none", "quality")
    assert g.paired
    assert abs(g.delta) <= 3 * g.stderr


def test_uncapacitated_personal_gap_exactly_zero_at_rho0():
    c = MarketConfig(50, 0.0, Uncapacitated(), P2, P2)
    g = estimate_gap(c, 500, "quality", "full")
    assert g.delta == 0.0 and g.stderr == 0.0


def test_uncapacitated_ranking_gap_zero_at_rho1():
    c = MarketConfig(50, 1.0, Uncapacitated(), E1, E1, base_seed=5)
    g = estimate_gap(c, 4000, "none", "quality")
    assert abs(g.delta) <= 3 * g.stderr


def test_analytic_uncapacitated_only_quality_n4():
    c = MarketConfig(4, 0.5, Uncapacitated(), P2, P2, base_seed=6)
    exact = analytic_welfare("uncap", "quality", c)
    assert exact == pytest.approx(UNCAP_QUALITY_N4, rel=1e-13)
    assert within(estimate_welfare(c, 200_000)[Regime.ONLY_QUALITY], exact)


def test_analytic_capacitated_cases():
    c = MarketConfig(20, 1.0, CapacitatedUnit(), P2, E1)
    assert analytic_welfare("cap", "none", c) == pytest.approx(1.0)
    assert analytic_welfare("cap", "full", c) is None


def test_heavy_tail_flag():
    heavy = MarketConfig(10, 0.5, CapacitatedUnit(), P2, E1)
    light = MarketConfig(10, 0.5, CapacitatedUnit(), dist.make_pareto(1, 3), E1)
    assert not estimate_welfare(heavy, 100)[Regime.FULL_INFORMATION].stderr_reliable
    assert estimate_welfare(light, 100)[Regime.FULL_INFORMATION].stderr_reliable


def test_deferred_gap_uses_unpaired_stderr():
    c = MarketConfig(10, 0.5, CapacitatedUnit(), E1, E1, sampling_mode="deferred")
    g = estimate_gap(c, 500, "quality", "full")
    assert not g.paired


def test_mean_and_stderr():
    m, se = mean_and_stderr([1.0, 2.0, 3.0, 4.0])
    assert m == 2.5
    assert se == pytest.approx(math.sqrt(5 / 3 / 4))
    with pytest.raises(PreconditionError):
        mean_and_stderr([1.0])


def test_mean_is_compensated():
    x = np.array([1e16, 1.0, -1e16, 1.0] * 10)
    assert mean_and_stderr(x)[0] == 0.5


def test_same_regime_gap_rejected():
    c = MarketConfig(5, 0.5, CapacitatedUnit(), E1, E1)
    with pytest.raises(PreconditionError):
        estimate_gap(c, 10, "full", "u")
