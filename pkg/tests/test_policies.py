import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prophetlab.benchmark import prophet_value
from prophetlab.distributions import Exponential, Pareto, ReverseWeibullWitness, Uniform
from prophetlab.errors import DomainError, HorizonTooSmallError
from prophetlab.policies import (
    PolicyValueTable,
    ThresholdPolicy,
    best_single_threshold,
    evt_single_threshold_min,
    multi_unit_threshold,
    optimal_values,
    run_trial,
    single_threshold_expected_value,
    threshold_schedule,
)

from conftest import catalog


def test_optimal_values_examples():
    assert optimal_values(Uniform(), 2, "min").G(2) == pytest.approx(0.375, abs=1e-15)
    assert optimal_values(Uniform(), 3, "max").G(3) == pytest.approx(0.6953125, abs=1e-15)
    for d in catalog():
        for obj in ("max", "min"):
            assert optimal_values(d, 1, obj).G(1) == d.mean


def test_table_is_immutable():
    table = optimal_values(Uniform(), 5, "min")
    with pytest.raises(ValueError):
        table.values[0] = 0.0
    with pytest.raises(DomainError):
        table.G(6)
    assert isinstance(table, PolicyValueTable) and table.horizon == 5


def test_schedule_examples():
    pol = threshold_schedule(optimal_values(Uniform(), 3, "min"))
    assert list(pol.thresholds) == pytest.approx([0.375, 0.5, 1.0])
    pol = threshold_schedule(optimal_values(Uniform(), 2, "max"))
    assert list(pol.thresholds) == pytest.approx([0.5, 0.0])
    pol = threshold_schedule(optimal_values(Exponential(1.0), 1, "min"))
    assert pol.horizon == 1 and pol.thresholds[0] == math.inf


def grid_backward_induction(n, objective, points=10_000):
    """Optimal stopping on a midpoint grid for U[0,1], enumerating every threshold."""
    x = (np.arange(points) + 0.5) / points
    csum = np.concatenate([[0.0], np.cumsum(x)]) / points
    frac = np.arange(points + 1) / points  # P(X below the j-th cut)
    v = float(x.mean())
    out = [v]
    for _ in range(1, n):
        if objective == "min":
            # accept the j smallest grid values, continue otherwise
            cand = csum + (1.0 - frac) * v
        else:
            # accept the points-j largest values
            cand = (csum[-1] - csum) + frac * v
            cand = -cand
        best = cand.min()
        v = float(best if objective == "min" else -best)
        out.append(v)
    return out


@pytest.mark.parametrize("objective", ["min", "max"])
def test_dp_against_grid_oracle(objective):
    oracle = grid_backward_induction(4, objective)
    table = optimal_values(Uniform(), 4, objective)
    for k in (2, 3, 4):
        assert abs(table.G(k) - oracle[k - 1]) <= 1e-4


def test_dp_closed_form_recursion():
    g_min, g_max = 0.5, 0.5
    table_min = optimal_values(Uniform(), 200, "min")
    table_max = optimal_values(Uniform(), 200, "max")
    for k in range(2, 201):
        g_min = g_min - g_min**2 / 2
        g_max = g_max + (1 - g_max) ** 2 / 2
        assert table_min.G(k) == pytest.approx(g_min, rel=1e-13)
        assert table_max.G(k) == pytest.approx(g_max, rel=1e-13)


def test_table_invariants(dist):
    n = 300
    up = optimal_values(dist, n, "max").values
    assert np.all(np.diff(up) >= -1e-15)
    down = optimal_values(dist, n, "min").values
    assert np.all(np.diff(down) <= 1e-15)
    assert np.all(down >= dist.support_lo)
    for k in (2, 10, 100, 300):
        assert up[k - 1] <= prophet_value(dist, k, "max") * (1 + 1e-12)
        assert down[k - 1] >= prophet_value(dist, k, "min") * (1 - 1e-12)


def test_competitive_ratio_ranges(dist):
    n_max = 10**4
    up = optimal_values(dist, n_max, "max")
    down = optimal_values(dist, n_max, "min")
    for n in (1, 2, 5, 10, 100, 1000, 10**4):
        assert 0.745 <= up.G(n) / prophet_value(dist, n, "max") <= 1.0 + 1e-12
        assert down.G(n) / prophet_value(dist, n, "min") >= 1.0 - 1e-12


def test_evt_threshold_examples():
    g = math.log(100 / math.log(100))
    assert g == pytest.approx(3.07798, abs=5e-5)
    assert evt_single_threshold_min(Exponential(1.0), -1.0, 100) == pytest.approx(-math.log1p(-g / 100), rel=1e-13)
    assert evt_single_threshold_min(Exponential(1.0), -1.0, 100) == pytest.approx(0.031264, abs=1e-6)
    assert evt_single_threshold_min(Uniform(), -1.0, 100) == pytest.approx(g / 100, rel=1e-14)
    g16 = 2 * math.log(16 / math.log(16))
    T = evt_single_threshold_min(ReverseWeibullWitness(-2.0), -2.0, 16)
    assert T == pytest.approx(math.log1p(-g16 / 16) ** 2, rel=1e-12)


def test_evt_threshold_errors():
    with pytest.raises(DomainError):
        evt_single_threshold_min(Exponential(1.0), 0.0, 100)
    with pytest.raises(HorizonTooSmallError):
        evt_single_threshold_min(Uniform(), -1.0, 2)
    with pytest.raises(HorizonTooSmallError):
        # g/n > 1 for a strongly negative index at small n
        evt_single_threshold_min(ReverseWeibullWitness(-10.0), -10.0, 5)


def test_single_threshold_value_examples():
    assert single_threshold_expected_value(Uniform(), 2, 0.5) == pytest.approx(0.375, abs=1e-15)
    assert single_threshold_expected_value(Uniform(), 2, 1.0) == pytest.approx(0.5, abs=1e-15)
    assert single_threshold_expected_value(Uniform(), 2, 0.0) == pytest.approx(0.5, abs=1e-15)


@pytest.mark.parametrize("n, T", [(3, 0.2), (10, 0.05), (50, 0.3)])
def test_single_threshold_value_uniform_closed_form(n, T):
    # for U[0,1]: (1 - (1-T)^(n-1)) * T/2 + (1-T)^(n-1) / 2
    miss = (1 - T) ** (n - 1)
    assert single_threshold_expected_value(Uniform(), n, T) == pytest.approx((1 - miss) * T / 2 + miss / 2, rel=1e-13)


@settings(max_examples=100)
@given(st.sampled_from(range(len(catalog()))), st.integers(1, 50), st.floats(1e-4, 1 - 1e-4))
def test_single_threshold_never_beats_dp(idx, n, q):
    d = catalog()[idx]
    T = d.quantile(q)
    assert single_threshold_expected_value(d, n, T) >= optimal_values(d, n, "min").G(n) * (1 - 1e-12)


def test_best_single_threshold_examples():
    T, v = best_single_threshold(Uniform(), 2)
    assert T == pytest.approx(0.5, abs=1e-6)
    assert v == pytest.approx(0.375, abs=1e-12)
    _, v1 = best_single_threshold(Exponential(1.0), 1)
    assert v1 == 1.0


@pytest.mark.parametrize("d", [Exponential(1.0), Uniform(), ReverseWeibullWitness(-2.0)], ids=lambda d: d.spec)
def test_best_single_threshold_beats_grid_and_evt(d):
    n = 100
    _, v = best_single_threshold(d, n)
    grid = [single_threshold_expected_value(d, n, d.quantile(q)) for q in np.arange(1, 1000) / 1000]
    assert v <= min(grid) * (1 + 1e-12)
    assert prophet_value(d, n, "min") <= v <= d.mean
    gamma = d.gamma_min
    assert v <= single_threshold_expected_value(d, n, evt_single_threshold_min(d, gamma, n)) * (1 + 1e-12)


@pytest.mark.parametrize("gamma", [-1.0, -2.0])
def test_single_threshold_log_scaling(gamma):
    d = ReverseWeibullWitness(gamma)

    def ratio(n):
        T = evt_single_threshold_min(d, gamma, n)
        return single_threshold_expected_value(d, n, T) / prophet_value(d, n, "min")

    growth = ratio(10**6) / ratio(10**3)
    target = 2.0 ** (-gamma)
    assert 0.7 * target <= growth <= 1.3 * target


def test_multi_unit_threshold_examples():
    n = 10**4
    c = math.e**2
    assert multi_unit_threshold(Uniform(), -1.0, n, 10) == pytest.approx(c * math.log(n) / n, rel=1e-13)
    assert multi_unit_threshold(Uniform(), -1.0, n, 10) == pytest.approx(6.806e-3, rel=1e-3)
    assert multi_unit_threshold(Exponential(1.0), -1.0, n, 10) == pytest.approx(6.829e-3, rel=1e-3)
    T0 = multi_unit_threshold(Exponential(1.0), 0.0, n, 10)
    assert T0 == pytest.approx(-math.log1p(-math.e * math.log(n) / n), rel=1e-13)


def test_multi_unit_threshold_errors():
    with pytest.raises(DomainError):
        multi_unit_threshold(Uniform(), -1.0, 10**4, 5)
    with pytest.raises(DomainError):
        multi_unit_threshold(Pareto(2.0), 0.5, 10**4, 10)
    with pytest.raises(HorizonTooSmallError):
        multi_unit_threshold(Uniform(), -1.0, 10, 3)


def test_run_trial_examples():
    sched = ThresholdPolicy("schedule", 3, [0.375, 0.5, 1.0])
    assert run_trial(sched, [0.4, 0.45, 0.9], "min") == 0.45
    assert run_trial(ThresholdPolicy.single(0.5, 2), [0.8, 0.9], "min") == 0.9
    assert run_trial(ThresholdPolicy.multi_unit(0.3, 4, 2), [0.2, 0.5, 0.6, 0.1], "min") == pytest.approx(0.3)


def test_run_trial_forcing_and_errors():
    # nothing passes, so the last two are forced
    assert run_trial(ThresholdPolicy.multi_unit(0.1, 4, 2), [0.5, 0.6, 0.7, 0.8], "min") == pytest.approx(1.5)
    # stops after the quota is met
    assert run_trial(ThresholdPolicy.multi_unit(0.9, 4, 2), [0.5, 0.6, 0.7, 0.8], "min") == pytest.approx(1.1)
    assert run_trial(ThresholdPolicy("schedule", 2, [0.5, 0.0]), [0.7, 0.1], "max") == 0.7
    with pytest.raises(DomainError):
        run_trial(ThresholdPolicy.single(0.5, 3), [0.1, 0.2], "min")


def test_policy_validation():
    with pytest.raises(DomainError):
        ThresholdPolicy("schedule", 3, [0.1, 0.2])
    with pytest.raises(DomainError):
        ThresholdPolicy("bogus", 3, 0.1)
    with pytest.raises(DomainError):
        ThresholdPolicy.multi_unit(0.1, 3, 4)
    with pytest.raises(DomainError):
        ThresholdPolicy("single", 3, 0.1, quota=2)
