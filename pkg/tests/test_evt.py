import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from prophetlab.benchmark import prophet_value
from prophetlab.distributions import Exponential, Pareto, ReverseWeibullWitness, Uniform
from prophetlab.errors import DegenerateQuantileError, DomainError
from prophetlab.evt import (
    EULER_MASCHERONI,
    EvtClass,
    EvtIndex,
    asymptotic_ratio,
    estimate_evt_index_max,
    estimate_evt_index_min,
    extreme_cdf_max,
    extreme_cdf_min,
    lambda_acr,
    order_stat_ratio_gen,
    prophet_value_approx,
    quantile_scaling,
)

from conftest import catalog


def lambda_oracle(g):
    # independent evaluation through the stdlib gamma function
    return (1.0 - g) ** (-g) / math.gamma(1.0 - g)


def test_evt_index_classes():
    assert EvtIndex.of(0.5).class_tag is EvtClass.FRECHET
    assert EvtIndex.of(0.0).class_tag is EvtClass.GUMBEL
    assert EvtIndex.of(-2.0).class_tag is EvtClass.REVERSE_WEIBULL
    with pytest.raises(DomainError):
        EvtIndex(0.5, EvtClass.GUMBEL)


def test_euler_constant():
    # the derivative of Gamma at 1 is -gamma*
    h = 1e-5
    deriv = (math.gamma(1 + h) - math.gamma(1 - h)) / (2 * h)
    assert EULER_MASCHERONI == pytest.approx(-deriv, rel=1e-8)


def test_lambda_examples():
    assert lambda_acr(0.0) == 1.0
    assert lambda_acr(-1.0) == 2.0
    assert lambda_acr(0.5) == pytest.approx(math.sqrt(2.0 / math.pi), rel=1e-12)
    assert lambda_acr(-2.0) == pytest.approx(4.5, rel=1e-13)


@given(st.floats(min_value=-30.0, max_value=0.995))
def test_lambda_matches_oracle(g):
    # inside the Gumbel band the value is pinned to 1, an O(1e-9) departure
    tol = 1e-11 if abs(g) >= 1e-9 else 1e-8
    assert lambda_acr(g) == pytest.approx(lambda_oracle(g), rel=tol)


def test_lambda_domain():
    for g in (1.0, 1.5):
        with pytest.raises(DomainError):
            lambda_acr(g)


def test_lambda_continuity_at_zero():
    for eps in (1e-6, 1e-8, 2e-9):
        assert abs(lambda_acr(eps) - 1.0) < 1e-5
        assert abs(lambda_acr(-eps) - 1.0) < 1e-5


def test_lambda_floor_on_grid():
    grid = np.arange(0, 1000) / 1000.0
    vals = [lambda_acr(g) for g in grid]
    assert min(vals) >= 0.776 - 1e-3


@pytest.mark.parametrize("g", [-float(k) for k in range(1, 11)])
def test_lambda_grows_exponentially(g):
    assert 0.5 <= math.log(lambda_acr(g)) / (-g) <= 1.5


def test_asymptotic_ratio_clamps():
    assert asymptotic_ratio(0.5, "max") == pytest.approx(lambda_acr(0.5))
    assert asymptotic_ratio(-1.0, "max") == 1.0
    assert asymptotic_ratio(-1.0, "min") == 2.0
    with pytest.raises(DomainError):
        asymptotic_ratio(0.5, "min")


def test_extreme_cdf_examples():
    assert extreme_cdf_max(0.0, 0.0) == pytest.approx(math.exp(-1.0), rel=1e-15)
    assert extreme_cdf_max(-1.0, -1.0) == pytest.approx(math.exp(-2.0), rel=1e-14)
    assert extreme_cdf_max(1.0, -1.0 + 1e-12) < 1e-300
    assert extreme_cdf_max(1.0, -1.0) == 0.0
    assert extreme_cdf_min(0.0, 0.0) == pytest.approx(math.exp(-1.0), rel=1e-15)
    assert extreme_cdf_min(-1.0, 0.0) == pytest.approx(math.exp(-1.0), rel=1e-15)
    assert extreme_cdf_min(-1.0, 1.0) == pytest.approx(math.exp(-2.0), rel=1e-14)


def test_uniform_minima_limit():
    # P(n * min > x) -> e^{-x} for uniforms; in the G* parameterisation x = 1 + y
    n = 10**6
    for y in (-0.5, 0.0, 0.7, 2.0):
        assert (1 - (1 + y) / n) ** n == pytest.approx(extreme_cdf_min(-1.0, y), rel=1e-5)


@pytest.mark.parametrize("x", [-3.0, -0.5, 0.0, 0.4, 2.0, 10.0])
def test_extreme_cdfs_continuous_in_gamma(x):
    assert abs(extreme_cdf_max(1e-8, x) - extreme_cdf_max(0.0, x)) <= 1e-6
    assert abs(extreme_cdf_max(-1e-8, x) - extreme_cdf_max(0.0, x)) <= 1e-6
    assert abs(extreme_cdf_min(-1e-8, x) - extreme_cdf_min(0.0, x)) <= 1e-6


@pytest.mark.parametrize("g", [-2.0, -1.0, 0.0, 1.0])
def test_extreme_cdf_max_is_a_cdf(g):
    xs = np.linspace(-50, 50, 4001)
    vals = np.array([extreme_cdf_max(g, x) for x in xs])
    assert np.all(np.diff(vals) >= 0)
    # the Frechet upper tail is polynomial, so the limits are probed far out
    assert extreme_cdf_max(g, -1e15) <= 1e-12
    assert extreme_cdf_max(g, 1e15) >= 1 - 1e-12
    assert np.all((vals >= 0) & (vals <= 1))


def test_prophet_value_approx_examples():
    n = 1000
    approx = prophet_value_approx(Exponential(1.0), -1.0, n, "min")
    assert approx == pytest.approx(-math.log1p(-1.0 / n), rel=1e-13)
    assert abs(approx - 1.0 / n) / (1.0 / n) < 1e-3
    assert prophet_value_approx(Uniform(), -1.0, n, "max") == pytest.approx(0.999, rel=1e-13)
    assert prophet_value_approx(ReverseWeibullWitness(-1.0), -1.0, 100, "min") == pytest.approx(
        -math.log(0.99), rel=1e-12
    )


def test_prophet_value_approx_domain():
    with pytest.raises(DomainError):
        prophet_value_approx(Pareto(2.0), 0.5, 100, "min")
    with pytest.raises(DomainError):
        prophet_value_approx(Uniform(), 1.0, 100, "max")
    with pytest.raises(DomainError):
        prophet_value_approx(Uniform(), -1.0, 1, "max")


@pytest.mark.parametrize(
    "d, g, objective, tol",
    [
        (Uniform(), -1.0, "min", 1e-2),
        (Exponential(1.0), -1.0, "min", 1e-2),
        (Uniform(), -1.0, "max", 1e-2),
        (Pareto(2.0), 0.5, "max", 1e-2),
        (ReverseWeibullWitness(-2.0), -2.0, "min", 1e-2),
        # Gumbel case converges like 1/log n; the tolerance is set empirically
        (Exponential(1.0), 0.0, "max", 2e-2),
    ],
)
def test_prophet_value_approx_accuracy(d, g, objective, tol):
    n = 10**4
    exact = prophet_value(d, n, objective)
    assert abs(prophet_value_approx(d, g, n, objective) - exact) / exact <= tol


def test_quantile_scaling_examples():
    approx, exact = quantile_scaling(Uniform(), -1.0, 100, 3.0, "lower")
    assert approx == pytest.approx(0.03, rel=1e-14) and exact == pytest.approx(0.03, rel=1e-14)
    approx, exact = quantile_scaling(Exponential(1.0), -1.0, 10**4, 2.0, "lower")
    assert approx == pytest.approx(-2 * math.log1p(-1e-4), rel=1e-12)
    assert exact == pytest.approx(-math.log1p(-2e-4), rel=1e-12)
    approx, exact = quantile_scaling(Pareto(2.0), 0.5, 10**4, 4.0, "upper")
    assert approx == pytest.approx(50.0, rel=1e-12) and exact == pytest.approx(50.0, rel=1e-12)
    with pytest.raises(DomainError):
        quantile_scaling(Uniform(), -1.0, 10, 20.0, "lower")


def test_order_stat_ratio_examples():
    assert order_stat_ratio_gen(0.0, 100, 7) == 1.0
    assert order_stat_ratio_gen(-1.0, 4, 2) == pytest.approx(5.0 / 3.0, rel=1e-14)
    n = 10**4
    assert abs(order_stat_ratio_gen(-1.0, n, n - 1) - (1 + 1.0 / n)) <= 1e-7


@given(st.floats(min_value=-5.0, max_value=0.9), st.integers(2, 500), st.integers(1, 499))
def test_order_stat_ratio_matches_lgamma(g, n, m):
    if m >= n:
        return
    oracle = math.exp(math.lgamma(m + 1) + math.lgamma(n + 1 - g) - math.lgamma(n + 1) - math.lgamma(m + 1 - g))
    assert order_stat_ratio_gen(g, n, m) == pytest.approx(oracle, rel=1e-10)


def test_order_stat_ratio_series():
    n = 10**5
    for g in (-2.0, -0.5, 0.5):
        for k in (1, 3):
            assert order_stat_ratio_gen(g, n, n - k) == pytest.approx(1 - k * g / n, abs=1e-8)


def test_estimate_index_min_examples():
    assert estimate_evt_index_min(Uniform(), 100, 10.0) == pytest.approx(-1.0, abs=1e-12)
    n, c = 10**6, 10.0
    oracle = -math.log(math.log1p(-c / n) / math.log1p(-1.0 / n)) / math.log(c)
    est = estimate_evt_index_min(Exponential(1.0), n, c)
    assert est == pytest.approx(oracle, rel=1e-12)
    assert abs(est + 1.0) <= 1e-4
    assert abs(estimate_evt_index_min(ReverseWeibullWitness(-2.0), n, c) + 2.0) <= 1e-3


def test_estimate_index_min_converges_on_catalog():
    for d in catalog():
        if d.gamma_min is None:
            continue
        assert abs(estimate_evt_index_min(d, 10**6) - d.gamma_min) <= 0.05


def test_estimate_index_max():
    assert estimate_evt_index_max(Uniform(), 10**6) == pytest.approx(-1.0, abs=1e-6)
    assert estimate_evt_index_max(Pareto(2.0), 10**6) == pytest.approx(0.5, abs=1e-9)
    assert estimate_evt_index_max(Exponential(1.0), 10**6) <= 0.1


def test_estimate_index_degenerate():
    # F^<-(1/n) rounds onto the left endpoint, so the ratio has no information
    with pytest.raises(DegenerateQuantileError):
        estimate_evt_index_min(Pareto(2.0), 1e300)
