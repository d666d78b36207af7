"""Optimal and threshold stopping rules for i.i.d. prophet inequalities,
with the extreme value tools that predict their limiting competitive ratios."""

from .benchmark import expected_order_statistic, prophet_multi_unit, prophet_value
from .distributions import (
    CustomDistribution,
    Distribution,
    Exponential,
    Pareto,
    ReverseWeibullWitness,
    Uniform,
    parse_distribution,
)
from .errors import (
    ConfigError,
    DegenerateQuantileError,
    DomainError,
    HorizonTooSmallError,
    InfiniteMeanError,
    ProphetLabError,
)
from .evt import (
    EULER_MASCHERONI,
    EvtIndex,
    asymptotic_ratio,
    estimate_evt_index_max,
    estimate_evt_index_min,
    extreme_cdf_max,
    extreme_cdf_min,
    gamma_function,
    lambda_acr,
    order_stat_ratio_gen,
    prophet_value_approx,
    quantile_scaling,
)
from .policies import (
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
from .simulate import RatioEstimate, estimate_ratio

__version__ = "0.1.0"
