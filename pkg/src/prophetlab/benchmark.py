"""Exact prophet benchmarks: expected order statistics and their sums."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .distributions import Distribution
from .errors import DomainError
from .special import log_binomial

ORDER_STAT_EPSREL = 1e-10

# breakpoints, in Beta standard deviations around the Beta(i, n-i+1) mean
_SD_BREAKS = (-60.0, -30.0, -15.0, -8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0, 15.0, 30.0, 60.0)


@dataclass(frozen=True)
class OrderStatSpec:
    i: int
    n: int

    def __post_init__(self):
        if not 1 <= self.i <= self.n:
            raise DomainError(f"order statistic index needs 1 <= i <= n, got i={self.i}, n={self.n}")


def _order_statistic_quadrature(dist: Distribution, i: int, n: int) -> float:
    # n C(n-1, i-1) * integral_0^1 F^{<-}(t) t^(i-1) (1-t)^(n-i) dt, weight in log space.
    # Above t = 1/2 the integral runs over v = 1 - t so the upper tail keeps
    # full precision.
    log_norm = math.log(n) + log_binomial(n - 1, i - 1)
    a, b = i - 1, n - i

    def lower_part(t: float) -> float:
        log_w = log_norm + (a * math.log(t) if a else 0.0) + (b * math.log1p(-t) if b else 0.0)
        if log_w < -745.0:
            return 0.0
        return dist.quantile(t) * math.exp(log_w)

    def upper_part(v: float) -> float:
        log_w = log_norm + (a * math.log1p(-v) if a else 0.0) + (b * math.log(v) if b else 0.0)
        if log_w < -745.0:
            return 0.0
        return dist.upper_quantile(v) * math.exp(log_w)

    mean = i / (n + 1.0)
    sd = math.sqrt(mean * (1.0 - mean) / (n + 2.0))
    cuts = {0.0, 0.5, 1.0}
    for k in _SD_BREAKS:
        t = mean + k * sd
        if 0.0 < t < 1.0:
            cuts.add(t)
    edges = sorted(cuts)
    pieces = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi <= 0.5:
            val, _ = integrate.quad(lower_part, lo, hi, epsabs=0.0, epsrel=ORDER_STAT_EPSREL, limit=200)
        else:
            val, _ = integrate.quad(
                upper_part, 1.0 - hi, 1.0 - lo, epsabs=0.0, epsrel=ORDER_STAT_EPSREL, limit=200
            )
        pieces.append(val)
    return math.fsum(pieces)


def expected_order_statistic(dist: Distribution, i: int, n: int, method: str = "auto") -> float:
    """mu_{i:n}, the mean of the i-th smallest of n i.i.d. draws.

    ``method="auto"`` uses a family closed form when one is registered and
    quadrature in quantile space otherwise; ``method="quadrature"`` forces the
    numeric path.
    """
    OrderStatSpec(i, n)
    if method not in ("auto", "quadrature"):
        raise DomainError(f"unknown method {method!r}")
    mean = dist.mean  # raises for infinite-mean families
    if n == 1:
        return mean
    if method == "auto":
        closed = dist.expected_order_statistic_closed_form(i, n)
        if closed is not None:
            return float(closed)
    return _order_statistic_quadrature(dist, i, n)


def prophet_value(dist: Distribution, n: int, objective: str) -> float:
    """E[max] (objective "max") or E[min] (objective "min") of n draws."""
    if objective == "max":
        return expected_order_statistic(dist, n, n)
    if objective == "min":
        return expected_order_statistic(dist, 1, n)
    raise DomainError(f"objective must be 'max' or 'min', got {objective!r}")


def prophet_multi_unit(dist: Distribution, k: int, n: int) -> float:
    """Offline optimum when at least k of n draws must be taken: the k smallest."""
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got k={k}, n={n}")
    return math.fsum(expected_order_statistic(dist, i, n) for i in range(1, k + 1))


def order_statistic_means(dist: Distribution, n: int) -> np.ndarray:
    """All of mu_{1:n}, ..., mu_{n:n} as an array."""
    return np.array([expected_order_statistic(dist, i, n) for i in range(1, n + 1)])
