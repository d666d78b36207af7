"""Stopping policies for the i.i.d. prophet problem.

Covers the optimal dynamic-programming thresholds for both objectives, the
extreme-value single threshold for minimisation together with its exact
expected cost, a numerically optimal single threshold, and the threshold used
when at least k values must be bought.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .distributions import Distribution
from .errors import DomainError, HorizonTooSmallError
from .evt import GUMBEL_TOL

OBJECTIVES = ("max", "min")


def _check_objective(objective: str) -> None:
    if objective not in OBJECTIVES:
        raise DomainError(f"objective must be 'max' or 'min', got {objective!r}")


@dataclass(frozen=True)
class PolicyValueTable:
    """Values G(1), ..., G(n) of the optimal policy; ``values[k-1]`` is G(k)."""

    objective: str
    values: np.ndarray = field(repr=False)
    dist: Distribution

    def __post_init__(self):
        self.values.setflags(write=False)

    @property
    def horizon(self) -> int:
        return len(self.values)

    def G(self, k: int) -> float:
        if not 1 <= k <= self.horizon:
            raise DomainError(f"G({k}) outside the computed horizon {self.horizon}")
        return float(self.values[k - 1])


@dataclass(frozen=True)
class ThresholdPolicy:
    """A threshold rule over a horizon of ``horizon`` draws.

    kind "schedule": ``thresholds`` is an array tau_1..tau_n.
    kind "single": ``thresholds`` is the scalar T used at every step.
    kind "multi_unit": scalar T, and at least ``quota`` draws must be bought.
    The last step (or, for multi_unit, the tail needed to fill the quota) is
    always accepted.
    """

    kind: str
    horizon: int
    thresholds: object
    quota: int = 1

    def __post_init__(self):
        if self.kind not in ("schedule", "single", "multi_unit"):
            raise DomainError(f"unknown policy kind {self.kind!r}")
        if self.horizon < 1:
            raise DomainError("horizon must be at least 1")
        if self.kind == "schedule":
            arr = np.asarray(self.thresholds, dtype=float)
            if arr.shape != (self.horizon,):
                raise DomainError("a schedule needs exactly one threshold per step")
            arr.setflags(write=False)
            object.__setattr__(self, "thresholds", arr)
        else:
            object.__setattr__(self, "thresholds", float(self.thresholds))
        if not 1 <= self.quota <= self.horizon:
            raise DomainError(f"quota must lie in [1, horizon], got {self.quota}")
        if self.kind != "multi_unit" and self.quota != 1:
            raise DomainError("only multi_unit policies carry a quota above 1")

    @classmethod
    def single(cls, threshold: float, horizon: int) -> "ThresholdPolicy":
        return cls("single", horizon, threshold)

    @classmethod
    def multi_unit(cls, threshold: float, horizon: int, quota: int) -> "ThresholdPolicy":
        return cls("multi_unit", horizon, threshold, quota)

    def threshold_at(self, step: int) -> float:
        """Threshold applied at 1-based step ``step``."""
        if self.kind == "schedule":
            return float(self.thresholds[step - 1])
        return self.thresholds


def optimal_values(dist: Distribution, n: int, objective: str) -> PolicyValueTable:
    """Backward-induction values of the optimal stopping rule.

    G(1) is the mean. For maxima G(k) = G(k-1) + int_{G(k-1)}^{x^*} (1 - F),
    for minima G(k) = x_* + int_{x_*}^{G(k-1)} (1 - F).
    """
    _check_objective(objective)
    if n < 1:
        raise DomainError("n must be at least 1")
    values = np.empty(n, dtype=float)
    g = dist.mean
    values[0] = g
    if objective == "max":
        upper = dist.tail_integral_upper
        for k in range(1, n):
            g = g + upper(g)
            values[k] = g
    else:
        lower = dist.tail_integral_lower
        lo = dist.support_lo
        for k in range(1, n):
            g = lo + lower(g)
            values[k] = g
    return PolicyValueTable(objective, values, dist)


def threshold_schedule(table: PolicyValueTable) -> ThresholdPolicy:
    """tau_i = G(n - i) for i < n; the final step accepts whatever arrives."""
    n = table.horizon
    taus = np.empty(n, dtype=float)
    # values[k-1] = G(k), so tau_i = values[n-i-1] for i = 1..n-1
    taus[: n - 1] = table.values[n - 2 :: -1] if n > 1 else []
    taus[n - 1] = table.dist.support_lo if table.objective == "max" else table.dist.support_hi
    return ThresholdPolicy("schedule", n, taus)


def run_trial(policy: ThresholdPolicy, draws, objective: str) -> float:
    """Play ``policy`` on one realised sequence and return what it collects.

    Single-choice policies return the accepted draw. A multi_unit policy
    returns the sum of the draws it buys.
    """
    _check_objective(objective)
    draws = np.asarray(draws, dtype=float)
    n = policy.horizon
    if draws.shape != (n,):
        raise DomainError(f"expected {n} draws, got shape {draws.shape}")
    if policy.kind == "multi_unit":
        if objective != "min":
            raise DomainError("multi-unit policies are defined for minimisation")
        T, k = policy.thresholds, policy.quota
        total, taken = 0.0, 0
        for j in range(n):
            if taken == k:
                break
            x = draws[j]
            # forced once the remaining draws exactly fill the remaining quota
            if n - j == k - taken or x <= T:
                total += x
                taken += 1
        return total
    for j in range(n - 1):
        tau = policy.threshold_at(j + 1)
        x = draws[j]
        if (objective == "min" and x <= tau) or (objective == "max" and x >= tau):
            return float(x)
    return float(draws[n - 1])


def evt_single_threshold_min(dist: Distribution, gamma: float, n: int) -> float:
    """T = F^{<-}(g/n) with g = -gamma log(n / log n), for an index gamma < 0."""
    gamma = float(gamma)
    if not gamma < 0.0:
        raise DomainError("the extreme-value single threshold needs gamma < 0")
    if n < 3:
        raise HorizonTooSmallError("need n >= 3 so that log n > 1")
    g = -gamma * math.log(n / math.log(n))
    if g / n > 1.0:
        raise HorizonTooSmallError(f"g(n, gamma)/n = {g / n:.4g} exceeds 1 at n={n}")
    return dist.quantile(g / n)


def single_threshold_expected_value(dist: Distribution, n: int, T: float) -> float:
    """Exact expected cost of "take the first X_i <= T for i < n, else X_n".

    (1 - (1-F(T))^(n-1)) E[X | X <= T] + (1-F(T))^(n-1) E[X], with the
    conditional mean taken from the partial mean E[X; X <= T].
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    mean = dist.mean
    p = dist.cdf(T)
    if n == 1 or p <= 0.0:
        return mean
    if p >= 1.0:
        return mean  # accept the first draw unconditionally
    log_miss = (n - 1) * math.log1p(-p)
    miss = math.exp(log_miss)
    hit = -math.expm1(log_miss)
    return hit * (dist.partial_mean(T) / p) + miss * mean


def best_single_threshold(
    dist: Distribution, n: int, objective: str = "min", q_tol: float = 1e-7
) -> tuple[float, float]:
    """Single threshold minimising the exact expected cost, searched over F(T).

    A log-spaced scan over the level q = F(T) brackets the minimum, then a
    golden-section search in log q refines it until the bracket is narrower
    than ``q_tol`` in both absolute and relative terms.
    """
    if objective != "min":
        raise DomainError("best_single_threshold is implemented for minimisation")
    if n < 1:
        raise DomainError("n must be at least 1")
    mean = dist.mean
    if n == 1:
        return dist.quantile(0.5), mean

    def cost(log_q: float) -> float:
        q = min(math.exp(log_q), 1.0)
        return single_threshold_expected_value(dist, n, dist.quantile(q))

    lo_q = min(1e-6, 1e-4 / n)
    grid = np.linspace(math.log(lo_q), 0.0, 401)
    vals = [cost(x) for x in grid]
    j = int(np.argmin(vals))
    a = grid[max(j - 1, 0)]
    b = grid[min(j + 1, len(grid) - 1)]

    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = cost(c), cost(d)
    while b - a > q_tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = cost(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = cost(d)
    candidates = [(vals[j], grid[j]), (fc, c), (fd, d)]
    best_val, best_log_q = min(candidates)
    T_star = dist.quantile(min(math.exp(best_log_q), 1.0))
    return T_star, best_val


def multi_unit_threshold(dist: Distribution, gamma: float, n: int, k: int) -> float:
    """T = F^{<-}(c log n / n) with c = e^(1 - gamma), for quota k >= log n."""
    gamma = float(gamma)
    if gamma > GUMBEL_TOL:
        raise DomainError("the multi-unit threshold needs gamma <= 0")
    if n < 2:
        raise HorizonTooSmallError("need n >= 2")
    if k < math.log(n):
        raise DomainError(f"quota k={k} is below log n = {math.log(n):.4g}")
    c = math.exp(1.0 - gamma)
    p = c * math.log(n) / n
    if p > 1.0:
        raise HorizonTooSmallError(f"c log n / n = {p:.4g} exceeds 1 at n={n}")
    return dist.quantile(p)
