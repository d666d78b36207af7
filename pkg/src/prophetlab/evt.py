"""Extreme value machinery: limit laws, the ratio function Lambda, and the
quantile asymptotics that tie prophet values to tail quantiles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .distributions import Distribution
from .errors import DegenerateQuantileError, DomainError
from .special import EULER_MASCHERONI, gamma_function, log_gamma

__all__ = [
    "EULER_MASCHERONI",
    "GUMBEL_TOL",
    "EvtClass",
    "EvtIndex",
    "gamma_function",
    "log_gamma",
    "lambda_acr",
    "asymptotic_ratio",
    "extreme_cdf_max",
    "extreme_cdf_min",
    "prophet_value_approx",
    "quantile_scaling",
    "order_stat_ratio_gen",
    "estimate_evt_index_min",
    "estimate_evt_index_max",
]

# |gamma| below this takes the gamma = 0 branch of every case split
GUMBEL_TOL = 1e-9
_EXP_MAX = 700.0  # exp(-e^700) is already 0 in double precision


class EvtClass(str, Enum):
    FRECHET = "Frechet"
    GUMBEL = "Gumbel"
    REVERSE_WEIBULL = "ReverseWeibull"


@dataclass(frozen=True)
class EvtIndex:
    gamma: float
    class_tag: EvtClass

    def __post_init__(self):
        if self.class_tag is not _classify(self.gamma):
            raise DomainError(
                f"class {self.class_tag.value} inconsistent with gamma={self.gamma}"
            )

    @classmethod
    def of(cls, gamma: float) -> "EvtIndex":
        return cls(float(gamma), _classify(float(gamma)))


def _classify(gamma: float) -> EvtClass:
    if abs(gamma) < GUMBEL_TOL:
        return EvtClass.GUMBEL
    return EvtClass.FRECHET if gamma > 0 else EvtClass.REVERSE_WEIBULL


def _gamma_value(gamma) -> float:
    return float(gamma.gamma if isinstance(gamma, EvtIndex) else gamma)


def lambda_acr(gamma: float) -> float:
    """Lambda(gamma) = (1 - gamma)^(-gamma) / Gamma(1 - gamma), for gamma < 1."""
    gamma = _gamma_value(gamma)
    if not gamma < 1.0:
        raise DomainError(f"Lambda is only defined for gamma < 1, got {gamma}")
    if abs(gamma) < GUMBEL_TOL:
        return 1.0
    z = 1.0 - gamma
    if z < 50.0:
        return z ** (-gamma) / gamma_function(z)
    return math.exp(-gamma * math.log(z) - log_gamma(z))


def asymptotic_ratio(gamma: float, objective: str) -> float:
    """Limit competitive ratio of the optimal policy: min(Lambda, 1) for max,
    max(Lambda, 1) for min."""
    gamma = _gamma_value(gamma)
    if objective == "max":
        return min(lambda_acr(gamma), 1.0)
    if objective == "min":
        if gamma > GUMBEL_TOL:
            raise DomainError("minimisation requires gamma <= 0")
        return max(lambda_acr(gamma), 1.0)
    raise DomainError(f"objective must be 'max' or 'min', got {objective!r}")


def extreme_cdf_max(gamma: float, x: float) -> float:
    """G_gamma(x), the limit law of normalised maxima."""
    gamma = _gamma_value(gamma)
    if abs(gamma) < GUMBEL_TOL:
        return 0.0 if -x > _EXP_MAX else math.exp(-math.exp(-x))
    base = 1.0 + gamma * x
    if base <= 0.0:
        # left endpoint for gamma > 0, right endpoint for gamma < 0
        return 0.0 if gamma > 0 else 1.0
    return math.exp(-math.exp(-math.log1p(gamma * x) / gamma))


def extreme_cdf_min(gamma: float, x: float) -> float:
    """G*_gamma(x), the limit of (1 - F(a_n x + b_n))^n for normalised minima.

    This is the limiting probability that the normalised minimum exceeds x, so
    it decreases from 1 to 0.
    """
    gamma = _gamma_value(gamma)
    if abs(gamma) < GUMBEL_TOL:
        return 0.0 if x > _EXP_MAX else math.exp(-math.exp(x))
    base = 1.0 - gamma * x
    if base <= 0.0:
        return 1.0 if gamma < 0 else 0.0
    return math.exp(-math.exp(-math.log1p(-gamma * x) / gamma))


def prophet_value_approx(dist: Distribution, gamma, n: int, objective: str) -> float:
    """Tail-quantile approximation of the prophet value mu_{n:n} or mu_{1:n}."""
    g = _gamma_value(gamma)
    if n < 2:
        raise DomainError("the approximation needs n >= 2")
    gumbel = abs(g) < GUMBEL_TOL
    if objective == "max":
        if gumbel:
            return dist.upper_quantile(math.exp(-EULER_MASCHERONI) / n)
        if 0.0 < g < 1.0:
            return gamma_function(1.0 - g) * dist.upper_quantile(1.0 / n)
        if g < 0.0:
            x_hi = dist.support_hi
            if not math.isfinite(x_hi):
                raise DomainError("gamma < 0 for maxima needs a finite right endpoint")
            return x_hi - gamma_function(1.0 - g) * (x_hi - dist.upper_quantile(1.0 / n))
        raise DomainError(f"no approximation for maxima with gamma={g}")
    if objective == "min":
        if gumbel:
            return dist.quantile(math.exp(-EULER_MASCHERONI) / n)
        if g < 0.0:
            return gamma_function(1.0 - g) * dist.quantile(1.0 / n)
        raise DomainError(f"no approximation for minima with gamma={g}")
    raise DomainError(f"objective must be 'max' or 'min', got {objective!r}")


def quantile_scaling(
    dist: Distribution, gamma, n: int, c: float, side: str
) -> tuple[float, float]:
    """Compare a tail quantile at level c/n with its c^(-gamma) rescaling.

    Returns ``(approx, exact)``. For ``side="lower"`` these are
    c^(-gamma) F^{<-}(1/n) and F^{<-}(c/n); for ``side="upper"`` they are the
    rescaled and exact F^{<-}(1 - c/n), reflected about the right endpoint
    when gamma < 0.
    """
    g = _gamma_value(gamma)
    if n < 2:
        raise DomainError("quantile scaling needs n >= 2")
    if not c > 0.0:
        raise DomainError("c must be positive")
    if c / n > 1.0:
        raise DomainError(f"c/n = {c / n} exceeds 1")
    scale = c ** (-g)
    if side == "lower":
        if g > GUMBEL_TOL:
            raise DomainError("lower-tail scaling needs gamma <= 0")
        return scale * dist.quantile(1.0 / n), dist.quantile(c / n)
    if side == "upper":
        exact = dist.upper_quantile(c / n)
        base = dist.upper_quantile(1.0 / n)
        if g < -GUMBEL_TOL:
            x_hi = dist.support_hi
            if not math.isfinite(x_hi):
                raise DomainError("gamma < 0 for maxima needs a finite right endpoint")
            return x_hi - scale * (x_hi - base), exact
        return scale * base, exact
    raise DomainError(f"side must be 'upper' or 'lower', got {side!r}")


def order_stat_ratio_gen(gamma: float, n: int, m: int) -> float:
    """Gamma(m+1) Gamma(n+1-gamma) / (Gamma(n+1) Gamma(m+1-gamma)).

    The limiting value of mu_{1:m}/mu_{1:n} (and of the reflected maxima
    ratios) for a distribution with index gamma.
    """
    g = _gamma_value(gamma)
    if not 1 <= m < n:
        raise DomainError(f"need 1 <= m < n, got m={m}, n={n}")
    if not g < 1.0:
        raise DomainError("gamma must be below 1")
    if abs(g) < GUMBEL_TOL:
        return 1.0
    if n - m <= 64:
        # short telescoping product, exact up to rounding
        out = 1.0
        for j in range(m + 1, n + 1):
            out *= (j - g) / j
        return out
    return math.exp(
        log_gamma(m + 1.0) + log_gamma(n + 1.0 - g) - log_gamma(n + 1.0) - log_gamma(m + 1.0 - g)
    )


def estimate_evt_index_min(dist: Distribution, n: int, c: float = 10.0) -> float:
    """Index for minima from the ratio of lower quantiles at levels c/n and 1/n."""
    if not c > 1.0:
        raise DomainError("c must exceed 1")
    if c / n >= 1.0:
        raise DomainError(f"c/n = {c / n} must be below 1")
    base = dist.quantile(1.0 / n) - dist.support_lo
    if base <= 0.0:
        raise DegenerateQuantileError(f"F^<-(1/n) is degenerate for n={n}")
    top = dist.quantile(c / n) - dist.support_lo
    return -math.log(top / base) / math.log(c)


def estimate_evt_index_max(dist: Distribution, n: int, c: float = 10.0) -> float:
    """Index for maxima from upper quantiles at levels 1 - c/n and 1 - 1/n.

    With a finite right endpoint the gaps to that endpoint are compared;
    otherwise the quantiles themselves.
    """
    if not c > 1.0:
        raise DomainError("c must exceed 1")
    if c / n >= 1.0:
        raise DomainError(f"c/n = {c / n} must be below 1")
    near = dist.upper_quantile(1.0 / n)
    far = dist.upper_quantile(c / n)
    x_hi = dist.support_hi
    if math.isfinite(x_hi):
        near, far = x_hi - near, x_hi - far
        if near <= 0.0:
            raise DegenerateQuantileError(f"upper quantile hits the endpoint for n={n}")
    elif near <= 0.0 or far <= 0.0:
        raise DegenerateQuantileError(f"upper quantiles are not positive for n={n}")
    return -math.log(far / near) / math.log(c)
