"""Continuous distributions with the closed-form helpers the policies need.

Every family exposes cdf, pdf, quantile (the left-continuous inverse), tail
integrals of the survival function and the partial mean E[X; X <= t]. Families
register closed forms where they exist; the base class falls back to
bisection and adaptive quadrature so that new families only need a cdf and a
pdf.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np
from scipy import integrate
from scipy.special import gammainc, gammaincc

from .errors import ConfigError, DomainError, InfiniteMeanError
from .special import gamma_function, log_gamma

QUAD_EPSREL = 1e-10
QUAD_EPSABS = 1e-14
BISECT_MAX_ITER = 200


def _is_scalar(x) -> bool:
    return np.ndim(x) == 0


def _quad(func, a, b, points=None) -> float:
    val, _ = integrate.quad(
        func, a, b, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=500, points=points
    )
    return float(val)


class Distribution:
    """A continuous distribution on [support_lo, support_hi).

    Subclasses must implement ``_cdf`` and ``_pdf`` on the support interior.
    The remaining private hooks have numeric defaults and are overridden with
    closed forms where a family has them.
    """

    name = "distribution"

    def __init__(
        self,
        support_lo: float,
        support_hi: float,
        params: dict | None = None,
        gamma_max: float | None = None,
        gamma_min: float | None = None,
    ):
        if not support_lo < support_hi:
            raise DomainError("support_lo must be strictly below support_hi")
        if gamma_min is not None and gamma_min > 0:
            raise DomainError("an index for minima must satisfy gamma_min <= 0")
        self.support_lo = float(support_lo)
        self.support_hi = float(support_hi)
        self.params = dict(params or {})
        self.gamma_max = gamma_max
        self.gamma_min = gamma_min

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"{type(self).__name__}({args})"

    @property
    def spec(self) -> str:
        """The textual spec string that rebuilds this distribution."""
        if not self.params:
            return self.name
        args = ",".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"{self.name}:{args}"

    # -- hooks ---------------------------------------------------------------

    def _cdf(self, x):
        raise NotImplementedError

    def _pdf(self, x):
        raise NotImplementedError

    def _quantile(self, q: float) -> float:
        # left-continuous inverse by bisection: smallest x with F(x) >= q
        lo = self.support_lo
        if math.isfinite(self.support_hi):
            hi = self.support_hi
        else:
            width = max(1.0, abs(lo))
            hi = lo + width
            while self._cdf(hi) < q:
                width *= 2.0
                hi = lo + width
                if not math.isfinite(hi):
                    return math.inf
        for _ in range(BISECT_MAX_ITER):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if self._cdf(mid) >= q:
                hi = mid
            else:
                lo = mid
        return hi

    def _upper_quantile(self, p: float) -> float:
        return self._quantile(1.0 - p)

    def _tail_upper(self, a: float) -> float:
        # integral of the survival function over [a, support_hi)
        if math.isfinite(self.support_hi):
            return _quad(lambda u: 1.0 - self._cdf(u), a, self.support_hi)
        # E[(X - a)^+] written over the quantile level s in (F(a), 1)
        fa = float(self._cdf(a))
        return _quad(lambda s: self._quantile(s) - a, fa, 1.0)

    def _tail_lower(self, b: float) -> float:
        return _quad(lambda u: 1.0 - self._cdf(u), self.support_lo, b)

    def _partial_mean(self, t: float) -> float:
        # E[X; X <= t] = integral of the quantile function over (0, F(t))
        ft = float(self._cdf(t))
        if ft <= 0.0:
            return 0.0
        return _quad(self._quantile, 0.0, ft)

    def _mean(self) -> float:
        return self.support_lo + self._tail_upper(self.support_lo)

    def _order_statistic_mean(self, i: int, n: int) -> float | None:
        return None

    # -- public surface --------------------------------------------------------

    def cdf(self, x):
        """P(X <= x); clamps to 0 below the support and 1 above it."""
        if _is_scalar(x):
            x = float(x)
            if x <= self.support_lo:
                return 0.0
            if x >= self.support_hi:
                return 1.0
            return float(self._cdf(x))
        x = np.asarray(x, dtype=float)
        out = np.empty_like(x)
        below = x <= self.support_lo
        above = x >= self.support_hi
        inside = ~(below | above)
        out[below] = 0.0
        out[above] = 1.0
        out[inside] = self._cdf(x[inside])
        return out

    def pdf(self, x):
        if _is_scalar(x):
            x = float(x)
            if x < self.support_lo or x >= self.support_hi:
                return 0.0
            return float(self._pdf(x))
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        inside = (x >= self.support_lo) & (x < self.support_hi)
        out[inside] = self._pdf(x[inside])
        return out

    def quantile(self, q):
        """Left-continuous inverse F^{<-}(q) = inf{x : F(x) >= q}.

        quantile(0) is support_lo and quantile(1) is support_hi, which may be
        ``math.inf``.
        """
        if _is_scalar(q):
            q = float(q)
            if not 0.0 <= q <= 1.0:
                raise DomainError(f"quantile level must lie in [0, 1], got {q!r}")
            if q == 0.0:
                return self.support_lo
            if q == 1.0:
                return self.support_hi
            return float(self._quantile(q))
        q = np.asarray(q, dtype=float)
        if np.any((q < 0.0) | (q > 1.0)) or np.any(np.isnan(q)):
            raise DomainError("quantile levels must lie in [0, 1]")
        out = np.empty_like(q)
        inside = (q > 0.0) & (q < 1.0)
        out[q == 0.0] = self.support_lo
        out[q == 1.0] = self.support_hi
        out[inside] = self._quantile_array(q[inside])
        return out

    def _quantile_array(self, q: np.ndarray) -> np.ndarray:
        return np.array([self._quantile(float(v)) for v in q], dtype=float)

    def upper_quantile(self, p: float) -> float:
        """F^{<-}(1 - p), evaluated without forming 1 - p where possible."""
        p = float(p)
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"upper tail probability must lie in [0, 1], got {p!r}")
        if p == 0.0:
            return self.support_hi
        if p == 1.0:
            return self.support_lo
        return float(self._upper_quantile(p))

    def sample(self, u):
        """Inverse-transform sample for a uniform variate u in (0, 1)."""
        return self.quantile(u)

    @property
    def mean(self) -> float:
        return float(self._mean())

    def tail_integral_upper(self, a: float) -> float:
        """Integral of 1 - F over [a, support_hi)."""
        a = float(a)
        if a >= self.support_hi:
            return 0.0
        if a < self.support_lo:
            return (self.support_lo - a) + float(self._tail_upper(self.support_lo))
        return float(self._tail_upper(a))

    def tail_integral_lower(self, b: float) -> float:
        """Integral of 1 - F over [support_lo, b]."""
        b = float(b)
        if b <= self.support_lo:
            return 0.0
        if b >= self.support_hi:
            return float(self._tail_lower_full())
        return float(self._tail_lower(b))

    def _tail_lower_full(self) -> float:
        return self._mean() - self.support_lo

    def partial_mean(self, t: float) -> float:
        """E[X; X <= t], the mean restricted to the event {X <= t}."""
        t = float(t)
        if t <= self.support_lo:
            return 0.0
        if t >= self.support_hi:
            return self.mean
        return float(self._partial_mean(t))

    def expected_order_statistic_closed_form(self, i: int, n: int) -> float | None:
        """Family-specific mu_{i:n} if known in closed form, else None."""
        return self._order_statistic_mean(i, n)


class Uniform(Distribution):
    """Uniform on [0, 1]; index -1 for both maxima and minima."""

    name = "uniform"

    def __init__(self):
        super().__init__(0.0, 1.0, gamma_max=-1.0, gamma_min=-1.0)

    def _cdf(self, x):
        return x

    def _pdf(self, x):
        return np.ones_like(x) if not _is_scalar(x) else 1.0

    def _quantile(self, q):
        return q

    def _quantile_array(self, q):
        return q

    def _upper_quantile(self, p):
        return 1.0 - p

    def _tail_upper(self, a):
        return 0.5 * (1.0 - a) ** 2

    def _tail_lower(self, b):
        return b - 0.5 * b * b

    def _partial_mean(self, t):
        return 0.5 * t * t

    def _mean(self):
        return 0.5

    def _order_statistic_mean(self, i, n):
        return i / (n + 1.0)


class Exponential(Distribution):
    """Exponential(rate) on [0, inf): Gumbel for maxima, index -1 for minima."""

    name = "exponential"

    def __init__(self, rate: float = 1.0):
        rate = float(rate)
        if not rate > 0.0:
            raise DomainError("exponential rate must be positive")
        super().__init__(0.0, math.inf, {"rate": rate}, gamma_max=0.0, gamma_min=-1.0)
        self.rate = rate

    def _cdf(self, x):
        return -np.expm1(-self.rate * x)

    def _pdf(self, x):
        return self.rate * np.exp(-self.rate * x)

    def _quantile(self, q):
        return -math.log1p(-q) / self.rate

    def _quantile_array(self, q):
        return -np.log1p(-q) / self.rate

    def _upper_quantile(self, p):
        return -math.log(p) / self.rate

    def _tail_upper(self, a):
        return math.exp(-self.rate * a) / self.rate

    def _tail_lower(self, b):
        return -math.expm1(-self.rate * b) / self.rate

    def _partial_mean(self, t):
        return float(gammainc(2.0, self.rate * t)) / self.rate

    def _mean(self):
        return 1.0 / self.rate

    def _order_statistic_mean(self, i, n):
        # Renyi representation: spacings are independent exponentials
        terms = 1.0 / np.arange(n - i + 1, n + 1, dtype=float)
        return float(np.sum(terms[::-1])) / self.rate


class Pareto(Distribution):
    """Pareto(alpha) with F(x) = 1 - x^-alpha on [1, inf); index 1/alpha for maxima.

    The left endpoint is 1, so this family is only meaningful for the max
    objective and carries no index for minima.
    """

    name = "pareto"

    def __init__(self, alpha: float):
        alpha = float(alpha)
        if not alpha > 0.0:
            raise DomainError("pareto alpha must be positive")
        super().__init__(1.0, math.inf, {"alpha": alpha}, gamma_max=1.0 / alpha)
        self.alpha = alpha

    def _cdf(self, x):
        return -np.expm1(-self.alpha * np.log(x))

    def _pdf(self, x):
        return self.alpha * np.power(x, -self.alpha - 1.0)

    def _quantile(self, q):
        return math.exp(-math.log1p(-q) / self.alpha)

    def _quantile_array(self, q):
        return np.exp(-np.log1p(-q) / self.alpha)

    def _upper_quantile(self, p):
        return p ** (-1.0 / self.alpha)

    def _require_finite_mean(self):
        if self.alpha <= 1.0:
            raise InfiniteMeanError(
                f"pareto with alpha={self.alpha} has an infinite mean"
            )

    def _tail_upper(self, a):
        self._require_finite_mean()
        return a ** (1.0 - self.alpha) / (self.alpha - 1.0)

    def _tail_lower(self, b):
        if self.alpha == 1.0:
            return math.log(b)
        return -math.expm1((1.0 - self.alpha) * math.log(b)) / (self.alpha - 1.0)

    def _tail_lower_full(self):
        self._require_finite_mean()
        return 1.0 / (self.alpha - 1.0)

    def _partial_mean(self, t):
        if self.alpha == 1.0:
            return math.log(t)
        return self.alpha * self._tail_lower(t)

    def _mean(self):
        self._require_finite_mean()
        return self.alpha / (self.alpha - 1.0)

    def _order_statistic_mean(self, i, n):
        # needs E[X^1] of a Beta-type variable: n - i + 1 > 1/alpha
        if n - i + 1 <= 1.0 / self.alpha:
            raise InfiniteMeanError(
                f"mu_{i}:{n} is infinite for pareto with alpha={self.alpha}"
            )
        inv = 1.0 / self.alpha
        return math.exp(
            log_gamma(n + 1.0)
            + log_gamma(n - i + 1.0 - inv)
            - log_gamma(n - i + 1.0)
            - log_gamma(n + 1.0 - inv)
        )


class ReverseWeibullWitness(Distribution):
    """F(x) = 1 - exp(-x^(-1/gamma)) on [0, inf) for gamma < 0.

    Equivalently X = E^s with E ~ Exp(1) and s = -gamma. Its minima lie in the
    domain of attraction with index gamma, and its minimum has the exact mean
    Gamma(1 - gamma) / n^(-gamma).
    """

    name = "rw_witness"

    def __init__(self, gamma: float):
        gamma = float(gamma)
        if not gamma < 0.0:
            raise DomainError("rw_witness requires gamma < 0")
        super().__init__(0.0, math.inf, {"gamma": gamma}, gamma_max=0.0, gamma_min=gamma)
        self.gamma = gamma
        self.shape = -gamma  # s
        self._gamma_1ps = gamma_function(1.0 + self.shape)

    def _cdf(self, x):
        return -np.expm1(-np.power(x, 1.0 / self.shape))

    def _pdf(self, x):
        s = self.shape
        return (1.0 / s) * np.power(x, 1.0 / s - 1.0) * np.exp(-np.power(x, 1.0 / s))

    def _quantile(self, q):
        return (-math.log1p(-q)) ** self.shape

    def _quantile_array(self, q):
        return np.power(-np.log1p(-q), self.shape)

    def _upper_quantile(self, p):
        return (-math.log(p)) ** self.shape

    def _tail_upper(self, a):
        s = self.shape
        return self._gamma_1ps * float(gammaincc(s, a ** (1.0 / s)))

    def _tail_lower(self, b):
        s = self.shape
        return self._gamma_1ps * float(gammainc(s, b ** (1.0 / s)))

    def _partial_mean(self, t):
        s = self.shape
        return self._gamma_1ps * float(gammainc(1.0 + s, t ** (1.0 / s)))

    def _mean(self):
        return self._gamma_1ps

    def _order_statistic_mean(self, i, n):
        if i == 1:
            return self._gamma_1ps / n**self.shape
        return None


class CustomDistribution(Distribution):
    """A distribution given only by callables; everything else is numeric.

    ``cdf`` and ``pdf`` are evaluated on the support interior and must accept
    floats (array support is optional). A closed-form ``quantile`` or ``mean``
    may be supplied to avoid bisection and quadrature.
    """

    name = "custom"

    def __init__(
        self,
        cdf: Callable[[float], float],
        pdf: Callable[[float], float],
        support_lo: float = 0.0,
        support_hi: float = math.inf,
        quantile: Callable[[float], float] | None = None,
        mean: float | None = None,
        gamma_max: float | None = None,
        gamma_min: float | None = None,
        name: str = "custom",
    ):
        super().__init__(support_lo, support_hi, gamma_max=gamma_max, gamma_min=gamma_min)
        self._cdf_fn = cdf
        self._pdf_fn = pdf
        self._quantile_fn = quantile
        self._mean_value = mean
        self.name = name

    def __repr__(self) -> str:
        return f"CustomDistribution(name={self.name!r})"

    def _cdf(self, x):
        if _is_scalar(x):
            return self._cdf_fn(float(x))
        return np.array([self._cdf_fn(float(v)) for v in x])

    def _pdf(self, x):
        if _is_scalar(x):
            return self._pdf_fn(float(x))
        return np.array([self._pdf_fn(float(v)) for v in x])

    def _quantile(self, q):
        if self._quantile_fn is not None:
            return self._quantile_fn(q)
        return super()._quantile(q)

    def _mean(self):
        if self._mean_value is not None:
            if not math.isfinite(self._mean_value):
                raise InfiniteMeanError(f"{self.name} has an infinite mean")
            return self._mean_value
        return super()._mean()

    def _tail_upper(self, a):
        if self._mean_value is not None and not math.isfinite(self._mean_value):
            raise InfiniteMeanError(f"{self.name} has an infinite mean")
        return super()._tail_upper(a)


def cumulative_hazard_max(dist: Distribution, x: float) -> float:
    """H(x): integral of f / (1 - F) from the left endpoint to x, by quadrature."""
    if x <= dist.support_lo:
        return 0.0
    return _quad(lambda u: dist.pdf(u) / (1.0 - dist.cdf(u)), dist.support_lo, x)


def cumulative_hazard_min(dist: Distribution, x: float) -> float:
    """R(x) with F = exp(R): minus the integral of f / F from x to the right endpoint."""
    if x >= dist.support_hi:
        return 0.0
    return -_quad(lambda u: dist.pdf(u) / dist.cdf(u), x, dist.support_hi)


FAMILIES = {
    "uniform": (Uniform, ()),
    "exponential": (Exponential, ("rate",)),
    "pareto": (Pareto, ("alpha",)),
    "rw_witness": (ReverseWeibullWitness, ("gamma",)),
}


def parse_distribution(spec: str) -> Distribution:
    """Build a distribution from strings like ``exponential:rate=2``.

    Grammar: ``uniform``, ``exponential:rate=<r>``, ``pareto:alpha=<a>``,
    ``rw_witness:gamma=<g>``. Exponential's rate defaults to 1.
    """
    text = spec.strip()
    family, _, argtext = text.partition(":")
    family = family.strip().lower()
    if family not in FAMILIES:
        raise ConfigError(f"unknown distribution family {family!r} in {spec!r}")
    cls, allowed = FAMILIES[family]
    kwargs = {}
    if argtext.strip():
        for item in argtext.split(","):
            key, eq, value = item.partition("=")
            key = key.strip()
            if not eq or key not in allowed:
                raise ConfigError(f"bad parameter {item!r} for {family}")
            try:
                kwargs[key] = float(value)
            except ValueError:
                raise ConfigError(f"parameter {key} is not a number: {value!r}") from None
    missing = [k for k in allowed if k not in kwargs and not (family == "exponential")]
    if missing:
        raise ConfigError(f"{family} requires parameter(s) {', '.join(missing)}")
    try:
        return cls(**kwargs)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc
