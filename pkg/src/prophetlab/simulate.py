"""Deterministic Monte Carlo for threshold policies.

Every uniform variate is a pure function of (seed, trial, step): a SplitMix64
finaliser hashes the trial index into a stream key and the step counter into
the variate. Workers therefore never share generator state, and the estimate
depends only on the seed and the trial count, not on how trials are split
across threads.

Kernels run in probability space. For the left-continuous inverse,
F^{<-}(u) <= T exactly when u <= F(T), so a draw is compared with F(T) and
only the accepted variates are pushed through the quantile function.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numba
import numpy as np

from .benchmark import prophet_multi_unit, prophet_value
from .distributions import Distribution
from .errors import DomainError
from .policies import ThresholdPolicy

MIN_TRIALS = 100
Z95 = 1.96

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_TRIAL_SALT = np.uint64(0xD1B54A32D192ED03)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_ONE = np.uint64(1)
_INV_2_53 = 1.0 / 9007199254740992.0


@numba.njit(cache=True, nogil=True)
def _mix64(x):
    x = x ^ (x >> _S30)
    x = x * _M1
    x = x ^ (x >> _S27)
    x = x * _M2
    return x ^ (x >> _S31)


@numba.njit(cache=True, nogil=True)
def _stream_key(seed, trial):
    return _mix64(seed ^ _mix64(np.uint64(trial) * _TRIAL_SALT + _GOLDEN))


@numba.njit(cache=True, nogil=True)
def _unit(key, step):
    # midpoint of a 53-bit cell, so the result lies strictly inside (0, 1)
    bits = _mix64(key + (np.uint64(step) + _ONE) * _GOLDEN) >> _S11
    return (np.float64(bits) + 0.5) * _INV_2_53


@numba.njit(cache=True, nogil=True)
def _uniform_block(seed, trial, n):
    out = np.empty(n, dtype=np.float64)
    key = _stream_key(seed, trial)
    for step in range(n):
        out[step] = _unit(key, step)
    return out


@numba.njit(cache=True, nogil=True)
def _single_kernel(seed, start, stop, levels, is_min, out):
    n = levels.shape[0]
    for trial in range(start, stop):
        key = _stream_key(seed, trial)
        for step in range(n):
            u = _unit(key, step)
            if step == n - 1:
                out[trial] = u
                break
            p = levels[step]
            if (is_min and u <= p) or ((not is_min) and u >= p):
                out[trial] = u
                break


@numba.njit(cache=True, nogil=True)
def _multi_kernel(seed, start, stop, n, level, k, out):
    for trial in range(start, stop):
        key = _stream_key(seed, trial)
        taken = 0
        for step in range(n):
            if taken == k:
                break
            u = _unit(key, step)
            if n - step == k - taken or u <= level:
                out[trial, taken] = u
                taken += 1


def _seed64(seed: int) -> np.uint64:
    return np.uint64(int(seed) & 0xFFFFFFFFFFFFFFFF)


def uniform_draws(seed: int, trial: int, n: int) -> np.ndarray:
    """The n uniforms that trial ``trial`` sees under ``seed``."""
    return _uniform_block(_seed64(seed), int(trial), int(n))


def trial_draws(dist: Distribution, seed: int, trial: int, n: int) -> np.ndarray:
    """The realised values of trial ``trial``: inverse-transform of its uniforms."""
    return dist.sample(uniform_draws(seed, trial, n))


@dataclass(frozen=True)
class RatioEstimate:
    mean_alg: float
    benchmark: float
    ratio: float
    stderr: float
    ci95_lo: float
    ci95_hi: float
    trials: int
    seed: int


def _chunks(trials: int, workers: int) -> list[tuple[int, int]]:
    size = -(-trials // workers)
    return [(s, min(s + size, trials)) for s in range(0, trials, size)]


def _run_chunks(kernel, args_for, trials: int, workers: int) -> None:
    chunks = _chunks(trials, workers)
    if workers == 1 or len(chunks) == 1:
        for start, stop in chunks:
            kernel(*args_for(start, stop))
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(kernel, *args_for(s, e)) for s, e in chunks]
        for fut in futures:
            fut.result()


def simulate_policy(
    dist: Distribution,
    policy: ThresholdPolicy,
    trials: int,
    seed: int,
    objective: str,
    workers: int = 1,
) -> np.ndarray:
    """Per-trial outcomes of ``policy``: selected value, or sum for multi_unit."""
    if objective not in ("max", "min"):
        raise DomainError(f"objective must be 'max' or 'min', got {objective!r}")
    if trials < 1:
        raise DomainError("trials must be positive")
    if workers < 1:
        raise DomainError("workers must be positive")
    seed64 = _seed64(seed)
    n = policy.horizon
    if policy.kind == "multi_unit":
        if objective != "min":
            raise DomainError("multi-unit policies are defined for minimisation")
        k = policy.quota
        level = float(dist.cdf(policy.thresholds))
        out_u = np.full((trials, k), np.nan)
        _run_chunks(_multi_kernel, lambda s, e: (seed64, s, e, n, level, k, out_u), trials, workers)
        return np.sum(dist.sample(out_u), axis=1)
    if policy.kind == "schedule":
        levels = np.asarray(dist.cdf(np.asarray(policy.thresholds)), dtype=float)
    else:
        levels = np.full(n, float(dist.cdf(policy.thresholds)))
    levels = np.ascontiguousarray(levels)
    out_u = np.full(trials, np.nan)
    is_min = objective == "min"
    _run_chunks(_single_kernel, lambda s, e: (seed64, s, e, levels, is_min, out_u), trials, workers)
    return dist.sample(out_u)


def estimate_ratio(
    dist: Distribution,
    policy: ThresholdPolicy,
    n: int,
    trials: int,
    seed: int,
    objective: str,
    quota: int | None = None,
    workers: int = 1,
) -> RatioEstimate:
    """Monte Carlo competitive ratio of ``policy`` against the exact prophet value.

    The denominator is exact (mu_{1:n}, mu_{n:n}, or the sum of the k
    smallest order statistics), so the confidence interval is the interval
    for the algorithm's mean scaled by that constant.
    """
    if n != policy.horizon:
        raise DomainError(f"policy horizon {policy.horizon} does not match n={n}")
    if trials < MIN_TRIALS:
        raise DomainError(f"need at least {MIN_TRIALS} trials, got {trials}")
    if quota is not None and quota != policy.quota:
        raise DomainError(f"quota {quota} disagrees with the policy's quota {policy.quota}")
    if policy.kind == "multi_unit":
        bench = prophet_multi_unit(dist, policy.quota, n)
    else:
        bench = prophet_value(dist, n, objective)
    if not math.isfinite(bench) or bench == 0.0:
        raise DomainError(f"benchmark {bench} cannot serve as a denominator")

    values = simulate_policy(dist, policy, trials, seed, objective, workers)
    # np.sum reduces pairwise in a fixed order over the trial axis
    mean_alg = float(np.sum(values) / trials)
    stderr = float(np.std(values, ddof=1) / math.sqrt(trials))
    return RatioEstimate(
        mean_alg=mean_alg,
        benchmark=bench,
        ratio=mean_alg / bench,
        stderr=stderr,
        ci95_lo=(mean_alg - Z95 * stderr) / bench,
        ci95_hi=(mean_alg + Z95 * stderr) / bench,
        trials=trials,
        seed=int(seed),
    )
