"""``prophetlab``: batch experiments that write CSV/JSON tables.

Exit codes: 0 success, 2 configuration error, 3 numeric precondition
failure (infinite mean, gamma out of range, horizon too small), 4 I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import io
import json
import math
import sys
from dataclasses import dataclass, field

from .benchmark import prophet_value
from .distributions import parse_distribution
from .errors import ConfigError, ProphetLabError
from .evt import asymptotic_ratio, estimate_evt_index_max, estimate_evt_index_min, lambda_acr
from .policies import (
    ThresholdPolicy,
    best_single_threshold,
    evt_single_threshold_min,
    multi_unit_threshold,
    optimal_values,
    single_threshold_expected_value,
)
from .simulate import MIN_TRIALS, estimate_ratio

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

EXPERIMENTS = ("acr-convergence", "single-threshold", "multi-unit", "estimate-gamma", "lambda-curve")

COLUMNS = {
    "acr-convergence": ["n", "G", "prophet", "ratio", "lambda_gamma", "abs_err"],
    "single-threshold": [
        "n", "gamma", "threshold", "value", "prophet", "ratio",
        "best_threshold", "best_value", "best_ratio",
    ],
    "multi-unit": [
        "n", "k", "gamma", "threshold", "mean_alg", "stderr", "opt", "ratio", "ci95_lo", "ci95_hi",
    ],
    "estimate-gamma": ["n", "c", "gamma_hat_min", "gamma_hat_max", "gamma_min_known", "gamma_max_known"],
    "lambda-curve": ["gamma", "lambda"],
}


@dataclass
class ExperimentConfig:
    experiment: str
    dist_spec: str = "uniform"
    objective: str = "min"
    n_grid: list[int] = field(default_factory=lambda: [10, 100, 1000])
    trials: int = 10_000
    seed: int = 0
    out_path: str = "-"
    format: str = "csv"
    k: int | None = None
    c: float = 10.0
    gamma_lo: float = -3.0
    gamma_hi: float = 0.9
    gamma_step: float = 0.1
    workers: int = 1

    def validate(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        if self.objective not in ("max", "min"):
            raise ConfigError(f"objective must be max or min, got {self.objective!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")
        if self.experiment != "lambda-curve":
            if not self.n_grid:
                raise ConfigError("n grid is empty")
            if any(n < 1 for n in self.n_grid):
                raise ConfigError("every n must be positive")
            if any(b <= a for a, b in zip(self.n_grid, self.n_grid[1:])):
                raise ConfigError("n grid must be strictly increasing")
        if self.experiment == "multi-unit" and self.trials < MIN_TRIALS:
            raise ConfigError(f"Monte Carlo experiments need at least {MIN_TRIALS} trials")
        if self.experiment == "lambda-curve" and not (self.gamma_step > 0 and self.gamma_hi >= self.gamma_lo):
            raise ConfigError("gamma grid needs step > 0 and hi >= lo")
        if self.workers < 1:
            raise ConfigError("workers must be positive")


def _known_gamma(dist, objective: str) -> float:
    g = dist.gamma_max if objective == "max" else dist.gamma_min
    if g is None:
        raise ConfigError(f"{dist.spec} has no known index for the {objective} objective")
    return g


def _acr_convergence(cfg: ExperimentConfig):
    dist = parse_distribution(cfg.dist_spec)
    dist.mean  # an infinite mean is the root cause when gamma >= 1
    gamma = _known_gamma(dist, cfg.objective)
    target = asymptotic_ratio(gamma, cfg.objective)
    table = optimal_values(dist, cfg.n_grid[-1], cfg.objective)
    for n in cfg.n_grid:
        g = table.G(n)
        prophet = prophet_value(dist, n, cfg.objective)
        ratio = g / prophet
        yield [n, g, prophet, ratio, target, abs(ratio - target)]


def _single_threshold(cfg: ExperimentConfig):
    if cfg.objective != "min":
        raise ConfigError("single-threshold experiments are for the min objective")
    dist = parse_distribution(cfg.dist_spec)
    gamma = _known_gamma(dist, "min")
    for n in cfg.n_grid:
        T = evt_single_threshold_min(dist, gamma, n)
        value = single_threshold_expected_value(dist, n, T)
        prophet = prophet_value(dist, n, "min")
        best_T, best_value = best_single_threshold(dist, n, "min")
        yield [n, gamma, T, value, prophet, value / prophet, best_T, best_value, best_value / prophet]


def _multi_unit(cfg: ExperimentConfig):
    if cfg.objective != "min":
        raise ConfigError("multi-unit experiments are for the min objective")
    dist = parse_distribution(cfg.dist_spec)
    gamma = _known_gamma(dist, "min")
    for n in cfg.n_grid:
        k = cfg.k if cfg.k is not None else math.ceil(math.log(n))
        T = multi_unit_threshold(dist, gamma, n, k)
        policy = ThresholdPolicy.multi_unit(T, n, k)
        est = estimate_ratio(dist, policy, n, cfg.trials, cfg.seed, "min", workers=cfg.workers)
        yield [n, k, gamma, T, est.mean_alg, est.stderr, est.benchmark, est.ratio, est.ci95_lo, est.ci95_hi]


def _estimate_gamma(cfg: ExperimentConfig):
    dist = parse_distribution(cfg.dist_spec)
    for n in cfg.n_grid:
        yield [
            n,
            cfg.c,
            estimate_evt_index_min(dist, n, cfg.c),
            estimate_evt_index_max(dist, n, cfg.c),
            dist.gamma_min,
            dist.gamma_max,
        ]


def _lambda_curve(cfg: ExperimentConfig):
    count = int(round((cfg.gamma_hi - cfg.gamma_lo) / cfg.gamma_step)) + 1
    for j in range(count):
        # rounding keeps grid points such as 0 exact
        gamma = round(cfg.gamma_lo + j * cfg.gamma_step, 12)
        if gamma >= 1.0:
            break
        yield [gamma, lambda_acr(gamma)]


RUNNERS = {
    "acr-convergence": _acr_convergence,
    "single-threshold": _single_threshold,
    "multi-unit": _multi_unit,
    "estimate-gamma": _estimate_gamma,
    "lambda-curve": _lambda_curve,
}


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".17g")


def render(cfg: ExperimentConfig, rows: list[list]) -> str:
    columns = COLUMNS[cfg.experiment]
    if cfg.format == "csv":
        buf = io.StringIO()
        buf.write(",".join(columns) + "\n")
        for row in rows:
            buf.write(",".join(_fmt(v) for v in row) + "\n")
        return buf.getvalue()
    doc = {
        "experiment": cfg.experiment,
        "dist": cfg.dist_spec,
        "objective": cfg.objective,
        "columns": columns,
        "rows": [dict(zip(columns, row)) for row in rows],
    }
    return json.dumps(doc, indent=2, allow_nan=True) + "\n"


def run_experiment(cfg: ExperimentConfig) -> str:
    """Run ``cfg`` and write its table to ``cfg.out_path`` ("-" for stdout).

    Returns the rendered text.
    """
    cfg.validate()
    rows = list(RUNNERS[cfg.experiment](cfg))
    text = render(cfg, rows)
    if cfg.out_path == "-":
        sys.stdout.write(text)
    else:
        with open(cfg.out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


def _parse_n_grid(text: str) -> list[int]:
    try:
        return [int(float(tok)) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ConfigError(f"cannot parse n grid {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="prophetlab",
        description="Prophet-inequality experiments: optimal and threshold stopping rules.",
    )
    p.add_argument("experiment", nargs="?", choices=EXPERIMENTS)
    p.add_argument("--config", help="JSON file with ExperimentConfig fields; flags override it")
    p.add_argument("--dist", dest="dist_spec", help="e.g. uniform, exponential:rate=1, pareto:alpha=2, rw_witness:gamma=-2")
    p.add_argument("--objective", choices=("max", "min"))
    p.add_argument("--n", dest="n_grid", help="comma-separated horizons, e.g. 10,100,1e3")
    p.add_argument("--k", type=int, help="multi-unit quota (default ceil(log n))")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", dest="out_path", help="output path, '-' for stdout")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--c", type=float, help="quantile ratio for estimate-gamma (default 10)")
    p.add_argument("--gamma-lo", type=float)
    p.add_argument("--gamma-hi", type=float)
    p.add_argument("--gamma-step", type=float)
    p.add_argument("--workers", type=int)
    return p


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    values: dict = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            try:
                loaded = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config file is not valid JSON: {exc}") from None
        if not isinstance(loaded, dict):
            raise ConfigError("config file must hold a JSON object")
        known = {f.name for f in dataclasses.fields(ExperimentConfig)}
        unknown = set(loaded) - known
        if unknown:
            raise ConfigError(f"unknown config fields: {', '.join(sorted(unknown))}")
        values.update(loaded)
        if isinstance(values.get("n_grid"), str):
            values["n_grid"] = _parse_n_grid(values["n_grid"])
    for name in ("experiment", "dist_spec", "objective", "k", "trials", "seed", "out_path", "format", "c", "gamma_lo", "gamma_hi", "gamma_step", "workers"):
        value = getattr(args, name)
        if value is not None:
            values[name] = value
    if args.n_grid is not None:
        values["n_grid"] = _parse_n_grid(args.n_grid)
    if "experiment" not in values:
        raise ConfigError("no experiment given")
    if "out_path" not in values:
        raise ConfigError("--out is required")
    return ExperimentConfig(**values)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        run_experiment(cfg)
    except ConfigError as exc:
        print(f"prophetlab: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ProphetLabError as exc:
        print(f"prophetlab: numeric precondition failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"prophetlab: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
