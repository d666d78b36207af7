"""Convergence of the optimal policy's competitive ratio to its EVT limit.

Prints one block per (distribution, objective) with G(n), the prophet value,
their ratio and the predicted limit min/max(Lambda, 1).
"""

import argparse

from prophetlab import asymptotic_ratio, optimal_values, parse_distribution, prophet_value

CASES = [
    ("uniform", "min"),
    ("exponential:rate=1", "min"),
    ("rw_witness:gamma=-2", "min"),
    ("uniform", "max"),
    ("exponential:rate=1", "max"),
    ("pareto:alpha=2", "max"),
    ("pareto:alpha=1.25", "max"),
]


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-max", type=int, default=10**5)
    args = p.parse_args()

    grid = [n for n in (10, 100, 1000, 10**4, 10**5, 10**6) if n <= args.n_max]
    for spec, objective in CASES:
        dist = parse_distribution(spec)
        gamma = dist.gamma_max if objective == "max" else dist.gamma_min
        target = asymptotic_ratio(gamma, objective)
        table = optimal_values(dist, grid[-1], objective)
        print(f"{spec}  objective={objective}  gamma={gamma:g}  limit={target:.6f}")
        print(f"{'n':>9} {'G(n)':>14} {'prophet':>14} {'ratio':>10} {'|err|':>10}")
        for n in grid:
            g = table.G(n)
            bench = prophet_value(dist, n, objective)
            print(f"{n:>9} {g:>14.8g} {bench:>14.8g} {g / bench:>10.6f} {abs(g / bench - target):>10.2e}")
        print()


if __name__ == "__main__":
    main()
