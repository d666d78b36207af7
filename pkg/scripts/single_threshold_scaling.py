"""Single-threshold policies for minimisation: the EVT threshold against the
best single threshold and the optimal dynamic program.

For an index gamma < 0 the EVT threshold's ratio grows like (log n)^(-gamma),
while the optimal policy's ratio stays bounded.
"""

import argparse

from prophetlab import (
    ReverseWeibullWitness,
    best_single_threshold,
    evt_single_threshold_min,
    optimal_values,
    prophet_value,
    single_threshold_expected_value,
)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--gammas", default="-0.5,-1,-2")
    args = p.parse_args()

    grid = [10**3, 10**4, 10**5, 10**6]
    for gamma in (float(g) for g in args.gammas.split(",")):
        d = ReverseWeibullWitness(gamma)
        table = optimal_values(d, grid[-1], "min")
        print(f"gamma={gamma:g}")
        print(f"{'n':>9} {'evt ratio':>10} {'best ratio':>11} {'dp ratio':>9} {'vs n=1e3':>11}")
        first = None
        for n in grid:
            bench = prophet_value(d, n, "min")
            evt = single_threshold_expected_value(d, n, evt_single_threshold_min(d, gamma, n)) / bench
            _, best = best_single_threshold(d, n)
            first = first or evt
            print(f"{n:>9} {evt:>10.4f} {best / bench:>11.4f} {table.G(n) / bench:>9.4f} {evt / first:>11.4f}")
        print()


if __name__ == "__main__":
    main()
