"""Monte Carlo ratio of the multi-unit threshold policy with k = ceil(log n)."""

import argparse
import math

from prophetlab import ThresholdPolicy, estimate_ratio, multi_unit_threshold, parse_distribution


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--dist", default="exponential:rate=1")
    p.add_argument("--trials", type=int, default=10**5)
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--workers", type=int, default=1)
    args = p.parse_args()

    d = parse_distribution(args.dist)
    gamma = d.gamma_min
    bound = 1 + math.exp(1 - gamma) + 0.5
    print(f"{args.dist}  gamma_min={gamma:g}  c=e^(1-gamma)={math.exp(1 - gamma):.4f}")
    print(f"{'n':>8} {'k':>3} {'ratio':>8} {'95% CI':>21}")
    for n in (10**3, 10**4, 10**5):
        k = math.ceil(math.log(n))
        T = multi_unit_threshold(d, gamma, n, k)
        est = estimate_ratio(
            d, ThresholdPolicy.multi_unit(T, n, k), n, args.trials, args.seed, "min", quota=k, workers=args.workers
        )
        print(f"{n:>8} {k:>3} {est.ratio:>8.4f}   [{est.ci95_lo:.4f}, {est.ci95_hi:.4f}]")
    print(f"reference bound 1 + c + 0.5 = {bound:.4f}")


if __name__ == "__main__":
    main()
