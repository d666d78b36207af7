"""Write Lambda(gamma) on a grid as CSV, ready for plotting."""

import argparse
import csv
import sys

import numpy as np

from prophetlab import lambda_acr


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--lo", type=float, default=-3.0)
    p.add_argument("--hi", type=float, default=0.99)
    p.add_argument("--points", type=int, default=400)
    p.add_argument("--out", default="-")
    args = p.parse_args()

    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh)
    w.writerow(["gamma", "lambda", "acr_max", "acr_min"])
    for g in np.linspace(args.lo, args.hi, args.points):
        lam = lambda_acr(g)
        w.writerow([f"{g:.6f}", f"{lam:.12g}", f"{min(lam, 1.0):.12g}", f"{max(lam, 1.0):.12g}" if g <= 0 else ""])
    if fh is not sys.stdout:
        fh.close()

    floor_grid = np.linspace(0.0, 0.999, 1000)
    vals = [lambda_acr(g) for g in floor_grid]
    j = int(np.argmin(vals))
    print(f"min Lambda on [0, 1): {vals[j]:.6f} at gamma = {floor_grid[j]:.3f}", file=sys.stderr)


if __name__ == "__main__":
    main()
