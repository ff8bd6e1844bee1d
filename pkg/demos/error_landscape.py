"""Excitation landscapes of the cataloged composite sequences.

Scans the transition probability over the pulse-area-error x phase-error
plane for a chosen sequence, reports the size of the ultra-high-fidelity
region (p > 1 - 10^-m for m = 2, 3, 4), and optionally writes the grid as
CSV for plotting.

Usage:
    python demos/error_landscape.py --seq Phi13a [--points 201] [--csv grid.csv]
    python demos/error_landscape.py --chain        # compare the whole family
"""

import argparse

import numpy as np

from phasecomp import catalog, profiler
from phasecomp.su2 import DOUBLE


def report(name, points):
    grid = profiler.scan(
        catalog.get_sequence(name), DOUBLE, profiler.default_axes(DOUBLE, points)
    )
    metrics = profiler.region_metrics(grid)
    print(f"\n{name}: grid {points}x{points}, alpha in [-1,1], eps in [-0.25,0.25]")
    for m, level in profiler.LEVELS:
        print(f"  p > {level}:  area fraction {metrics.cell_fraction[m]:.4f}, "
              f"alpha-width {metrics.width_x[m]:.4f}, eps-width {metrics.width_y[m]:.4f}")
    return grid


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seq", default="Phi5")
    ap.add_argument("--points", type=int, default=201)
    ap.add_argument("--csv", help="write the scanned grid to this CSV file")
    ap.add_argument("--chain", action="store_true",
                    help="compare B3 -> B5a -> Phi5 -> ... -> Phi13a instead")
    args = ap.parse_args()

    if args.chain:
        print("fraction of the error plane with p > 1 - 1e-4:")
        for name in ("B3", "B5a", "Phi5", "Phi7", "Phi9a", "Phi11a", "Phi13a"):
            grid = profiler.scan(
                catalog.get_sequence(name), DOUBLE,
                profiler.default_axes(DOUBLE, args.points),
            )
            frac = float(np.mean(grid.values >= 1.0 - 1e-4))
            bar = "#" * int(round(frac * 120))
            print(f"  {name:7s} {frac:.4f} {bar}")
        return

    grid = report(args.seq, args.points)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(profiler.grid_to_csv(grid))
        print(f"\nwrote {args.csv}")


if __name__ == "__main__":
    main()
