#!/usr/bin/env python3
"""Two-material lattice run: density field at t = 1.7 on a coarse grid.

The emitted rho_final_*.csv planes feed the log-scale heatmap figure.
"""

import argparse
import sys

from aptrans.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="results/two_material")
    ap.add_argument("--n", default="64")
    args = ap.parse_args()
    return cli_main([
        "run", "--scenario", "two_material", "--n", args.n,
        "--outdir", args.outdir,
    ])


if __name__ == "__main__":
    sys.exit(main())
