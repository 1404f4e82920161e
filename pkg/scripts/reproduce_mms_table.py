#!/usr/bin/env python3
"""Manufactured-solution convergence table (exact-density reference).

Runs the 16..128 grids for eps in {1, 1e-1, 1e-2, 1e-3} and writes
convergence.csv into --outdir.  Expect ~6 minutes.
"""

import argparse
import sys

from aptrans.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="results/mms")
    ap.add_argument("--n-list", default="16,32,64,128")
    ap.add_argument("--epsilon-list", default="1,0.1,0.01,0.001")
    args = ap.parse_args()
    return cli_main([
        "converge", "--scenario", "mms", "--reference", "exact",
        "--n-list", args.n_list, "--epsilon-list", args.epsilon_list,
        "--outdir", args.outdir,
    ])


if __name__ == "__main__":
    sys.exit(main())
