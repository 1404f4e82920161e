#!/usr/bin/env python3
"""Gauss-bump convergence table against a 256x256 reference run.

Writes convergence.csv into --outdir.  Expect ~6 minutes.
"""

import argparse
import sys

from aptrans.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="results/gauss")
    ap.add_argument("--n-list", default="16,32,64")
    ap.add_argument("--epsilon-list", default="1,0.01")
    ap.add_argument("--ref-n", default="256")
    args = ap.parse_args()
    return cli_main([
        "converge", "--scenario", "gauss", "--ref-n", args.ref_n,
        "--n-list", args.n_list, "--epsilon-list", args.epsilon_list,
        "--outdir", args.outdir,
    ])


if __name__ == "__main__":
    sys.exit(main())
