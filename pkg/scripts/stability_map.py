#!/usr/bin/env python3
"""Von Neumann radius map over (epsilon, h) with production dt and phi.

Writes stability_map.csv (one radius per mode angle) and
stability_verdicts.csv into --outdir.
"""

import argparse
import sys

from aptrans.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="results/stability")
    ap.add_argument("--epsilon-list", default="1,0.1,0.01,0.001,1e-6")
    ap.add_argument("--h-list", default="0.1,0.01,0.001")
    ap.add_argument("--n-theta", default="1024")
    args = ap.parse_args()
    return cli_main([
        "stability",
        "--stability-epsilon-list", args.epsilon_list,
        "--stability-h-list", args.h_list,
        "--stability-n-theta", args.n_theta,
        "--outdir", args.outdir,
    ])


if __name__ == "__main__":
    sys.exit(main())
