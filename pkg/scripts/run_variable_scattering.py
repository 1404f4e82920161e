#!/usr/bin/env python3
"""Variable-scattering run with density snapshots at t/eps = 0.1, 0.5, 1.

Run once on an underresolved grid (default 32) and once on a resolving
grid (e.g. --n 512, a few minutes) to compare the two; each resolution
writes into its own subdirectory of --outdir.
"""

import argparse
import os
import sys

from aptrans.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="results/variable_scattering")
    ap.add_argument("--n", type=int, nargs="+", default=[32])
    args = ap.parse_args()
    eps = 1.0 / 100.0
    times = ",".join(repr(f * eps) for f in (0.1, 0.5, 1.0))
    for n in args.n:
        rc = cli_main([
            "run", "--scenario", "variable_scattering", "--n", str(n),
            "--snapshot-times", times,
            "--outdir", os.path.join(args.outdir, f"N{n}"),
        ])
        if rc != 0:
            return rc
    return 0


if __name__ == "__main__":
    sys.exit(main())
