#!/usr/bin/env python3
"""Relaxation-parameter experiment: one run with the certified phi and one
with the naive 1/eps^2 on the same 300x300 grid.

Each run writes its density planes into its own subdirectory of --outdir;
the second run is expected to be unstable (the driver tolerates the
blow-up exit and keeps the partial output for the cut-comparison figure).
"""

import argparse
import os
import sys

from aptrans.cli import main as cli_main
from aptrans.scenarios import phi_overrides, phi_stability


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="results/phi_stability")
    ap.add_argument("--n", type=int, default=300)
    args = ap.parse_args()
    scn = phi_stability()
    phi1, phi2 = phi_overrides(scn, scn.grid(args.n))
    status = 0
    for tag, phi in (("certified", phi1), ("naive", phi2)):
        out = os.path.join(args.outdir, tag)
        rc = cli_main([
            "run", "--scenario", "phi_stability", "--n", str(args.n),
            "--phi", repr(phi), "--outdir", out,
        ])
        print(f"phi_{tag} = {phi!r}: exit {rc}")
        if tag == "certified" and rc != 0:
            status = rc  # the certified run must succeed
    return status


if __name__ == "__main__":
    sys.exit(main())
