"""CCDF of the guarded interference: stable, tempered-stable and strongest-interferer
models against simulation, for a dense and a sparse network.

    python3 scripts/interference_curves.py --out results/curves --trials 1000000 --seed 1
"""

import argparse
import sys

from isac_sensing import cli


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results/interference_curves")
    ap.add_argument("--trials", type=float, default=1e6)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--densities-km2", type=float, nargs="+", default=[100.0, 1.0])
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)
    return cli.main(["dist", "--model", "all", "--lambda-b", *map(str, args.densities_km2),
                     "--mc-trials", str(args.trials), "--seed", str(args.seed),
                     "--workers", str(args.workers), "--out", args.out])


if __name__ == "__main__":
    sys.exit(main())
