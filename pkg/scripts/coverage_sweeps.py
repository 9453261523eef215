"""ARDCP versus BS height (sparse network) and cooperative cluster size (dense
network), closed form next to simulation. One subdirectory per sweep.

    python3 scripts/coverage_sweeps.py --out results/coverage --trials 200000 --seed 3
"""

import argparse
import sys
from pathlib import Path

from isac_sensing import cli

SWEEPS = {
    "h_b": (["10", "20", "30", "40", "50"], ["--set", "lambda_B_km2=1", "--set", "h_T=100"]),
    "n_c": (["0", "1", "3", "5", "7"], ["--set", "lambda_B_km2=100"]),
    "t_r": (["1", "10", "100", "1000", "10000"], ["--set", "lambda_B_km2=10"]),
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results/coverage_sweeps")
    ap.add_argument("--trials", type=float, default=2e5)
    ap.add_argument("--seed", type=int, default=3)
    ap.add_argument("--t-r", type=float, default=1e3)
    ap.add_argument("--mode", default="laplace_corrected")
    args = ap.parse_args(argv)
    worst = 0
    for sweep, (values, extra) in SWEEPS.items():
        print(f"== {sweep} ==")
        code = cli.main(["ardcp", "--sweep", sweep, "--values", *values, "--t-r", str(args.t_r),
                         "--mode", args.mode, "--mc-trials", str(args.trials),
                         "--seed", str(args.seed), "--out", str(Path(args.out) / sweep), *extra])
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
