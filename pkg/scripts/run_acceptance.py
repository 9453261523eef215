"""Run the acceptance checks and write a JSON summary (exit code 5 on any failure).

    python3 scripts/run_acceptance.py --level full --out results/acceptance
"""

import sys

from isac_sensing import cli

if __name__ == "__main__":
    argv = sys.argv[1:]
    if "--out" not in argv:
        argv += ["--out", "results/acceptance"]
    sys.exit(cli.main(["validate", *argv]))
