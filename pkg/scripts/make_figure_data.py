#!/usr/bin/env python3
"""Emit the data behind the three reference plots as CSV files.

Writes into --out-dir:
  identity6_levels.csv   deficiency levels of the 6x6 identity transition
  zeta12.csv             divisor interpolation curve for d = 12 (flat minimum)
  zeta36.csv             divisor interpolation curve for d = 36 (unique minimum)
"""

import argparse
from pathlib import Path

from incompat.cli import main as cli_main


def run(out_dir: Path, samples: int) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    jobs = [
        ["profile-curve", "--family", "identity", "--dim", "6",
         "--output", str(out_dir / "identity6_levels.csv")],
        ["zeta-curve", "--dim", "12", "--samples", str(samples),
         "--output", str(out_dir / "zeta12.csv")],
        ["zeta-curve", "--dim", "36", "--samples", str(samples),
         "--output", str(out_dir / "zeta36.csv")],
    ]
    for job in jobs:
        code = cli_main(job)
        if code != 0:
            raise SystemExit(code)
        print("wrote", job[-1])


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", type=Path, default=Path("figure_data"))
    parser.add_argument("--samples", type=int, default=1000)
    args = parser.parse_args()
    run(args.out_dir, args.samples)
