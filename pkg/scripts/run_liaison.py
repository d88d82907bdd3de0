#!/usr/bin/env python3
"""Run the liaison construction for a batch of seeds and persist the reports.

By default this runs the fixed-coordinate example once and then the
randomized construction for every seed in --seeds.  Each run writes an
append-only directory under --output-dir.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from p4surf.cli import main as cli_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", default="1,2,3",
                    help="comma-separated seed list (default 1,2,3)")
    ap.add_argument("--char", default="31991")
    ap.add_argument("--cache-dir", default=str(
        Path(__file__).resolve().parent.parent / ".cache"))
    ap.add_argument("--output-dir", default="runs")
    ap.add_argument("--skip-example", action="store_true",
                    help="skip the fixed-coordinate example run")
    ap.add_argument("--force", action="store_true")
    args = ap.parse_args()

    common = ["--char", args.char, "--cache-dir", args.cache_dir,
              "--output-dir", args.output_dir]
    if args.force:
        common.append("--force")

    worst = 0
    if not args.skip_example:
        print("== liaison example ==", flush=True)
        worst = max(worst, cli_main(
            ["liaison", "--example", "--seed", "1"] + common))
    for seed in args.seeds.split(","):
        print(f"== liaison seed {seed.strip()} ==", flush=True)
        worst = max(worst, cli_main(
            ["liaison", "--seed", seed.strip()] + common))
    return worst


if __name__ == "__main__":
    sys.exit(main())
