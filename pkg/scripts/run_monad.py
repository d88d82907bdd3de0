#!/usr/bin/env python3
"""Run the monad construction for a batch of seeds and persist the reports.

Each seed gets its own append-only run directory under --output-dir.  The
bridge stages (residual cubic, (5,5) link, double line, 6-secant) are on by
default because they are cheap next to the main pipeline.
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
    ap.add_argument("--no-bridge", action="store_true",
                    help="skip the bridge stages")
    ap.add_argument("--force", action="store_true")
    args = ap.parse_args()

    worst = 0
    for seed in args.seeds.split(","):
        argv = ["monad", "--seed", seed.strip(), "--char", args.char,
                "--cache-dir", args.cache_dir,
                "--output-dir", args.output_dir]
        if not args.no_bridge:
            argv.append("--bridge")
        if args.force:
            argv.append("--force")
        print(f"== monad seed {seed.strip()} ==", flush=True)
        worst = max(worst, cli_main(argv))
    return worst


if __name__ == "__main__":
    sys.exit(main())
