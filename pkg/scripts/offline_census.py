#!/usr/bin/env python3
"""Full-size line-count surveys for the larger fields.

These runs are deliberately not part of the test suite: at 10^4 samples the
q = 8 and q = 9 surveys take hours (304k+ lines per count, extension-field
digit expansion) and q = 11 longer still.  Run them on a quiet machine and
keep the CSVs; the seed makes every run exactly reproducible.

    python scripts/offline_census.py --q 8 --out runs/q8
    python scripts/offline_census.py --q 9 --smooth-only --out runs/q9s
    python scripts/offline_census.py --q 11 --samples 2000 --out runs/q11

Writes <prefix>_stats.csv, <prefix>_hist.csv and <prefix>_report.json.
"""

import argparse
import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from fanolines.census import CensusConfig, render_decimal, run_census, write_csv


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, required=True)
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--d", type=int, default=3)
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--smooth-only", action="store_true")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--out", required=True, help="output path prefix")
    args = ap.parse_args()

    cfg = CensusConfig(q=args.q, n=args.n, d=args.d, samples=args.samples,
                       smooth_only=args.smooth_only, master_seed=args.seed,
                       threads=args.threads)
    report = run_census(cfg)
    os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
    paths = write_csv(report, args.out)
    json_path = f"{args.out}_report.json"
    with open(json_path, "w") as fh:
        fh.write(report.to_json() + "\n")
    for p in paths + [json_path]:
        print(p)
    print(f"mean={render_decimal(report.stats.mean)} "
          f"sd={render_decimal(report.stats.sd)} "
          f"min={report.stats.min} max={report.stats.max} "
          f"wall={report.wall_seconds:.0f}s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
