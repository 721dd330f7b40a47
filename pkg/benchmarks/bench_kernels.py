#!/usr/bin/env python3
"""Timing comparison of the compiled counting kernels vs the numpy fallback.

The kernel lane is fixed at import time, so the script re-runs itself in two
subprocesses (one with FANOLINES_PURE=1) and prints a small table.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def _workloads():
    from fanolines.census import CensusConfig, run_census
    from fanolines.fano import clear_cache, count_lines, point_count
    from fanolines.formring import parse_form, random_form
    from fanolines.gf import field_make
    from fanolines.rng import SplitMix64

    f2, f3, f7 = field_make(2), field_make(3), field_make(7)
    appendix = parse_form(
        open(os.path.join(os.path.dirname(__file__), "..", "src", "fanolines",
                          "data", "appendix_cubic.txt")).read(), f7, nvars=5)

    def census_q2():
        run_census(CensusConfig(q=2, samples=2000, master_seed=1, threads=1))

    def census_q3():
        run_census(CensusConfig(q=3, samples=300, master_seed=1, threads=1))

    def count_q7():
        clear_cache()
        count_lines(appendix)

    def eval_q3():
        rng = SplitMix64(7)
        for _ in range(200):
            point_count(random_form(f3, 5, 3, rng))

    return [("census q=2 x2000", census_q2),
            ("census q=3 x300", census_q3),
            ("single count q=7", count_q7),
            ("point counts q=3 x200", eval_q3)]


def _child(repeat: int) -> None:
    import fanolines

    results = {"lane": "compiled" if fanolines.HAVE_SPEED else "pure"}
    for name, fn in _workloads():
        best = min(_timed(fn) for _ in range(repeat))
        results[name] = best
    json.dump(results, sys.stdout)


def _timed(fn) -> float:
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def _run_lane(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("FANOLINES_PURE", None)
    if pure:
        env["FANOLINES_PURE"] = "1"
    out = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--child", "--repeat",
         str(repeat)],
        env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.child:
        _child(args.repeat)
        return 0

    fast = _run_lane(False, args.repeat)
    slow = _run_lane(True, args.repeat)
    if fast["lane"] != "compiled":
        print("note: compiled kernels unavailable, both rows use the fallback")
    names = [k for k in fast if k != "lane"]
    width = max(len(n) for n in names)
    print(f"{'workload':<{width}}  {'compiled':>10}  {'pure':>10}  ratio")
    for n in names:
        ratio = slow[n] / fast[n] if fast[n] else float("inf")
        print(f"{n:<{width}}  {fast[n]:>9.3f}s  {slow[n]:>9.3f}s  {ratio:5.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
