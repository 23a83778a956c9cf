"""Pass rate of local refinement from random five-point starts.

Each of 100 seeds draws a uniform start and runs 10^5 refinement
iterations; a run passes when it reaches 95% of sqrt(3)/9.
"""
import argparse
import math
import time

import numpy as np

from heilbronn.geometry import Configuration, min_triangle_area
from heilbronn.heuristics import refine_batch


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--seeds", type=int, default=100)
    ap.add_argument("--iterations", type=int, default=100_000)
    ap.add_argument("--fraction", type=float, default=0.95)
    args = ap.parse_args()
    target = args.fraction * math.sqrt(3) / 9
    seeds = list(range(args.seeds))
    starts = np.stack([np.random.default_rng(s).random((args.n, 2)) for s in seeds])
    t0 = time.perf_counter()
    out = refine_batch(starts, args.iterations, seeds)
    vals = [min_triangle_area(Configuration.from_xy(c)).min_abs for c in out]
    passed = sum(v >= target for v in vals)
    print(f"passed {passed}/{len(seeds)} (target {target:.7f}) in {time.perf_counter() - t0:.1f}s")
    print(f"min {min(vals):.7f} median {float(np.median(vals)):.7f} max {max(vals):.7f}")


if __name__ == "__main__":
    main()
