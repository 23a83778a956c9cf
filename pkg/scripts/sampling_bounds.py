"""Sampling lower bounds for n = 3..10, with optional local refinement and a seed sweep."""
import argparse
import time

import numpy as np

from heilbronn.geometry import Configuration, min_triangle_area
from heilbronn.heuristics import known_configuration, refine_batch, sample_lower_bound


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=list(range(3, 11)))
    ap.add_argument("--samples", type=int, default=10**6)
    ap.add_argument("--refine-iters", type=int, default=0)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0])
    args = ap.parse_args()
    for n in args.n:
        t0 = time.perf_counter()
        draws = [sample_lower_bound(n, args.samples, s) for s in args.seeds]
        sampled = [d[0] for d in draws]
        line = f"n={n:<2} sampled best {max(sampled):.7f}"
        if args.refine_iters:
            starts = np.stack([d[1].as_array() for d in draws])
            out = refine_batch(starts, args.refine_iters, args.seeds)
            refined = [min_triangle_area(Configuration.from_xy(c)).min_abs for c in out]
            line += f"  refined best {max(refined):.7f}"
        known = known_configuration(n).computed_area()
        line += f"  best known {known:.7f}  ({time.perf_counter() - t0:.1f}s, seeds {args.seeds})"
        print(line, flush=True)


if __name__ == "__main__":
    main()
