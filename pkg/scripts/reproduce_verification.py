"""Recompute the minimum triangle area of the best-known placements (n = 3..10).

Prints the computed area next to the published one and the difference,
once for the embedded full-precision coordinates and once for the same
points rounded to 7 decimals.
"""
import argparse
import time

import numpy as np

from heilbronn.geometry import Configuration, min_triangle_area
from heilbronn.heuristics import known_configuration


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tol", type=float, default=1e-7)
    args = ap.parse_args()
    t0 = time.perf_counter()
    print("n  published   computed     diff       rounded7     diff       within_tol")
    for n in range(3, 11):
        k = known_configuration(n)
        full = k.computed_area()
        r7 = min_triangle_area(Configuration.from_xy(np.round(k.points.as_array(), 7))).min_abs
        ok = abs(full - k.published_area) <= args.tol
        print(f"{n:<2} {k.published_area:.7f}  {full:.9f}  {full - k.published_area:+.1e}  "
              f"{r7:.9f}  {r7 - k.published_area:+.1e}  {ok}")
    print(f"elapsed {time.perf_counter() - t0:.3f}s")


if __name__ == "__main__":
    main()
