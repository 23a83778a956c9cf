"""Derive per-index y-bounds from strip capacities and compare with the embedded table."""
import argparse
import time

from heilbronn.enhancements import derive_y_bounds, y_bound_table
from heilbronn.heuristics import known_configuration


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[6, 7, 8, 9, 10])
    ap.add_argument("--time-limit", type=float, default=300.0, help="per capacity decision")
    args = ap.parse_args()
    for n in args.n:
        h = known_configuration(n).computed_area()
        t0 = time.perf_counter()
        d = derive_y_bounds(n, h, time_limit=args.time_limit)
        dt = time.perf_counter() - t0
        table = y_bound_table(n)
        caps = ", ".join(f"m_{k}={c.capacity}{'?' if c.inconclusive else ''}" for k, c in d.capacities.items())
        print(f"n={n} h={h:.7f} time={dt:.1f}s inconclusive={d.inconclusive}")
        print(f"  capacities: {caps}")
        for i, ((lo, hi), (elo, ehi)) in enumerate(zip(d.bounds, table)):
            flag = "" if (lo, hi) == (elo, ehi) else "  <- differs"
            print(f"  y_{i + 1}: derived [{lo}, {hi}]  embedded [{elo}, {ehi}]{flag}")


if __name__ == "__main__":
    main()
