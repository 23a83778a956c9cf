"""Run the interval certifier on small instances and append results to a CSV."""
import argparse
from pathlib import Path

from heilbronn.certifier import CSV_HEADER, certify
from heilbronn.enhancements import EnhancementSet
from heilbronn.heuristics import bounds_for

DEFAULT_TOL = {3: 1e-3, 4: 1e-3, 5: 1e-4, 6: 5e-3}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[3, 4, 5, 6])
    ap.add_argument("--tol", type=float, help="override the per-n default tolerance")
    ap.add_argument("--time-limit", type=float, default=3600.0)
    ap.add_argument("--seed", type=int, required=True)
    ap.add_argument("--csv", default="certify_small.csv")
    args = ap.parse_args()
    path = Path(args.csv)
    if not path.exists() or path.stat().st_size == 0:
        path.write_text(CSV_HEADER)
    for n in args.n:
        tol = args.tol or DEFAULT_TOL.get(n, 5e-3)
        b = bounds_for(n, samples=10**4, seed=args.seed)
        enh = EnhancementSet(n, b, groups={"G1"} if n == 3 else {"G1", "G2", "G3"})
        res = certify(n, enh, b.lower_witness, tol=tol, time_limit=args.time_limit)
        with path.open("a") as fh:
            fh.write(res.csv_row())
        print(f"n={n} tol={tol:g} {res.status.value} [{res.incumbent_lower:.7f}, {res.proven_upper:.7f}] "
              f"nodes={res.nodes_explored} {res.wall_time:.1f}s")


if __name__ == "__main__":
    main()
