"""Write LP files for every approach and enhancement mask, with a size summary."""
import argparse
from pathlib import Path

from heilbronn.enhancements import GROUP_BITS, EnhancementSet
from heilbronn.heuristics import bounds_for
from heilbronn.model import build_approach1, build_approach2, build_approach3, export, lp_filename


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=list(range(3, 11)))
    ap.add_argument("--masks", type=int, nargs="+", default=[0, 7])
    ap.add_argument("--P", type=int, default=10)
    ap.add_argument("--samples", type=int, default=10**5)
    ap.add_argument("--seed", type=int, required=True)
    ap.add_argument("--outdir", default="models")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    print("file,variables,binaries,rows")
    for n in args.n:
        bounds = bounds_for(n, samples=args.samples, seed=args.seed)
        for mask in args.masks:
            groups = {g for g, bit in GROUP_BITS.items() if mask & bit}
            enh = EnhancementSet(n, bounds, groups=groups) if groups else None
            models = {
                1: build_approach1(n, bounds, enh),
                2: build_approach2(n, bounds, enh),
                3: build_approach3(n, bounds, P=args.P, enh=enh),
            }
            for a, m in models.items():
                path = out / lp_filename(n, a, mask or None)
                export(m, path)
                print(f"{path.name},{len(m.variables)},{len(m.binaries)},{len(m.rows)}")


if __name__ == "__main__":
    main()
