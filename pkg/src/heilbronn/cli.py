"""Command-line entry point: ``heilbronn <command> ...``.

Exit codes: 0 success, 1 bounded or inconclusive certification, 2 usage or
input error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .errors import HeilbronnError, NotApplicable
from .fileio import ConfigurationFormatError, read_configuration, write_configuration
from .geometry import Configuration, min_triangle_area

EXIT_OK, EXIT_BOUNDED, EXIT_USAGE = 0, 1, 2


@dataclass
class RunRecord:
    command: str
    parameters: dict
    seed: int | None
    outputs: dict
    wall_time: float
    tool_version: str = __version__
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))

    def write(self, path) -> Path:
        path = Path(path)
        path.write_text(json.dumps(asdict(self), indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return path


class UsageError(Exception):
    pass


def _groups(mask: int) -> set[str]:
    if not 0 <= mask <= 7:
        raise UsageError(f"enhancement mask must be in 0..7, got {mask}")
    from .enhancements import GROUP_BITS

    return {g for g, bit in GROUP_BITS.items() if mask & bit}


def _enhancements(n: int, mask: int, bounds, conjecture: bool = False):
    from .enhancements import EnhancementSet

    groups = _groups(mask)
    if not groups:
        return None
    return EnhancementSet(n, bounds, groups=groups, assume_conjecture_n10=conjecture)


# -- commands -----------------------------------------------------------------
def _need_seed(args):
    if args.seed is None:
        raise UsageError("this command samples random configurations; pass --seed")
    return args.seed


def cmd_verify(args) -> int:
    if (args.input is None) == (args.known is None):
        raise UsageError("give either a configuration file or --known N")
    if args.known is not None:
        from .heuristics import known_configuration

        conf = known_configuration(args.known).points
    else:
        conf, _ = read_configuration(args.input)
    ta = min_triangle_area(conf)
    triple = [i + 1 for i in ta.argmin]
    if args.json:
        print(json.dumps({"n": conf.n, "min_area": ta.min_abs, "argmin": triple}))
    else:
        print(f"min_area {ta.min_abs:.7f}")
        print("argmin " + " ".join(map(str, triple)))
    return EXIT_OK


def cmd_heuristic(args) -> int:
    from .heuristics import local_refine, sample_lower_bound

    t0 = time.perf_counter()
    lower, wit = sample_lower_bound(args.n, args.samples, args.seed, threads=args.threads)
    if args.refine_iters > 0:
        wit = local_refine(wit, args.refine_iters, seed=args.seed)
        lower = min_triangle_area(wit).min_abs
    out = Path(args.out)
    write_configuration(out, wit, {"source": "heuristic", "seed": args.seed, "min_area": lower})
    rec = RunRecord(
        "heuristic",
        {"n": args.n, "samples": args.samples, "refine_iters": args.refine_iters},
        args.seed,
        {"bound": lower, "witness": str(out)},
        time.perf_counter() - t0,
    )
    rec.write(args.record or out.with_suffix(".run.json"))
    print(f"bound {lower!r}")
    print(f"bound_7dp {lower:.7f}")
    print(f"witness {out}")
    return EXIT_OK


def cmd_export(args) -> int:
    from .heuristics import bounds_for
    from .model import build_approach1, build_approach2, build_approach3, export, lp_filename

    if args.approach == 3 and args.P is None:
        raise UsageError("approach 3 needs --P")
    if args.approach != 3 and args.P is not None:
        raise UsageError("--P only applies to approach 3")
    if args.approach != 3 and args.exact:
        raise UsageError("--exact only applies to approach 3")
    t0 = time.perf_counter()
    bounds = None
    if args.bounds == "default":
        bounds = bounds_for(args.n, samples=args.samples, seed=_need_seed(args))
    enh = _enhancements(args.n, args.mask, bounds, args.assume_conjecture_n10)
    if enh is not None and bounds is None and enh.groups & {"G1", "G3"}:
        raise UsageError("groups G1 and G3 need --bounds default")
    if args.approach == 1:
        model = build_approach1(args.n, bounds, enh, strengthen=not args.no_strengthen)
    elif args.approach == 2:
        model = build_approach2(args.n, bounds, enh)
    else:
        model = build_approach3(args.n, bounds, P=args.P, relaxed=not args.exact, enh=enh,
                                strengthen=not args.no_strengthen)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / lp_filename(args.n, args.approach, args.mask or None)
    export(model, path)
    rec = RunRecord(
        "export",
        {"n": args.n, "approach": args.approach, "P": args.P, "mask": args.mask, "bounds": args.bounds,
         "samples": args.samples},
        args.seed,
        {"path": str(path), "variables": len(model.variables), "binaries": len(model.binaries),
         "rows": len(model.rows), "lower": None if bounds is None else bounds.lower,
         "upper": None if bounds is None else bounds.upper},
        time.perf_counter() - t0,
    )
    if args.record:
        rec.write(args.record)
    print(path)
    print(f"variables {len(model.variables)} binaries {len(model.binaries)} rows {len(model.rows)}")
    if model.metadata.get("non_certifying"):
        print("warning: model uses unproven structural assumptions (non-certifying)")
    return EXIT_OK


def cmd_certify(args) -> int:
    from .certifier import CSV_HEADER, Status, certify
    from .heuristics import bounds_for

    t0 = time.perf_counter()
    _groups(args.mask)
    bounds = bounds_for(args.n, samples=args.samples, seed=_need_seed(args))
    enh = None
    if args.mask:
        groups = _groups(args.mask)
        if args.n == 3:
            groups -= {"G2", "G3"}
        from .enhancements import EnhancementSet

        enh = EnhancementSet(args.n, bounds, groups=groups) if groups else None
    inc = bounds.lower_witness if bounds is not None else None
    res = certify(args.n, enh, inc, tol=args.tol, max_nodes=args.max_nodes, time_limit=args.time_limit,
                  threads=args.threads)
    print(f"status {res.status.value}")
    print(f"lower {res.incumbent_lower:.7f}")
    print(f"upper {res.proven_upper:.7f}")
    print(f"nodes {res.nodes_explored} seconds {res.wall_time:.2f}")
    if args.json:
        Path(args.json).write_text(res.to_json() + "\n", encoding="utf-8")
    if args.csv:
        p = Path(args.csv)
        new = not p.exists() or p.stat().st_size == 0
        with p.open("a", encoding="utf-8") as fh:
            if new:
                fh.write(CSV_HEADER)
            fh.write(res.csv_row())
    if args.record:
        RunRecord("certify", {"n": args.n, "mask": args.mask, "tol": args.tol, "time_limit": args.time_limit,
                              "max_nodes": args.max_nodes}, args.seed, res.to_dict(),
                  time.perf_counter() - t0).write(args.record)
    return EXIT_OK if res.status == Status.CERTIFIED else EXIT_BOUNDED


def cmd_bounds_table(args) -> int:
    from .enhancements import derive_y_bounds, y_bound_table
    from .heuristics import known_configuration

    try:
        table = y_bound_table(args.n)
    except NotApplicable as exc:
        print(f"not applicable: {exc}")
        return EXIT_OK
    derived = None
    if args.derive:
        h = known_configuration(args.n).computed_area()
        derived = derive_y_bounds(args.n, h, time_limit=args.time_limit)
    print("i\tembedded_lo\tembedded_hi" + ("\tderived_lo\tderived_hi\tmatch" if derived else ""))
    for i, (lo, hi) in enumerate(table):
        line = f"{i + 1}\t{lo}\t{hi}"
        if derived:
            dlo, dhi = derived.bounds[i]
            line += f"\t{dlo}\t{dhi}\t{'yes' if (dlo, dhi) == (lo, hi) else 'no'}"
        print(line)
    if derived:
        caps = " ".join(f"m_{k}={c.capacity}{'?' if c.inconclusive else ''}" for k, c in derived.capacities.items())
        print(f"capacities {caps}")
        if derived.inconclusive:
            print("some capacities are inconclusive within the time limit")
            return EXIT_BOUNDED
    return EXIT_OK


def render_svg(conf: Configuration, size: int = 400, margin: int = 20) -> str:
    """Unit square, every triangle in a light stroke, the smallest one filled."""
    from itertools import combinations

    ta = min_triangle_area(conf)
    span = size - 2 * margin

    def px(p):
        return f"{margin + p.x * span:.3f},{margin + (1.0 - p.y) * span:.3f}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect x="{margin}" y="{margin}" width="{span}" height="{span}" fill="none" stroke="black" stroke-width="1"/>',
    ]
    for t in combinations(range(conf.n), 3):
        pts = " ".join(px(conf.points[i]) for i in t)
        out.append(f'<polygon points="{pts}" fill="none" stroke="#c8c8c8" stroke-width="0.5"/>')
    pts = " ".join(px(conf.points[i]) for i in ta.argmin)
    out.append(f'<polygon points="{pts}" fill="#e06666" fill-opacity="0.6" stroke="#990000" stroke-width="1"/>')
    for i, p in enumerate(conf.points):
        cx, cy = px(p).split(",")
        out.append(f'<circle cx="{cx}" cy="{cy}" r="4" fill="black"><title>P{i + 1}</title></circle>')
    out.append(f"<!-- min_area {ta.min_abs:.7f} argmin {' '.join(str(i + 1) for i in ta.argmin)} -->")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_plot(args) -> int:
    conf, _ = read_configuration(args.input)
    svg = render_svg(conf)
    try:
        Path(args.out).write_text(svg, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc}") from exc
    print(args.out)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heilbronn", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="recompute the minimum triangle area of a configuration file")
    v.add_argument("input", nargs="?")
    v.add_argument("--known", type=int, metavar="N", help="use the embedded best-known configuration for N points")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    h = sub.add_parser("heuristic", help="sampling (and optional refinement) lower bound")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--samples", type=int, default=10**6)
    h.add_argument("--refine-iters", type=int, default=0)
    h.add_argument("--seed", type=int, required=True)
    h.add_argument("--threads", type=int, default=1)
    h.add_argument("--out", required=True)
    h.add_argument("--record")
    h.set_defaults(func=cmd_heuristic)

    e = sub.add_parser("export", help="write a formulation as an LP file")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--approach", type=int, choices=(1, 2, 3), required=True)
    e.add_argument("--P", type=int)
    e.add_argument("--exact", action="store_true", help="approach 3 without the McCormick relaxation")
    e.add_argument("--mask", type=int, default=0, help="enhancement bits: 1=G1, 2=G2, 4=G3")
    e.add_argument("--bounds", choices=("default", "trivial"), default="default")
    e.add_argument("--samples", type=int, default=10**6)
    e.add_argument("--seed", type=int)
    e.add_argument("--no-strengthen", action="store_true", help="drop the optional sign-strengthening rows")
    e.add_argument("--assume-conjecture-n10", action="store_true")
    e.add_argument("--outdir", default=".")
    e.add_argument("--record")
    e.set_defaults(func=cmd_export)

    c = sub.add_parser("certify", help="interval branch-and-bound upper bound")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--mask", type=int, default=7)
    c.add_argument("--tol", type=float, default=1e-4)
    c.add_argument("--time-limit", type=float, default=3600.0)
    c.add_argument("--max-nodes", type=int)
    c.add_argument("--threads", type=int, default=1)
    c.add_argument("--samples", type=int, default=10**4)
    c.add_argument("--seed", type=int)
    c.add_argument("--json")
    c.add_argument("--csv")
    c.add_argument("--record")
    c.set_defaults(func=cmd_certify)

    b = sub.add_parser("bounds-table", help="per-index y-bounds (embedded and derived)")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--derive", action="store_true")
    b.add_argument("--time-limit", type=float, default=300.0)
    b.set_defaults(func=cmd_bounds_table)

    pl = sub.add_parser("plot", help="SVG drawing with the smallest triangle highlighted")
    pl.add_argument("input")
    pl.add_argument("--out", required=True)
    pl.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ConfigurationFormatError, HeilbronnError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
