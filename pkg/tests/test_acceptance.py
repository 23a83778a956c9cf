"""End-to-end acceptance gate; each test records one PASS/FAIL line."""
import json
import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, H5_STAR, PUBLISHED_AREA
from heilbronn.cli import main
from heilbronn.enhancements import EnhancementSet, witness_violations, y_bound_table
from heilbronn.geometry import Configuration, canonicalize, min_triangle_area
from heilbronn.heuristics import BoundsH, known_configuration
from heilbronn.model import (
    build_approach1,
    build_approach2,
    build_approach3,
    expected_counts,
    lp_text,
    mccormick,
    point_values,
    read_lp,
)


def record(k, ok, detail):
    line = f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def cli_json(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def test_criterion_01_verification_goldens(capsys):
    t0 = time.perf_counter()
    got, bad = {}, []
    for n, want in PUBLISHED_AREA.items():
        code, out = cli_json(capsys, "verify", "--known", n, "--json")
        got[n] = json.loads(out)["min_area"]
        if code != 0 or abs(got[n] - want) > 1e-7:
            bad.append(n)
    dt = time.perf_counter() - t0
    detail = " ".join(f"n={n}:{got[n]:.9f}({got[n] - PUBLISHED_AREA[n]:+.1e})" for n in got)
    record(1, not bad and dt < 1.0, f"{detail} time={dt:.2f}s off={bad}")


@pytest.mark.parametrize("n", [3, 4])
def test_criterion_02_trivial_optima(capsys, tmp_path, n):
    js = tmp_path / "r.json"
    t0 = time.perf_counter()
    code, _ = cli_json(capsys, "certify", "--n", n, "--tol", 1e-3, "--seed", 0, "--samples", 1000,
                       "--time-limit", 60, "--json", js)
    dt = time.perf_counter() - t0
    res = json.loads(js.read_text())
    ok = code == 0 and res["status"] == "Certified" and abs(res["proven_upper"] - 0.5) <= 1e-3 and dt < 60
    record(2, ok, f"n={n} status={res['status']} ub={res['proven_upper']:.7f} time={dt:.1f}s")


def test_criterion_03_five_point_bracket(capsys, tmp_path):
    js = tmp_path / "r.json"
    code, _ = cli_json(capsys, "certify", "--n", 5, "--mask", 7, "--tol", 5e-3, "--seed", 0,
                       "--time-limit", 1800, "--json", js)
    res = json.loads(js.read_text())
    lb, ub = res["incumbent_lower"], res["proven_upper"]
    ok = lb <= H5_STAR <= ub
    record(3, ok, f"status={res['status']} bracket=[{lb:.7f}, {ub:.7f}] nodes={res['nodes_explored']}")


def test_criterion_04_six_point_sandwich(capsys, tmp_path):
    js = tmp_path / "r.json"
    code, _ = cli_json(capsys, "certify", "--n", 6, "--mask", 7, "--tol", 5e-3, "--seed", 0,
                       "--time-limit", 7200, "--json", js)
    res = json.loads(js.read_text())
    lb, ub = res["incumbent_lower"], res["proven_upper"]
    ok = lb <= 0.125 <= ub and ub - 0.125 <= 0.02 and res["status"] in ("Certified", "Bounded")
    record(4, ok, f"status={res['status']} bracket=[{lb:.7f}, {ub:.7f}] nodes={res['nodes_explored']} "
                  f"time={res['wall_time']:.0f}s")


def test_criterion_05_enhancement_witnesses():
    t0 = time.perf_counter()
    worst = {}
    for n in range(6, 10):
        k = known_configuration(n)
        enh = EnhancementSet(n, BoundsH(n, k.computed_area(), 0.5, k.points))
        worst[n] = max(witness_violations(enh, canonicalize(k.points).as_array()).values())
    dt = time.perf_counter() - t0
    ok = all(v <= 1e-4 for v in worst.values()) and dt < 5
    record(5, ok, " ".join(f"n={n}:{v:.1e}" for n, v in worst.items()) + f" time={dt:.2f}s")


def test_criterion_06_table_derivation(capsys):
    t0 = time.perf_counter()
    status = {}
    for n in (6, 7):
        code, out = cli_json(capsys, "bounds-table", "--n", n, "--derive", "--time-limit", 300)
        rows = [line.split("\t") for line in out.splitlines() if line[:1].isdigit()]
        status[n] = code == 0 and len(rows) == n and all(r[-1] == "yes" for r in rows)
    dt = time.perf_counter() - t0
    record(6, all(status.values()) and dt < 600, f"rows_match={status} time={dt:.1f}s")


def test_criterion_07_exporter_structure():
    mismatched, trips = [], 0
    for n in range(3, 11):
        for a, m in (("1", build_approach1(n)), ("2", build_approach2(n)), ("3", build_approach3(n, P=10))):
            sizes = dict(variables=len(m.variables), binaries=len(m.binaries),
                         linear_rows=len(m.linear_rows), quadratic_rows=len(m.quadratic_rows))
            if sizes != expected_counts(a, n):
                mismatched.append((n, a))
            text = lp_text(m)
            if read_lp(text) != m or lp_text(read_lp(text)) != text or lp_text(m) != text:
                mismatched.append((n, a, "round-trip"))
            trips += 1
    k = known_configuration(6)
    b = BoundsH(6, k.computed_area(), 0.19245, k.points)
    six = [lp_text(build_approach1(6, b, EnhancementSet(6, b))) for _ in range(2)]
    ok = not mismatched and six[0] == six[1]
    record(7, ok, f"models={trips} mismatches={mismatched} n6_full_bytes={len(six[0])}")


def test_criterion_08_monotonicity_and_canonical_form():
    areas = [known_configuration(n).computed_area() for n in range(6, 11)]
    mono = all(a >= b for a, b in zip(areas, areas[1:]))
    rng = np.random.default_rng(8)
    changed = 0
    for _ in range(1000):
        c = Configuration.from_xy(rng.random((int(rng.integers(3, 11)), 2)))
        if min_triangle_area(canonicalize(c)).min_abs != min_triangle_area(c).min_abs:
            changed += 1
    record(8, mono and changed == 0, f"non_increasing={mono} canonicalize_changed={changed}/1000")


def test_criterion_09_relaxation_dominance():
    rng = np.random.default_rng(9)
    n, P = 5, 10
    exact, relaxed = build_approach3(n, P=P, relaxed=False), build_approach3(n, P=P)
    worst = 0.0
    for _ in range(100):
        vals = point_values(exact, rng.random((n, 2)))
        assert exact.max_violation(vals)[0] <= 1e-12
        worst = max(worst, relaxed.max_violation(vals)[0])
    outside = 0
    for _ in range(10_000):
        xl, xu = np.sort(rng.uniform(-1, 1, 2))
        yl, yu = np.sort(rng.uniform(-1, 1, 2))
        x, y = rng.uniform(xl, xu), rng.uniform(yl, yu)
        outside += not mccormick((xl, xu), (yl, yu)).contains(x, y, x * y, tol=1e-12)
    record(9, worst <= 1e-12 and outside == 0, f"relaxed_violation={worst:.1e} mccormick_outside={outside}/10000")


def test_criterion_10_declared_substitution(capsys, tmp_path):
    code, out = cli_json(capsys, "export", "--n", 9, "--approach", 1, "--mask", 7, "--seed", 0,
                         "--samples", 1000, "--outdir", tmp_path)
    path = tmp_path / "heilbronn_n9_a1_enh7.lp"
    text = path.read_text() if path.exists() else ""
    ok = code == 0 and text.startswith("\\ heilbronn n=9") and text.rstrip().endswith("End")
    record(10, ok, f"not reproduced in-tree (external solver); n=9 full model emitted: {out.splitlines()[1] if ok else 'missing'}")
