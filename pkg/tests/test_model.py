import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from heilbronn.enhancements import EnhancementSet, assign_binaries
from heilbronn.errors import ExportUnsupported, InvalidParameter
from heilbronn.heuristics import BoundsH, known_configuration
from heilbronn.model import (
    BINARY,
    FormulationModel,
    build_approach1,
    build_approach2,
    build_approach3,
    core_values,
    export,
    expected_counts,
    lp_filename,
    lp_text,
    mccormick,
    point_values,
    read_lp,
)


def _independent_counts(approach, n, P=10, relaxed=True):
    """Sizes written out from the variable and row families, one by one."""
    c = math.comb(n, 3)
    coords, h, s, w = 2 * n, 1, c, n * n
    if approach == "1":
        b = c
        return dict(variables=coords + h + s + w + b, binaries=b,
                    linear_rows=2 * c + 2 * c + c, quadratic_rows=n * n)
    if approach == "2":
        u = c
        return dict(variables=coords + h + s + w + u, binaries=0,
                    linear_rows=c + c, quadratic_rows=c + n * n)
    xi, eps, phi, omega, b = n * P, n, n * P * n, n * n, c
    mc_phi = 4 * n * P * n
    mc_omega = 4 * n * n if relaxed else 0
    return dict(
        variables=coords + h + s + w + b + xi + eps + phi + omega,
        binaries=b + xi,
        linear_rows=4 * c + n + n * n + mc_phi + mc_omega + c,
        quadratic_rows=0 if relaxed else n * n,
    )


def _sizes(m: FormulationModel):
    return dict(variables=len(m.variables), binaries=len(m.binaries),
                linear_rows=len(m.linear_rows), quadratic_rows=len(m.quadratic_rows))


@pytest.mark.parametrize("n", range(3, 11))
def test_counts_match_closed_forms(n):
    cases = [("1", build_approach1(n)), ("2", build_approach2(n)),
             ("3", build_approach3(n, P=10, relaxed=True))]
    for a, m in cases:
        assert _sizes(m) == _independent_counts(a, n) == expected_counts(a, n)
    exact = build_approach3(n, P=4, relaxed=False)
    assert _sizes(exact) == _independent_counts("3", n, P=4, relaxed=False)


def test_five_point_approach1_size():
    m = build_approach1(5)
    assert len(m.variables) == 56
    assert len(m.binaries) == 10
    assert m.count("w") == 25


def test_three_point_single_binary():
    m = build_approach1(3)
    assert m.binaries == ["b_1_2_3"]
    text = lp_text(m)
    assert text.split("Binaries\n")[1].split("End")[0].split() == ["b_1_2_3"]


def test_approach2_four_points():
    m = build_approach2(4)
    assert m.count("U") == 4
    quad_names = [r.name for r in m.quadratic_rows]
    assert sum(nm.startswith("usq_") for nm in quad_names) == 4
    assert sum(nm.startswith("wdef_") for nm in quad_names) == 16


def test_approach2_u_lower_bound_tracks_objective():
    k = known_configuration(6)
    b = BoundsH(6, k.computed_area(), 0.19245, k.points)
    m = build_approach2(6, b, EnhancementSet(6, b, groups={"G1"}))
    assert all(m.variables[v].lower == b.lower >= 0 for v in m.variables if v.startswith("U_"))


def test_approach3_small_additions():
    base = build_approach1(3)
    m = build_approach3(3, P=1)
    added = set(m.variables) - set(base.variables)
    assert sum(v.startswith("xi_") for v in added) == 3
    assert sum(v.startswith("phi_") for v in added) == 9
    assert sum(v.startswith("eps_") for v in added) == 3
    assert sum(v.startswith("omega_") for v in added) == 9
    with pytest.raises(InvalidParameter):
        build_approach3(3, P=0)


def test_big_m_uses_objective_upper():
    k = known_configuration(6)
    b = BoundsH(6, k.computed_area(), 0.19245, k.points)
    m = build_approach1(6, b, EnhancementSet(6, b, groups={"G1"}))
    row = next(r for r in m.rows if r.name == "pos_1_2_3")
    assert dict((v, c) for c, v in row.lin)["b_1_2_3"] == pytest.approx(-(0.19245 + 0.5))
    assert m.variables["H"].lower == b.lower and m.variables["H"].upper == 0.19245


@given(st.integers(0, 2**32 - 1), st.integers(3, 7))
def test_configurations_are_feasible_points(seed, n):
    xy = np.random.default_rng(seed).random((n, 2))
    for m in (build_approach1(n), build_approach2(n), build_approach3(n, P=6), build_approach3(n, P=6, relaxed=False)):
        viol, name = m.max_violation(point_values(m, xy))
        assert viol <= 1e-12, name


def test_full_enhanced_models_accept_published_points():
    from heilbronn.geometry import canonicalize

    for n in (6, 7, 8, 9):
        k = known_configuration(n)
        b = BoundsH(n, k.computed_area(), 0.5, k.points)
        enh = EnhancementSet(n, b)
        xy = canonicalize(k.points).as_array()
        m = build_approach1(n, b, enh)
        vals = point_values(m, xy)
        vals.update(assign_binaries(enh, xy))
        assert m.max_violation(vals)[0] <= 1e-4


def test_exact_point_maps_into_relaxation(rng):
    n, P = 5, 10
    exact, relaxed = build_approach3(n, P=P, relaxed=False), build_approach3(n, P=P)
    for _ in range(100):
        xy = rng.random((n, 2))
        vals = point_values(exact, xy)
        assert exact.max_violation(vals)[0] <= 1e-12
        assert relaxed.max_violation(vals)[0] <= 1e-12
        assert vals["H"] == core_values(xy)["H"]


def test_dyadic_expansion_reconstructs_coordinate(rng):
    for x in rng.random(1000):
        vals = core_values(np.array([[x, 0.0], [0.0, 0.0], [1.0, 1.0]]), P=10)
        rebuilt = sum(2.0 ** -(p + 1) * vals[f"xi_1_{p + 1}"] for p in range(10)) + vals["eps_1"]
        assert rebuilt == pytest.approx(x, abs=1e-15)
        assert 0.0 <= vals["eps_1"] <= 2.0**-10


# -- McCormick --------------------------------------------------------------------
def test_mccormick_unit_box_midpoint():
    lo, hi = mccormick((0, 1), (0, 1)).interval(0.5, 0.5)
    assert (lo, hi) == (0.0, 0.5)


def test_mccormick_degenerate_box_is_exact():
    env = mccormick((0.3, 0.3), (0, 1))
    lo, hi = env.interval(0.3, 0.7)
    assert lo == pytest.approx(0.21) and hi == pytest.approx(0.21)


def test_mccormick_rejects_inverted_bounds():
    with pytest.raises(InvalidParameter):
        mccormick((1, 0), (0, 1))


def test_mccormick_containment_sampled(rng):
    for _ in range(10_000):
        xl, xu = np.sort(rng.uniform(-2, 2, 2))
        yl, yu = np.sort(rng.uniform(-2, 2, 2))
        x, y = rng.uniform(xl, xu), rng.uniform(yl, yu)
        assert mccormick((xl, xu), (yl, yu)).contains(x, y, x * y, tol=1e-12)


def test_mccormick_rows_are_the_four_hull_inequalities():
    rows = mccormick((0, 2), (1, 3)).rows("x", "y", "w", "t")
    assert [r.sense for r in rows] == [">=", ">=", "<=", "<="]
    vals = {"x": 2.0, "y": 3.0, "w": 6.0}
    assert all(r.violation(vals) == 0 for r in rows)
    vals["w"] = 6.5
    assert any(r.violation(vals) > 0 for r in rows)


# -- LP export ---------------------------------------------------------------------
def _models():
    k = known_configuration(6)
    b = BoundsH(6, k.computed_area(), 0.19245, k.points)
    return [
        build_approach1(3),
        build_approach1(6, b, EnhancementSet(6, b)),
        build_approach2(4),
        build_approach3(5, P=10),
        build_approach3(4, P=3, relaxed=False),
    ]


@pytest.mark.parametrize("model", _models(), ids=["a1n3", "a1n6full", "a2n4", "a3n5", "a3n4exact"])
def test_round_trip_and_byte_stability(model, tmp_path):
    p1, p2 = tmp_path / "a.lp", tmp_path / "b.lp"
    export(model, p1)
    export(model, p2)
    assert p1.read_bytes() == p2.read_bytes()
    back = read_lp(p1.read_text())
    assert back == model
    assert lp_text(back) == p1.read_text()


def test_rebuild_is_byte_identical():
    k = known_configuration(6)
    b = BoundsH(6, k.computed_area(), 0.19245, k.points)
    assert lp_text(build_approach1(6, b, EnhancementSet(6, b))) == lp_text(build_approach1(6, b, EnhancementSet(6, b)))


def test_full_mask_binary_count():
    k = known_configuration(6)
    b = BoundsH(6, k.computed_area(), 0.19245, k.points)
    enh = EnhancementSet(6, b)
    extra = sum(1 for e in enh.constraints() for v in e.new_vars if v.kind == BINARY)
    assert len(build_approach1(6, b, enh).binaries) == math.comb(6, 3) + extra


def test_export_rejects_empty_row():
    m = build_approach1(3)
    m.add_row("bad", [], "<=", 1.0)
    with pytest.raises(ExportUnsupported):
        lp_text(m)


def test_filename_convention():
    assert lp_filename(6, 1, 7) == "heilbronn_n6_a1_enh7.lp"
    assert lp_filename(5, 3) == "heilbronn_n5_a3.lp"


def test_names_are_declared_and_unique():
    m = _models()[1]
    m.check()
    declared = set(m.variables)
    for r in m.rows:
        assert r.variables() <= declared
    assert len({r.name for r in m.rows}) == len(m.rows)
    pattern_heads = {"x", "y", "H", "S", "b", "w", "c1", "c2", "r", "u"}
    assert {v.split("_")[0] for v in declared} <= pattern_heads


def test_variable_bounds_follow_box():
    m = build_approach1(5)
    for i in range(1, 6):
        assert (m.variables[f"x_{i}"].lower, m.variables[f"x_{i}"].upper) == (0.0, 1.0)
    for t in combinations(range(1, 6), 3):
        v = m.variables["S_%d_%d_%d" % t]
        assert (v.lower, v.upper) == (-0.5, 0.5)
