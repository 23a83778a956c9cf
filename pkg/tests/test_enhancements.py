import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from heilbronn.certifier import Decision
from heilbronn.enhancements import (
    G1,
    G2,
    G3,
    EnhancementSet,
    StripPartition,
    assign_binaries,
    derive_y_bounds,
    edge_occupancy_constraints,
    grid_one_point_constraints,
    grid_size,
    near_boundary_nine_constraints,
    strip_capacity,
    strip_height,
    strip_two_point_constraints,
    symmetry_breaking_constraints,
    two_on_edge_constraints,
    witness_violations,
    y_bound_table,
)
from heilbronn.errors import InvalidParameter, NotApplicable
from heilbronn.geometry import Configuration, canonicalize, min_triangle_area
from heilbronn.heuristics import BoundsH, known_configuration
from heilbronn.model import BoundChange, Row, build_approach1, core_values


def _bounds(n):
    k = known_configuration(n)
    return BoundsH(n, k.computed_area(), 0.5, k.points)


def _canonical_xy(n):
    return canonicalize(known_configuration(n).points).as_array()


# -- symmetry -----------------------------------------------------------------
def test_symmetry_count_formula():
    for n in range(3, 11):
        assert len(symmetry_breaking_constraints(n)) == (n - 1) + n * (n - 1) + 2


def test_symmetry_without_pair_order():
    e = symmetry_breaking_constraints(5, pair_order=False)
    assert "xpair" not in {a.name for a in e.atoms}


def test_symmetry_holds_on_canonical_nine():
    xy = _canonical_xy(9)
    vals = core_values(xy)
    # the pair row is only implied when y_1 == y_2, which holds here
    assert max(a.violation(vals) for a in symmetry_breaking_constraints(9).atoms) <= 1e-9


def test_symmetry_accepts_sorted_corners():
    xy = np.array([(0, 0), (1, 0), (0, 1), (1, 1)], dtype=float)
    vals = core_values(xy)
    assert max(a.violation(vals) for a in symmetry_breaking_constraints(4).atoms) == 0.0


# -- boundary -------------------------------------------------------------------
def test_edge_occupancy_needs_four_points():
    with pytest.raises(NotApplicable):
        edge_occupancy_constraints(3)


def test_edge_occupancy_marks_published_eight():
    enh = EnhancementSet(8, None, groups={G2})
    vals = assign_binaries(enh, known_configuration(8).points.as_array())
    assert {i for i in range(1, 9) if vals[f"c1_{i}"]} == {1, 5}
    assert {i for i in range(1, 9) if vals[f"c2_{i}"]} == {3, 8}


def test_edge_occupancy_on_six_within_fixing_tolerance():
    xy = _canonical_xy(6)
    assert abs(xy[0, 1]) <= 1e-5
    enh = EnhancementSet(6, None, groups={G2})
    assert max(witness_violations(enh, xy).values()) <= 1e-4


def test_two_on_edge():
    xy = _canonical_xy(7)
    assert xy[0, 1] == 0.0 and xy[1, 1] == 0.0
    assert len(two_on_edge_constraints(8)) == 2 + 2 * 8
    with pytest.raises(NotApplicable):
        two_on_edge_constraints(9)


def test_near_boundary_nine():
    enh = EnhancementSet(9, _bounds(9), groups={G2})
    assert max(witness_violations(enh, _canonical_xy(9)).values()) <= 1e-4
    with pytest.raises(InvalidParameter):
        near_boundary_nine_constraints(0.0)
    with pytest.raises(InvalidParameter):
        near_boundary_nine_constraints(0.1, lower=0.05)


def test_three_points_near_bottom_cannot_reach_lower_bound():
    eps, lower = 1e-2, known_configuration(9).computed_area()
    xy = _canonical_xy(9).copy()
    xy[:3, 1] = [0.0, eps / 4, eps / 2 - 1e-9]
    xy = xy[np.argsort(xy[:, 1], kind="stable")]
    # any triangle inside a strip of height eps/2 has area <= eps/4
    assert min_triangle_area(Configuration.from_xy(xy)).min_abs <= eps / 4 < lower
    enh = EnhancementSet(9, BoundsH(9, lower, 0.5, None), groups={G1, G2})
    model = build_approach1(9, enh.bounds, enh)
    vals = core_values(xy, H=lower)
    vals.update(assign_binaries(enh, xy))
    assert model.max_violation(vals)[0] > 1e-3


# -- packing --------------------------------------------------------------------
def test_strip_partition_for_one_eighth():
    s = strip_height(0.125)
    part = StripPartition.of_height(s)
    assert s == pytest.approx(0.249999)
    assert part.m == 5


@given(st.floats(1e-3, 0.5))
def test_strip_partition_invariants(lower):
    part = StripPartition.of_height(strip_height(lower))
    assert part.intervals[0][0] == 0.0 and part.intervals[-1][1] == 1.0
    for (a, b), (c, _) in zip(part.intervals, part.intervals[1:]):
        assert b == c
    assert all(b - a <= part.height + 1e-15 for a, b in part.intervals)
    assert (part.m - 1) * part.height < 1.0 <= part.m * part.height


def test_strip_height_too_small():
    with pytest.raises(InvalidParameter):
        strip_two_point_constraints(6, 4e-7)


def test_published_nine_fills_each_strip_at_most_twice():
    s = strip_height(0.0548756)
    part = StripPartition.of_height(s)
    assert part.m == 10
    counts = np.bincount([part.index_of(y) for y in _canonical_xy(9)[:, 1]], minlength=part.m)
    assert counts.max() <= 2


@given(st.floats(2e-6, 0.5))
def test_grid_side_below_lower(lower):
    m = grid_size(lower)
    assert m >= 1 and 1.0 / m < lower
    # smallest such m
    assert m == 1 or 1.0 / (m - 1) >= lower - 1e-6


@pytest.mark.parametrize("lower, m", [(0.125, 9), (0.0548765, 19)])
def test_grid_size_values(lower, m):
    assert grid_size(lower) == m


def test_two_points_in_one_cell_break_capacity():
    lower = 0.0548
    m, e = grid_one_point_constraints(2, lower)
    side = 1.0 / m
    xy = np.array([[0.2 * side, 0.3 * side], [0.7 * side, 0.6 * side]])
    assert math.dist(xy[0], xy[1]) < lower * math.sqrt(2)
    vals = core_values(np.vstack([xy, [[0.9, 0.9]]]))
    for i in range(2):
        for p in range(m):
            for q in range(m):
                vals[f"u_{p + 1}_{q + 1}_{i + 1}"] = float(p == 0 and q == 0)
    cap = next(a for a in e.atoms if a.name == "grid_cap_1_1")
    assert cap.violation(vals) == 1.0


@pytest.mark.parametrize("n", [6, 7, 8, 9])
def test_enhanced_witness_suite(n):
    enh = EnhancementSet(n, _bounds(n), groups={G1, G2, G3})
    viol = witness_violations(enh, _canonical_xy(n))
    assert max(viol.values()) <= 1e-4, viol


def test_enhancement_set_validation():
    with pytest.raises(InvalidParameter):
        EnhancementSet(6, None, groups={G3})
    with pytest.raises(InvalidParameter):
        EnhancementSet(6, None, groups={"G4"})
    with pytest.raises(NotApplicable):
        EnhancementSet(9, None, groups={G2}, assume_conjecture_n10=True)
    e = EnhancementSet(10, _bounds(10), assume_conjecture_n10=True)
    assert e.non_certifying and e.mask == 7


def test_y_bound_table_entries():
    assert y_bound_table(7)[2] == (F(1, 6), F(2, 3))
    assert y_bound_table(9)[1] == (F(0), F(1, 100))
    assert y_bound_table(6)[0] == (F(0), F(0))
    with pytest.raises(NotApplicable):
        y_bound_table(5)


@pytest.mark.parametrize("n", range(6, 11))
def test_y_bound_table_shape(n):
    t = y_bound_table(n)
    assert len(t) == n
    assert all(0 <= a <= b <= 1 for a, b in t)
    assert all(t[i][0] <= t[i + 1][0] and t[i][1] <= t[i + 1][1] for i in range(n - 1))


@pytest.mark.parametrize("n", range(6, 11))
def test_published_configurations_respect_y_table(n):
    ys = _canonical_xy(n)[:, 1]
    for y, (a, b) in zip(ys, y_bound_table(n)):
        assert float(a) - 1e-4 <= y <= float(b) + 1e-4


# -- strip capacity ---------------------------------------------------------------
def test_thin_strip_holds_two():
    assert strip_capacity(100, 0.4).capacity == 2


def test_capacity_with_stub_certifier():
    def fits(m, target, time_limit):
        return (Decision.FEASIBLE if m <= 4 else Decision.INFEASIBLE), None

    res = strip_capacity(3, 0.1, certifier=fits)
    assert res.capacity == 4 and not res.inconclusive


def test_inconclusive_capacity_is_not_used():
    def unsure(m, target, time_limit):
        return Decision.INCONCLUSIVE, None

    d = derive_y_bounds(6, 0.125, certifier=unsure, max_kappa=4)
    assert d.inconclusive
    assert d.bounds[2] == (F(0), F(1))


def test_five_strips_hold_two_for_six_points():
    assert strip_capacity(5, known_configuration(6).computed_area()).capacity == 2


@pytest.mark.parametrize("n", [6, 7])
def test_derived_rows_match_table(n):
    d = derive_y_bounds(n, known_configuration(n).computed_area())
    assert not d.inconclusive
    assert d.bounds == y_bound_table(n)


def test_atoms_are_rows_or_bound_changes():
    enh = EnhancementSet(8, _bounds(8))
    for e in enh.constraints():
        assert all(isinstance(a, (Row, BoundChange)) for a in e.atoms)
