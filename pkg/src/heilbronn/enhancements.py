"""Valid-inequality families that tighten the formulations.

Constraints are produced as lists of atoms (:class:`~heilbronn.model.Row`
or :class:`~heilbronn.model.BoundChange`) grouped into three families:

``G1``  objective bounds and symmetry breaking (y-order, w-chains, x_1 <= 1/2)
``G2``  boundary occupancy (points on the edges of the square)
``G3``  packing: at most two points per horizontal strip, at most one point
        per grid cell, and per-index y-bounds derived from strip capacities
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction as F
from typing import Callable

import numpy as np

from .errors import InvalidParameter, NotApplicable
from .model import (
    BINARY,
    BoundChange,
    Enhancement,
    Row,
    Var,
    W,
    X,
    Y,
    fix,
)

G1, G2, G3 = "G1", "G2", "G3"
ALL_GROUPS = frozenset({G1, G2, G3})
GROUP_BITS = {G1: 1, G2: 2, G3: 4}

STRIP_MARGIN = 1e-6
GRID_MARGIN = 1e-6
FIX_TOL = 1e-4

# Per-index y-intervals for n = 6..10 (index i = 1..n).
_Y_TABLE: dict[int, list[tuple[F, F]]] = {
    6: [(F(0), F(0)), (F(0), F(1, 2)), (F(1, 5), F(4, 5)), (F(1, 5), F(4, 5)), (F(1, 2), F(1)), (F(1), F(1))],
    7: [
        (F(0), F(0)), (F(0), F(1, 2)), (F(1, 6), F(2, 3)), (F(1, 6), F(5, 6)),
        (F(1, 3), F(5, 6)), (F(1, 2), F(1)), (F(1), F(1)),
    ],
    8: [
        (F(0), F(0)), (F(0), F(1, 2)), (F(1, 7), F(1, 2)), (F(1, 7), F(2, 3)),
        (F(1, 3), F(6, 7)), (F(1, 2), F(6, 7)), (F(1, 2), F(1)), (F(1), F(1)),
    ],
    9: [
        (F(0), F(0)), (F(0), F(1, 100)), (F(1, 10), F(1, 2)), (F(1, 10), F(2, 3)),
        (F(1, 4), F(3, 4)), (F(1, 3), F(9, 10)), (F(1, 2), F(9, 10)), (F(99, 100), F(1)), (F(1), F(1)),
    ],
    10: [
        (F(0), F(0)), (F(0), F(1, 2)), (F(1, 11), F(1, 2)), (F(1, 11), F(1, 2)), (F(1, 5), F(2, 3)),
        (F(1, 3), F(4, 5)), (F(1, 2), F(10, 11)), (F(1, 2), F(10, 11)), (F(1, 2), F(1)), (F(1), F(1)),
    ],
}


def y_bound_table(n: int) -> list[tuple[F, F]]:
    """Embedded per-index y-intervals as exact fractions, index 0 = point 1."""
    if n not in _Y_TABLE:
        raise NotApplicable(f"y-bound table covers n = 6..10, got {n}")
    return list(_Y_TABLE[n])


@dataclass(frozen=True)
class StripPartition:
    """Horizontal strips [L_p, U_p] of height at most ``height`` covering [0, 1]."""

    height: float
    intervals: tuple[tuple[float, float], ...]

    @property
    def m(self) -> int:
        return len(self.intervals)

    @classmethod
    def of_height(cls, s: float) -> "StripPartition":
        if not s > 0:
            raise InvalidParameter(f"strip height must be positive, got {s}")
        m = math.ceil(1.0 / s)
        while (m - 1) * s >= 1.0:
            m -= 1
        while m * s < 1.0:
            m += 1
        iv = tuple(((p * s), min((p + 1) * s, 1.0) if p < m - 1 else 1.0) for p in range(m))
        return cls(s, iv)

    def index_of(self, y: float) -> int:
        return min(int(y / self.height), self.m - 1)


def strip_height(lower: float) -> float:
    s = 2.0 * lower - STRIP_MARGIN
    if not s > 0:
        raise InvalidParameter(f"lower bound {lower} gives non-positive strip height {s}")
    return s


def grid_size(lower: float) -> int:
    """Cells per side so that the cell side 1/m is strictly below lower - 1e-6."""
    if not lower > GRID_MARGIN:
        raise InvalidParameter(f"lower bound {lower} too small for the grid family")
    m = math.floor(1.0 / (lower - GRID_MARGIN)) + 1
    if m < 1:
        raise InvalidParameter(f"grid size {m} < 1")
    return m


# -- generators -------------------------------------------------------------
def symmetry_breaking_constraints(n: int, pair_order: bool = True) -> Enhancement:
    """y-order chain, w-chains per row, x_1 <= 1/2 and (optionally) x_1 <= x_2.

    ``x_1 <= x_2`` only follows from relabelling when y_1 = y_2; set
    ``pair_order=False`` to leave it out.
    """
    if n < 3:
        raise InvalidParameter("n must be >= 3")
    e = Enhancement(G1, "symmetry")
    for i in range(n - 1):
        e.atoms.append(Row(f"yord_{i + 1}", ((1.0, Y(i)), (-1.0, Y(i + 1))), "<=", 0.0))
    for i in range(n):
        for j in range(n - 1):
            e.atoms.append(Row(f"word_{i + 1}_{j + 1}", ((1.0, W(i, j)), (-1.0, W(i, j + 1))), "<=", 0.0))
    if pair_order:
        e.atoms.append(Row("xpair", ((1.0, X(0)), (-1.0, X(1))), "<=", 0.0))
    e.atoms.append(BoundChange(X(0), upper=0.5))
    return e


def _edge_binaries(e: Enhancement, n: int, count: tuple[int, int], slack: float) -> None:
    lo, hi = count
    c1 = [f"c1_{i + 1}" for i in range(n)]
    c2 = [f"c2_{i + 1}" for i in range(n)]
    e.new_vars.extend(Var(v, BINARY, 0, 1) for v in c1 + c2)
    ones1 = tuple((1.0, v) for v in c1)
    ones2 = tuple((1.0, v) for v in c2)
    if lo == hi:
        e.atoms.append(Row("left_count", ones1, "=", float(lo)))
    else:
        e.atoms.append(Row("left_min", ones1, ">=", float(lo)))
        e.atoms.append(Row("left_max", ones1, "<=", float(hi)))
    # x_i <= 1 + slack - c1_i
    for i in range(n):
        e.atoms.append(Row(f"left_{i + 1}", ((1.0, X(i)), (1.0, c1[i])), "<=", 1.0 + slack))
    if lo == hi:
        e.atoms.append(Row("right_count", ones2, "=", float(lo)))
    else:
        e.atoms.append(Row("right_min", ones2, ">=", float(lo)))
        e.atoms.append(Row("right_max", ones2, "<=", float(hi)))
    # x_i >= c2_i - slack
    for i in range(n):
        e.atoms.append(Row(f"right_{i + 1}", ((1.0, X(i)), (-1.0, c2[i])), ">=", -slack))


def _wfix_bottom_top(e: Enhancement, n: int, bottom: list[int], top: list[int]) -> None:
    for j in bottom:
        for i in range(n):
            e.atoms.append(fix(W(i, j), 0.0))
    for j in top:
        for i in range(n):
            e.atoms.append(Row(f"wtop_{i + 1}_{j + 1}", ((1.0, W(i, j)), (-1.0, X(i))), "=", 0.0))


def edge_occupancy_constraints(n: int) -> Enhancement:
    """Bottom and top edges occupied (y_1 = 0, y_n = 1); one or two points on x = 0 and x = 1."""
    if n < 4:
        raise NotApplicable("edge occupancy needs n >= 4")
    e = Enhancement(G2, "edge_occupancy")
    e.atoms += [fix(Y(0), 0.0), fix(Y(n - 1), 1.0)]
    _wfix_bottom_top(e, n, [0], [n - 1])
    _edge_binaries(e, n, (1, 2), 0.0)
    return e


def two_on_edge_constraints(n: int) -> Enhancement:
    """Two points on the bottom edge: y_1 = y_2 = 0 and the matching w fixings."""
    if n not in (7, 8):
        raise NotApplicable(f"two-on-edge holds for n in {{7, 8}}, got {n}")
    e = Enhancement(G2, "two_on_edge")
    e.atoms += [fix(Y(0), 0.0), fix(Y(1), 0.0)]
    _wfix_bottom_top(e, n, [0, 1], [])
    return e


def near_boundary_nine_constraints(epsilon: float = 1e-2, lower: float | None = None, n: int = 9) -> Enhancement:
    """Nine-point near-boundary pattern: two points within epsilon of every edge."""
    if not epsilon > 0:
        raise InvalidParameter(f"epsilon must be positive, got {epsilon}")
    if lower is not None and not epsilon < lower:
        raise InvalidParameter(f"epsilon {epsilon} must be below the lower bound {lower}")
    if n != 9:
        raise NotApplicable(f"near-boundary pattern is stated for n = 9, got {n}")
    e = Enhancement(G2, "near_boundary_nine")
    e.atoms += [
        fix(Y(0), 0.0),
        BoundChange(Y(1), upper=epsilon),
        BoundChange(Y(7), lower=1.0 - epsilon),
        fix(Y(8), 1.0),
    ]
    _edge_binaries(e, n, (2, 2), epsilon)
    return e


def conjecture_ten_constraints(n: int = 10) -> Enhancement:
    """Unproven ten-point structure: two points exactly on every edge and y_5 <= 1/2."""
    if n != 10:
        raise NotApplicable("the conjectured pattern is for n = 10")
    e = Enhancement(G2, "conjecture_ten")
    e.atoms += [fix(Y(0), 0.0), fix(Y(1), 0.0), fix(Y(8), 1.0), fix(Y(9), 1.0)]
    _wfix_bottom_top(e, n, [0, 1], [8, 9])
    _edge_binaries(e, n, (2, 2), 0.0)
    e.atoms.append(BoundChange(Y(4), upper=0.5))
    return e


def strip_two_point_constraints(n: int, lower: float) -> tuple[StripPartition, Enhancement]:
    """At most two points in each horizontal strip of height 2*lower - 1e-6."""
    part = StripPartition.of_height(strip_height(lower))
    e = Enhancement(G3, "strips")
    r = [[f"r_{p + 1}_{i + 1}" for i in range(n)] for p in range(part.m)]
    e.new_vars.extend(Var(v, BINARY, 0, 1) for row in r for v in row)
    for p in range(part.m):
        e.atoms.append(Row(f"strip_cap_{p + 1}", tuple((1.0, v) for v in r[p]), "<=", 2.0))
    for i in range(n):
        e.atoms.append(Row(f"strip_one_{i + 1}", tuple((1.0, r[p][i]) for p in range(part.m)), "=", 1.0))
    for p, (lo, hi) in enumerate(part.intervals):
        for i in range(n):
            # L_p - (1 - r) <= y_i <= U_p + (1 - r)
            e.atoms.append(Row(f"strip_lo_{p + 1}_{i + 1}", ((1.0, Y(i)), (-1.0, r[p][i])), ">=", lo - 1.0))
            e.atoms.append(Row(f"strip_hi_{p + 1}_{i + 1}", ((1.0, Y(i)), (1.0, r[p][i])), "<=", hi + 1.0))
    return part, e


def grid_one_point_constraints(n: int, lower: float) -> tuple[int, Enhancement]:
    """At most one point in each cell of an m x m grid with side below ``lower``."""
    m = grid_size(lower)
    e = Enhancement(G3, "grid")
    cells = [(p, q) for p in range(m) for q in range(m)]
    u = {(p, q, i): f"u_{p + 1}_{q + 1}_{i + 1}" for p, q in cells for i in range(n)}
    e.new_vars.extend(Var(u[p, q, i], BINARY, 0, 1) for p, q in cells for i in range(n))
    for p, q in cells:
        e.atoms.append(Row(f"grid_cap_{p + 1}_{q + 1}", tuple((1.0, u[p, q, i]) for i in range(n)), "<=", 1.0))
    for i in range(n):
        e.atoms.append(Row(f"grid_one_{i + 1}", tuple((1.0, u[p, q, i]) for p, q in cells), "=", 1.0))
    side = 1.0 / m
    for p, q in cells:
        xlo, xhi = p * side, (1.0 if p == m - 1 else (p + 1) * side)
        ylo, yhi = q * side, (1.0 if q == m - 1 else (q + 1) * side)
        for i in range(n):
            v = u[p, q, i]
            tag = f"{p + 1}_{q + 1}_{i + 1}"
            e.atoms.append(Row(f"gx_lo_{tag}", ((1.0, X(i)), (-1.0, v)), ">=", xlo - 1.0))
            e.atoms.append(Row(f"gx_hi_{tag}", ((1.0, X(i)), (1.0, v)), "<=", xhi + 1.0))
            e.atoms.append(Row(f"gy_lo_{tag}", ((1.0, Y(i)), (-1.0, v)), ">=", ylo - 1.0))
            e.atoms.append(Row(f"gy_hi_{tag}", ((1.0, Y(i)), (1.0, v)), "<=", yhi + 1.0))
    return m, e


def y_bound_constraints(n: int, table=None) -> Enhancement:
    table = y_bound_table(n) if table is None else table
    e = Enhancement(G3, "y_bounds")
    for i, (lo, hi) in enumerate(table):
        e.atoms.append(BoundChange(Y(i), float(lo), float(hi)))
    return e


# -- the set -----------------------------------------------------------------
@dataclass
class EnhancementSet:
    """Which constraint families to attach for an n-point instance.

    Parameters
    ----------
    n : int
        Number of points.
    bounds : BoundsH or None
        Objective interval. Needed by group 1 and group 3.
    groups : iterable of {"G1", "G2", "G3"}
    epsilon_near_boundary : float
        Tolerance of the nine-point near-boundary pattern.
    assume_conjecture_n10 : bool
        Use the unproven ten-point structure; results are flagged
        non-certifying.
    pair_order : bool
        Emit ``x_1 <= x_2`` with the symmetry rows.
    """

    n: int
    bounds: object = None
    groups: frozenset = ALL_GROUPS
    epsilon_near_boundary: float = 1e-2
    assume_conjecture_n10: bool = False
    pair_order: bool = True
    strip_height_s: float | None = field(default=None, init=False)
    grid_m: int | None = field(default=None, init=False)
    y_bounds: list | None = field(default=None, init=False)

    def __post_init__(self):
        self.groups = frozenset(self.groups)
        unknown = self.groups - ALL_GROUPS
        if unknown:
            raise InvalidParameter(f"unknown groups {sorted(unknown)}")
        if self.n < 3:
            raise InvalidParameter("n must be >= 3")
        if self.assume_conjecture_n10 and self.n != 10:
            raise NotApplicable("the conjecture flag is only meaningful for n = 10")
        if G3 in self.groups:
            if self.bounds is None:
                raise InvalidParameter("group G3 needs a lower bound")
            lo = float(self.bounds.lower)
            self.strip_height_s = strip_height(lo)
            self.grid_m = grid_size(lo)
            if not (0 < self.strip_height_s < 2 * lo):
                raise InvalidParameter("strip height must lie in (0, 2*lower)")
            if not 1.0 / self.grid_m < lo:
                raise InvalidParameter("grid side must be below the lower bound")
            if 6 <= self.n <= 10:
                self.y_bounds = y_bound_table(self.n)

    @property
    def mask(self) -> int:
        return sum(GROUP_BITS[g] for g in self.groups)

    @property
    def non_certifying(self) -> bool:
        return self.assume_conjecture_n10

    def constraints(self) -> list[Enhancement]:
        """Generator outputs in a fixed order: G1, then G2, then G3."""
        n = self.n
        out: list[Enhancement] = []
        if G1 in self.groups:
            out.append(symmetry_breaking_constraints(n, self.pair_order))
        if G2 in self.groups:
            out.extend(self.boundary_constraints())
        if G3 in self.groups:
            lo = float(self.bounds.lower)
            out.append(strip_two_point_constraints(n, lo)[1])
            out.append(grid_one_point_constraints(n, lo)[1])
            if self.y_bounds is not None:
                out.append(y_bound_constraints(n, self.y_bounds))
        return out

    def boundary_constraints(self) -> list[Enhancement]:
        n = self.n
        if n < 4:
            return []
        if n == 9:
            lo = None if self.bounds is None else float(self.bounds.lower)
            e = near_boundary_nine_constraints(self.epsilon_near_boundary, lo)
            _wfix_bottom_top(e, n, [0], [n - 1])
            return [e]
        if n == 10 and self.assume_conjecture_n10:
            return [conjecture_ten_constraints(n)]
        out = [edge_occupancy_constraints(n)]
        if n in (7, 8):
            e = two_on_edge_constraints(n)
            # y_1 and w_{i,1} are already fixed by edge occupancy
            done = {Y(0)} | {W(i, 0) for i in range(n)}
            e.atoms = [a for a in e.atoms if not (isinstance(a, BoundChange) and a.var in done)]
            out.append(e)
        return out


# -- witness checking ---------------------------------------------------------
def _edge_pick(values: np.ndarray, limit: int, accept: Callable[[float], bool], exact: int | None):
    order = np.argsort(values, kind="stable")
    chosen = [int(i) for i in order if accept(values[i])][:limit]
    if exact is not None and len(chosen) < exact:
        chosen = [int(i) for i in order[:exact]]
    return chosen


def _bin_assign(counts_cap: int, cell_of: list[int], near: list[list[int]]) -> list[int]:
    """Move points between adjacent cells (only where they sit on a shared border) to meet capacity."""
    cell = list(cell_of)
    changed = True
    while changed:
        changed = False
        load: dict[int, int] = {}
        for c in cell:
            load[c] = load.get(c, 0) + 1
        for i, c in enumerate(cell):
            if load[c] > counts_cap:
                for alt in near[i]:
                    if load.get(alt, 0) < counts_cap:
                        load[c] -= 1
                        load[alt] = load.get(alt, 0) + 1
                        cell[i] = alt
                        changed = True
                        break
    return cell


def assign_binaries(enh: EnhancementSet, xy: np.ndarray, tol: float = FIX_TOL) -> dict[str, float]:
    """Greedy values for c1, c2, r and u read off the geometry of ``xy``."""
    xy = np.asarray(xy, dtype=float)
    n = len(xy)
    xs, ys = xy[:, 0], xy[:, 1]
    vals: dict[str, float] = {}
    if G2 in enh.groups and n >= 4:
        if n == 9:
            eps = enh.epsilon_near_boundary
            left = _edge_pick(xs, 2, lambda v: v <= eps + tol, 2)
            right = _edge_pick(-xs, 2, lambda v: -v >= 1 - eps - tol, 2)
        elif n == 10 and enh.assume_conjecture_n10:
            left = _edge_pick(xs, 2, lambda v: v <= tol, 2)
            right = _edge_pick(-xs, 2, lambda v: -v >= 1 - tol, 2)
        else:
            left = _edge_pick(xs, 2, lambda v: v <= tol, None)
            right = _edge_pick(-xs, 2, lambda v: -v >= 1 - tol, None)
        for i in range(n):
            vals[f"c1_{i + 1}"] = 1.0 if i in left else 0.0
            vals[f"c2_{i + 1}"] = 1.0 if i in right else 0.0
    if G3 in enh.groups:
        part = StripPartition.of_height(enh.strip_height_s)
        strips = [part.index_of(y) for y in ys]
        near = []
        for i, y in enumerate(ys):
            alt = [p for p, (lo, hi) in enumerate(part.intervals) if p != strips[i] and lo - tol <= y <= hi + tol]
            near.append(alt)
        strips = _bin_assign(2, strips, near)
        for p in range(part.m):
            for i in range(n):
                vals[f"r_{p + 1}_{i + 1}"] = 1.0 if strips[i] == p else 0.0
        m = enh.grid_m
        side = 1.0 / m
        cells, near = [], []
        for i in range(n):
            p, q = min(int(xs[i] * m), m - 1), min(int(ys[i] * m), m - 1)
            cells.append(p * m + q)
            ps = {p} | {pp for pp in (p - 1, p + 1) if 0 <= pp < m and pp * side - tol <= xs[i] <= (pp + 1) * side + tol}
            qs = {q} | {qq for qq in (q - 1, q + 1) if 0 <= qq < m and qq * side - tol <= ys[i] <= (qq + 1) * side + tol}
            near.append([a * m + b for a in sorted(ps) for b in sorted(qs) if (a, b) != (p, q)])
        cells = _bin_assign(1, cells, near)
        for p in range(m):
            for q in range(m):
                for i in range(n):
                    vals[f"u_{p + 1}_{q + 1}_{i + 1}"] = 1.0 if cells[i] == p * m + q else 0.0
    return vals


def witness_violations(enh: EnhancementSet, xy: np.ndarray, tol: float = FIX_TOL) -> dict[str, float]:
    """Largest violation per generator when ``xy`` and greedy binaries are substituted."""
    from .model import core_values

    vals = core_values(xy)
    vals.update(assign_binaries(enh, xy, tol))
    out = {}
    for e in enh.constraints():
        out[e.label] = max((a.violation(vals) for a in e.atoms), default=0.0)
    if G1 in enh.groups and enh.bounds is not None:
        h = vals["H"]
        out["objective_bounds"] = max(enh.bounds.lower - h, h - enh.bounds.upper, 0.0)
    return out


# -- strip capacities and derived y-bounds --------------------------------------
@dataclass
class CapacityResult:
    """Largest number of points a 1 x (1/kappa) strip holds with all areas >= h_lower."""

    kappa: int
    h_lower: float
    capacity: int
    inconclusive: bool = False
    decisions: list = field(default_factory=list)


def _fits(m: int, target: float, time_limit: float | None, seed: int = 0):
    """Decide whether m points fit in the unit square with every area >= target."""
    from .certifier import Decision, SearchRules, certify

    if m <= 2:
        return Decision.FEASIBLE, None
    groups = {G1, G2} if m >= 4 else {G1}
    enh = EnhancementSet(m, None, groups=groups)
    rules = SearchRules(yorder=True, packing=True)
    res = certify(m, enh, tol=1e-9, target=target, time_limit=time_limit, rules=rules)
    return res.decision, res


def strip_capacity(
    kappa: int,
    h_lower: float,
    certifier: Callable | None = None,
    time_limit: float | None = 300.0,
    max_points: int = 12,
) -> CapacityResult:
    """Capacity m_kappa of a horizontal strip of height 1/kappa.

    Stretching the strip vertically by kappa maps it onto the unit square
    and multiplies every area by kappa, so m points fit in the strip iff m
    points fit in the square with all areas >= kappa * h_lower. Each such
    decision is settled by the branch-and-bound ``certifier``.
    """
    if kappa < 2:
        raise InvalidParameter("kappa must be >= 2")
    if not h_lower > 0:
        raise InvalidParameter("h_lower must be positive")
    decide = certifier or _fits
    from .certifier import Decision

    target = kappa * h_lower
    out = CapacityResult(kappa, h_lower, 2)
    for m in range(3, max_points + 1):
        dec, res = decide(m, target, time_limit)
        out.decisions.append((m, dec.value, None if res is None else res.nodes_explored))
        if dec == Decision.FEASIBLE:
            out.capacity = m
            continue
        if dec == Decision.INCONCLUSIVE:
            out.inconclusive = True
        return out
    out.inconclusive = True
    return out


@dataclass
class DerivedYBounds:
    n: int
    h_lower: float
    bounds: list  # (Fraction, Fraction) per index
    capacities: dict  # kappa -> CapacityResult
    inconclusive: bool


def derive_y_bounds(
    n: int,
    h_lower: float,
    epsilon: float = 1e-2,
    time_limit: float | None = 300.0,
    certifier: Callable | None = None,
    max_kappa: int = 40,
) -> DerivedYBounds:
    """Per-index y-intervals from strip capacities (y_1 = 0, y_n = 1 assumed).

    For each kappa with capacity m (computed until m = 2), the strip
    [0, l/kappa) holds at most l*m points, so y_{l*m+1} >= l/kappa, and
    symmetrically y_{n-l*m} <= 1 - l/kappa. Bounds are then made
    consistent with the y-order.
    """
    lo = [F(0)] * n
    hi = [F(1)] * n
    lo[0] = hi[0] = F(0)
    lo[n - 1] = hi[n - 1] = F(1)
    if n == 9:
        e = F(epsilon).limit_denominator(10**6)
        hi[1] = min(hi[1], e)
        lo[7] = max(lo[7], 1 - e)
    caps = {}
    inconclusive = False
    for kappa in range(2, max_kappa + 1):
        res = strip_capacity(kappa, h_lower, certifier, time_limit)
        caps[kappa] = res
        if res.inconclusive:
            inconclusive = True
            continue
        m = res.capacity
        ell = 1
        while ell * m + 1 <= n and ell < kappa:
            idx = ell * m  # zero-based index of point ell*m + 1
            lo[idx] = max(lo[idx], F(ell, kappa))
            up = n - ell * m - 1
            hi[up] = min(hi[up], 1 - F(ell, kappa))
            ell += 1
        if m == 2:
            break
    for i in range(1, n):
        lo[i] = max(lo[i], lo[i - 1])
    for i in range(n - 2, -1, -1):
        hi[i] = min(hi[i], hi[i + 1])
    return DerivedYBounds(n, h_lower, list(zip(lo, hi)), caps, inconclusive)
