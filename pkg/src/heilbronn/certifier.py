"""Interval branch-and-bound that proves upper bounds on the optimal minimum area.

A node is a box of coordinate intervals for all 2n coordinates. Its bound is
the smallest, over all triangles, of the largest |area| the triangle can
take inside the box. Nodes are shrunk by constraint propagation before
bounding:

* hull tightening: each coordinate is clipped to the hull of values for which
  some choice of the other five coordinates of a triangle still gives
  |area| >= t;
* y-order consistency and the per-index y-table;
* three consecutive points (in y) need a vertical gap of at least 2 t;
* two points closer than t * sqrt(2) make every triangle through them
  smaller than t.

Boxes are explored best-first; the proven bound is the largest bound of any
open or closed leaf.
"""
from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import asdict, dataclass, field
from enum import Enum
from itertools import combinations
from typing import Sequence

import numpy as np
from numba import njit

from .errors import InvalidParameter, NotApplicable, OracleTooLarge
from .geometry import Configuration, _signed_area_xy, exact_signed_area, min_area, min_triangle_area, triples

EPS = np.finfo(float).eps
MIN_WIDTH = 1e-9
REL_SPLIT = 1e-2
MIN_SPLIT = 1e-6
SLOPE_FLOOR = 1e-9


class Status(str, Enum):
    CERTIFIED = "Certified"
    BOUNDED = "Bounded"
    INFEASIBLE = "Infeasible"


class Decision(str, Enum):
    FEASIBLE = "Feasible"
    INFEASIBLE = "Infeasible"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class RegionBox:
    """Coordinate intervals; ``lo``/``hi`` are (n, 2) arrays of [x, y] bounds."""

    lo: np.ndarray
    hi: np.ndarray
    depth: int = 0

    def __post_init__(self):
        self.lo = np.asarray(self.lo, dtype=float).reshape(-1, 2)
        self.hi = np.asarray(self.hi, dtype=float).reshape(-1, 2)
        if self.lo.shape != self.hi.shape:
            raise InvalidParameter("lo and hi must have the same shape")
        if np.any(self.lo < 0) or np.any(self.hi > 1) or np.any(self.lo > self.hi):
            raise InvalidParameter("box intervals must satisfy 0 <= lo <= hi <= 1")

    @property
    def n(self) -> int:
        return len(self.lo)

    @classmethod
    def full(cls, n: int) -> "RegionBox":
        return cls(np.zeros((n, 2)), np.ones((n, 2)))

    @classmethod
    def point(cls, xy) -> "RegionBox":
        xy = np.asarray(xy, dtype=float)
        return cls(xy.copy(), xy.copy())

    def flat(self) -> tuple[np.ndarray, np.ndarray]:
        return self.lo.reshape(-1).copy(), self.hi.reshape(-1).copy()

    def contains(self, xy, tol: float = 0.0) -> bool:
        xy = np.asarray(xy, dtype=float)
        return bool(np.all(xy >= self.lo - tol) and np.all(xy <= self.hi + tol))

    def midpoint(self) -> np.ndarray:
        return 0.5 * (self.lo + self.hi)


# -- kernels ------------------------------------------------------------------
@njit(cache=True)
def _tri_range(lo, hi, i, j, k):
    """Enclosure of S_ijk over the box (flat layout: x_p at 2p, y_p at 2p+1)."""
    xl0, xh0 = lo[2 * i], hi[2 * i]
    xl1, xh1 = lo[2 * j], hi[2 * j]
    xl2, xh2 = lo[2 * k], hi[2 * k]
    smax = -np.inf
    smin = np.inf
    scale = 0.0
    for m in range(8):
        yi = hi[2 * i + 1] if (m & 1) else lo[2 * i + 1]
        yj = hi[2 * j + 1] if (m & 2) else lo[2 * j + 1]
        yk = hi[2 * k + 1] if (m & 4) else lo[2 * k + 1]
        a0 = yj - yk
        a1 = yk - yi
        a2 = yi - yj
        p0, q0 = xl0 * a0, xh0 * a0
        p1, q1 = xl1 * a1, xh1 * a1
        p2, q2 = xl2 * a2, xh2 * a2
        up = max(p0, q0) + max(p1, q1) + max(p2, q2)
        dn = min(p0, q0) + min(p1, q1) + min(p2, q2)
        if up > smax:
            smax = up
        if dn < smin:
            smin = dn
        sc = max(abs(p0), abs(q0)) + max(abs(p1), abs(q1)) + max(abs(p2), abs(q2))
        if sc > scale:
            scale = sc
    d = 4.0 * EPS * 0.5 * scale + 1e-300
    return 0.5 * smin - d, 0.5 * smax + d


@njit(cache=True)
def _node_bound(lo, hi, tri):
    best = np.inf
    arg = 0
    for t in range(tri.shape[0]):
        a, b = _tri_range(lo, hi, tri[t, 0], tri[t, 1], tri[t, 2])
        u = max(b, -a)
        if u < best:
            best = u
            arg = t
    return best, arg


@njit(cache=True)
def _clip_coord(lo, hi, v, t, cs, ds, nv):
    """Clip coordinate v to the hull of {z : |A z + C| >= t for some vertex}.

    ``cs``/``ds`` hold (slope, offset) pairs for the ``nv`` vertices of the
    other coordinates. Returns False when nothing survives.
    """
    l, h = lo[v], hi[v]
    new_l = np.inf
    new_h = -np.inf
    for q in range(nv):
        A = cs[q]
        C = ds[q]
        if abs(A) < SLOPE_FLOOR:
            # nearly constant in z: keep everything if it might reach t
            if abs(C) + abs(A) + 1e-12 >= t:
                return True
            continue
        r1 = (t - C) / A
        r2 = (-t - C) / A
        a = min(r1, r2)
        b = max(r1, r2)
        mg = 8.0 * EPS * (1.0 + abs(C) + t) / abs(A) + 8.0 * EPS * max(abs(a), abs(b)) + 1e-15
        a += mg
        b -= mg
        # feasible part of [l, h]: z <= a or z >= b
        if l <= a or l >= b:
            fl = l
        elif b <= h:
            fl = b
        else:
            fl = np.inf
        if h >= b or h <= a:
            fh = h
        elif a >= l:
            fh = a
        else:
            fh = -np.inf
        if fl < new_l:
            new_l = fl
        if fh > new_h:
            new_h = fh
        if new_l <= l and new_h >= h:
            return True
    if new_l > new_h:
        return False
    if new_l > l:
        lo[v] = new_l
    if new_h < h:
        hi[v] = new_h
    return True


@njit(cache=True)
def _tighten_triple(lo, hi, p, q, r, t, cs, ds):
    """Hull-tighten x_p and y_p using |S(p, q, r)| >= t (cyclic order keeps the sign)."""
    # S = 1/2 [x_p (y_q - y_r) + x_q (y_r - y_p) + x_r (y_p - y_q)]
    nv = 0
    for m in range(32):
        yp = hi[2 * p + 1] if (m & 1) else lo[2 * p + 1]
        xq = hi[2 * q] if (m & 2) else lo[2 * q]
        yq = hi[2 * q + 1] if (m & 4) else lo[2 * q + 1]
        xr = hi[2 * r] if (m & 8) else lo[2 * r]
        yr = hi[2 * r + 1] if (m & 16) else lo[2 * r + 1]
        cs[nv] = 0.5 * (yq - yr)
        ds[nv] = 0.5 * (xq * (yr - yp) + xr * (yp - yq))
        nv += 1
    if not _clip_coord(lo, hi, 2 * p, t, cs, ds, nv):
        return False
    # S = 1/2 [y_p (x_r - x_q) + x_p (y_q - y_r) + x_q y_r - x_r y_q]
    nv = 0
    for m in range(32):
        xp = hi[2 * p] if (m & 1) else lo[2 * p]
        xq = hi[2 * q] if (m & 2) else lo[2 * q]
        yq = hi[2 * q + 1] if (m & 4) else lo[2 * q + 1]
        xr = hi[2 * r] if (m & 8) else lo[2 * r]
        yr = hi[2 * r + 1] if (m & 16) else lo[2 * r + 1]
        cs[nv] = 0.5 * (xr - xq)
        ds[nv] = 0.5 * (xp * (yq - yr) + (xq * yr - xr * yq))
        nv += 1
    return _clip_coord(lo, hi, 2 * p + 1, t, cs, ds, nv)


@njit(cache=True)
def _order_and_gaps(lo, hi, n, t, yorder, gaps):
    if yorder:
        for i in range(1, n):
            if lo[2 * i + 1] < lo[2 * i - 1]:
                lo[2 * i + 1] = lo[2 * i - 1]
        for i in range(n - 2, -1, -1):
            if hi[2 * i + 1] > hi[2 * i + 3]:
                hi[2 * i + 1] = hi[2 * i + 3]
        if gaps:
            g = 2.0 * t * (1.0 - 1e-12) - 1e-15
            for i in range(n - 2):
                if lo[2 * (i + 2) + 1] < lo[2 * i + 1] + g:
                    lo[2 * (i + 2) + 1] = lo[2 * i + 1] + g
            for i in range(n - 3, -1, -1):
                if hi[2 * i + 1] > hi[2 * (i + 2) + 1] - g:
                    hi[2 * i + 1] = hi[2 * (i + 2) + 1] - g
    for v in range(2 * n):
        if lo[v] > hi[v]:
            return False
    return True


@njit(cache=True)
def _pairs_ok(lo, hi, n, t):
    lim = 2.0 * t * t * (1.0 - 1e-9)
    for p in range(n):
        for q in range(p + 1, n):
            dx = max(hi[2 * p] - lo[2 * q], hi[2 * q] - lo[2 * p])
            dy = max(hi[2 * p + 1] - lo[2 * q + 1], hi[2 * q + 1] - lo[2 * p + 1])
            dx = max(dx, 0.0)
            dy = max(dy, 0.0)
            if dx * dx + dy * dy < lim:
                return False
    return True


@njit(cache=True)
def _propagate(lo, hi, n, tri, t, yorder, packing, passes):
    """Shrink the box in place; False means no configuration with min area >= t lies in it."""
    cs = np.empty(32)
    ds = np.empty(32)
    D = 2 * n
    old = np.empty(D)
    if not _order_and_gaps(lo, hi, n, t, yorder, packing):
        return False
    if packing and not _pairs_ok(lo, hi, n, t):
        return False
    for _ in range(passes):
        for v in range(D):
            old[v] = hi[v] - lo[v]
        for s in range(tri.shape[0]):
            i, j, k = tri[s, 0], tri[s, 1], tri[s, 2]
            if not _tighten_triple(lo, hi, i, j, k, t, cs, ds):
                return False
            if not _tighten_triple(lo, hi, j, k, i, t, cs, ds):
                return False
            if not _tighten_triple(lo, hi, k, i, j, t, cs, ds):
                return False
        if not _order_and_gaps(lo, hi, n, t, yorder, packing):
            return False
        if packing and not _pairs_ok(lo, hi, n, t):
            return False
        shrink = 0.0
        for v in range(D):
            if old[v] > 0:
                shrink = max(shrink, 1.0 - (hi[v] - lo[v]) / old[v])
        if shrink < 0.05:
            break
    return True


@njit(cache=True)
def _mid_value(lo, hi, n, tri, xy):
    for p in range(n):
        xy[p, 0] = 0.5 * (lo[2 * p] + hi[2 * p])
        xy[p, 1] = 0.5 * (lo[2 * p + 1] + hi[2 * p + 1])
    best = np.inf
    for s in range(tri.shape[0]):
        i, j, k = tri[s, 0], tri[s, 1], tri[s, 2]
        v = 0.5 * ((xy[i, 0] * (xy[j, 1] - xy[k, 1]) - xy[j, 0] * (xy[i, 1] - xy[k, 1])) + xy[k, 0] * (xy[i, 1] - xy[j, 1]))
        v = abs(v)
        if v < best:
            best = v
    return best


@njit(cache=True)
def _heap_push(key, slot, size, k, s):
    i = size
    key[i] = k
    slot[i] = s
    while i > 0:
        p = (i - 1) >> 1
        if key[p] <= key[i]:
            break
        key[p], key[i] = key[i], key[p]
        slot[p], slot[i] = slot[i], slot[p]
        i = p
    return size + 1


@njit(cache=True)
def _heap_pop(key, slot, size):
    k, s = key[0], slot[0]
    size -= 1
    key[0] = key[size]
    slot[0] = slot[size]
    i = 0
    while True:
        l = 2 * i + 1
        r = l + 1
        m = i
        if l < size and key[l] < key[m]:
            m = l
        if r < size and key[r] < key[m]:
            m = r
        if m == i:
            break
        key[m], key[i] = key[i], key[m]
        slot[m], slot[i] = slot[i], slot[m]
        i = m
    return k, s, size


@njit(cache=True)
def _branch_var(lo, hi, tri, arg):
    """Coordinate to bisect.

    Triangles are scanned from the smallest area bound upwards (``arg`` is
    the smallest); the first whose widest coordinate is not negligible,
    relative to the widest coordinate of the box, is split on that
    coordinate. Ties go to the lowest point index, x before y.
    """
    D = lo.shape[0]
    gw = 0.0
    gv = 0
    for v in range(D):
        w = hi[v] - lo[v]
        if w > gw:
            gw = w
            gv = v
    floor = max(REL_SPLIT * gw, MIN_SPLIT)
    T = tri.shape[0]
    ubs = np.empty(T)
    for s in range(T):
        a, b = _tri_range(lo, hi, tri[s, 0], tri[s, 1], tri[s, 2])
        ubs[s] = max(b, -a)
    ubs[arg] = -1.0
    order = np.argsort(ubs, kind="mergesort")
    for r in range(T):
        s = order[r]
        best_w = -1.0
        best_v = -1
        for c in range(3):
            p = tri[s, c]
            for d in range(2):
                v = 2 * p + d
                w = hi[v] - lo[v]
                if w > best_w or (w == best_w and v < best_v):
                    best_w = w
                    best_v = v
        if best_w >= floor:
            return best_v, best_w
    return gv, gw


@njit(cache=True)
def _search(
    pool_lo, pool_hi, pool_ub, heap_key, heap_slot, free, st, fs, inc_xy, tri, n, tol, strict, yorder, packing,
    passes, max_nodes,
):
    """Run up to ``max_nodes`` best-first steps.

    ``st`` (int64): [heap size, free top, nodes, status]; status 0 running,
    1 search finished, 2 pool full, 3 target reached.
    ``fs`` (float64): [incumbent, closed bound, target (or -1), unresolved bound].
    """
    size = st[0]
    ftop = st[1]
    cap = pool_lo.shape[0]
    D = 2 * n
    xy = np.empty((n, 2))
    clo = np.empty(D)
    chi = np.empty(D)
    steps = 0
    while steps < max_nodes:
        if size == 0:
            st[3] = 1
            break
        target = fs[2]
        t = target if target >= 0 else fs[0] + tol
        top = -heap_key[0]
        if (strict and top < t) or ((not strict) and top <= t):
            # everything left is already below the threshold
            fs[1] = max(fs[1], top)
            while size > 0:
                k, s, size = _heap_pop(heap_key, heap_slot, size)
                free[ftop] = s
                ftop += 1
            st[3] = 1
            break
        if ftop < 2:
            st[3] = 2
            break
        k, s, size = _heap_pop(heap_key, heap_slot, size)
        parent_ub = -k
        steps += 1
        st[2] += 1
        arg_ub, arg = _node_bound(pool_lo[s], pool_hi[s], tri)
        v, w = _branch_var(pool_lo[s], pool_hi[s], tri, arg)
        if w < MIN_WIDTH:
            # cannot split further; keep its bound as unresolved
            fs[3] = max(fs[3], parent_ub)
            free[ftop] = s
            ftop += 1
            continue
        mid = 0.5 * (pool_lo[s, v] + pool_hi[s, v])
        for side in range(2):
            for u in range(D):
                clo[u] = pool_lo[s, u]
                chi[u] = pool_hi[s, u]
            if side == 0:
                chi[v] = mid
            else:
                clo[v] = mid
            ok = _propagate(clo, chi, n, tri, t, yorder, packing, passes)
            if not ok:
                fs[1] = max(fs[1], min(t, parent_ub))
                continue
            ub, a2 = _node_bound(clo, chi, tri)
            ub = min(ub, parent_ub)
            val = _mid_value(clo, chi, n, tri, xy)
            if val > fs[0]:
                fs[0] = val
                for p in range(n):
                    inc_xy[p, 0] = xy[p, 0]
                    inc_xy[p, 1] = xy[p, 1]
                if target >= 0 and val >= target:
                    st[3] = 3
            if (strict and ub < t) or ((not strict) and ub <= t):
                fs[1] = max(fs[1], ub)
                continue
            ftop -= 1
            c = free[ftop]
            for u in range(D):
                pool_lo[c, u] = clo[u]
                pool_hi[c, u] = chi[u]
            pool_ub[c] = ub
            size = _heap_push(heap_key, heap_slot, size, -ub, c)
        free[ftop] = s
        ftop += 1
        if st[3] == 3:
            break
    st[0] = size
    st[1] = ftop
    return steps


# -- public API -----------------------------------------------------------------
def _flat(box: RegionBox):
    return box.flat()


def interval_signed_area(box: RegionBox, triple: Sequence[int]) -> tuple[float, float]:
    """Outward enclosure [S_lo, S_hi] of the signed area of ``triple`` over ``box``.

    When the three points are pinned to single coordinates the enclosure is
    the correctly rounded area widened by one ulp on each side.
    """
    i, j, k = (int(v) for v in triple)
    lo, hi = _flat(box)
    idx = [2 * i, 2 * i + 1, 2 * j, 2 * j + 1, 2 * k, 2 * k + 1]
    if np.all(lo[idx] == hi[idx]):
        s = exact_signed_area(*(float(lo[q]) for q in idx))
        return float(np.nextafter(s, -np.inf)), float(np.nextafter(s, np.inf))
    a, b = _tri_range(lo, hi, i, j, k)
    return float(a), float(b)


def node_upper_bound(box: RegionBox, enh=None) -> float:
    """Largest minimum area any configuration inside ``box`` can have."""
    lo, hi = _flat(box)
    ub, _ = _node_bound(lo, hi, triples(box.n))
    return float(min(ub, 0.5 + 4 * EPS))


@dataclass
class SearchRules:
    """Which reductions propagation may use."""

    yorder: bool = True
    packing: bool = True
    y_table: list | None = None
    passes: int = 3

    @classmethod
    def from_enhancements(cls, enh, n: int) -> "SearchRules":
        if enh is None:
            return cls(yorder=False, packing=False)
        from .enhancements import G1, G3

        table = None
        if G3 in enh.groups and enh.y_bounds is not None:
            table = [(float(a), float(b)) for a, b in enh.y_bounds]
        return cls(yorder=G1 in enh.groups, packing=G3 in enh.groups, y_table=table)


def propagate(box: RegionBox, enh=None, incumbent: float = 0.0, rules: SearchRules | None = None):
    """Shrink ``box`` using |S| >= incumbent for every triangle; ``None`` if empty."""
    rules = rules or SearchRules.from_enhancements(enh, box.n)
    lo, hi = _flat(box)
    if rules.y_table is not None:
        for i, (a, b) in enumerate(rules.y_table):
            lo[2 * i + 1] = max(lo[2 * i + 1], a)
            hi[2 * i + 1] = min(hi[2 * i + 1], b)
        if np.any(lo > hi):
            return None
    ok = _propagate(lo, hi, box.n, triples(box.n), float(incumbent), rules.yorder, rules.packing, rules.passes)
    if not ok:
        return None
    return RegionBox(lo.reshape(-1, 2), hi.reshape(-1, 2), box.depth)


@dataclass
class CertificationResult:
    n: int
    proven_upper: float
    incumbent_lower: float
    incumbent: Configuration
    status: Status
    nodes_explored: int
    wall_time: float
    tol: float = 1e-4
    target: float | None = None
    decision: Decision | None = None
    non_certifying: bool = False
    unresolved_upper: float = 0.0

    @property
    def gap(self) -> float:
        return self.proven_upper - self.incumbent_lower

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "proven_upper": self.proven_upper,
            "incumbent_lower": self.incumbent_lower,
            "incumbent": [[p.x, p.y] for p in self.incumbent.points],
            "status": self.status.value,
            "nodes_explored": self.nodes_explored,
            "wall_time": self.wall_time,
            "tol": self.tol,
            "target": self.target,
            "decision": None if self.decision is None else self.decision.value,
            "non_certifying": self.non_certifying,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def csv_row(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerow(
            [self.n, f"{self.incumbent_lower:.10g}", f"{self.proven_upper:.10g}", self.nodes_explored,
             f"{self.wall_time:.3f}", self.status.value]
        )
        return buf.getvalue()


CSV_HEADER = "n,lb,ub,nodes,seconds,status\n"


def root_boxes(n: int, enh=None, height: float = 1.0) -> list[RegionBox]:
    """Initial boxes encoding the symmetry and boundary reductions.

    With group 1 the first point satisfies x_1 <= 1/2. With group 2 (n >= 4)
    the bottom and top points sit on y = 0 and y = height and one root box
    is produced per choice of a point on x = 0 and a different point on
    x = 1 (these boxes cover every normalised configuration).
    """
    from .enhancements import G1, G2

    groups = set() if enh is None else set(enh.groups)
    lo = np.zeros((n, 2))
    hi = np.ones((n, 2))
    hi[:, 1] = height
    if G1 in groups:
        hi[0, 0] = 0.5
    if G2 not in groups or n < 4:
        return [RegionBox(lo, hi)]
    lo[0, 1] = hi[0, 1] = 0.0
    lo[n - 1, 1] = hi[n - 1, 1] = height
    if n in (7, 8):
        lo[1, 1] = hi[1, 1] = 0.0
    if n == 9:
        eps = enh.epsilon_near_boundary
        hi[1, 1] = min(hi[1, 1], eps)
        lo[7, 1] = max(lo[7, 1], height - eps)
    out = []
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            l2, h2 = lo.copy(), hi.copy()
            l2[a, 0] = h2[a, 0] = 0.0
            if l2[b, 0] > 1.0 or h2[b, 0] < 1.0:
                continue
            l2[b, 0] = h2[b, 0] = 1.0
            out.append(RegionBox(l2, h2))
    return out


def _default_incumbent(n: int, seed: int = 0) -> Configuration:
    from .heuristics import known_configuration, sample_lower_bound, local_refine

    try:
        return known_configuration(n).points
    except Exception:
        _, w = sample_lower_bound(n, samples=20_000, seed=seed)
        return local_refine(w, iterations=20_000, seed=seed)


def certify(
    n: int,
    enh=None,
    incumbent0: Configuration | None = None,
    tol: float = 1e-4,
    max_nodes: int | None = None,
    time_limit: float | None = None,
    threads: int = 1,
    target: float | None = None,
    rules: SearchRules | None = None,
    chunk: int = 20_000,
    pool_capacity: int = 1 << 16,
    refine_iters: int = 2_000,
) -> CertificationResult:
    """Prove an upper bound on the best minimum triangle area for n points.

    Parameters
    ----------
    n : int
        Number of points.
    enh : EnhancementSet, optional
        Enables symmetry anchoring (G1), boundary roots (G2) and packing
        reductions plus the y-table (G3).
    incumbent0 : Configuration, optional
        Starting feasible configuration. Defaults to the registry entry or a
        quick heuristic.
    tol : float
        Stop when the proven bound is within ``tol`` of the incumbent.
    max_nodes, time_limit
        Budget; the result is ``Bounded`` if it runs out.
    threads : int
        Accepted for interface compatibility; the search is single-threaded
        and deterministic.
    target : float, optional
        Decision mode: find a configuration with min area >= target or prove
        that none exists.
    refine_iters : int
        Local-search iterations spent on each improved incumbent.
    """
    if tol <= 0:
        raise InvalidParameter("tol must be positive")
    if n < 3:
        raise InvalidParameter("n must be >= 3")
    if enh is not None and enh.n != n:
        raise NotApplicable(f"enhancement set is for n={enh.n}, not n={n}")
    if threads < 1:
        raise InvalidParameter("threads must be >= 1")
    t0 = time.perf_counter()
    rules = rules or SearchRules.from_enhancements(enh, n)
    tri = triples(n)
    D = 2 * n

    if incumbent0 is None:
        incumbent0 = _default_incumbent(n)
    inc_xy = np.ascontiguousarray(incumbent0.as_array(), dtype=float)
    inc_val = float(min_area(inc_xy))

    cap = pool_capacity
    pool_lo = np.zeros((cap, D))
    pool_hi = np.zeros((cap, D))
    pool_ub = np.zeros(cap)
    heap_key = np.zeros(cap)
    heap_slot = np.zeros(cap, dtype=np.int64)
    free = np.arange(cap - 1, -1, -1, dtype=np.int64)
    st = np.array([0, cap, 0, 0], dtype=np.int64)
    fs = np.array([inc_val, 0.0, -1.0 if target is None else float(target), 0.0])
    strict = target is not None

    def threshold():
        return fs[2] if fs[2] >= 0 else fs[0] + tol

    for box in root_boxes(n, enh):
        lo, hi = box.flat()
        t = threshold()
        if rules.y_table is not None:
            for i, (a, b) in enumerate(rules.y_table):
                lo[2 * i + 1] = max(lo[2 * i + 1], a)
                hi[2 * i + 1] = min(hi[2 * i + 1], b)
            if np.any(lo > hi):
                continue
        ub0, _ = _node_bound(lo, hi, tri)
        if not _propagate(lo, hi, n, tri, t, rules.yorder, rules.packing, rules.passes):
            fs[1] = max(fs[1], min(t, ub0))
            continue
        ub, _ = _node_bound(lo, hi, tri)
        ub = min(ub, ub0)
        if (strict and ub < t) or (not strict and ub <= t):
            fs[1] = max(fs[1], ub)
            continue
        c = free[st[1] - 1]
        st[1] -= 1
        pool_lo[c], pool_hi[c], pool_ub[c] = lo, hi, ub
        st[0] = _heap_push(heap_key, heap_slot, st[0], -ub, c)

    from .heuristics import local_refine

    refined_at = fs[0]
    timed_out = False
    while True:
        if target is not None and fs[0] >= fs[2]:
            st[3] = 3
        if st[3] in (1, 3) or st[0] == 0:
            break
        if max_nodes is not None and st[2] >= max_nodes:
            timed_out = True
            break
        if time_limit is not None and time.perf_counter() - t0 > time_limit:
            timed_out = True
            break
        steps = chunk if max_nodes is None else max(1, min(chunk, max_nodes - st[2]))
        st[3] = 0
        _search(pool_lo, pool_hi, pool_ub, heap_key, heap_slot, free, st, fs, inc_xy, tri, n, tol, strict,
                rules.yorder, rules.packing, rules.passes, steps)
        if refine_iters and fs[0] > refined_at:
            # polish a newly found incumbent; any configuration is a valid lower bound
            better = local_refine(Configuration.from_xy(inc_xy), iterations=refine_iters, seed=int(st[2]))
            val = float(min_area(better.as_array()))
            if val > fs[0]:
                fs[0] = val
                inc_xy[:] = better.as_array()
            refined_at = fs[0]
        if st[3] == 2:
            # grow the node pool
            old = pool_lo.shape[0]
            new = old * 2
            pool_lo = np.vstack([pool_lo, np.zeros((old, D))])
            pool_hi = np.vstack([pool_hi, np.zeros((old, D))])
            pool_ub = np.concatenate([pool_ub, np.zeros(old)])
            heap_key = np.concatenate([heap_key, np.zeros(old)])
            heap_slot = np.concatenate([heap_slot, np.zeros(old, dtype=np.int64)])
            ftop = st[1]
            free = np.concatenate([free[:ftop], np.arange(new - 1, old - 1, -1, dtype=np.int64), np.zeros(old, dtype=np.int64)])
            st[1] = ftop + old
            st[3] = 0

    open_ub = float(-heap_key[:st[0]].min()) if st[0] > 0 else 0.0
    upper = max(open_ub, fs[1], fs[3])
    upper = min(upper, 0.5 + 4 * EPS)
    incumbent = Configuration.from_xy(inc_xy)
    inc_val = min_triangle_area(incumbent).min_abs
    wall = time.perf_counter() - t0
    decision = None
    if target is not None:
        if inc_val >= target:
            decision, status = Decision.FEASIBLE, Status.BOUNDED
        elif st[0] == 0 and not timed_out and fs[3] < target:
            decision, status = Decision.INFEASIBLE, Status.INFEASIBLE
        else:
            decision, status = Decision.INCONCLUSIVE, Status.BOUNDED
    else:
        status = Status.CERTIFIED if upper - inc_val <= tol * (1 + 1e-9) else Status.BOUNDED
    return CertificationResult(
        n=n,
        proven_upper=float(upper),
        incumbent_lower=float(inc_val),
        incumbent=incumbent,
        status=status,
        nodes_explored=int(st[2]),
        wall_time=wall,
        tol=tol,
        target=target,
        decision=decision,
        non_certifying=bool(enh is not None and enh.non_certifying),
        unresolved_upper=float(fs[3]),
    )


def brute_force_oracle(n: int, grid_k: int, max_subsets: int = 5_000_000) -> float:
    """Best minimum area over all n-subsets of the k x k lattice on [0, 1]^2."""
    if n not in (3, 4):
        raise InvalidParameter("the oracle supports n = 3 or 4")
    if grid_k < 2 or grid_k > 12:
        raise InvalidParameter("grid_k must lie in 2..12")
    total = math.comb(grid_k * grid_k, n)
    if total > max_subsets:
        raise OracleTooLarge(f"{total} subsets exceed the budget of {max_subsets}")
    g = np.linspace(0.0, 1.0, grid_k)
    pts = np.array([(x, y) for x in g for y in g])
    idx = np.array(list(combinations(range(len(pts)), n)), dtype=np.intp)
    best = 0.0
    tri = triples(n)
    for start in range(0, len(idx), 200_000):
        sub = pts[idx[start:start + 200_000]]
        a, b, c = sub[:, tri[:, 0]], sub[:, tri[:, 1]], sub[:, tri[:, 2]]
        s = _signed_area_xy(a[..., 0], a[..., 1], b[..., 0], b[..., 1], c[..., 0], c[..., 1])
        best = max(best, float(np.abs(s).min(axis=1).max()))
    return best
