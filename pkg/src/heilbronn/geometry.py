"""Geometric kernels for point configurations in the unit square.

Reference areas (:func:`signed_area`, :func:`min_triangle_area`) are the
correctly rounded value of the exact determinant, so they do not depend on
the labelling of the points. The vectorised helpers (:func:`min_area`,
:func:`min_area_batch`) use plain floating point with one fixed
association order and may differ from the reference by a few ulps.
"""
from __future__ import annotations

import math

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateBoundingBox, DegenerateInstance

CLAMP_TOL = 1e-12


@dataclass(frozen=True)
class Point:
    """A point of the unit square.

    Coordinates within ``CLAMP_TOL`` of [0, 1] are clamped onto it; anything
    further out is rejected.
    """

    x: float
    y: float

    def __post_init__(self):
        for name in ("x", "y"):
            v = float(getattr(self, name))
            if not (-CLAMP_TOL <= v <= 1.0 + CLAMP_TOL):
                raise ValueError(f"{name}={v!r} lies outside the unit square")
            object.__setattr__(self, name, min(1.0, max(0.0, v)))


_SPLIT = 134217729.0  # 2**27 + 1


def _two_product(a: float, b: float) -> tuple[float, float]:
    """``a*b == p + e`` exactly (Dekker), barring underflow."""
    p = a * b
    t = _SPLIT * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLIT * b
    bh = t - (t - b)
    bl = b - bh
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def exact_signed_area(xi, yi, xj, yj, xk, yk) -> float:
    """Correctly rounded signed area from raw coordinates.

    The doubled area is expanded into six coordinate products, each split
    exactly into two doubles, and summed with :func:`math.fsum`. Permuting
    the vertices therefore flips or keeps the sign without changing the
    magnitude by even one ulp.
    """
    terms = []
    for a, b, sign in ((xi, yj, 1.0), (xj, yi, -1.0), (xj, yk, 1.0),
                       (xk, yj, -1.0), (xk, yi, 1.0), (xi, yk, -1.0)):
        p, e = _two_product(a, b)
        terms.append(sign * p)
        terms.append(sign * e)
    return 0.5 * math.fsum(terms)


def signed_area(p: Point, q: Point, r: Point) -> float:
    """Signed area of the triangle (p, q, r); positive when counter-clockwise.

    The result is the exact determinant rounded once to double precision.
    """
    return exact_signed_area(p.x, p.y, q.x, q.y, r.x, r.y)


def _signed_area_xy(xi, yi, xj, yj, xk, yk):
    # fast path for scalars or arrays, one fixed association order
    return 0.5 * ((xi * (yj - yk) - xj * (yi - yk)) + xk * (yi - yj))


@dataclass(frozen=True)
class Configuration:
    """Ordered, labelled list of n >= 3 points.

    ``canonical`` records that the configuration came out of
    :func:`canonicalize`; it then has non-decreasing y in label order.
    """

    points: tuple[Point, ...]
    canonical: bool = field(default=False, compare=False)

    def __post_init__(self):
        pts = tuple(p if isinstance(p, Point) else Point(*p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 3:
            raise DegenerateInstance(f"need at least 3 points, got {len(pts)}")

    @classmethod
    def from_xy(cls, xy: Iterable[Sequence[float]], canonical: bool = False) -> "Configuration":
        return cls(tuple(Point(float(a), float(b)) for a, b in xy), canonical=canonical)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def xs(self) -> np.ndarray:
        return np.array([p.x for p in self.points])

    @property
    def ys(self) -> np.ndarray:
        return np.array([p.y for p in self.points])

    def as_array(self) -> np.ndarray:
        """(n, 2) array of coordinates."""
        return np.array([[p.x, p.y] for p in self.points])

    def __len__(self):
        return self.n


@dataclass(frozen=True)
class TripleAreas:
    """Signed areas of all C(n, 3) triangles, keyed by 0-based (i, j, k), i < j < k."""

    n: int
    signed: dict[tuple[int, int, int], float]
    min_abs: float
    argmin: tuple[int, int, int]


def triples(n: int) -> np.ndarray:
    """All index triples i < j < k as a (C(n,3), 3) int array, lexicographic order."""
    return np.array(list(combinations(range(n), 3)), dtype=np.intp).reshape(-1, 3)


def min_triangle_area(c: Configuration) -> TripleAreas:
    """Enumerate every triangle of ``c``; ``min_abs`` is the smallest |area|.

    Ties for the minimum resolve to the lexicographically first triple.
    """
    if c.n < 3:
        raise DegenerateInstance(f"need at least 3 points, got {c.n}")
    pts = c.points
    signed = {}
    best, arg = np.inf, (0, 1, 2)
    for t in combinations(range(c.n), 3):
        s = signed_area(pts[t[0]], pts[t[1]], pts[t[2]])
        signed[t] = s
        if abs(s) < best:
            best, arg = abs(s), t
    return TripleAreas(c.n, signed, best, arg)


def min_area(xy: np.ndarray) -> float:
    """Fast minimum |area| for an (n, 2) array (plain floating point)."""
    xy = np.asarray(xy, dtype=float)
    t = triples(len(xy))
    a, b, c = xy[t[:, 0]], xy[t[:, 1]], xy[t[:, 2]]
    s = _signed_area_xy(a[:, 0], a[:, 1], b[:, 0], b[:, 1], c[:, 0], c[:, 1])
    return float(np.min(np.abs(s)))


def min_area_batch(xy: np.ndarray, tri: np.ndarray | None = None) -> np.ndarray:
    """Minimum |area| for a batch of configurations shaped (B, n, 2)."""
    xy = np.asarray(xy, dtype=float)
    if tri is None:
        tri = triples(xy.shape[1])
    a, b, c = xy[:, tri[:, 0]], xy[:, tri[:, 1]], xy[:, tri[:, 2]]
    s = _signed_area_xy(a[..., 0], a[..., 1], b[..., 0], b[..., 1], c[..., 0], c[..., 1])
    return np.min(np.abs(s), axis=1)


def normalize_to_bounding_box(c: Configuration) -> Configuration:
    """Stretch ``c`` affinely so that its bounding box becomes [0, 1]^2.

    Every triangle area is divided by the bounding-box area, so the
    minimum area never decreases.
    """
    xy = c.as_array()
    lo, hi = xy.min(axis=0), xy.max(axis=0)
    span = hi - lo
    if span[0] <= 0 or span[1] <= 0:
        raise DegenerateBoundingBox(f"bounding box has zero extent: {span.tolist()}")
    if np.all(lo == 0.0) and np.all(hi == 1.0):
        return c
    out = (xy - lo) / span
    return Configuration.from_xy(out)


def reflect_x(c: Configuration) -> Configuration:
    """Mirror across x = 1/2; labels are kept."""
    return Configuration.from_xy([(1.0 - p.x, p.y) for p in c.points])


def canonicalize(c: Configuration) -> Configuration:
    """Relabel and reflect ``c`` into the symmetry-broken normal form.

    Labels are sorted by y, ties by x and then by original label. If the
    first point has x > 1/2 the configuration is mirrored across x = 1/2
    and sorted again. The result has non-decreasing y, x_1 <= 1/2, and
    x_1 <= x_2 whenever y_1 == y_2. A label swap that would break the
    y-order is never applied.
    """

    def order(pts):
        idx = sorted(range(len(pts)), key=lambda i: (pts[i].y, pts[i].x, i))
        return [pts[i] for i in idx]

    pts = order(list(c.points))
    if pts[0].x > 0.5:
        pts = order([Point(1.0 - p.x, p.y) for p in pts])
    return Configuration(tuple(pts), canonical=True)
