"""Exact integer geometry: points, orientation, crossings, hulls and depth.

Every predicate reduces to the sign of an integer cross product. Python
integers are unbounded, so no intermediate ever overflows.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import IntEnum
from functools import cmp_to_key
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .errors import PreconditionError

Point = tuple[int, int]
Segment = tuple[int, int]

COORD_LIMIT = 2**30


class Orientation(IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


def cross(o: Point, a: Point, b: Point) -> int:
    """Twice the signed area of triangle (o, a, b)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def orientation(p: Point, q: Point, r: Point) -> Orientation:
    d = cross(p, q, r)
    if d > 0:
        return Orientation.CCW
    if d < 0:
        return Orientation.CW
    return Orientation.COLLINEAR


def _on_segment(p: Point, q: Point, r: Point) -> bool:
    # r collinear with pq assumed
    return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])


def closed_segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """True iff the closed segments p1p2 and q1q2 share a point."""
    d1 = cross(q1, q2, p1)
    d2 = cross(q1, q2, p2)
    d3 = cross(p1, p2, q1)
    d4 = cross(p1, p2, q2)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    if d1 == 0 and _on_segment(q1, q2, p1):
        return True
    if d2 == 0 and _on_segment(q1, q2, p2):
        return True
    if d3 == 0 and _on_segment(p1, p2, q1):
        return True
    if d4 == 0 and _on_segment(p1, p2, q2):
        return True
    return False


def proper_cross(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """Interior crossing of two segments with four points in general position."""
    return (cross(q1, q2, p1) > 0) != (cross(q1, q2, p2) > 0) and (
        cross(p1, p2, q1) > 0
    ) != (cross(p1, p2, q2) > 0)


@dataclass(frozen=True)
class PointSet:
    """Indexed integer points with an optional balanced coloring.

    ``colors`` holds one color id in ``[0, c)`` per point; ``c == 0`` means
    uncolored. General-position status is computed on first access unless a
    generator that guarantees it passes ``gp=True``.
    """

    points: tuple[Point, ...]
    colors: Optional[tuple[int, ...]] = None
    c: int = 0
    gp: Optional[bool] = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        pts = tuple((int(x), int(y)) for x, y in self.points)
        object.__setattr__(self, "points", pts)
        for x, y in pts:
            if abs(x) > COORD_LIMIT or abs(y) > COORD_LIMIT:
                raise PreconditionError(f"coordinate out of range: {(x, y)}")
        if len(set(pts)) != len(pts):
            raise PreconditionError("points must be distinct")
        if self.colors is not None:
            cols = tuple(int(v) for v in self.colors)
            object.__setattr__(self, "colors", cols)
            if len(cols) != len(pts):
                raise PreconditionError("one color per point required")
            if self.c < 1 or any(not 0 <= v < self.c for v in cols):
                raise PreconditionError("colors must lie in [0, c)")
            if pts:
                counts = Counter(cols)
                sizes = [counts.get(v, 0) for v in range(self.c)]
                if max(sizes) - min(sizes) > 1:
                    raise PreconditionError(f"coloring is not balanced: {sizes}")
        elif self.c != 0:
            raise PreconditionError("c > 0 requires colors")

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    @property
    def colored(self) -> bool:
        return self.colors is not None

    def color(self, i: int) -> int:
        """Color of point ``i``; uncolored sets give every point its own color."""
        return i if self.colors is None else self.colors[i]

    @property
    def general_position(self) -> bool:
        if self.gp is None:
            object.__setattr__(self, "gp", is_general_position(self))
        return self.gp

    def with_colors(self, colors: Sequence[int], c: int) -> "PointSet":
        return PointSet(self.points, tuple(colors), c, gp=self.gp)

    @property
    def array(self) -> np.ndarray:
        """Read-only (n, 2) int64 copy of the coordinates, built once."""
        arr = self.__dict__.get("_array")
        if arr is None:
            arr = np.asarray(self.points, dtype=np.int64).reshape(-1, 2)
            arr.setflags(write=False)
            object.__setattr__(self, "_array", arr)
        return arr


def require_general_position(ps: PointSet) -> None:
    if not ps.general_position:
        raise PreconditionError("point set is not in general position")


def segments_cross(s: Segment, t: Segment, ps: PointSet) -> bool:
    """Closed-segment intersection of two index pairs (shared endpoints count)."""
    P = ps.points
    return closed_segments_intersect(P[s[0]], P[s[1]], P[t[0]], P[t[1]])


def _half(dx: int, dy: int) -> int:
    return 0 if dy > 0 or (dy == 0 and dx > 0) else 1


def angular_comparator(center: Point) -> Callable[[Point, Point], int]:
    """Three-way comparator by counterclockwise angle from the +x axis around ``center``.

    Uses a half-plane split followed by one cross-product sign; no angles are
    computed.
    """
    cx, cy = center

    def cmp(a: Point, b: Point) -> int:
        ax, ay = a[0] - cx, a[1] - cy
        bx, by = b[0] - cx, b[1] - cy
        ha, hb = _half(ax, ay), _half(bx, by)
        if ha != hb:
            return ha - hb
        d = ax * by - ay * bx
        return -1 if d > 0 else (1 if d < 0 else 0)

    return cmp


def sort_around(center: Point, idx: Iterable[int], P: Sequence[Point]) -> list[int]:
    cmp = angular_comparator(center)
    return sorted(idx, key=cmp_to_key(lambda i, j: cmp(P[i], P[j])))


def convex_hull(ps: PointSet, subset: Optional[Sequence[int]] = None) -> list[int]:
    """Extreme points of ``subset`` (default: all) in counterclockwise order.

    Monotone chain; the first vertex is the lexicographically smallest point.
    """
    P = ps.points
    idx = sorted(range(len(P)) if subset is None else set(subset), key=lambda i: P[i])
    if not idx:
        raise PreconditionError("convex hull of an empty set")
    if len(idx) <= 2:
        return idx
    lower: list[int] = []
    for i in idx:
        while len(lower) >= 2 and cross(P[lower[-2]], P[lower[-1]], P[i]) <= 0:
            lower.pop()
        lower.append(i)
    upper: list[int] = []
    for i in reversed(idx):
        while len(upper) >= 2 and cross(P[upper[-2]], P[upper[-1]], P[i]) <= 0:
            upper.pop()
        upper.append(i)
    return lower[:-1] + upper[:-1]


def point_depth(ps: PointSet, i: int) -> int:
    """Fewest points whose removal puts point ``i`` on the hull boundary.

    Rotating-halfplane sweep over the angular order around the point. The
    minimum over all lines is attained by a line through a second point, so
    only those n - 1 directions are examined.
    """
    P = ps.points
    n = len(P)
    if n <= 2:
        return 0
    p = P[i]
    order = sort_around(p, (j for j in range(n) if j != i), P)
    m = len(order)
    vec = [(P[j][0] - p[0], P[j][1] - p[1]) for j in order]
    best = m
    j = 0
    for a in range(m):
        if j < a + 1:
            j = a + 1
        ax, ay = vec[a]
        while j < a + m:
            bx, by = vec[j % m]
            if ax * by - ay * bx > 0:
                j += 1
            else:
                break
        left = j - a - 1
        right = m - 1 - left
        best = min(best, left, right)
    return best


_GP_BLOCK = 1 << 21


def _collinear_run(dx: np.ndarray, dy: np.ndarray) -> bool:
    # exact check inside one run of equal float keys (all pairs share a row)
    vx, vy = [int(v) for v in dx], [int(v) for v in dy]
    return any(vx[a] * vy[b] == vy[a] * vx[b] for a in range(len(vx)) for b in range(a + 1, len(vx)))


def is_general_position(ps: PointSet) -> bool:
    """True iff no three points are collinear.

    For each point, the directions to all later points are keyed by their
    slope; a repeated slope within one row is a collinear triple. Slopes are
    floats, but dy/dx is correctly rounded, so equal rational slopes give
    identical keys; runs of equal keys are then confirmed with exact integer
    cross products. Rows are processed in blocks, O(n^2 log n) overall.
    """
    n = len(ps.points)
    if n <= 2:
        return True
    arr = np.asarray(ps.points, dtype=np.int64)
    rows_per_block = max(1, _GP_BLOCK // n)
    for start in range(0, n - 2, rows_per_block):
        stop = min(n - 2, start + rows_per_block)
        ri, rj = [], []
        for i in range(start, stop):
            ri.append(np.full(n - i - 1, i - start, dtype=np.int64))
            rj.append(np.arange(i + 1, n, dtype=np.int64))
        ri_a = np.concatenate(ri)
        rj_a = np.concatenate(rj)
        dx = arr[rj_a, 0] - arr[ri_a + start, 0]
        dy = arr[rj_a, 1] - arr[ri_a + start, 1]
        flip = (dx < 0) | ((dx == 0) & (dy < 0))
        dx[flip] = -dx[flip]
        dy[flip] = -dy[flip]
        vertical = dx == 0
        with np.errstate(divide="ignore", invalid="ignore"):
            slope = dy / np.where(vertical, 1, dx)
            # monotone map of the slope into (-1, 1), vertical directions at 1
            key = np.where(vertical, 1.0, slope / (1.0 + np.abs(slope))) + 4.0 * ri_a
        if not _has_tie(key):
            continue
        order = np.argsort(key, kind="stable")
        ks = key[order]
        tie = np.flatnonzero(ks[1:] == ks[:-1])
        run_start = tie[np.r_[True, tie[1:] != tie[:-1] + 1]]
        for s0 in run_start:
            s1 = s0 + 1
            while s1 + 1 < len(ks) and ks[s1 + 1] == ks[s0]:
                s1 += 1
            sel = order[s0:s1 + 1]
            if _collinear_run(dx[sel], dy[sel]):
                return False
    return True


def _has_tie(key: np.ndarray) -> bool:
    ks = np.sort(key)
    return bool((ks[1:] == ks[:-1]).any())


def _coord_array(ps: PointSet) -> np.ndarray:
    # int64 is exact while every cross product of differences stays below 2^63
    limit = max((max(abs(x), abs(y)) for x, y in ps.points), default=0)
    return np.asarray(ps.points, dtype=np.int64 if limit <= 2**29 else object).reshape(-1, 2)


def side_signs(ps: PointSet, a: int, b: int, idx: Sequence[int]) -> np.ndarray:
    """Sign of ``cross(P[a], P[b], P[z])`` for every z in ``idx``, exactly."""
    arr = ps.array
    if len(arr) and int(np.abs(arr).max()) > 2**29:
        arr = arr.astype(object)
    z = arr[np.asarray(idx, dtype=np.int64)]
    o, t = arr[a], arr[b]
    d = (t[0] - o[0]) * (z[:, 1] - o[1]) - (t[1] - o[1]) * (z[:, 0] - o[0])
    return np.sign(d).astype(np.int8)


def _orient_arr(o, a, b):
    return (a[..., 0] - o[..., 0]) * (b[..., 1] - o[..., 1]) - (a[..., 1] - o[..., 1]) * (b[..., 0] - o[..., 0])


def _between_arr(a, b, r):
    return (
        (np.minimum(a[..., 0], b[..., 0]) <= r[..., 0])
        & (r[..., 0] <= np.maximum(a[..., 0], b[..., 0]))
        & (np.minimum(a[..., 1], b[..., 1]) <= r[..., 1])
        & (r[..., 1] <= np.maximum(a[..., 1], b[..., 1]))
    )


def crossing_mask(ps: PointSet, seg: Segment, segs: Sequence[Segment], arr: Optional[np.ndarray] = None) -> np.ndarray:
    """Vectorized ``segments_cross(seg, t)`` for every t in ``segs``."""
    arr = _coord_array(ps) if arr is None else arr
    idx = np.asarray(segs, dtype=np.int64).reshape(-1, 2)
    q1, q2 = arr[idx[:, 0]], arr[idx[:, 1]]
    p1 = np.broadcast_to(arr[seg[0]], q1.shape)
    p2 = np.broadcast_to(arr[seg[1]], q1.shape)
    d1 = _orient_arr(q1, q2, p1)
    d2 = _orient_arr(q1, q2, p2)
    d3 = _orient_arr(p1, p2, q1)
    d4 = _orient_arr(p1, p2, q2)
    s1, s2, s3, s4 = (np.sign(d).astype(np.int8) for d in (d1, d2, d3, d4))
    hit = (s1 * s2 < 0) & (s3 * s4 < 0)
    hit |= (s1 == 0) & _between_arr(q1, q2, p1)
    hit |= (s2 == 0) & _between_arr(q1, q2, p2)
    hit |= (s3 == 0) & _between_arr(p1, p2, q1)
    hit |= (s4 == 0) & _between_arr(p1, p2, q2)
    return hit
