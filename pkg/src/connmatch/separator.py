"""Balanced separators: weighted triangle splitting and short separating paths.

All region tests are orientation signs. Two-edge paths with extremal
endpoints are classified by the chord joining the endpoints plus the
triangle the path spans; three-edge paths by the parity of crossings with a
segment to a reference point that lies off the path.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import PreconditionError
from .geometry import PointSet, convex_hull, cross, proper_cross, require_general_position, side_signs
from .raycast import last_ray_hull_intersection
from .selection import select_kth, select_kth_keyed


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class TriangleSplitRequest:
    p0: int
    p1: int
    p2: int
    interior: tuple[int, ...]
    w0: int
    w1: int
    w2: int

    @property
    def m(self) -> int:
        return len(self.interior)

    @property
    def weights(self) -> tuple[int, int, int]:
        return (self.w0, self.w1, self.w2)


@dataclass(frozen=True)
class Separator:
    path: tuple[int, ...]
    sideA: tuple[int, ...]
    sideB: tuple[int, ...]
    polychromatic: bool

    @property
    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self.path, self.path[1:]))

    @property
    def min_side(self) -> int:
        return min(len(self.sideA), len(self.sideB))


def _make_separator(ps: PointSet, path: Sequence[int], X: Sequence[int], Y: Sequence[int]) -> Separator:
    X, Y = tuple(sorted(X)), tuple(sorted(Y))
    if (len(Y), Y) < (len(X), X):
        X, Y = Y, X
    poly = all(ps.color(a) != ps.color(b) for a, b in zip(path, path[1:]))
    return Separator(tuple(path), X, Y, poly)


# ---------------------------------------------------------------- triangles


def _strictly_inside(P, a: int, b: int, c: int, z: int) -> bool:
    s1 = cross(P[a], P[b], P[z])
    s2 = cross(P[b], P[c], P[z])
    s3 = cross(P[c], P[a], P[z])
    return (s1 > 0 and s2 > 0 and s3 > 0) or (s1 < 0 and s2 < 0 and s3 < 0)


def _split(ps: PointSet, tri: tuple[int, int, int], interior: Sequence[int], weights: Sequence[int]) -> list[int]:
    """Points of ``interior`` that survive the three angular scans.

    For each i the scan rotates around ``tri[i-1]`` from ``tri[i]`` toward
    ``tri[i+1]`` and discards the first ``m - w_i - 1`` points. Weights
    outside ``[0, m)`` are tolerated (nothing or everything is discarded).
    """
    P = ps.points
    m = len(interior)
    gone: set[int] = set()
    for i in range(3):
        cnt = min(m, m - weights[i] - 1)
        if cnt <= 0:
            continue
        center, start, end = P[tri[i - 1]], P[tri[i]], P[tri[(i + 1) % 3]]
        sgn = 1 if cross(center, start, end) > 0 else -1

        def less(a, b, center=center, sgn=sgn):
            return cross(center, P[a], P[b]) * sgn > 0

        pivot = select_kth(interior, less, cnt)
        for q in interior:
            if not less(pivot, q):
                gone.add(q)
    return sorted(q for q in interior if q not in gone)


def split_triangle(req: TriangleSplitRequest, ps: PointSet) -> list[int]:
    """Interior points q whose three subtriangles respect the weights.

    For every returned q and every i, the triangle spanned by q and the two
    triangle vertices other than ``p_i`` holds at most ``w_i`` of the
    interior points. At least ``w0 + w1 + w2 - 2m + 3`` points are returned.
    """
    m = req.m
    w = req.weights
    if m < 1:
        raise PreconditionError("triangle split needs at least one interior point")
    if any(not 0 <= wi < m for wi in w):
        raise PreconditionError(f"weights must lie in [0, {m}): {w}")
    if sum(w) <= 2 * m - 3:
        raise PreconditionError("weights too small: w0 + w1 + w2 must exceed 2m - 3")
    if len(set(req.interior)) != m:
        raise PreconditionError("duplicate interior points")
    P = ps.points
    tri = (req.p0, req.p1, req.p2)
    if cross(P[req.p0], P[req.p1], P[req.p2]) == 0:
        raise PreconditionError("degenerate triangle")
    for z in req.interior:
        if z in tri or not _strictly_inside(P, *tri, z):
            raise PreconditionError(f"point {z} is not strictly inside the triangle")
    return _split(ps, tri, req.interior, w)


def corollary_split_point(p0: int, p1: int, p2: int, interior: Sequence[int], ps: PointSet) -> int:
    """An interior point leaving at most ceil((2m-2)/3) points in each subtriangle."""
    m = len(interior)
    if m < 1:
        raise PreconditionError("need at least one interior point")
    w = _ceil_div(2 * m - 2, 3)
    return split_triangle(TriangleSplitRequest(p0, p1, p2, tuple(interior), w, w, w), ps)[0]


# ---------------------------------------------------------------- classification


def classify_two_edge(ps: PointSet, path: Sequence[int], pts: Sequence[int]) -> tuple[list[int], list[int]]:
    """Split ``pts`` by the path s-w-t whose endpoints s, t are extremal.

    The first group is the region cut off by the path away from w's side of
    chord st: points inside triangle(s, w, t) together with points beyond the
    chord. Everything else forms the second group.
    """
    P = ps.points
    s, w, t = path
    side_w = cross(P[s], P[t], P[w]) > 0
    X, Y = [], []
    for z in pts:
        if (cross(P[s], P[t], P[z]) > 0) != side_w or _strictly_inside(P, s, w, t, z):
            X.append(z)
        else:
            Y.append(z)
    return X, Y


def classify_by_parity(ps: PointSet, path: Sequence[int], ref: int, pts: Sequence[int]) -> tuple[list[int], list[int]]:
    """Split ``pts`` by the parity of crossings between z-ref and the path.

    Odd parity means z lies across the path from ``ref``. Valid for any path
    joining two extremal points, self-crossing or not.
    """
    P = ps.points
    edges = list(zip(path, path[1:]))
    odd, even = [], []
    for z in pts:
        k = sum(proper_cross(P[z], P[ref], P[a], P[b]) for a, b in edges)
        (odd if k % 2 else even).append(z)
    return odd, even


def _line_split(ps: PointSet, s: int, t: int, pts: Sequence[int]) -> tuple[list[int], list[int]]:
    pts = np.asarray(pts, dtype=np.int64)
    on_left = side_signs(ps, s, t, pts) > 0
    return pts[on_left].tolist(), pts[~on_left].tolist()


# ---------------------------------------------------------------- the fan around q0


class _Fan:
    """Points ordered by angle around the lowest point q0."""

    def __init__(self, ps: PointSet):
        P = ps.points
        self.ps = ps
        self.n = len(P)
        ys = ps.array[:, 1]
        lowest = np.flatnonzero(ys == ys.min())
        self.q0 = int(lowest[ps.array[lowest, 0].argmin()])
        self.others = list(range(self.q0)) + list(range(self.q0 + 1, self.n))
        o = P[self.q0]

        def less(a: int, b: int) -> bool:
            return cross(o, P[a], P[b]) > 0

        self.less: Callable[[int, int], bool] = less
        # pseudo-angle -dx / (|dx| + dy): every other point has dy > 0 or
        # dx > 0, and a correctly rounded quotient of exact integers never
        # reverses the true angular order
        V = np.delete(ps.array - ps.array[self.q0], self.q0, axis=0).astype(float)
        self.keys = -V[:, 0] / (np.abs(V[:, 0]) + V[:, 1])

    def kth(self, k: int) -> int:
        return select_kth_keyed(self.others, self.keys, self.less, k)

    def rank(self, x: int) -> int:
        less = self.less
        return 1 + sum(1 for p in self.others if less(p, x))

    def between(self, a: int, b: int) -> list[int]:
        less = self.less
        return [p for p in self.others if less(a, p) and less(p, b)]


def _hom(p):
    return (p[0], p[1], 1)


def _cross3(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _exit_point(ps: PointSet, q0: int, qk: int, feature: tuple[int, ...]):
    P = ps.points
    if len(feature) == 1:
        return _hom(P[feature[0]])
    ray = _cross3(_hom(P[q0]), _hom(P[qk]))
    edge = _cross3(_hom(P[feature[0]]), _hom(P[feature[1]]))
    return _cross3(ray, edge)


def _farthest_beyond(fan: _Fan, a: int, b: int, cc: int) -> Optional[int]:
    """First point maximizing a*x + b*y + cc among those where it is positive."""
    P = fan.ps.points
    others = np.asarray(fan.others, dtype=np.int64)
    cand = others
    if max(abs(a), abs(b), abs(cc)).bit_length() < 900:
        # float screen: keep every point whose value might reach the maximum
        X = fan.ps.array[others].astype(float)
        u, w, cf = float(a) * X[:, 0], float(b) * X[:, 1], float(cc)
        val = u + w + cf
        err = (np.abs(u) + np.abs(w) + abs(cf)) * 2.0**-48
        cand = others[(val + err > 0) & (val + err >= (val - err).max())]
    best, z = 0, None
    for i in cand.tolist():
        v = a * P[i][0] + b * P[i][1] + cc
        if v > best:
            best, z = v, i
    return z


def _cone(fan: _Fan, k: int, seed: int):
    """Extremal point strictly between q_k and q_{n-k}, else the hull edge spanning them.

    Returns ``("extremal", z)`` or ``("edge", qa, qb)`` with qa before qb.
    """
    ps, P, q0 = fan.ps, fan.ps.points, fan.q0
    qk, qnk = fan.kth(k), fan.kth(fan.n - k)
    o = P[q0]
    f1 = last_ray_hull_intersection(ps, o, (P[qk][0] - o[0], P[qk][1] - o[1]), seed=seed)
    f2 = last_ray_hull_intersection(ps, o, (P[qnk][0] - o[0], P[qnk][1] - o[1]), seed=seed + 1)
    line = _cross3(_exit_point(ps, q0, qk, f1), _exit_point(ps, q0, qnk, f2))
    a, b, cc = line
    if a * o[0] + b * o[1] + cc > 0:
        a, b, cc = -a, -b, -cc
    z = _farthest_beyond(fan, a, b, cc)
    if z is not None:
        return ("extremal", z)
    if len(f1) == 2:
        u, w = f1
    elif len(f2) == 2:
        u, w = f2
    else:
        u, w = f1[0], f2[0]
    if fan.less(w, u):
        u, w = w, u
    return ("edge", u, w)


def _edge_setup(fan: _Fan, qa: int, qb: int):
    a, b = fan.rank(qa), fan.rank(qb)
    interior = fan.between(qa, qb)
    assert len(interior) == b - a - 1
    return a, b, interior


def _regions_single(ps: PointSet, tri: tuple[int, int, int], q: int) -> list[tuple[tuple[int, ...], list[int], list[int]]]:
    """For each j: (path around region opposite p_j, region points, the rest)."""
    rest = [i for i in range(len(ps)) if i != q and i not in tri]
    out = []
    for j in range(3):
        path = (tri[j - 1], q, tri[(j + 1) % 3])
        X, Y = classify_two_edge(ps, path, [i for i in rest])
        Y = Y + [tri[j]]
        out.append((path, X, Y))
    return out


def _largest(regions):
    # first region of maximum size
    return max(regions, key=lambda r: len(r[1]))


# ---------------------------------------------------------------- uncolored


def _small_separator(ps: PointSet) -> Separator:
    n = len(ps)
    hull = convex_hull(ps)
    if n == 4 and len(hull) == 4:
        return _make_separator(ps, (hull[0], hull[2]), (hull[1],), (hull[3],))
    path = (hull[0], hull[1])
    return _make_separator(ps, path, (), [i for i in range(n) if i not in path])


def separating_path(ps: PointSet, seed: int = 0) -> Separator:
    """A path of one or two edges between extremal points with ceil((n-4)/3) points on each side."""
    n = len(ps)
    if n < 2:
        raise PreconditionError("need at least two points")
    require_general_position(ps)
    if n <= 4:
        return _small_separator(ps)
    fan = _Fan(ps)
    k = _ceil_div(n - 4, 3)
    kind = _cone(fan, k, seed)
    if kind[0] == "extremal":
        z = kind[1]
        X, Y = _line_split(ps, fan.q0, z, [i for i in fan.others if i != z])
        return _make_separator(ps, (fan.q0, z), X, Y)
    _, qa, qb = kind
    a, b, interior = _edge_setup(fan, qa, qb)
    r = _ceil_div(2 * n - 8, 3)
    tri = (fan.q0, qa, qb)
    Q = _split(ps, tri, interior, (r, r - (n - b - 1), r - (a - 1)))
    assert Q, "triangle split returned no point"
    path, X, Y = _largest(_regions_single(ps, tri, Q[0]))
    return _make_separator(ps, path, X, Y)


# ---------------------------------------------------------------- colored


def colored_threshold(c: int) -> int:
    """Smallest n for which the colored separators promise their side bounds."""
    return 60 * c


def _check_colored(ps: PointSet, c_min: int, strict: bool) -> None:
    if not ps.colored:
        raise PreconditionError("colored point set required")
    if ps.c < c_min:
        raise PreconditionError(f"needs at least {c_min} colors, got {ps.c}")
    if strict and len(ps) < colored_threshold(ps.c):
        raise PreconditionError(f"n = {len(ps)} below threshold {colored_threshold(ps.c)} for c = {ps.c}")
    require_general_position(ps)


def _degenerate(ps: PointSet) -> Separator:
    """A single bichromatic edge with every other point on one side."""
    hull = convex_hull(ps)
    a = hull[0]
    b = next((i for i in hull[1:] if ps.color(i) != ps.color(a)), None)
    if b is None:
        b = next(i for i in range(len(ps)) if ps.color(i) != ps.color(a))
    return _make_separator(ps, (a, b), (), [i for i in range(len(ps)) if i not in (a, b)])


def _best_valid_single(ps: PointSet, tri, Q) -> Optional[Separator]:
    """Non-strict fallback: any q in Q and region whose path is polychromatic."""
    col = ps.color
    for q in Q:
        options = [r for r in _regions_single(ps, tri, q) if col(r[0][0]) != col(q) != col(r[0][2])]
        if options:
            path, X, Y = max(options, key=lambda r: min(len(r[1]), len(r[2])))
            return _make_separator(ps, path, X, Y)
    return None


def _extremal_colored(ps: PointSet, fan: _Fan, z: int) -> Separator:
    P, col, q0 = ps.points, ps.color, fan.q0
    n = len(ps)
    if col(q0) != col(z):
        X, Y = _line_split(ps, q0, z, [i for i in fan.others if i != z])
        return _make_separator(ps, (q0, z), X, Y)
    # nearest differently colored point on each angular side of z
    less = fan.less
    below = above = None
    for p in fan.others:
        if col(p) == col(q0):
            continue
        if less(p, z):
            if below is None or less(below, p):
                below = p
        elif above is None or less(p, above):
            above = p
    j = fan.rank(z)
    best = None
    for w in (below, above):
        if w is None:
            continue
        ell = fan.rank(w)
        g = min(ell - 1, n - 1 - j) if ell < j else min(j - 1, n - 1 - ell)
        if best is None or g > best[0]:
            best = (g, w)
    w = best[1]
    path = (q0, w, z)
    X, Y = classify_two_edge(ps, path, [i for i in fan.others if i not in (w, z)])
    return _make_separator(ps, path, X, Y)


def polychromatic_separating_path_c4(ps: PointSet, strict: bool = True, seed: int = 0) -> Separator:
    """Polychromatic separating path of length 1 or 2 for c >= 4 colors.

    Each side holds at least (c-3)n/(3c) - 3 points once n >= 60c. With
    ``strict=False`` smaller inputs are accepted and only validity is promised.
    """
    _check_colored(ps, 4, strict)
    n = len(ps)
    if n < 5:
        return _colored_small(ps)
    fan = _Fan(ps)
    kind = _cone(fan, _ceil_div(n - 4, 3), seed)
    if kind[0] == "extremal":
        return _extremal_colored(ps, fan, kind[1])
    _, qa, qb = kind
    a, b, interior = _edge_setup(fan, qa, qb)
    c = ps.c
    w0 = _ceil_div(3 * n + 2 * c * n, 3 * c)
    tri = (fan.q0, qa, qb)
    Q = _split(ps, tri, interior, (w0, w0 - (n - b - 1), w0 - (a - 1)))
    tri_cols = {ps.color(p) for p in tri}
    q = next((x for x in Q if ps.color(x) not in tri_cols), None)
    if q is not None:
        path, X, Y = _largest(_regions_single(ps, tri, q))
        return _make_separator(ps, path, X, Y)
    if strict:
        raise AssertionError("no splitting point with a fourth color")
    return _best_valid_single(ps, tri, Q) or _degenerate(ps)


def _colored_small(ps: PointSet) -> Separator:
    s = _small_separator(ps)
    return s if s.polychromatic else _degenerate(ps)


def polychromatic_separator_3edges(ps: PointSet, strict: bool = True, seed: int = 0) -> Separator:
    """Polychromatic path of at most three edges splitting P into two large groups.

    Every segment between the groups meets the path; each group holds at
    least (c-1)n/(3c) - 4 points once n >= 60c. The path may cross itself.
    """
    _check_colored(ps, 2, strict)
    n = len(ps)
    if n < 5:
        return _colored_small(ps)
    fan = _Fan(ps)
    kind = _cone(fan, _ceil_div(n - 4, 3), seed)
    if kind[0] == "extremal":
        return _extremal_colored(ps, fan, kind[1])
    _, qa, qb = kind
    a, b, interior = _edge_setup(fan, qa, qb)
    c = ps.c
    w0 = _ceil_div(n + 2 * c * n, 3 * c)
    tri = (fan.q0, qa, qb)
    Q = _split(ps, tri, interior, (w0, w0 - (n - b - 1), w0 - (a - 1)))
    col = ps.color
    tri_cols = {col(p) for p in tri}
    q2 = None
    if Q:
        q1 = Q[0]
        q2 = next((x for x in Q if col(x) != col(q1)), None)
        for q in (q1, q2):
            if q is not None and col(q) not in tri_cols:
                path, X, Y = _largest(_regions_single(ps, tri, q))
                return _make_separator(ps, path, X, Y)
    if q2 is None:
        if strict:
            raise AssertionError("splitting set has a single color")
        return _best_valid_single(ps, tri, Q) or _degenerate(ps)
    # every p_i gets a partner of another color; q1 q2 joins the partners
    partner = [q1 if col(p) != col(q1) else q2 for p in tri]
    regions = []
    for j in range(3):
        s, t = tri[j - 1], tri[(j + 1) % 3]
        path = [s, partner[j - 1]]
        if partner[(j + 1) % 3] != partner[j - 1]:
            path.append(partner[(j + 1) % 3])
        path.append(t)
        rest = [i for i in range(n) if i not in path]
        odd, even = classify_by_parity(ps, path, tri[j], rest)
        regions.append((tuple(path), odd, even))
    path, X, Y = _largest(regions)
    return _make_separator(ps, path, X, Y)
