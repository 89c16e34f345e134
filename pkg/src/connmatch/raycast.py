"""Last intersection of a ray with a convex hull, via a 2-variable LP.

The ray is expressed in the integer frame ``s = d x w``, ``t = d . w`` with
``w = p - origin``: the ray becomes the half-axis ``s = 0, t >= 0`` and every
coordinate stays integral. The highest point of the hull on that axis is the
optimum of

    minimize b   subject to   a*s_p + b >= t_p   for every point p,

solved by Seidel's randomized incremental algorithm. The answer is reported
combinatorially, as the hull vertex or hull edge containing the exit point.

When every ``s`` and ``t`` fits in 50 bits the scans run over numpy arrays:
floats only nominate candidate constraints (with a rounding margin) and
each candidate is confirmed in exact integers, so both paths return the
same answer.
"""
from __future__ import annotations

from itertools import islice
from typing import Optional, Sequence

import numpy as np

from .errors import NoIntersectionError, PreconditionError
from .geometry import Point, PointSet


def _meet(ci, cj):
    """Intersection (A, B, D) of constraint lines; a = A/D, b = B/D, D > 0."""
    si, ti = ci[0], ci[1]
    sj, tj = cj[0], cj[1]
    den = si - sj
    A = ti - tj
    B = tj * si - ti * sj
    if den < 0:
        den, A, B = -den, -A, -B
    return A, B, den


def _frac_lt(n1: int, d1: int, n2: int, d2: int) -> bool:
    # d1, d2 > 0
    return n1 * d2 < n2 * d1


def _solve_on_line(r, cons, k):
    """Optimum of the LP restricted to the boundary line of constraint ``r``."""
    sr, tr = r[0], r[1]
    best = None
    if sr > 0:
        # maximize a; upper bounds a <= (tr - ti)/(sr - si) from si < sr
        for c in islice(cons, k):
            if c[0] < sr:
                num, den = tr - c[1], sr - c[0]
                if best is None or _frac_lt(num, den, best[0], best[1]):
                    best = (num, den, c)
    else:
        # sr < 0: minimize a; sr == 0: any feasible a, take the largest lower bound
        for c in islice(cons, k):
            if c[0] > sr:
                num, den = c[1] - tr, c[0] - sr
                if best is None or _frac_lt(best[0], best[1], num, den):
                    best = (num, den, c)
    if best is None:
        raise AssertionError("unbounded restricted LP")
    return _meet(r, best[2])


_FAST_LIMIT = 2**50
_CHUNK = 256


def _tight_feature(tight):
    for c in tight:
        if c[0] == 0:
            return (c[2],)
    left = [c[2] for c in tight if c[0] > 0]
    right = [c[2] for c in tight if c[0] < 0]
    if not left or not right:
        raise AssertionError("degenerate LP optimum")
    return (min(left), min(right))


def _tangent_feature(on_ray):
    if not on_ray:
        raise NoIntersectionError("ray misses the convex hull")
    return (max(on_ray, key=lambda c: (c[1], -c[2]))[2],)


def _slack_bound(A, B, D, S, T):
    """Float value of A*s + B - t*D and a bound on its rounding error."""
    Af, Bf, Df = float(A), float(B), float(D)
    x = Af * S
    y = T * Df
    # inputs below 2**50 are exact; a handful of roundings cost < 2**-50 relative
    return x + Bf - y, (np.abs(x) + abs(Bf) + np.abs(y)) * 2.0**-48


def _fast_solve_on_line(S, T, j):
    sr, tr = int(S[j]), int(T[j])
    Sp, Tp = S[:j], T[:j]
    if sr > 0:
        pos = np.flatnonzero(Sp < sr)
        num, den = tr - Tp[pos], sr - Sp[pos]
    else:
        pos = np.flatnonzero(Sp > sr)
        num, den = Tp[pos] - tr, Sp[pos] - sr
    if not len(pos):
        raise AssertionError("unbounded restricted LP")
    # differences of integers below 2**50 are exact floats, so the correctly
    # rounded quotient is monotone and the exact optimum shares the float one
    q = num / den
    target = q.min() if sr > 0 else q.max()
    best = None
    for k in np.flatnonzero(q == target).tolist():
        nk, dk = int(num[k]), int(den[k])
        if best is None or (_frac_lt(nk, dk, best[0], best[1]) if sr > 0 else _frac_lt(best[0], best[1], nk, dk)):
            best = (nk, dk, int(pos[k]))
    c = best[2]
    return _meet((sr, tr), (int(S[c]), int(T[c])))


def _fast_seidel(arr, idx, perm, origin, direction):
    """Vectorized path; None when the integer frame exceeds 50 bits.

    ``s`` and ``t`` are kept only as float64, which holds them exactly, to
    keep the working set small.
    """
    dx, dy = direction
    ox, oy = origin
    dmax = max(abs(dx), abs(dy))
    if max(abs(ox), abs(oy)) > 2**31 or dmax > 2**31:
        return None
    W = arr - np.array([ox, oy], dtype=np.int64)
    if len(W) and int(np.abs(W).max()) * dmax >= _FAST_LIMIT // 2:
        return None
    S = (dx * W[:, 1] - dy * W[:, 0]).astype(float)
    T = (dx * W[:, 0] + dy * W[:, 1]).astype(float)
    del W
    S, T, I = S[perm], T[perm], idx[perm]
    pos, neg = S > 0, S < 0
    if not (pos.any() and neg.any()):
        on = np.flatnonzero((S == 0) & (T >= 0)).tolist()
        return _tangent_feature([(0, int(T[k]), int(I[k])) for k in on])
    fp, fn = int(pos.argmax()), int(neg.argmax())
    rest = np.ones(len(S), dtype=bool)
    rest[[fp, fn]] = False
    order = np.concatenate(([fp, fn], np.flatnonzero(rest)))
    S, T, I = S[order], T[order], I[order]
    m = len(S)
    A, B, D = _meet((int(S[0]), int(T[0])), (int(S[1]), int(T[1])))
    k = 2
    while k < m:
        hi = min(m, k + max(_CHUNK, k))
        val, err = _slack_bound(A, B, D, S[k:hi], T[k:hi])
        hit = None
        for j in (np.flatnonzero(val < err) + k).tolist():
            if A * int(S[j]) + B < int(T[j]) * D:
                hit = j
                break
        if hit is None:
            k = hi
            continue
        A, B, D = _fast_solve_on_line(S, T, hit)
        k = hit + 1

    if B < 0:
        raise NoIntersectionError("convex hull lies behind the ray origin")
    val, err = _slack_bound(A, B, D, S, T)
    near = np.flatnonzero(np.abs(val) <= err).tolist()
    tight = [(int(S[j]), int(T[j]), int(I[j])) for j in near]
    return _tight_feature([c for c in tight if A * c[0] + B == c[1] * D])


def last_ray_hull_intersection(
    ps: PointSet,
    origin: Point,
    direction: Point,
    subset: Optional[Sequence[int]] = None,
    seed: int = 0,
) -> tuple[int, ...]:
    """Hull feature where the ray ``origin + t*direction`` (t >= 0) last meets CH.

    Returns ``(i,)`` when the exit point is the hull vertex ``i`` and
    ``(i, j)`` when it lies in the relative interior of hull edge ``ij``; in
    the edge case ``i`` is left of the ray and ``j`` right of it.

    Raises NoIntersectionError when the ray misses the hull.
    """
    dx, dy = direction
    if dx == 0 and dy == 0:
        raise PreconditionError("ray direction must be non-zero")
    ox, oy = origin
    P = ps.points
    idx = range(len(P)) if subset is None else subset
    if not len(idx):
        raise PreconditionError("empty point set")
    perm = np.random.default_rng(seed).permutation(len(idx))
    idx_arr = np.arange(len(P)) if subset is None else np.asarray(idx, dtype=np.int64)
    arr = ps.array if subset is None else ps.array[idx_arr]
    res = _fast_seidel(arr, idx_arr, perm, origin, direction)
    if res is not None:
        return res
    return _seidel(P, idx, perm.tolist(), origin, direction)


def _seidel(P, idx, perm, origin, direction):
    """Pure integer path for coordinates too large for the vectorized scans."""
    dx, dy = direction
    ox, oy = origin
    cons = []
    has_pos = has_neg = False
    for k in perm:
        i = idx[k]
        wx, wy = P[i][0] - ox, P[i][1] - oy
        s = dx * wy - dy * wx
        t = dx * wx + dy * wy
        cons.append((s, t, i))
        if s > 0:
            has_pos = True
        elif s < 0:
            has_neg = True

    if not (has_pos and has_neg):
        # tangent (or miss): the hull meets the ray's line only along s == 0
        return _tangent_feature([c for c in cons if c[0] == 0 and c[1] >= 0])

    first_pos = next(k for k, c in enumerate(cons) if c[0] > 0)
    first_neg = next(k for k, c in enumerate(cons) if c[0] < 0)
    # the two bounding constraints go first so every prefix LP is bounded
    cons = [cons[first_pos], cons[first_neg]] + [
        c for k, c in enumerate(cons) if k != first_pos and k != first_neg
    ]
    A, B, D = _meet(cons[0], cons[1])
    for k in range(2, len(cons)):
        s, t, _ = cons[k]
        if A * s + B < t * D:
            A, B, D = _solve_on_line(cons[k], cons, k)

    if B < 0:
        raise NoIntersectionError("convex hull lies behind the ray origin")
    return _tight_feature([c for c in cons if A * c[0] + B == c[1] * D])
