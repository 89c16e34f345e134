"""Connected matchings: across a segment, uncolored, deepest point, and colored."""
from __future__ import annotations

from collections import Counter, deque
from functools import cmp_to_key
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .crossing import CrossingInstance, Matching, all_cross, maximal_crossing_matching
from .errors import InfeasibleError, PreconditionError
from .geometry import PointSet, convex_hull, cross, point_depth, proper_cross, require_general_position
from .separator import (
    Separator,
    colored_threshold,
    polychromatic_separating_path_c4,
    polychromatic_separator_3edges,
    separating_path,
)


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def m_bound(a: int, b: int) -> Fraction:
    """Guaranteed size for a matching across a segment with a and b points on its sides."""
    if not 0 <= b <= a:
        raise PreconditionError(f"need 0 <= b <= a, got a={a}, b={b}")
    if a <= 2 * b + 3:
        return Fraction(1 + b)
    if a <= 7 * b + 3:
        return Fraction(a + 3 * b + 2, 5)
    return Fraction(1 + 2 * b)


# ---------------------------------------------------------------- bounds


UNCOLORED = "uncolored"
DEEP = "deep"
COLORS1 = "colors1"
COLORS2 = "colors2"


def guaranteed_bound(theorem: str, n: int, c: int = 0, depth: int = 0) -> Fraction:
    """Lower bound promised by the tagged result, as an exact rational."""
    if theorem == UNCOLORED:
        return Fraction(5 * n + 1, 27)
    if theorem == DEEP:
        return Fraction(depth)
    if theorem == COLORS1:
        return Fraction((c - 3) * n, 6 * c) - Fraction(1, 2)
    if theorem == COLORS2:
        return Fraction((c - 1) * n, 9 * c) - Fraction(1, 3)
    raise ValueError(f"unknown theorem tag {theorem!r}")


@dataclass(frozen=True)
class BoundReport:
    n: int
    c: int
    achieved: int
    guaranteed: Fraction
    theorem: str
    holds: bool = True  # whether the theorem's preconditions were met
    depth: int = 0

    @property
    def required(self) -> int:
        return max(0, _ceil(self.guaranteed))

    @property
    def ok(self) -> bool:
        return not self.holds or self.achieved >= self.required


# ---------------------------------------------------------------- across a segment


def antipodal_connected_matching(convex_pts: Sequence[int], ps: Optional[PointSet] = None) -> Matching:
    """Pair hull vertex i with vertex i + k//2; all these chords cross pairwise."""
    k = len(convex_pts)
    h = k // 2
    return [(convex_pts[i], convex_pts[i + h]) for i in range(h)]


def _hull_deletion(P, upper, lower, p):
    """Point of the current convex set lying inside a triangle once p is added.

    Returns ``(q, q1, q2)`` with q inside triangle(p, q1, q2), or None when
    adding p keeps the set in convex position.
    """
    if len(upper) < 2:
        return None
    r = upper[-1]
    pop_u = cross(P[upper[-2]], P[r], P[p]) >= 0
    pop_l = cross(P[lower[-2]], P[r], P[p]) <= 0
    if pop_u and pop_l:
        return r, upper[-2], lower[-2]
    if pop_u and len(upper) >= 3 and cross(P[upper[-3]], P[upper[-2]], P[p]) >= 0:
        return upper[-2], upper[-3], r
    if pop_l and len(lower) >= 3 and cross(P[lower[-3]], P[lower[-2]], P[p]) <= 0:
        return lower[-2], lower[-3], r
    return None


def _insert(P, upper, lower, p):
    if upper:
        if len(upper) >= 2 and cross(P[upper[-2]], P[upper[-1]], P[p]) >= 0:
            upper.pop()
        if len(lower) >= 2 and cross(P[lower[-2]], P[lower[-1]], P[p]) <= 0:
            lower.pop()
    upper.append(p)
    lower.append(p)


def _drop(chain: deque, dead: set) -> None:
    tail = [chain.pop() for _ in range(min(3, len(chain)))]
    chain.extend(x for x in reversed(tail) if x not in dead)
    if chain and chain[0] in dead:
        chain.popleft()


def _repair(P, upper: deque, lower: deque) -> None:
    """Restore both chains to run from the leftmost to the rightmost point."""
    if not upper and not lower:
        return
    if not upper:
        upper.extend([lower[0], lower[-1]] if len(lower) > 1 else [lower[0]])
    if not lower:
        lower.extend([upper[0], upper[-1]] if len(upper) > 1 else [upper[0]])
    left = min(upper[0], lower[0], key=P.__getitem__)
    if upper[0] != left:
        upper.appendleft(left)
    if lower[0] != left:
        lower.appendleft(left)
    right = max(upper[-1], lower[-1], key=P.__getitem__)
    if upper[-1] != right:
        upper.append(right)
    if lower[-1] != right:
        lower.append(right)


def _convex_order(P, upper: deque, lower: deque) -> list[int]:
    """Counterclockwise order of a set in convex position given its chains."""
    if len(upper) <= 1:
        return list(upper)
    return list(lower) + list(reversed(list(upper)[1:-1]))


def connected_matching_across_segment(
    u: int, v: int, A: Sequence[int], B: Sequence[int], ps: PointSet, check: bool = True
) -> Matching:
    """Connected matching containing uv of size at least ceil(m_bound(|A|, |B|)).

    Every A x B segment must cross uv, with A and B strictly on opposite
    sides of its supporting line. Points of A are inserted in lexicographic
    order into an incremental hull; whenever an insertion would bury a point
    q inside a triangle of hull points, q is matched to a point of B and the
    triangle edge crossed by that segment joins the matching.
    """
    if len(B) > len(A):
        raise PreconditionError("need |B| <= |A|")
    inst = CrossingInstance.build(ps, u, v, A, B)
    if check and not all_cross(inst, ps):
        raise PreconditionError("some A x B segment misses uv")
    P = ps.points
    M: Matching = [(u, v)]
    order = sorted(A, key=P.__getitem__)
    Bq = sorted(B)
    bptr = 0
    alive_a, alive_b, rounds = len(A), len(B), 0
    upper: deque = deque()
    lower: deque = deque()
    pos = 0
    while pos < len(order) and alive_a > alive_b > 0:
        p = order[pos]
        found = _hull_deletion(P, upper, lower, p)
        if found is None:
            _insert(P, upper, lower, p)
            pos += 1
            continue
        q, q1, q2 = found
        r = Bq[bptr]
        bptr += 1
        tri = (p, q1, q2)
        edge = next(
            (x, y) for x, y in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0]))
            if proper_cross(P[q], P[r], P[x], P[y])
        )
        M.append((q, r))
        M.append(edge)
        dead = {q, *edge}
        alive_a -= 3
        alive_b -= 1
        rounds += 1
        _drop(upper, dead)
        _drop(lower, dead)
        _repair(P, upper, lower)
        if p in dead:
            pos += 1
    assert len(M) == 1 + 2 * rounds and alive_a == len(A) - 3 * rounds and alive_b == len(B) - rounds

    a_rest = list(dict.fromkeys(list(upper) + list(lower))) + order[pos:]
    b_rest = Bq[bptr:]
    assert len(a_rest) == alive_a and len(b_rest) == alive_b
    if not b_rest:
        return M
    if len(a_rest) <= len(b_rest):
        assert rounds == -(-(len(A) - len(B)) // 2), "endgame rounds mismatch"
        return M + _cross_match(inst, ps, a_rest, b_rest)
    # all of A processed and the survivors are in convex position
    hull = _convex_order(P, upper, lower)
    first = M + list(zip(sorted(a_rest)[: len(b_rest)], b_rest))
    second = antipodal_connected_matching(hull)
    return first if len(first) >= len(second) else second


def _cross_match(inst: CrossingInstance, ps: PointSet, a_rest, b_rest) -> Matching:
    # any pairing works since every A x B segment crosses uv
    if len(a_rest) <= len(b_rest):
        return list(zip(a_rest, sorted(b_rest)[: len(a_rest)]))
    return list(zip(sorted(a_rest)[: len(b_rest)], b_rest))


# ---------------------------------------------------------------- uncolored pipeline


def _side_matching(ps: PointSet, e: tuple[int, int], X: Sequence[int], Y: Sequence[int]) -> Matching:
    """Maximal matching between X and Y among segments crossing e.

    The endpoints of e need not separate X from Y; the points are split by
    the supporting line of e and each compatible half-pair is swept.
    """
    P = ps.points
    s, t = e
    xl = [x for x in X if cross(P[s], P[t], P[x]) > 0]
    xr = [x for x in X if cross(P[s], P[t], P[x]) < 0]
    yl = [y for y in Y if cross(P[s], P[t], P[y]) > 0]
    yr = [y for y in Y if cross(P[s], P[t], P[y]) < 0]
    out = maximal_crossing_matching(CrossingInstance.build(ps, s, t, xl, yr), ps)
    out += [(x, y) for y, x in maximal_crossing_matching(CrossingInstance.build(ps, s, t, yl, xr), ps)]
    return out


def connected_matching_uncolored(ps: PointSet, seed: int = 0) -> tuple[Matching, BoundReport]:
    """Connected matching of size at least (5n+1)/27 in O(n log n) time."""
    n = len(ps)
    if n < 2:
        raise PreconditionError("need at least two points")
    require_general_position(ps)
    sep = separating_path(ps, seed=seed)
    A, B = list(sep.sideB), list(sep.sideA)  # |B| <= |A|
    if len(sep.path) == 2:
        e = (sep.path[0], sep.path[1])
        best = [e] + list(zip(sorted(A)[: len(B)], sorted(B)))
    else:
        e1, e2 = sep.edges
        m1 = [e1] + _side_matching(ps, e1, A, B)
        used = {x for pair in m1[1:] for x in pair}
        a2 = [x for x in A if x not in used]
        b2 = [y for y in B if y not in used]
        # m1 is maximal, so every a2 x b2 segment crosses e2 instead
        m2 = [e2] + list(zip(sorted(a2)[: len(b2)], sorted(b2)))
        candidates = [m1, m2]
        if b2:
            candidates.append(connected_matching_across_segment(e2[0], e2[1], a2, b2, ps, check=False))
        best = max(candidates, key=len)
    report = BoundReport(n, 0, len(best), guaranteed_bound(UNCOLORED, n), UNCOLORED)
    return best, report


# ---------------------------------------------------------------- deepest point


def deep_point_matching(ps: PointSet) -> tuple[Matching, BoundReport]:
    """Connected matching of size at least the maximum point depth.

    One edge joins the deepest point p to a hull vertex a; the remaining
    edges pair points on opposite sides of line pa so that each crosses pa.
    """
    n = len(ps)
    if n < 2:
        raise PreconditionError("need at least two points")
    require_general_position(ps)
    P = ps.points
    depths = [point_depth(ps, i) for i in range(n)]
    d = max(depths)
    p = depths.index(d)
    hull = convex_hull(ps)
    a = min(i for i in hull if i != p)
    M: Matching = [(p, a)]
    if d >= 2:
        ups, downs = [], []
        for i in range(n):
            if i in (p, a):
                continue
            (ups if cross(P[p], P[a], P[i]) > 0 else downs).append(i)

        def ccw_from_a(i, j):
            c = cross(P[p], P[i], P[j])
            return -1 if c > 0 else (1 if c < 0 else 0)

        # v_1.. counterclockwise from the ray p->a; u_1.. clockwise from it
        vs = sorted(ups, key=cmp_to_key(ccw_from_a))
        us = sorted(downs, key=cmp_to_key(lambda i, j: -ccw_from_a(i, j)))
        for i in range(1, d):
            M.append((us[i - 1], vs[d - i - 1]))
    report = BoundReport(n, ps.c, len(M), guaranteed_bound(DEEP, n, depth=d), DEEP, depth=d)
    return M, report


# ---------------------------------------------------------------- colored


def _bichromatic_optimum(ca: Counter, cb: Counter, na: int, nb: int) -> int:
    best = min(na, nb)
    for col in set(ca) | set(cb):
        best = min(best, na + nb - ca[col] - cb[col])
    return best


def max_bichromatic_size(A: Sequence[int], B: Sequence[int], ps: PointSet) -> int:
    """Largest matching between A and B using only bichromatic pairs."""
    ca = Counter(ps.color(x) for x in A)
    cb = Counter(ps.color(y) for y in B)
    return _bichromatic_optimum(ca, cb, len(A), len(B))


def greedy_polychromatic_matching(A: Sequence[int], B: Sequence[int], ps: PointSet, strict: bool = True) -> Matching:
    """Bichromatic matching between A and B drawn from the most popular classes.

    Each step pairs a point of a large remaining class of A with one of a
    large class of B. Candidates are the two largest classes on each side
    plus the two colors with the largest combined count (only those can be
    the binding color); among them the pair keeping the exact optimum of
    the remainder is taken, preferring popular classes. The result always
    has ``max_bichromatic_size`` edges, which is min(|A|, |B|) unless one
    color dominates both sides. With ``strict`` an InfeasibleError is raised
    when fewer than min(|A|, |B|) pairs fit.
    """
    pools_a: dict[int, list[int]] = {}
    pools_b: dict[int, list[int]] = {}
    for x in sorted(A, reverse=True):
        pools_a.setdefault(ps.color(x), []).append(x)
    for y in sorted(B, reverse=True):
        pools_b.setdefault(ps.color(y), []).append(y)
    ca = Counter({k: len(v) for k, v in pools_a.items()})
    cb = Counter({k: len(v) for k, v in pools_b.items()})
    na, nb = len(A), len(B)

    def top2(key, cols):
        return sorted(cols, key=lambda k: (-key(k), k))[:2]

    out: Matching = []
    while na and nb:
        live_a = [k for k in ca if ca[k]]
        live_b = [k for k in cb if cb[k]]
        both = lambda k: ca[k] + cb[k]
        cand_a = set(top2(ca.__getitem__, live_a)) | set(top2(both, live_a))
        cand_b = set(top2(cb.__getitem__, live_b)) | set(top2(both, live_b))
        best = None
        for ka in cand_a:
            for kb in cand_b:
                if ka == kb:
                    continue
                ca[ka] -= 1
                cb[kb] -= 1
                keep = _bichromatic_optimum(ca, cb, na - 1, nb - 1)
                ca[ka] += 1
                cb[kb] += 1
                key = (keep, ca[ka] + cb[kb], -ka, -kb)
                if best is None or key > best[0]:
                    best = (key, ka, kb)
        if best is None:
            break
        _, ka, kb = best
        ca[ka] -= 1
        cb[kb] -= 1
        na -= 1
        nb -= 1
        out.append((pools_a[ka].pop(), pools_b[kb].pop()))
    if strict and len(out) < min(len(A), len(B)):
        raise InfeasibleError(f"only {len(out)} bichromatic pairs fit between sides of sizes {len(A)}, {len(B)}")
    return out


def _from_separator(ps: PointSet, sep: Separator) -> Matching:
    P = ps.points
    M = greedy_polychromatic_matching(sep.sideA, sep.sideB, ps, strict=False)
    best_e, best_hits = None, None
    for e in sep.edges:
        hits = [m for m in M if proper_cross(P[m[0]], P[m[1]], P[e[0]], P[e[1]])]
        if best_hits is None or len(hits) > len(best_hits):
            best_e, best_hits = e, hits
    return [best_e] + best_hits


def connected_matching_colored(ps: PointSet, seed: int = 0) -> tuple[Matching, BoundReport]:
    """Polychromatic connected matching for a balanced c-coloring, c >= 2.

    The three-edge separator route is always run; for c >= 4 the
    one-or-two-edge route is run as well and the larger matching is kept.
    The report carries the better of the applicable guarantees; below
    n = 60c it is marked as not guaranteed.
    """
    if not ps.colored or ps.c < 2:
        raise PreconditionError("balanced coloring with c >= 2 required")
    require_general_position(ps)
    n, c = len(ps), ps.c
    holds = n >= colored_threshold(c)
    results = [(_from_separator(ps, polychromatic_separator_3edges(ps, strict=False, seed=seed)), COLORS2)]
    if c >= 4:
        results.append((_from_separator(ps, polychromatic_separating_path_c4(ps, strict=False, seed=seed)), COLORS1))
    best = max(results, key=lambda r: len(r[0]))[0]
    tag = COLORS1 if c > 7 else COLORS2
    report = BoundReport(n, c, len(best), guaranteed_bound(tag, n, c), tag, holds=holds)
    return best, report
