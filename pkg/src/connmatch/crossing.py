"""Bipartite matchings whose edges all cross a fixed segment.

Points are mapped to the slopes of the lines joining them to the two
endpoints of the segment, measured in the frame where the segment points
straight up. Slopes are kept as exact (numerator, denominator) pairs; the
frame is obtained with integer dot products, so nothing leaves the grid.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Sequence

from sortedcontainers import SortedList

from .errors import PreconditionError
from .geometry import PointSet, cross

Matching = list[tuple[int, int]]


@total_ordering
class PhiKey:
    """Exact slope ``num/den`` (den > 0) of the line from a point to one endpoint."""

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int):
        if den < 0:
            num, den = -num, -den
        self.num = num
        self.den = den

    def __eq__(self, other):
        return self.num * other.den == other.num * self.den

    def __lt__(self, other):
        return self.num * other.den < other.num * self.den

    def __hash__(self):
        raise TypeError("PhiKey is not hashable")

    def __repr__(self):
        return f"PhiKey({self.num}/{self.den})"


@dataclass(frozen=True)
class CrossingInstance:
    """Segment ``u v`` with ``A`` strictly left of the directed line u->v and ``B`` right of it."""

    u: int
    v: int
    A: tuple[int, ...]
    B: tuple[int, ...]

    @classmethod
    def build(cls, ps: PointSet, u: int, v: int, A: Sequence[int], B: Sequence[int]) -> "CrossingInstance":
        """Orient the segment so that ``A`` lies to its left; check both sides are strict."""
        P = ps.points
        A, B = tuple(A), tuple(B)
        ref = A[0] if A else (B[0] if B else None)
        if ref is not None:
            left = cross(P[u], P[v], P[ref]) > 0
            if (ref in A) != left:
                u, v = v, u
        for a in A:
            if cross(P[u], P[v], P[a]) <= 0:
                raise PreconditionError(f"point {a} is not strictly on the A side")
        for b in B:
            if cross(P[u], P[v], P[b]) >= 0:
                raise PreconditionError(f"point {b} is not strictly on the B side")
        return cls(u, v, A, B)


def phi(ps: PointSet, inst: CrossingInstance, p: int) -> tuple[PhiKey, PhiKey]:
    """Slopes of the lines p-u and p-v in the frame where u->v points up."""
    P = ps.points
    ux, uy = P[inst.u]
    dx, dy = P[inst.v][0] - ux, P[inst.v][1] - uy
    wx, wy = P[p][0] - ux, P[p][1] - uy
    X = wx * dy - wy * dx  # component along the rightward normal
    Y = wx * dx + wy * dy  # component along u->v
    return PhiKey(Y, X), PhiKey(Y - (dx * dx + dy * dy), X)


def edge_crosses_sigma(a: int, b: int, inst: CrossingInstance, ps: PointSet) -> bool:
    """Whether segment ab (a in A, b in B) meets the segment of ``inst``."""
    fa1, fa2 = phi(ps, inst, a)
    fb1, fb2 = phi(ps, inst, b)
    return fa1 <= fb1 and fa2 >= fb2


def _sweep(inst: CrossingInstance, ps: PointSet, tightest: bool) -> Matching:
    if not inst.A or not inst.B:
        return []
    keys = {p: phi(ps, inst, p) for p in inst.A + inst.B}
    in_a = set(inst.A)
    # phi2 never ties between distinct points (that would put them on a line through v)
    by_phi2 = sorted(keys, key=lambda p: keys[p][1])
    rank2 = {p: r for r, p in enumerate(by_phi2)}
    # A before B on equal phi1; equality would mean a, b, u collinear
    events = sorted(keys, key=lambda p: (keys[p][0], p not in in_a))
    waiting = SortedList()
    owner = {}
    out: Matching = []
    for p in events:
        r = rank2[p]
        if p in in_a:
            waiting.add(r)
            owner[r] = p
            continue
        if not waiting or waiting[-1] < r:
            continue
        pick = waiting[waiting.bisect_left(r)] if tightest else waiting[-1]
        waiting.remove(pick)
        out.append((owner[pick], p))
    return out


def maximal_crossing_matching(inst: CrossingInstance, ps: PointSet) -> Matching:
    """A maximal matching of G(A, B, sigma); edges are (a, b) pairs. O(n log n)."""
    return _sweep(inst, ps, tightest=False)


def maximum_crossing_matching(inst: CrossingInstance, ps: PointSet) -> Matching:
    """Same sweep, matching each b to the waiting a with the smallest admissible phi2."""
    return _sweep(inst, ps, tightest=True)


def all_cross(inst: CrossingInstance, ps: PointSet) -> bool:
    """Whether every A x B segment crosses sigma, decided in linear time from phi extremes."""
    if not inst.A or not inst.B:
        return True
    ka = [phi(ps, inst, a) for a in inst.A]
    kb = [phi(ps, inst, b) for b in inst.B]
    return max(k[0] for k in ka) <= min(k[0] for k in kb) and min(k[1] for k in ka) >= max(k[1] for k in kb)
