"""Independent checkers for matchings, separators and bound reports.

Only the geometric primitives are used here, never the constructions being
checked.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .geometry import PointSet, Segment, _coord_array, crossing_mask

Matching = Sequence[Segment]


def matching_problems(ps: PointSet, M: Matching) -> list[str]:
    """Human-readable reasons why ``M`` is not a matching (empty if it is)."""
    out = []
    n = len(ps)
    seen: dict[int, int] = {}
    for k, (a, b) in enumerate(M):
        for x in (a, b):
            if not 0 <= x < n:
                out.append(f"edge {k} ({a}, {b}): index {x} out of range")
        if a == b:
            out.append(f"edge {k} ({a}, {b}): degenerate segment")
            continue
        for x in (a, b):
            if x in seen:
                out.append(f"point {x} shared by edges {seen[x]} and {k}")
            else:
                seen[x] = k
    return out


def is_matching(ps: PointSet, M: Matching) -> bool:
    return not matching_problems(ps, M)


def components(ps: PointSet, M: Matching) -> list[list[int]]:
    """Connected components (as edge positions) of the segment intersection graph."""
    m = len(M)
    if m == 0:
        return []
    arr = _coord_array(ps)
    segs = [tuple(e) for e in M]
    unseen = set(range(m))
    comps = []
    while unseen:
        start = min(unseen)
        unseen.discard(start)
        comp, stack = [start], [start]
        while stack and unseen:
            cur = stack.pop()
            rest = sorted(unseen)
            hit = crossing_mask(ps, segs[cur], [segs[r] for r in rest], arr)
            for r, h in zip(rest, hit):
                if h:
                    unseen.discard(r)
                    comp.append(r)
                    stack.append(r)
        comps.append(sorted(comp))
    return comps


def is_connected(ps: PointSet, M: Matching) -> bool:
    """Whether the segments of ``M`` form a connected set (empty counts as connected)."""
    return len(components(ps, M)) <= 1


def is_polychromatic(ps: PointSet, M: Matching) -> bool:
    if not ps.colored:
        return True
    return all(ps.colors[a] != ps.colors[b] for a, b in M)


def separator_problems(ps: PointSet, s, k: int, exhaustive_limit: Optional[int] = None) -> list[str]:
    """Reasons why ``s`` fails to be a separator with k points on each side.

    The crossing condition is checked for every sideA x sideB pair when n is
    at most ``exhaustive_limit`` (default: always).
    """
    out = []
    n = len(ps)
    path, A, B = list(s.path), list(s.sideA), list(s.sideB)
    if not 2 <= len(path) <= 4:
        out.append(f"path has {len(path)} vertices")
    groups = path + A + B
    if len(set(groups)) != len(groups):
        out.append("path and sides overlap")
    if set(groups) != set(range(n)):
        out.append("path and sides do not cover all points")
    if len(A) < k or len(B) < k:
        out.append(f"side sizes {len(A)}, {len(B)} below {k}")
    if s.polychromatic and ps.colored:
        for a, b in zip(path, path[1:]):
            if ps.colors[a] == ps.colors[b]:
                out.append(f"path edge ({a}, {b}) is monochromatic")
    if exhaustive_limit is None or n <= exhaustive_limit:
        arr = _coord_array(ps)
        edges = list(zip(path, path[1:]))
        for a in A:
            if not B:
                break
            pairs = [(a, b) for b in B]
            hit = None
            for e in edges:
                h = crossing_mask(ps, e, pairs, arr)
                hit = h if hit is None else hit | h
            if hit is not None and not hit.all():
                b = B[int((~hit).nonzero()[0][0])]
                out.append(f"segment ({a}, {b}) avoids the path")
                break
    return out


def check_separator(ps: PointSet, s, k: int, exhaustive_limit: Optional[int] = None) -> bool:
    return not separator_problems(ps, s, k, exhaustive_limit)


def _bound(theorem: str, n: int, c: int, depth: int) -> Fraction:
    if theorem == "uncolored":
        return Fraction(5 * n + 1, 27)
    if theorem == "deep":
        return Fraction(depth)
    if theorem == "colors1":
        return Fraction((c - 3) * n, 6 * c) - Fraction(1, 2)
    if theorem == "colors2":
        return Fraction((c - 1) * n, 9 * c) - Fraction(1, 3)
    raise ValueError(f"unknown theorem tag {theorem!r}")


def check_bound_report(r) -> bool:
    """Guarantee matches its formula and, when it applies, the achieved size meets its ceiling."""
    try:
        expected = _bound(r.theorem, r.n, r.c, getattr(r, "depth", 0))
    except ValueError:
        return False
    if Fraction(r.guaranteed) != expected:
        return False
    if not getattr(r, "holds", True):
        return True
    need = -((-expected.numerator) // expected.denominator)
    return r.achieved >= need
