"""Exhaustive maximum connected matching for small point sets."""
from __future__ import annotations

import sys

from .errors import SizeLimitError
from .geometry import PointSet, segments_cross

ORACLE_LIMIT = 14


def oracle_max_connected_matching(ps: PointSet, limit: int = ORACLE_LIMIT) -> tuple[int, list[tuple[int, int]]]:
    """Exact largest connected matching; only bichromatic edges when colored.

    Connected edge sets are enumerated once each by growing them from their
    smallest segment through exclusive neighborhoods (segments crossing the
    newest one but none of the earlier ones). Sets that reuse a point are
    never extended, since no superset can become a matching again. Ties
    between optimal matchings go to the first one found, so the witness is
    deterministic.
    """
    n = len(ps)
    if n > limit:
        raise SizeLimitError(f"oracle limited to n <= {limit}, got {n}")
    if n < 2:
        return 0, []
    segs = [(a, b) for a in range(n) for b in range(a + 1, n) if ps.color(a) != ps.color(b)]
    if not segs:
        return 0, []
    m = len(segs)
    adj = [0] * m
    conflict = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            if set(segs[i]) & set(segs[j]):
                conflict[i] |= 1 << j
                conflict[j] |= 1 << i
            elif segments_cross(segs[i], segs[j], ps):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        conflict[i] |= 1 << i

    cap = n // 2
    best = [0, 0]  # size, mask

    def extend(sub, size, ext, nbhd, used, above):
        # used: segments sharing a point with some member of sub
        if size > best[0]:
            best[0], best[1] = size, sub
        while ext and best[0] < cap:
            low = ext & -ext
            w = low.bit_length() - 1
            ext ^= low
            grown = used | conflict[w]
            new_ext = (ext | (adj[w] & ~nbhd & above)) & ~grown
            extend(sub | low, size + 1, new_ext, nbhd | adj[w] | low, grown, above)

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 1000))
    try:
        for v in range(m):
            if best[0] >= cap:
                break
            above = ~((1 << (v + 1)) - 1)
            bit = 1 << v
            extend(bit, 1, adj[v] & above & ~conflict[v], adj[v] | bit, conflict[v], above)
    finally:
        sys.setrecursionlimit(old)
    mask = best[1]
    witness = [segs[i] for i in range(m) if mask >> i & 1]
    return best[0], witness
