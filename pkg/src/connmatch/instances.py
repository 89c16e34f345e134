"""Point-set generators: random general position, colorings, windmills and friends."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import PreconditionError, ResolutionError
from .geometry import COORD_LIMIT, PointSet, _coord_array, cross, crossing_mask, is_general_position

DEFAULT_COORD_MAX = 2**20

# Above this size the quadratic general-position check is skipped in favor of
# a construction that is collinearity-free by design.
EXACT_CHECK_LIMIT = 2500

KINDS = ("random", "convex", "hexcenter", "windmill3", "windmill4")


@dataclass(frozen=True)
class GenSpec:
    kind: str
    n: int
    c: int = 0
    seed: int = 0
    coord_max: int = DEFAULT_COORD_MAX

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown kind {self.kind!r}; choose from {', '.join(KINDS)}")
        if self.n < 2:
            raise PreconditionError("n must be at least 2")
        if not 0 < self.coord_max <= COORD_LIMIT:
            raise PreconditionError(f"coord_max must lie in (0, {COORD_LIMIT}]")
        if self.c < 0 or self.c == 1 or self.c > self.n:
            raise PreconditionError("c must be 0 (uncolored) or between 2 and n")
        if self.kind == "windmill4" and self.c != 2:
            raise PreconditionError("windmill4 is two-colored: use c = 2")
        if self.kind == "windmill3" and self.c != 0:
            raise PreconditionError("windmill3 is uncolored: use c = 0")
        if self.kind == "hexcenter" and self.n != 7:
            raise PreconditionError("hexcenter has exactly 7 points")


def generate(spec: GenSpec) -> PointSet:
    if spec.kind == "windmill3":
        return windmill_uncolored(spec.n, spec.coord_max)
    if spec.kind == "windmill4":
        return windmill_bicolored(spec.n, spec.coord_max)
    if spec.kind == "random":
        ps = random_general_position(spec.n, spec.seed, spec.coord_max)
    elif spec.kind == "convex":
        ps = convex_position(spec.n, spec.seed, spec.coord_max)
    else:
        ps = hexagon_with_center(spec.coord_max)
    if spec.c:
        ps = random_balanced_coloring(ps, spec.c, spec.seed)
    return ps


# ---------------------------------------------------------------- random


def _next_prime(x: int) -> int:
    def is_prime(k):
        if k < 2:
            return False
        for d in range(2, math.isqrt(k) + 1):
            if k % d == 0:
                return False
        return True

    while not is_prime(x):
        x += 1
    return x


def _witness(points: Sequence[tuple[int, int]]) -> Optional[int]:
    """Index of some point lying on a line through two others, or None."""
    ps = PointSet(tuple(points), gp=True)
    if is_general_position(ps):
        return None
    n = len(points)
    arr = np.asarray(points, dtype=object)
    for i in range(n):
        d = arr - arr[i]
        seen = {}
        for j in range(n):
            if j == i:
                continue
            dx, dy = int(d[j][0]), int(d[j][1])
            g = math.gcd(dx, dy)
            dx, dy = dx // g, dy // g
            if dy < 0 or (dy == 0 and dx < 0):
                dx, dy = -dx, -dy
            if (dx, dy) in seen:
                return j
            seen[(dx, dy)] = j
    raise AssertionError("collinear triple not found")


def random_general_position(n: int, seed: int = 0, coord_max: int = DEFAULT_COORD_MAX) -> PointSet:
    """n distinct integer points with no three collinear, reproducible per seed.

    Up to EXACT_CHECK_LIMIT points are drawn uniformly from the square
    [-coord_max, coord_max]^2 and resampled until no collinear triple remains.
    Larger sets use points (x, x^2 mod p) for a prime p, which never has
    three collinear points, shuffled and translated at random.
    """
    if n < 1:
        raise PreconditionError("n must be positive")
    if not 0 < coord_max <= COORD_LIMIT:
        raise PreconditionError("coord_max out of range")
    rng = random.Random(seed)
    if n <= EXACT_CHECK_LIMIT:
        if (2 * coord_max + 1) ** 2 < 16 * n * n:
            raise PreconditionError("coord_max too small for n points")
        pts: list[tuple[int, int]] = []
        used = set()
        while len(pts) < n:
            p = (rng.randint(-coord_max, coord_max), rng.randint(-coord_max, coord_max))
            if p not in used:
                used.add(p)
                pts.append(p)
        for _ in range(100 * n):
            bad = _witness(pts)
            if bad is None:
                return PointSet(tuple(pts), gp=True)
            used.discard(pts[bad])
            while True:
                p = (rng.randint(-coord_max, coord_max), rng.randint(-coord_max, coord_max))
                if p not in used:
                    break
            used.add(p)
            pts[bad] = p
        raise ResolutionError("could not reach general position; raise coord_max")
    p = _next_prime(coord_max // 2 + rng.randint(0, coord_max // 4))
    if p < n or p > coord_max:
        raise PreconditionError("coord_max too small for n points")
    xs = rng.sample(range(p), n)
    ox = rng.randint(-coord_max, coord_max - p + 1)
    oy = rng.randint(-coord_max, coord_max - p + 1)
    return PointSet(tuple((x + ox, x * x % p + oy) for x in xs), gp=True)


def random_balanced_coloring(ps: PointSet, c: int, seed: int = 0) -> PointSet:
    """Uniformly random balanced coloring with c classes."""
    n = len(ps)
    if not 2 <= c <= n:
        raise PreconditionError("need 2 <= c <= n")
    rng = random.Random(seed)
    labels = list(range(c))
    rng.shuffle(labels)
    cols = [labels[i % c] for i in range(n)]
    rng.shuffle(cols)
    return ps.with_colors(cols, c)


# ---------------------------------------------------------------- small structured sets


def convex_position(n: int, seed: int = 0, coord_max: int = DEFAULT_COORD_MAX) -> PointSet:
    """n points in convex position on a parabola, shuffled."""
    half = math.isqrt(coord_max)
    if 2 * half + 1 < n:
        raise ResolutionError("coord_max too small for n points in convex position")
    rng = random.Random(seed)
    xs = rng.sample(range(-half, half + 1), n)
    return PointSet(tuple((x, x * x) for x in xs), gp=True)


def hexagon_with_center(coord_max: int = DEFAULT_COORD_MAX) -> PointSet:
    """Regular hexagon (rounded) plus its center nudged off the long diagonals."""
    R = coord_max
    pts = [(round(R * math.cos(math.pi * k / 3)), round(R * math.sin(math.pi * k / 3))) for k in range(6)]
    pts.append((max(1, R // 97), max(1, R // 89)))
    ps = PointSet(tuple(pts))
    if not ps.general_position:
        raise ResolutionError("hexagon rounding produced a collinear triple")
    return ps


# ---------------------------------------------------------------- windmills


def blade_sizes(n: int, blades: int, extras: Sequence[int]) -> list[int]:
    base, extra = divmod(n, blades)
    sizes = [base] * blades
    for i in extras[:extra]:
        sizes[i] += 1
    return sizes


def _windmill(sizes: Sequence[int], coord_max: int, bend: float) -> tuple[list[tuple[int, int]], list[int]]:
    """Points on slightly curved radial blades.

    Each blade bulges toward the previous blade, so segments arriving from
    there stay on the outer side of every chord of the blade.
    """
    B = len(sizes)
    R = coord_max
    r0, r1 = 0.15 * R, 0.95 * R
    pts, owner = [], []
    for i, m in enumerate(sizes):
        th = math.pi / 2 + 0.0731 + 2 * math.pi * i / B  # phase avoids axis-aligned blades
        dx, dy = math.cos(th), math.sin(th)
        nx, ny = dy, -dx  # toward blade i - 1
        mid = (r0 + r1) / 2
        for j in range(m):
            s = mid if m == 1 else r0 + (r1 - r0) * j / (m - 1)
            off = bend * R * (1 - ((s - mid) / (mid - r0)) ** 2)
            pts.append((round(s * dx + off * nx), round(s * dy + off * ny)))
            owner.append(i)
    return pts, owner


def windmill_parts_separated(ps: PointSet, owner: Sequence[int], link) -> bool:
    """Whether vertex-disjoint segments belonging to different parts never cross.

    ``link(i, j)`` names the part of a segment between blades i and j, or
    None when that segment is not allowed at all.
    """
    n = len(ps)
    segs, parts = [], []
    for a in range(n):
        for b in range(a + 1, n):
            part = link(owner[a], owner[b])
            if part is not None:
                segs.append((a, b))
                parts.append(part)
    if not segs:
        return True
    arr = _coord_array(ps)
    parts_a = np.asarray(parts)
    ends = np.asarray(segs)
    for k, s in enumerate(segs):
        hit = crossing_mask(ps, s, segs, arr)
        disjoint = (ends[:, 0] != s[0]) & (ends[:, 0] != s[1]) & (ends[:, 1] != s[0]) & (ends[:, 1] != s[1])
        if (hit & disjoint & (parts_a != parts[k])).any():
            return False
    return True


def lines_separate_neighbors(ps: PointSet, owner: Sequence[int], blades: int = 3) -> bool:
    """Every line through two points of a blade separates the two other blades."""
    P = ps.points
    groups = [[i for i in range(len(P)) if owner[i] == b] for b in range(blades)]
    for b in range(blades):
        g = groups[b]
        for x in range(len(g)):
            for y in range(x + 1, len(g)):
                s1 = {cross(P[g[x]], P[g[y]], P[z]) > 0 for z in groups[(b + 1) % blades]}
                s2 = {cross(P[g[x]], P[g[y]], P[z]) > 0 for z in groups[(b + 2) % blades]}
                if len(s1) > 1 or len(s2) > 1 or (s1 and s2 and s1 == s2):
                    return False
    return True


def _link3(i, j):
    if i == j:
        return i
    if (i + 1) % 3 == j:
        return i
    return j


def _link4(i, j):
    if (i - j) % 2 == 0:
        return None  # same color class
    return i if (i + 1) % 4 == j else j


def _realize(sizes, coord_max, check, check_limit=60):
    for bend in (0.02, 0.01, 0.005, 0.03):
        pts, owner = _windmill(sizes, coord_max, bend)
        if len(set(pts)) != len(pts):
            continue
        ps = PointSet(tuple(pts))
        if not ps.general_position:
            continue
        if len(pts) <= check_limit and not check(ps, owner):
            continue
        return ps, owner
    raise ResolutionError("windmill not realizable at this resolution; raise coord_max")


def windmill_uncolored(n: int, coord_max: int = DEFAULT_COORD_MAX) -> PointSet:
    """Three-bladed windmill whose largest connected matching has ceil((n-1)/3) edges."""
    if n < 3:
        raise PreconditionError("need n >= 3")
    sizes = blade_sizes(n, 3, (0, 1))

    def check(ps, owner):
        return lines_separate_neighbors(ps, owner, 3) and windmill_parts_separated(ps, owner, _link3)

    ps, _ = _realize(sizes, coord_max, check)
    return ps


def windmill_bicolored(n: int, coord_max: int = DEFAULT_COORD_MAX) -> PointSet:
    """Four-bladed windmill, blades alternately colored 0 and 1."""
    if n < 4:
        raise PreconditionError("need n >= 4")
    sizes = blade_sizes(n, 4, (0, 1, 2))

    def check(ps, owner):
        return windmill_parts_separated(ps, owner, _link4)

    ps, owner = _realize(sizes, coord_max, check)
    return ps.with_colors([b % 2 for b in owner], 2)


def windmill_owner(n: int, blades: int) -> list[int]:
    """Blade index of each point, in generator order."""
    sizes = blade_sizes(n, blades, (0, 1) if blades == 3 else (0, 1, 2))
    return [b for b, m in enumerate(sizes) for _ in range(m)]
