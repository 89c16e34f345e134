import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from connmatch import errors
from connmatch.geometry import PointSet, convex_hull
from connmatch.instances import (
    convex_position,
    hexagon_with_center,
    random_balanced_coloring,
    random_general_position,
)
from connmatch.matching import (
    COLORS1,
    COLORS2,
    UNCOLORED,
    BoundReport,
    antipodal_connected_matching,
    connected_matching_across_segment,
    connected_matching_colored,
    connected_matching_uncolored,
    deep_point_matching,
    greedy_polychromatic_matching,
    guaranteed_bound,
    m_bound,
    max_bichromatic_size,
)
from connmatch.verify import check_bound_report, is_connected, is_matching, is_polychromatic

import oracles
from gen import across_instance




def check_across(ps, A, B):
    M = connected_matching_across_segment(0, 1, A, B, ps)
    assert (0, 1) in M or (1, 0) in M
    assert is_matching(ps, M)
    assert oracles.segments_connected(ps.points, M)
    assert len(M) >= math.ceil(m_bound(len(A), len(B)))
    S = set(A)
    for e in M:
        if set(e) == {0, 1}:
            continue
        x, y = e
        within_a = x in S and y in S
        assert within_a or oracles.crosses(ps[x], ps[y], ps[0], ps[1])
    return M


def test_m_bound_examples():
    assert m_bound(5, 5) == 6
    assert m_bound(12, 3) == Fraction(23, 5)
    assert m_bound(17, 2) == 5
    assert m_bound(0, 0) == 1
    with pytest.raises(errors.PreconditionError):
        m_bound(2, 3)


def test_m_bound_continuity_and_monotonicity():
    for b in range(0, 101):
        assert 1 + b == Fraction(2 * b + 3 + 3 * b + 2, 5)
        assert Fraction(7 * b + 3 + 3 * b + 2, 5) == 1 + 2 * b
        assert m_bound(2 * b + 3, b) == 1 + b
        assert m_bound(7 * b + 3, b) == 1 + 2 * b
    for b in range(0, 60):
        for a in range(b, 300):
            assert m_bound(a + 1, b) >= m_bound(a, b)


def test_across_segment_trivial():
    ps = PointSet(((0, -5), (0, 5), (7, 1)))
    assert connected_matching_across_segment(0, 1, [], [], ps) == [(0, 1)]


def test_across_segment_convex_endgame():
    # three points in convex position on one side and one on the other
    ps = PointSet(((0, -100), (0, 100), (-10, -20), (-50, 3), (-12, 30), (40, 1)))
    M = check_across(ps, [2, 3, 4], [5])
    assert len(M) >= 2


def test_across_segment_errors():
    ps = PointSet(((0, -5), (0, 5), (-3, 1), (4, 60)))
    with pytest.raises(errors.PreconditionError):
        connected_matching_across_segment(0, 1, [2], [3], ps)  # 2-3 misses the segment
    ps = PointSet(((0, -5), (0, 5), (-3, 1), (4, 0), (5, 2)))
    with pytest.raises(errors.PreconditionError):
        connected_matching_across_segment(0, 1, [2], [3, 4], ps)  # |B| > |A|


@given(st.integers(0, 10**6), st.integers(0, 40), st.data())
def test_across_segment_property(seed, a, data):
    b = data.draw(st.integers(0, a))
    check_across(*across_instance(random.Random(seed), a, b))


@pytest.mark.parametrize("k", [2, 3, 5, 8, 11])
def test_antipodal(k):
    ps = convex_position(k, seed=k)
    order = convex_hull(ps)
    M = antipodal_connected_matching(order, ps)
    assert len(M) == k // 2
    assert is_matching(ps, M)
    for i in range(len(M)):
        for j in range(i + 1, len(M)):
            (a, b), (c, d) = M[i], M[j]
            assert oracles.crosses(ps[a], ps[b], ps[c], ps[d])


def test_guaranteed_bounds():
    assert guaranteed_bound(UNCOLORED, 27) == Fraction(136, 27)
    assert guaranteed_bound(COLORS2, 378, 2) == Fraction(21) - Fraction(1, 3)
    assert guaranteed_bound(COLORS1, 420, 10) == Fraction(97, 2)
    with pytest.raises(ValueError):
        guaranteed_bound("nope", 1)
    r = BoundReport(27, 0, 6, Fraction(136, 27), UNCOLORED)
    assert r.required == 6 and r.ok and check_bound_report(r)
    assert not check_bound_report(BoundReport(27, 0, 5, Fraction(136, 27), UNCOLORED))
    assert not check_bound_report(BoundReport(27, 0, 9, Fraction(5), UNCOLORED))


@pytest.mark.parametrize("n", [2, 3, 4, 5, 8, 27, 100])
def test_uncolored_pipeline(n):
    for seed in range(8):
        ps = random_general_position(n, seed, coord_max=10**4)
        M, r = connected_matching_uncolored(ps, seed=seed)
        assert is_matching(ps, M) and is_connected(ps, M)
        assert oracles.segments_connected(ps.points, M)
        assert r.achieved == len(M) >= math.ceil(Fraction(5 * n + 1, 27))
        assert check_bound_report(r)


def test_uncolored_errors():
    with pytest.raises(errors.PreconditionError):
        connected_matching_uncolored(PointSet(((0, 0),)))
    with pytest.raises(errors.PreconditionError):
        connected_matching_uncolored(PointSet(((0, 0), (1, 1), (2, 2))))


def test_deep_examples():
    ps = convex_position(9, seed=1)
    M, r = deep_point_matching(ps)
    assert len(M) == 1 and r.guaranteed == 0
    four = PointSet(((0, 0), (10, 0), (4, 9), (5, 3)))
    M, _ = deep_point_matching(four)
    assert len(M) == 1 and is_matching(four, M)
    hexc = hexagon_with_center()
    M, r = deep_point_matching(hexc)
    assert r.depth == 2 and len(M) >= 2
    assert is_connected(hexc, M)


@pytest.mark.parametrize("seed", range(12))
def test_deep_random(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 60)
    ps = random_general_position(n, seed, coord_max=10**4)
    M, r = deep_point_matching(ps)
    d = max(oracles.brute_depth(ps.points, i) for i in range(n))
    assert r.depth == d
    assert len(M) >= d
    assert is_matching(ps, M) and oracles.segments_connected(ps.points, M)
    p, a = M[0]
    for x, y in M[1:]:
        assert oracles.crosses(ps[x], ps[y], ps[p], ps[a])


def test_greedy_example():
    pts = tuple((i, i * i) for i in range(6))
    ps = PointSet(pts, (0, 0, 1, 1, 2, 2), 3)
    M = greedy_polychromatic_matching([0, 1, 2], [3, 4, 5], ps)
    assert len(M) == 3
    assert all(ps.colors[a] != ps.colors[b] for a, b in M)
    assert greedy_polychromatic_matching([], [3, 4], ps) == []


def test_greedy_infeasible():
    ps = PointSet(tuple((i, i * i) for i in range(4)), (0, 0, 1, 1), 2)
    with pytest.raises(errors.InfeasibleError):
        greedy_polychromatic_matching([0], [1], ps)
    assert greedy_polychromatic_matching([0], [1], ps, strict=False) == []


@pytest.mark.parametrize("c", [2, 3, 4, 5, 6])
def test_greedy_random(c):
    rng = random.Random(c)
    for seed in range(20):
        n = rng.randint(c, 40)
        ps = random_balanced_coloring(random_general_position(n, seed, coord_max=10**4), c, seed)
        idx = list(range(n))
        rng.shuffle(idx)
        cut = rng.randint(0, n)
        A, B = idx[:cut], idx[cut:]
        M = greedy_polychromatic_matching(A, B, ps, strict=False)
        assert len(M) == max_bichromatic_size(A, B, ps)
        assert all(ps.colors[a] != ps.colors[b] for a, b in M)
        assert {a for a, _ in M} <= set(A) and {b for _, b in M} <= set(B)
        if abs(len(A) - len(B)) <= 1:
            assert len(M) == min(len(A), len(B))


def test_colored_examples():
    ps = random_balanced_coloring(random_general_position(378, 0), 2, 0)
    M, r = connected_matching_colored(ps)
    assert r.theorem == COLORS2 and len(M) >= 21
    assert is_polychromatic(ps, M) and is_connected(ps, M)
    ps = random_balanced_coloring(random_general_position(420, 0), 10, 0)
    M, r = connected_matching_colored(ps)
    assert r.theorem == COLORS1 and len(M) >= 49
    assert is_polychromatic(ps, M) and is_connected(ps, M)


def test_colored_errors():
    with pytest.raises(errors.PreconditionError):
        connected_matching_colored(random_general_position(20, 0))


@pytest.mark.parametrize("c", [2, 3, 5])
def test_colored_small_inputs_are_valid(c):
    for seed in range(15):
        n = max(2, c + seed)
        ps = random_balanced_coloring(random_general_position(n, seed, coord_max=1000), c, seed)
        M, r = connected_matching_colored(ps, seed=seed)
        assert is_polychromatic(ps, M) and is_connected(ps, M)
        assert not r.holds  # far below the guaranteed range


class ColorsOnly:
    def __init__(self, cols):
        self.cols = cols

    def color(self, i):
        return self.cols[i]


@given(st.lists(st.integers(0, 4), max_size=30), st.lists(st.integers(0, 4), max_size=30))
def test_greedy_reaches_optimum(cols_a, cols_b):
    # any color multiset per side; coordinates do not matter for the greedy
    n = len(cols_a) + len(cols_b)
    cols = list(cols_a) + list(cols_b)
    ps = ColorsOnly(cols)
    A, B = list(range(len(cols_a))), list(range(len(cols_a), n))
    M = greedy_polychromatic_matching(A, B, ps, strict=False)
    assert len(M) == max_bichromatic_size(A, B, ps)
    assert all(cols[a] != cols[b] for a, b in M)
    assert len({a for a, _ in M}) == len(M) == len({b for _, b in M})
