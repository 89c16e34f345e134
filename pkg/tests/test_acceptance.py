"""Acceptance criteria 1 to 10. Each test prints one PASS/FAIL line with its measurements.

Time limits cover the whole check (instance generation, the routine under
test and the verification) unless a comment says otherwise.
"""
import math
import random
import time
from fractions import Fraction

import pytest

from connmatch.cli import run_bench
from connmatch.crossing import maximal_crossing_matching, maximum_crossing_matching
from connmatch.geometry import convex_hull
from connmatch.instances import (
    random_balanced_coloring,
    random_general_position,
    windmill_bicolored,
    windmill_uncolored,
)
from connmatch.matching import (
    connected_matching_across_segment,
    connected_matching_colored,
    connected_matching_uncolored,
    deep_point_matching,
    m_bound,
)
from connmatch.oracle import oracle_max_connected_matching
from connmatch.separator import TriangleSplitRequest, separating_path, split_triangle
from connmatch.verify import (
    check_bound_report,
    is_connected,
    is_matching,
    is_polychromatic,
    separator_problems,
)

import numpy as np

import oracles
from gen import across_instance, random_crossing_instance, random_triangle_instance, random_weights

pytestmark = pytest.mark.acceptance


def ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def finish(record, number, failures, elapsed, limit, detail):
    ok = not failures and elapsed < limit
    msg = f"{detail}; {elapsed:.1f}s (limit {limit}s)"
    if failures:
        msg += f"; {len(failures)} failure(s), first: {failures[0]}"
    record(number, ok, msg)
    assert not failures, failures[:5]
    assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"


def test_criterion_01_uncolored_bound(record_criterion):
    rng = random.Random(101)
    failures, worst = [], None
    t0 = time.perf_counter()
    for k in range(1000):
        n = rng.randint(2, 200)
        ps = random_general_position(n, seed=k)
        M, r = connected_matching_uncolored(ps, seed=k)
        need = ceil_frac(Fraction(5 * n + 1, 27))
        if not (is_matching(ps, M) and is_connected(ps, M)):
            failures.append(f"seed {k} n={n}: invalid or disconnected")
        elif len(M) < need:
            failures.append(f"seed {k} n={n}: size {len(M)} < {need}")
        slack = len(M) - need
        worst = slack if worst is None else min(worst, slack)
    elapsed = time.perf_counter() - t0
    finish(record_criterion, 1, failures, elapsed, 30, f"1000 sets, min slack over bound {worst}")


def test_criterion_02_windmill_tightness(record_criterion):
    failures, seen = [], []
    t0 = time.perf_counter()
    for n in range(6, 13):
        ps = windmill_uncolored(n)
        k, M = oracle_max_connected_matching(ps)
        want = math.ceil((n - 1) / 3)
        seen.append(k)
        if k != want or not (is_matching(ps, M) and is_connected(ps, M)):
            failures.append(f"3 blades n={n}: oracle {k}, expected {want}")
        ps = windmill_bicolored(n)
        k, M = oracle_max_connected_matching(ps)
        want = math.ceil((n - 1) / 4)
        seen.append(k)
        if k != want or not (is_polychromatic(ps, M) and is_connected(ps, M)):
            failures.append(f"4 blades n={n}: oracle {k}, expected {want}")
    elapsed = time.perf_counter() - t0
    finish(record_criterion, 2, failures, elapsed, 60, f"oracle values {seen}")


def test_criterion_03_separating_path(record_criterion):
    rng = random.Random(303)
    failures = []
    lengths = {1: 0, 2: 0}
    t0 = time.perf_counter()
    for k in range(500):
        n = rng.randint(5, 60)
        ps = random_general_position(n, seed=10_000 + k)
        s = separating_path(ps, seed=k)
        need = -((4 - n) // 3)
        edges = len(s.path) - 1
        lengths[edges] = lengths.get(edges, 0) + 1
        hull = set(convex_hull(ps))
        probs = separator_problems(ps, s, need)  # exhaustive sideA x sideB check
        if edges not in (1, 2):
            probs.append(f"path has {edges} edges")
        if s.path[0] not in hull or s.path[-1] not in hull:
            probs.append("endpoint not extremal")
        if probs:
            failures.append(f"seed {k} n={n}: {probs[0]}")
    elapsed = time.perf_counter() - t0
    finish(record_criterion, 3, failures, elapsed, 30, f"500 sets, paths by edge count {lengths}")


def _subtriangle_counts(ps, tri, interior, q):
    """Interior points strictly inside each triangle (q, two triangle vertices), vectorized."""
    P = np.asarray(ps.points, dtype=np.int64)
    Z = P[[z for z in interior if z != q]]
    out = []
    for i in range(3):
        a, b = P[tri[(i + 1) % 3]], P[tri[(i + 2) % 3]]
        c = P[q]

        def orient(u, v):
            return (v[0] - u[0]) * (Z[:, 1] - u[1]) - (v[1] - u[1]) * (Z[:, 0] - u[0])

        s1, s2, s3 = orient(a, b), orient(b, c), orient(c, a)
        inside = ((s1 > 0) & (s2 > 0) & (s3 > 0)) | ((s1 < 0) & (s2 < 0) & (s3 < 0))
        out.append(int(inside.sum()))
    return out


def test_criterion_04_triangle_split(record_criterion):
    rng = random.Random(404)
    failures, min_excess = [], None
    t0 = time.perf_counter()
    for k in range(500):
        m = rng.randint(1, 200)
        ps = random_triangle_instance(rng, m)
        w = random_weights(rng, m)
        interior = tuple(range(3, m + 3))
        Q = split_triangle(TriangleSplitRequest(0, 1, 2, interior, *w), ps)
        floor = sum(w) - 2 * m + 3
        if len(Q) < floor:
            failures.append(f"instance {k}: |Q|={len(Q)} < {floor}")
        for q in Q:
            counts = _subtriangle_counts(ps, (0, 1, 2), interior, q)
            if any(cnt > wi for cnt, wi in zip(counts, w)):
                failures.append(f"instance {k}: q={q} counts {counts} exceed weights {w}")
                break
        excess = len(Q) - floor
        min_excess = excess if min_excess is None else min(min_excess, excess)
    elapsed = time.perf_counter() - t0
    finish(record_criterion, 4, failures, elapsed, 20, f"500 instances, min |Q| - floor = {min_excess}")


def test_criterion_05_crossing_matchings(record_criterion):
    rng = random.Random(505)
    failures, counterexamples = [], []
    t0 = time.perf_counter()
    for k in range(500):
        ps, inst = random_crossing_instance(rng, rng.randint(0, 60), rng.randint(0, 60))
        P = ps.points
        u, v = P[inst.u], P[inst.v]

        def edge(a, b):
            return oracles.crosses(P[a], P[b], u, v)

        for name, fn in (("maximal", maximal_crossing_matching), ("maximum", maximum_crossing_matching)):
            M = fn(inst, ps)
            if not all(edge(a, b) for a, b in M) or not is_matching(ps, M):
                failures.append(f"instance {k} {name}: not a matching of the crossing graph")
                continue
            free_a = set(inst.A) - {a for a, _ in M}
            free_b = set(inst.B) - {b for _, b in M}
            if any(edge(a, b) for a in free_a for b in free_b):
                failures.append(f"instance {k} {name}: not maximal")
        best = oracles.kuhn_max_matching(inst.A, inst.B, edge)
        got = len(maximum_crossing_matching(inst, ps))
        if got != best:
            counterexamples.append(f"instance {k}: sweep {got}, augmenting paths {best}")
    elapsed = time.perf_counter() - t0
    failures += counterexamples
    finish(record_criterion, 5, failures, elapsed, 30,
           f"500 instances, maximum-variant mismatches {len(counterexamples)}")


def test_criterion_06_across_segment(record_criterion):
    rng = random.Random(606)
    failures = []
    t0 = time.perf_counter()
    for k in range(500):
        a = rng.randint(0, 40)
        b = rng.randint(0, a)
        ps, A, B = across_instance(rng, a, b)
        M = connected_matching_across_segment(0, 1, A, B, ps)
        need = ceil_frac(m_bound(a, b))
        if not (is_matching(ps, M) and is_connected(ps, M)):
            failures.append(f"instance {k} (a={a}, b={b}): invalid or disconnected")
        elif len(M) < need:
            failures.append(f"instance {k} (a={a}, b={b}): size {len(M)} < {need}")
    for b in range(0, 101):
        for a in (2 * b + 3, 7 * b + 3):
            middle = Fraction(a + 3 * b + 2, 5)
            outer = Fraction(1 + b) if a == 2 * b + 3 else Fraction(1 + 2 * b)
            if not (middle == outer == m_bound(a, b)):
                failures.append(f"m_bound discontinuous at a={a}, b={b}")
    elapsed = time.perf_counter() - t0
    finish(record_criterion, 6, failures, elapsed, 30, "500 instances, continuity for b <= 100")


def test_criterion_07_deep_point(record_criterion):
    rng = random.Random(707)
    failures, depths = [], []
    t0 = time.perf_counter()
    for k in range(300):
        n = rng.randint(2, 100)
        ps = random_general_position(n, seed=20_000 + k)
        M, r = deep_point_matching(ps)
        d = max(oracles.brute_depth_all(ps.points))
        depths.append(d)
        P = ps.points
        if not (is_matching(ps, M) and is_connected(ps, M)):
            failures.append(f"seed {k} n={n}: invalid or disconnected")
        elif len(M) < d:
            failures.append(f"seed {k} n={n}: size {len(M)} < depth {d}")
        elif r.depth != d:
            failures.append(f"seed {k} n={n}: reported depth {r.depth}, oracle {d}")
        else:
            p, a = M[0]
            if any(not oracles.crosses(P[x], P[y], P[p], P[a]) for x, y in M[1:]):
                failures.append(f"seed {k} n={n}: auxiliary edge misses pa")
    elapsed = time.perf_counter() - t0
    finish(record_criterion, 7, failures, elapsed, 20, f"300 sets, max depth seen {max(depths)}")


def colored_requirement(n, c):
    if c > 7:
        return ceil_frac(Fraction((c - 3) * n, 6 * c) - Fraction(1, 2))
    return ceil_frac(Fraction((c - 1) * n, 9 * c) - Fraction(1, 3))


def test_criterion_08_colored_bounds(record_criterion):
    failures, slack = [], {}
    t0 = time.perf_counter()
    for c in range(2, 13):
        for n in (60 * c, 120 * c):
            for seed in range(20):
                ps = random_balanced_coloring(random_general_position(n, seed=seed), c, seed=seed)
                M, r = connected_matching_colored(ps, seed=seed)
                need = colored_requirement(n, c)
                if not (is_matching(ps, M) and is_polychromatic(ps, M) and is_connected(ps, M)):
                    failures.append(f"c={c} n={n} seed {seed}: not a polychromatic connected matching")
                elif len(M) < need:
                    failures.append(f"c={c} n={n} seed {seed}: size {len(M)} < {need}")
                elif not (r.holds and check_bound_report(r)):
                    failures.append(f"c={c} n={n} seed {seed}: report {r}")
                slack[(c, n)] = min(slack.get((c, n), len(M) - need), len(M) - need)
    elapsed = time.perf_counter() - t0
    tight = min(slack, key=slack.get)
    finish(record_criterion, 8, failures, elapsed, 60,
           f"440 runs, smallest slack {slack[tight]} at c={tight[0]} n={tight[1]}")


def test_criterion_09_oracle_consistency(record_criterion):
    rng = random.Random(909)
    failures, runs = [], 0
    t0 = time.perf_counter()
    for k in range(200):
        n = rng.randint(2, 12)
        base = random_general_position(n, seed=30_000 + k)
        variants = [base]
        if n >= 2:
            variants.append(random_balanced_coloring(base, 2, seed=k))
        for ps in variants:
            best, W = oracle_max_connected_matching(ps)
            if ps.colored:
                outs = [connected_matching_colored(ps, seed=k)]
            else:
                outs = [connected_matching_uncolored(ps, seed=k), deep_point_matching(ps)]
            outs.append((W, None))
            for M, r in outs:
                runs += 1
                ok = is_matching(ps, M) and is_connected(ps, M) and is_polychromatic(ps, M)
                if r is not None:
                    ok = ok and check_bound_report(r)
                if not ok:
                    failures.append(f"instance {k} n={n} c={ps.c}: output fails a verifier")
                elif len(M) > best:
                    failures.append(f"instance {k} n={n} c={ps.c}: size {len(M)} above oracle {best}")
    elapsed = time.perf_counter() - t0
    finish(record_criterion, 9, failures, elapsed, 120, f"200 instances x 2 colorings, {runs} outputs checked")


def test_criterion_10_runtime_scaling(record_criterion):
    # run_bench excludes generation, interleaves rounds and keeps the best time per input
    t0 = time.perf_counter()
    rows = run_bench([10_000, 20_000, 40_000], seeds=list(range(7)), method="uncolored", repeats=11)
    elapsed = time.perf_counter() - t0
    ratios = [row["ratio"] for row in rows[1:]]
    failures = [f"n={row['n']}: ratio {row['ratio']:.2f} > 2.5" for row in rows[1:] if row["ratio"] > 2.5]
    failures += [f"n={row['n']}: size {row['min_size']} < {row['bound']}" for row in rows if row["min_size"] < row["bound"]]
    times = ", ".join(f"{row['n']}: {row['median_time'] * 1000:.1f}ms" for row in rows)
    finish(record_criterion, 10, failures, elapsed, 60,
           f"median times {times}; ratios {', '.join(f'{x:.2f}' for x in ratios)}")
