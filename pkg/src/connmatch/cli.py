"""Command-line front end: gen, match, verify, oracle, svg, bench.

Exit status is 0 on success, 1 when a verification fails and 2 for usage or
precondition errors. ``CM_SEED`` supplies the default seed.
"""
from __future__ import annotations

import argparse
import gc
import os
import statistics
import sys
import time
from typing import Optional, Sequence

from .errors import ConnMatchError, PreconditionError
from .geometry import PointSet
from .instances import DEFAULT_COORD_MAX, KINDS, GenSpec, generate, random_balanced_coloring, random_general_position
from .io import format_matching, format_points, read_matching, read_points, write_text
from .matching import (
    BoundReport,
    connected_matching_colored,
    connected_matching_uncolored,
    deep_point_matching,
)
from .oracle import ORACLE_LIMIT, oracle_max_connected_matching
from .svg import render_svg
from .verify import components, is_polychromatic, matching_problems

# deep matching computes every depth, O(n^2 log n); "auto" skips it above this
AUTO_DEEP_LIMIT = 2000

METHODS = {
    "uncolored": connected_matching_uncolored,
    "deep": deep_point_matching,
    "colored": connected_matching_colored,
}


def _default_seed() -> int:
    raw = os.environ.get("CM_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise PreconditionError(f"CM_SEED must be an integer, got {raw!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(float(t)) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def report_line(method: str, r: BoundReport) -> str:
    return (
        f"# method={method} theorem={r.theorem} n={r.n} c={r.c} size={r.achieved} "
        f"bound={r.guaranteed} required={r.required} guaranteed={'yes' if r.holds else 'no'}"
    )


def run_method(ps: PointSet, method: str, seed: int = 0) -> tuple[str, list, BoundReport]:
    """Run one method, or every applicable one for ``auto`` keeping the largest."""
    if method == "auto":
        if ps.colored:
            names = ["colored"]
        else:
            names = ["uncolored"] + (["deep"] if len(ps) <= AUTO_DEEP_LIMIT else [])
    else:
        names = [method]
    best = None
    for name in names:
        if name == "colored" and not ps.colored:
            raise PreconditionError("method 'colored' needs a colored points file")
        if name in ("uncolored", "deep") and ps.colored:
            raise PreconditionError(f"method {name!r} ignores colors; colored files need 'colored' or 'auto'")
        fn = METHODS[name]
        M, r = fn(ps) if name == "deep" else fn(ps, seed=seed)
        if best is None or len(M) > len(best[1]):
            best = (name, M, r)
    return best


# ---------------------------------------------------------------- commands


def cmd_gen(args, out) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    c = args.c
    if c is None:
        c = 2 if args.kind == "windmill4" else 0
    spec = GenSpec(args.kind, args.n, c, seed, args.coord_max)
    write_text(args.output, format_points(generate(spec)), out)
    return 0


def cmd_match(args, out) -> int:
    ps = read_points(args.points)
    if args.colored and not ps.colored:
        raise PreconditionError("--colored given but the points file has no colors")
    seed = args.seed if args.seed is not None else _default_seed()
    name, M, r = run_method(ps, args.method, seed)
    text = format_matching(M)
    line = report_line(name, r)
    if args.output == "-":
        out.write(text + line + "\n")
    else:
        write_text(args.output, text, out)
        out.write(line + "\n")
    return 0


def cmd_verify(args, out) -> int:
    ps = read_points(args.points)
    M = read_matching(args.matching)
    problems = matching_problems(ps, M)
    if problems:
        for p in problems:
            out.write(f"error: {p}\n")
        return 1
    status = 0
    comps = components(ps, M)
    connected = len(comps) <= 1
    if not connected:
        out.write(f"error: {len(comps)} connected components\n")
        status = 1
    if ps.colored:
        bad = [(a, b) for a, b in M if ps.colors[a] == ps.colors[b]]
        for a, b in bad:
            out.write(f"error: edge ({a}, {b}) is monochromatic (color {ps.colors[a]})\n")
        if bad:
            status = 1
    if args.min_size is not None and len(M) < args.min_size:
        out.write(f"error: size {len(M)} below required {args.min_size}\n")
        status = 1
    poly = f" polychromatic={'true' if is_polychromatic(ps, M) else 'false'}" if ps.colored else ""
    out.write(f"size={len(M)} connected={'true' if connected else 'false'}{poly}\n")
    return status


def cmd_oracle(args, out) -> int:
    ps = read_points(args.points)
    if len(ps) > ORACLE_LIMIT:
        raise PreconditionError(f"oracle is exhaustive and limited to n <= {ORACLE_LIMIT} (got n = {len(ps)})")
    k, M = oracle_max_connected_matching(ps)
    out.write(format_matching(M))
    out.write(f"# max={k}\n")
    return 0


def cmd_svg(args, out) -> int:
    ps = read_points(args.points)
    M = read_matching(args.matching) if args.matching else []
    if any(not (0 <= a < len(ps) and 0 <= b < len(ps)) for a, b in M):
        raise PreconditionError("matching refers to points outside the file")
    path = args.path
    if path and any(not 0 <= i < len(ps) for i in path):
        raise PreconditionError("path refers to points outside the file")
    write_text(args.output, render_svg(ps, M, path, size=args.size), out)
    return 0


def run_bench(n_list: Sequence[int], seeds: Sequence[int], method: str = "uncolored", c: int = 0,
              repeats: int = 1) -> list[dict]:
    """Time a pipeline on random inputs; generation is excluded from the timings.

    All inputs are generated first. Timing then runs in ``repeats`` rounds,
    each visiting every (n, seed) once, and the fastest run per input is
    kept. Interleaving the sizes means a slow spell on a shared machine hits
    all of them alike instead of skewing one row. The inputs are frozen out
    of the cyclic garbage collector while timing, so its full passes do not
    charge each run for the other inputs held in memory; objects the
    pipeline itself creates are collected as usual.
    """
    inputs = []
    for n in n_list:
        for seed in seeds:
            ps = random_general_position(n, seed)
            if c:
                ps = random_balanced_coloring(ps, c, seed)
            inputs.append((n, seed, ps))
    best_t: dict[int, float] = {}
    results: dict[int, tuple] = {}
    gc.collect()
    gc.freeze()
    try:
        for _ in range(max(1, repeats)):
            for k, (n, seed, ps) in enumerate(inputs):
                t0 = time.perf_counter()
                _, M, r = run_method(ps, method, seed)
                dt = time.perf_counter() - t0
                best_t[k] = min(dt, best_t.get(k, dt))
                results[k] = (len(M), r)
    finally:
        gc.unfreeze()
    rows = []
    for n in n_list:
        ks = [k for k, inp in enumerate(inputs) if inp[0] == n]
        sizes = [results[k][0] for k in ks]
        times = [best_t[k] for k in ks]
        rows.append({
            "n": n,
            "mean_size": statistics.mean(sizes),
            "min_size": min(sizes),
            "bound": max(results[k][1].required for k in ks),
            "mean_time": statistics.mean(times),
            "median_time": statistics.median(times),
            "sizes": sizes,
            "guaranteed": all(results[k][1].holds for k in ks),
        })
    prev = None
    for row in rows:
        row["ratio"] = None if prev is None else row["median_time"] / prev["median_time"]
        prev = row
    return rows


def cmd_bench(args, out) -> int:
    seeds = args.seeds if args.seeds else [_default_seed()]
    rows = run_bench(args.n_list, seeds, args.method, args.c, args.repeats)
    out.write(f"{'n':>8} {'mean_size':>10} {'bound':>6} {'mean_time_s':>12} {'ratio':>6}\n")
    status = 0
    for row in rows:
        ratio = "-" if row["ratio"] is None else f"{row['ratio']:.2f}"
        out.write(f"{row['n']:>8} {row['mean_size']:>10.2f} {row['bound']:>6} {row['mean_time']:>12.4f} {ratio:>6}\n")
        if row["guaranteed"] and row["min_size"] < row["bound"]:
            out.write(f"error: a run at n={row['n']} fell below its bound\n")
            status = 1
    return status


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="connmatch", description="Connected straight-line matchings for planar point sets.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a point set")
    g.add_argument("--kind", choices=KINDS, default="random")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--c", type=int, default=None, help="number of colors (0 = uncolored)")
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--coord-max", type=int, default=DEFAULT_COORD_MAX)
    g.add_argument("-o", "--output", default="-")
    g.set_defaults(func=cmd_gen)

    m = sub.add_parser("match", help="compute a connected matching")
    m.add_argument("points")
    m.add_argument("--method", choices=["auto", *METHODS], default="auto")
    m.add_argument("--colored", action="store_true", help="require a colored input")
    m.add_argument("--seed", type=int, default=None)
    m.add_argument("-o", "--output", default="-")
    m.set_defaults(func=cmd_match)

    v = sub.add_parser("verify", help="check a matching file against a points file")
    v.add_argument("points")
    v.add_argument("matching")
    v.add_argument("--min-size", type=int, default=None)
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help=f"exact maximum connected matching (n <= {ORACLE_LIMIT})")
    o.add_argument("points")
    o.set_defaults(func=cmd_oracle)

    s = sub.add_parser("svg", help="draw points, a matching and a path")
    s.add_argument("points")
    s.add_argument("matching", nargs="?")
    s.add_argument("--path", type=_int_list, default=None, help="comma-separated point indices drawn dashed")
    s.add_argument("--size", type=int, default=800)
    s.add_argument("-o", "--output", default="-")
    s.set_defaults(func=cmd_svg)

    b = sub.add_parser("bench", help="time a pipeline on random inputs")
    b.add_argument("--n-list", type=_int_list, default=[1000, 2000, 4000])
    b.add_argument("--seeds", type=_int_list, default=None)
    b.add_argument("--method", choices=["auto", *METHODS], default="uncolored")
    b.add_argument("--c", type=int, default=0)
    b.add_argument("--repeats", type=int, default=1)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args, out)
    except (ConnMatchError, OSError) as e:
        sys.stderr.write(f"connmatch: error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
