"""Plain-text formats for point sets and matchings."""
from __future__ import annotations

from typing import Iterable, TextIO

from .errors import PreconditionError
from .geometry import PointSet


def _data_lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for no, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if line and not line.startswith("#"):
            out.append((no, line.split()))
    return out


def _ints(no: int, fields: list[str]) -> list[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise PreconditionError(f"line {no}: expected integers, got {' '.join(fields)!r}") from None


def parse_points(text: str) -> PointSet:
    """Parse ``n c`` followed by n lines ``x y`` (or ``x y color`` when c > 0)."""
    lines = _data_lines(text)
    if not lines:
        raise PreconditionError("empty points file")
    no, head = lines[0]
    if len(head) != 2:
        raise PreconditionError(f"line {no}: header must be 'n c'")
    n, c = _ints(no, head)
    body = lines[1:]
    if len(body) != n:
        raise PreconditionError(f"header announces {n} points, found {len(body)}")
    pts, cols = [], []
    width = 3 if c > 0 else 2
    for no, fields in body:
        if len(fields) != width:
            raise PreconditionError(f"line {no}: expected {width} integers")
        vals = _ints(no, fields)
        pts.append((vals[0], vals[1]))
        if c > 0:
            cols.append(vals[2])
    return PointSet(tuple(pts), tuple(cols) if c > 0 else None, c)


def format_points(ps: PointSet) -> str:
    out = [f"{len(ps)} {ps.c}"]
    for i, (x, y) in enumerate(ps.points):
        out.append(f"{x} {y} {ps.colors[i]}" if ps.colored else f"{x} {y}")
    return "\n".join(out) + "\n"


def parse_matching(text: str) -> list[tuple[int, int]]:
    M = []
    for no, fields in _data_lines(text):
        if len(fields) != 2:
            raise PreconditionError(f"line {no}: expected 'i j'")
        a, b = _ints(no, fields)
        M.append((a, b))
    return M


def format_matching(M: Iterable[tuple[int, int]]) -> str:
    M = list(M)
    body = "".join(f"{a} {b}\n" for a, b in M)
    return body + f"# size={len(M)}\n"


def read_points(path: str) -> PointSet:
    with open(path) as fh:
        return parse_points(fh.read())


def read_matching(path: str) -> list[tuple[int, int]]:
    with open(path) as fh:
        return parse_matching(fh.read())


def write_text(path: str, text: str, stdout: TextIO) -> None:
    if path == "-":
        stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)
