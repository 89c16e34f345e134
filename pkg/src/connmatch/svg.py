"""Static SVG figures of point sets, matchings and separator paths."""
from __future__ import annotations

from typing import Optional, Sequence
from xml.sax.saxutils import escape

from .geometry import PointSet

PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


def class_color(k: int) -> str:
    if k < len(PALETTE):
        return PALETTE[k]
    # beyond the palette, spread hues evenly (golden-angle steps)
    return f"hsl({(k * 137) % 360}, 65%, 45%)"


def render_svg(
    ps: PointSet,
    matching: Sequence[tuple[int, int]] = (),
    path: Optional[Sequence[int]] = None,
    size: int = 800,
    title: Optional[str] = None,
) -> str:
    """SVG document with one circle per point and one line per matching edge.

    The viewBox is the bounding box of the points plus a margin; the y axis
    is flipped so the picture has the usual mathematical orientation.
    """
    P = ps.points
    xs = [p[0] for p in P] or [0]
    ys = [p[1] for p in P] or [0]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1)
    pad = span // 20 + 1
    x0, y0 = min(xs) - pad, -(max(ys) + pad)
    w = max(xs) - min(xs) + 2 * pad
    h = max(ys) - min(ys) + 2 * pad
    r = span / 150
    stroke = span / 400
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{x0} {y0} {w} {h}" preserveAspectRatio="xMidYMid meet">'
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append(f'<g stroke="#333" stroke-width="{stroke:g}">')
    for a, b in matching:
        out.append(f'<line x1="{P[a][0]}" y1="{-P[a][1]}" x2="{P[b][0]}" y2="{-P[b][1]}"/>')
    out.append("</g>")
    if path:
        pts = " ".join(f"{P[i][0]},{-P[i][1]}" for i in path)
        out.append(
            f'<polyline points="{pts}" fill="none" stroke="#000" '
            f'stroke-width="{2 * stroke:g}" stroke-dasharray="{6 * stroke:g} {4 * stroke:g}"/>'
        )
    out.append("<g>")
    for i, (x, y) in enumerate(P):
        fill = class_color(ps.colors[i]) if ps.colored else "#222"
        out.append(f'<circle cx="{x}" cy="{-y}" r="{r:g}" fill="{fill}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
