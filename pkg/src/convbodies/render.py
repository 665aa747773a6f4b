"""SVG drawings of families, their hull and optional certificates.

Rendering converts to floats for drawing only; nothing here feeds a verdict.
"""
from __future__ import annotations

from html import escape
from typing import Sequence

from .geom import ConvexBody, GeometryError, Line, hull_body, hull_of_bodies

VIEW = 600
MARGIN = 40
PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def _frame(bodies: Sequence[ConvexBody]):
    xs = [float(v.x) for b in bodies for v in b.vertices]
    ys = [float(v.y) for b in bodies for v in b.vertices]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1e-9)
    k = (VIEW - 2 * MARGIN) / span

    def to_svg(x: float, y: float) -> tuple[float, float]:
        return MARGIN + (x - x0) * k, VIEW - MARGIN - (y - y0) * k

    return to_svg, (x0, x1, y0, y1), span


def _clip_line(line: Line, box, pad: float):
    x0, x1, y0, y1 = box[0] - pad, box[1] + pad, box[2] - pad, box[3] + pad
    a, b, c = float(line.a), float(line.b), float(line.c)
    if abs(b) >= abs(a):
        return (x0, (c - a * x0) / b), (x1, (c - a * x1) / b)
    return ((c - b * y0) / a, y0), ((c - b * y1) / a, y1)


def render_svg(bodies: Sequence[ConvexBody], line: Line | None = None,
               ordering: Sequence[str] | None = None, title: str = "") -> str:
    """SVG 1.1 document: bodies, dashed hull, optional line and ordering ranks."""
    if not bodies:
        raise GeometryError("nothing to render")
    to_svg, box, span = _frame(bodies)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{VIEW}" '
        f'height="{VIEW + 60}" viewBox="0 0 {VIEW} {VIEW + 60}">',
        f'<rect width="{VIEW}" height="{VIEW + 60}" fill="white"/>',
    ]
    if title:
        out.append(f'<title>{escape(title)}</title>')

    def poly(pts, **attrs):
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in (to_svg(float(p.x), float(p.y)) for p in pts))
        extra = " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in attrs.items())
        tag = "polygon" if len(pts) >= 3 else "polyline"
        return f'<{tag} points="{coords}" {extra}/>'

    hull = hull_body(bodies)
    out.append(poly(hull.vertices, fill="none", stroke="#444", stroke_dasharray="6 4"))
    rank = {bid: i + 1 for i, bid in enumerate(ordering or ())}
    for i, b in enumerate(bodies):
        color = PALETTE[i % len(PALETTE)]
        if b.is_point:
            x, y = to_svg(float(b.vertices[0].x), float(b.vertices[0].y))
            out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="{color}"/>')
        else:
            out.append(poly(b.vertices, fill=color, fill_opacity="0.35", stroke=color, stroke_width="2"))
        c = b.centroid()
        x, y = to_svg(float(c.x), float(c.y))
        label = b.id if b.id not in rank else f"{b.id} (#{rank[b.id]})"
        out.append(f'<text x="{x + 6:.2f}" y="{y - 6:.2f}" font-family="sans-serif" '
                   f'font-size="13">{escape(label)}</text>')
    if line is not None:
        (ax, ay), (bx, by) = _clip_line(line, box, span * 0.1)
        (sx, sy), (tx, ty) = to_svg(ax, ay), to_svg(bx, by)
        out.append(f'<line x1="{sx:.2f}" y1="{sy:.2f}" x2="{tx:.2f}" y2="{ty:.2f}" '
                   f'stroke="black" stroke-width="1.5"/>')
    try:
        word = " ".join(hull_of_bodies(bodies).word)
        caption = f"hull boundary word (ccw): {word}"
    except GeometryError as exc:
        caption = f"hull boundary word unavailable: {exc}"
    legend = ", ".join(b.id for b in bodies)
    out.append(f'<text x="10" y="{VIEW + 20}" font-family="sans-serif" font-size="13">'
               f'{escape(caption)}</text>')
    out.append(f'<text x="10" y="{VIEW + 42}" font-family="sans-serif" font-size="13">'
               f'bodies: {escape(legend)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
