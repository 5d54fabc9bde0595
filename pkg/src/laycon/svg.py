"""Deterministic SVG pictures of representations.

Layer 1 is drawn at the bottom. Realized contacts are drawn as thick blue
segments on the shared boundary, false adjacencies as thick red ones, and
same-layer overlaps as red hatched boxes. Invalid drawings render too.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union
from xml.sax.saxutils import escape

from .evaluate import Representation, RepresentationError, _check_cover, evaluate
from .model import LayeredGraph

Number = Union[int, Fraction]


def _fmt(x: Number) -> str:
    # fixed precision keeps output stable across platforms
    s = f"{float(x):.4f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def render_svg(g: LayeredGraph, r: Representation, unit: int = 24, margin: int = 8) -> str:
    """SVG document for ``r``; ``unit`` is the pixel size of one grid column and one layer."""
    try:
        _check_cover(g, r)
        report = evaluate(g, r)
    except RepresentationError:
        report = None
    pos = r.positions
    if pos:
        lo = min(pos.values())
        hi = max(x + g.width(v) for v, x in pos.items() if g.contains(v)) if any(g.contains(v) for v in pos) else lo
    else:
        lo = hi = 0
    L = g.num_layers
    width = (hi - lo) * unit + 2 * margin
    height = L * unit + 2 * margin

    def X(x: Number) -> str:
        return _fmt((x - lo) * unit + margin)

    def Y(y: Number) -> str:
        # y is a layer boundary, 0 at the bottom
        return _fmt((L - y) * unit + margin)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
        '<g id="rectangles" stroke="black" stroke-width="1" fill="#f2f2f2">',
    ]
    for v in sorted(pos):
        if not g.contains(v):
            continue
        x, w = pos[v], g.width(v)
        out.append(
            f'<rect x="{X(x)}" y="{Y(v.layer)}" width="{_fmt(w * unit)}" height="{_fmt(unit)}">'
            f"<title>{escape(str(v))}</title></rect>"
        )
    out.append("</g>")
    if g.labels is not None:
        out.append('<g id="labels" font-family="monospace" font-size="8" text-anchor="middle">')
        for v in sorted(pos):
            if not g.contains(v):
                continue
            label = g.label(v)
            if label:
                cx = pos[v] + Fraction(g.width(v), 2)
                out.append(f'<text x="{X(cx)}" y="{Y(v.layer - Fraction(1, 2))}">{escape(label)}</text>')
        out.append("</g>")
    if report is not None:
        out.append('<g id="contacts" stroke="#1f5fbf" stroke-width="3">')
        for u, v in sorted(report.realized_edges):
            out.append(_segment(g, pos, u, v, X, Y))
        out.append("</g>")
        out.append('<g id="false-adjacencies" stroke="#d62728" stroke-width="4">')
        for fa in report.false_adjacencies:
            out.append(_segment(g, pos, fa.u, fa.v, X, Y))
        out.append("</g>")
        out.append('<g id="order-violations" fill="#d62728" fill-opacity="0.4">')
        for ov in report.order_violations:
            x0 = pos[ov.v]
            out.append(
                f'<rect x="{X(x0)}" y="{Y(ov.v.layer)}" width="{_fmt(ov.overlap * unit)}" height="{_fmt(unit)}"/>'
            )
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _segment(g, pos, u, v, X, Y) -> str:
    if u.layer == v.layer:
        a, b = (u, v) if pos[u] <= pos[v] else (v, u)
        x = pos[a] + g.width(a)
        return f'<line x1="{X(x)}" y1="{Y(u.layer - 1)}" x2="{X(x)}" y2="{Y(u.layer)}"/>'
    low, high = (u, v) if u.layer < v.layer else (v, u)
    x0 = max(pos[low], pos[high])
    x1 = min(pos[low] + g.width(low), pos[high] + g.width(high))
    return f'<line x1="{X(x0)}" y1="{Y(low.layer)}" x2="{X(x1)}" y2="{Y(low.layer)}"/>'
