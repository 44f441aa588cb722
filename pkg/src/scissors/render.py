"""SVG pictures of a scissors automorphism: target, base placement, move placement.

Coordinates are rounded to floats for drawing only.
"""
from __future__ import annotations

import colorsys
from xml.sax.saxutils import escape

from .geometry import E1, Polytope, apply_isometry
from .trace import ScissorsAutomorphism

PANEL = 260
PAD = 20
GOLDEN = 0.6180339887498949


def piece_color(i: int) -> str:
    r, g, b = colorsys.hls_to_rgb((i * GOLDEN) % 1.0, 0.6, 0.65)
    return f"#{int(r * 255):02x}{int(g * 255):02x}{int(b * 255):02x}"


def _bounds(polys: list[Polytope]):
    xs, ys = [], []
    for P in polys:
        for c in P.cells:
            if P.geometry == E1:
                xs += [c.lo.approx(), c.hi.approx()]
                ys += [0.0, 1.0]
            else:
                xs += [float(x) for x, _ in c.vertices]
                ys += [float(y) for _, y in c.vertices]
    return min(xs), max(xs), min(ys), max(ys)


def _shapes(P: Polytope, to_px, attrs: str) -> list[str]:
    out = []
    for c in P.cells:
        if P.geometry == E1:
            (x0, y0), (x1, y1) = to_px(c.lo.approx(), 0.0), to_px(c.hi.approx(), 1.0)
            out.append(f'<rect x="{min(x0, x1):.3f}" y="{min(y0, y1):.3f}" width="{abs(x1 - x0):.3f}" height="{abs(y1 - y0):.3f}" {attrs}/>')
        else:
            pts = " ".join("{:.3f},{:.3f}".format(*to_px(float(x), float(y))) for x, y in c.vertices)
            out.append(f'<polygon points="{pts}" {attrs}/>')
    return out


def render_svg(s: ScissorsAutomorphism, title: str = "") -> str:
    base = [apply_isometry(g, P) for g, P in zip(s.base, s.pieces)]
    move = [apply_isometry(g, P) for g, P in zip(s.move, s.pieces)]
    x0, x1, y0, y1 = _bounds([s.target] + base + move)
    span = max(x1 - x0, y1 - y0) or 1.0
    scale = (PANEL - 2 * PAD) / span
    height = PANEL if s.target.geometry != E1 else PAD * 2 + 40
    flat = s.target.geometry == E1

    def transform(ox):
        def to_px(x, y):
            px = ox + PAD + (x - x0) * scale
            if flat:
                return px, PAD + y * 40
            return px, height - PAD - (y - y0) * scale
        return to_px

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{3 * PANEL}" height="{height + 24}" viewBox="0 0 {3 * PANEL} {height + 24}">',
        f"<title>{escape(title or 'scissors automorphism')}</title>",
    ]
    labels = ["target", "base placement", "move placement"]
    for k, label in enumerate(labels):
        parts.append(f'<text x="{k * PANEL + PAD}" y="{height + 16}" font-family="sans-serif" font-size="12">{label}</text>')
    to_px = transform(0)
    parts.append('<g class="target">')
    parts += _shapes(s.target, to_px, 'fill="#dddddd" stroke="#333333" stroke-width="1"')
    parts.append("</g>")
    for k, placed in ((1, base), (2, move)):
        to_px = transform(k * PANEL)
        parts.append(f'<g class="placement" data-panel="{labels[k]}">')
        for i, P in enumerate(placed):
            parts.append(f'<g class="piece" data-piece="{i}">')
            parts += _shapes(P, to_px, f'fill="{piece_color(i)}" stroke="#222222" stroke-width="0.6"')
            parts.append("</g>")
        parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
