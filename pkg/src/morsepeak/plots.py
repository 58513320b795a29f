"""Deterministic static SVG plots for the transform outputs.

Hand-rolled SVG text with fixed-precision coordinates so that identical
inputs always yield byte-identical files.
"""
from __future__ import annotations

import math
from typing import Sequence

from .pairing import PDSet, PTSet, RPTSet

WIDTH, HEIGHT, MARGIN = 640, 480, 48


def _fmt(v: float) -> str:
    return format(v, ".2f")


def _scale(values: Sequence[float]) -> tuple[float, float]:
    finite = [v for v in values if not math.isinf(v)]
    if not finite:
        return 0.0, 1.0
    lo, hi = min(finite), max(finite)
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def _to_px(v: float, lo: float, hi: float, size: int, flip: bool) -> float:
    t = (v - lo) / (hi - lo)
    if flip:
        t = 1.0 - t
    return MARGIN + t * (size - 2 * MARGIN)


def _header(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{MARGIN}" y="24" font-family="monospace" '
        f'font-size="14">{title}</text>',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{WIDTH - 2 * MARGIN}" '
        f'height="{HEIGHT - 2 * MARGIN}" fill="none" stroke="#888"/>',
    ]


def _shade(value: float, lo: float, hi: float) -> str:
    # darker = lower death value; the essential death maps to black
    if math.isinf(value):
        return "#000000"
    t = 0.0 if hi == lo else (value - lo) / (hi - lo)
    g = int(round(40 + 160 * t))
    return f"#{g:02x}{g:02x}{g:02x}"


def render_pt(pt: PTSet) -> str:
    """Position vs birth scatter; death encoded as the marker shade."""
    xs = [f.x for f in pt.features] + [f.x for f in pt.diagonal]
    ys = [f.birth for f in pt.features] + [f.birth for f in pt.diagonal]
    deaths = [f.death for f in pt.features]
    xlo, xhi = _scale(xs)
    ylo, yhi = _scale(ys)
    dlo, dhi = _scale(deaths)
    lines = _header("persistence transformation")
    for f in pt.diagonal:
        cx = _to_px(f.x, xlo, xhi, WIDTH, False)
        cy = _to_px(f.birth, ylo, yhi, HEIGHT, True)
        lines.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="2.5" '
                     f'fill="#4466cc"/>')
    for f in pt.features:
        cx = _to_px(f.x, xlo, xhi, WIDTH, False)
        cy = _to_px(f.birth, ylo, yhi, HEIGHT, True)
        lines.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="5.0" '
                     f'fill="{_shade(f.death, dlo, dhi)}" stroke="#cc2222"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_rpt(rpt: RPTSet) -> str:
    """Position vs persistence; infinite persistence clamps to the top edge."""
    xs = [f.x for f in rpt.features]
    ps = [f.persistence for f in rpt.features]
    xlo, xhi = _scale(xs)
    plo, phi = _scale([0.0] + ps)
    lines = _header("reduced persistence transformation")
    for f in rpt.features:
        cx = _to_px(f.x, xlo, xhi, WIDTH, False)
        if math.isinf(f.persistence):
            cy = float(MARGIN)
            mark = (f'<rect x="{_fmt(cx - 4)}" y="{_fmt(cy - 4)}" width="8" '
                    f'height="8" fill="#000000"/>')
        else:
            cy = _to_px(f.persistence, plo, phi, HEIGHT, True)
            mark = (f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="5.0" '
                    f'fill="#cc2222"/>')
        lines.append(mark)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_pd(pd: PDSet) -> str:
    """Birth vs death scatter with the diagonal; -inf deaths clamp left."""
    births = [q.birth for q in pd.points]
    deaths = [q.death for q in pd.points]
    lo, hi = _scale(births + deaths + [0.0])
    lines = _header("persistence diagram (upper levelset)")
    x0 = _to_px(lo, lo, hi, WIDTH, False)
    x1 = _to_px(hi, lo, hi, WIDTH, False)
    y0 = _to_px(lo, lo, hi, HEIGHT, True)
    y1 = _to_px(hi, lo, hi, HEIGHT, True)
    lines.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" '
                 f'y2="{_fmt(y1)}" stroke="#888" stroke-dasharray="4 3"/>')
    for q in pd.points:
        cy = _to_px(q.birth, lo, hi, HEIGHT, True)
        if math.isinf(q.death):
            cx = float(MARGIN)
            lines.append(f'<rect x="{_fmt(cx - 4)}" y="{_fmt(cy - 4)}" '
                         f'width="8" height="8" fill="#000000"/>')
        else:
            cx = _to_px(q.death, lo, hi, WIDTH, False)
            lines.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="5.0" '
                         f'fill="#cc2222"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
