"""Minimal deterministic log-log SVG plots (points, lines, decade ticks)."""

import math
from xml.sax.saxutils import escape

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")

WIDTH, HEIGHT = 640, 420
LEFT, RIGHT, TOP, BOTTOM = 70, 150, 30, 50


def _fmt(v):
    return f"{v:.2f}"


def _decades(lo, hi):
    return range(math.floor(math.log10(lo)), math.ceil(math.log10(hi)) + 1)


def loglog_svg(series, xlabel="frequency (Hz)", ylabel="heating rate (quanta/s)", title=""):
    """Render ``series`` as an SVG string.

    ``series`` is a list of dicts with keys ``label``, ``x``, ``y`` and
    ``style`` (``"line"`` or ``"points"``).  Non-positive values are dropped.
    """
    clean = []
    for s in series:
        pts = [(float(x), float(y)) for x, y in zip(s["x"], s["y"]) if x > 0 and y > 0]
        if pts:
            clean.append((s, pts))
    if not clean:
        raise ValueError("nothing to plot")

    xs = [x for _, pts in clean for x, _ in pts]
    ys = [y for _, pts in clean for _, y in pts]
    lx0, lx1 = math.log10(min(xs)), math.log10(max(xs))
    ly0, ly1 = math.log10(min(ys)), math.log10(max(ys))
    if lx1 == lx0:
        lx0, lx1 = lx0 - 0.5, lx1 + 0.5
    if ly1 == ly0:
        ly0, ly1 = ly0 - 0.5, ly1 + 0.5
    pad = 0.05 * (ly1 - ly0)
    ly0, ly1 = ly0 - pad, ly1 + pad
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def px(x):
        return LEFT + (math.log10(x) - lx0) / (lx1 - lx0) * pw

    def py(y):
        return TOP + (ly1 - math.log10(y)) / (ly1 - ly0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'font-family="sans-serif" font-size="11">',
        f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    if title:
        out.append(f'<text x="{LEFT}" y="{TOP - 10}">{escape(title)}</text>')
    for d in _decades(10**lx0, 10**lx1):
        for m in range(1, 10):
            v = m * 10.0**d
            if 10**lx0 <= v <= 10**lx1:
                x = _fmt(px(v))
                y0 = TOP + ph
                tick = 6 if m == 1 else 3
                out.append(f'<line x1="{x}" y1="{y0}" x2="{x}" y2="{y0 - tick}" stroke="black"/>')
                if m == 1 or (lx1 - lx0) < 1:
                    out.append(f'<text x="{x}" y="{y0 + 15}" text-anchor="middle">{v:.3g}</text>')
    for d in _decades(10**ly0, 10**ly1):
        for m in range(1, 10):
            v = m * 10.0**d
            if 10**ly0 <= v <= 10**ly1:
                y = _fmt(py(v))
                tick = 6 if m == 1 else 3
                out.append(f'<line x1="{LEFT}" y1="{y}" x2="{LEFT + tick}" y2="{y}" stroke="black"/>')
                if m == 1 or (ly1 - ly0) < 1:
                    out.append(f'<text x="{LEFT - 5}" y="{y}" text-anchor="end">{v:.3g}</text>')
    out.append(
        f'<text x="{LEFT + pw / 2:.1f}" y="{HEIGHT - 10}" text-anchor="middle">{escape(xlabel)}</text>'
    )
    out.append(
        f'<text x="15" y="{TOP + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 15 {TOP + ph / 2:.1f})">{escape(ylabel)}</text>'
    )

    for i, (s, pts) in enumerate(clean):
        color = _COLORS[i % len(_COLORS)]
        if s.get("style", "line") == "points":
            for x, y in pts:
                out.append(f'<circle cx="{_fmt(px(x))}" cy="{_fmt(py(y))}" r="3" fill="{color}"/>')
        else:
            path = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in pts)
            out.append(f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        ly = TOP + 15 + 16 * i
        out.append(f'<rect x="{WIDTH - RIGHT + 10}" y="{ly - 8}" width="10" height="10" fill="{color}"/>')
        out.append(f'<text x="{WIDTH - RIGHT + 25}" y="{ly}">{escape(str(s["label"]))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
