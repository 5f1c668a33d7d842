"""Minimal standalone SVG bar chart for a histogram."""

from __future__ import annotations

from xml.sax.saxutils import escape

MARGIN_LEFT = 50
MARGIN_RIGHT = 15
MARGIN_TOP = 30
MARGIN_BOTTOM = 45


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


def render_histogram_svg(bins, width: int = 480, height: int = 320,
                         title: str = "") -> str:
    """Render ``(bin_start, bin_end, count)`` triples as an SVG document.

    Bar heights are proportional to counts (the tallest bar fills the plot
    area). Ticks are placed at every bin edge. Output is deterministic.
    """
    bins = list(bins)
    if not bins:
        raise ValueError("no bins to draw")
    if width <= 0 or height <= 0:
        raise ValueError(f"canvas must have positive size, got {width}x{height}")
    plot_w = width - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = height - MARGIN_TOP - MARGIN_BOTTOM
    if plot_w <= 0 or plot_h <= 0:
        raise ValueError(f"canvas {width}x{height} too small for axes")

    lo = bins[0][0]
    hi = bins[-1][1]
    span = (hi - lo) or 1.0
    peak = max(b[2] for b in bins)
    x0, y0 = MARGIN_LEFT, MARGIN_TOP + plot_h

    def sx(v):
        return x0 + (v - lo) / span * plot_w

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{width / 2:.2f}" y="{MARGIN_TOP / 2 + 5:.2f}" '
                   f'text-anchor="middle" font-size="14">{escape(title)}</text>')
    for start, end, count in bins:
        h = count / peak * plot_h if peak > 0 else 0.0
        out.append(f'<rect class="bar" x="{sx(start):.2f}" y="{y0 - h:.2f}" '
                   f'width="{sx(end) - sx(start):.2f}" height="{h:.2f}" '
                   f'fill="steelblue" stroke="black" stroke-width="0.5"/>')
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0 + plot_w}" y2="{y0}" stroke="black"/>')
    out.append(f'<line x1="{x0}" y1="{MARGIN_TOP}" x2="{x0}" y2="{y0}" stroke="black"/>')
    edges = [b[0] for b in bins] + [bins[-1][1]]
    for e in edges:
        x = sx(e)
        out.append(f'<line x1="{x:.2f}" y1="{y0}" x2="{x:.2f}" y2="{y0 + 5}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{y0 + 18}" text-anchor="middle" '
                   f'font-size="9">{_fmt(e)}</text>')
    for frac in (0.0, 0.5, 1.0):
        y = y0 - frac * plot_h
        out.append(f'<line x1="{x0 - 5}" y1="{y:.2f}" x2="{x0}" y2="{y:.2f}" stroke="black"/>')
        out.append(f'<text x="{x0 - 8}" y="{y + 3:.2f}" text-anchor="end" '
                   f'font-size="9">{_fmt(frac * peak)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
