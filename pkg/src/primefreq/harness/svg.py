"""Minimal standalone SVG emitters (heatmap, step histogram). No plotting dependency."""
from __future__ import annotations

from html import escape

import numpy as np

# viridis control points
_STOPS = np.array([
    [68, 1, 84], [59, 82, 139], [33, 145, 140], [94, 201, 98], [253, 231, 37],
], dtype=float)
_PALETTE = ["#00a0b0", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"]


def _color(t: float) -> str:
    if not np.isfinite(t):
        return "#cccccc"
    t = min(max(t, 0.0), 1.0) * (len(_STOPS) - 1)
    i = min(int(t), len(_STOPS) - 2)
    rgb = _STOPS[i] + (t - i) * (_STOPS[i + 1] - _STOPS[i])
    return "#%02x%02x%02x" % tuple(int(round(c)) for c in rgb)


def _doc(width: int, height: int, body: list[str], title: str) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">'
    )
    return "\n".join([head, f'<text x="{width / 2}" y="16" text-anchor="middle" font-size="13">{escape(title)}</text>', *body, "</svg>\n"])


def heatmap(values, row_labels, col_labels, title: str = "", cell: int = 48) -> str:
    """Grid of colored cells with the numeric value printed in each cell."""
    values = np.asarray(values, dtype=float)
    rows, cols = values.shape
    left, top = 70, 30
    finite = values[np.isfinite(values)]
    lo, hi = (finite.min(), finite.max()) if finite.size else (0.0, 1.0)
    span = hi - lo or 1.0
    body = []
    for i in range(rows):
        y = top + i * cell
        body.append(f'<text x="{left - 6}" y="{y + cell / 2 + 4}" text-anchor="end">{escape(str(row_labels[i]))}</text>')
        for j in range(cols):
            x = left + j * cell
            v = values[i, j]
            body.append(f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" fill="{_color((v - lo) / span)}"/>')
            body.append(
                f'<text x="{x + cell / 2}" y="{y + cell / 2 + 4}" text-anchor="middle" font-size="9" '
                f'fill="{"#000" if (v - lo) / span > 0.6 else "#fff"}">{v:.3g}</text>'
            )
    for j in range(cols):
        body.append(f'<text x="{left + j * cell + cell / 2}" y="{top + rows * cell + 14}" text-anchor="middle">{escape(str(col_labels[j]))}</text>')
    return _doc(left + cols * cell + 20, top + rows * cell + 30, body, title)


def step_histogram(series: dict, lo: float, hi: float, title: str = "", xlabel: str = "",
                   width: int = 520, height: int = 320, vlines=()) -> str:
    """One step curve per named series of bin heights over [lo, hi]."""
    left, right, top, bottom = 50, 20, 30, 40
    pw, ph = width - left - right, height - top - bottom
    ymax = max((float(np.max(v)) for v in series.values() if len(v)), default=1.0) or 1.0
    body = [f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="#444"/>']

    def sx(x):
        return left + (x - lo) / (hi - lo) * pw

    def sy(y):
        return top + ph - y / ymax * ph

    for idx, (name, vals) in enumerate(series.items()):
        vals = np.asarray(vals, dtype=float)
        edges = np.linspace(lo, hi, vals.size + 1)
        pts = [f"{sx(edges[0]):.2f},{sy(0):.2f}"]
        for e0, e1, v in zip(edges[:-1], edges[1:], vals):
            pts.append(f"{sx(e0):.2f},{sy(v):.2f}")
            pts.append(f"{sx(e1):.2f},{sy(v):.2f}")
        pts.append(f"{sx(edges[-1]):.2f},{sy(0):.2f}")
        color = _PALETTE[idx % len(_PALETTE)]
        body.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{" ".join(pts)}"/>')
        body.append(f'<text x="{left + pw - 4}" y="{top + 14 + 14 * idx}" text-anchor="end" fill="{color}">{escape(name)}</text>')
    for x in vlines:
        if lo <= x <= hi:
            body.append(f'<line x1="{sx(x):.2f}" y1="{top}" x2="{sx(x):.2f}" y2="{top + ph}" stroke="#000" stroke-dasharray="4 3"/>')
    body.append(f'<text x="{left}" y="{height - 10}">{lo:.3g}</text>')
    body.append(f'<text x="{left + pw}" y="{height - 10}" text-anchor="end">{hi:.3g}</text>')
    body.append(f'<text x="{left + pw / 2}" y="{height - 10}" text-anchor="middle">{escape(xlabel)}</text>')
    return _doc(width, height, body, title)
