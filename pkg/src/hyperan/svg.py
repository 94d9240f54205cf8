"""Minimal static SVG line charts (no plotting dependency)."""

from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

__all__ = ["line_chart"]

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def line_chart(path, x, series: dict, title: str = "", width: int = 720, height: int = 320) -> None:
    """Write one chart with a shared x axis; ``series`` maps label -> y values.

    Non-finite values break the polyline instead of being drawn.
    """
    x = np.asarray(x, dtype=float)
    ys = {k: np.asarray(v, dtype=float) for k, v in series.items()}
    for k, y in ys.items():
        if y.shape != x.shape:
            raise ValueError(f"series {k!r} has {y.size} points, x has {x.size}")
    pad = 40
    finite = np.concatenate([y[np.isfinite(y)] for y in ys.values()] or [np.zeros(1)])
    lo, hi = (float(finite.min()), float(finite.max())) if finite.size else (0.0, 1.0)
    if hi == lo:
        lo, hi = lo - 1.0, hi + 1.0
    x0, x1 = float(x.min()), float(x.max()) if x.size > 1 else float(x.min()) + 1.0
    if x1 == x0:
        x1 = x0 + 1.0

    def px(v):
        return pad + (v - x0) / (x1 - x0) * (width - 2 * pad)

    def py(v):
        return height - pad - (v - lo) / (hi - lo) * (height - 2 * pad)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{pad}" y="{pad}" width="{width - 2 * pad}" height="{height - 2 * pad}" fill="none" stroke="#888"/>',
        f'<text x="{width / 2}" y="{pad / 2 + 5}" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<text x="{pad}" y="{height - pad / 2 + 5}" font-size="11">{x0:.4g}</text>',
        f'<text x="{width - pad}" y="{height - pad / 2 + 5}" text-anchor="end" font-size="11">{x1:.4g}</text>',
        f'<text x="{pad - 4}" y="{pad + 4}" text-anchor="end" font-size="11">{hi:.4g}</text>',
        f'<text x="{pad - 4}" y="{height - pad}" text-anchor="end" font-size="11">{lo:.4g}</text>',
    ]
    for i, (label, y) in enumerate(ys.items()):
        color = _COLORS[i % len(_COLORS)]
        ok = np.isfinite(y)
        # split into runs of finite points
        edges = np.flatnonzero(np.diff(np.concatenate([[0], ok.astype(int), [0]])))
        for a, b in zip(edges[::2], edges[1::2]):
            pts = " ".join(f"{px(xv):.2f},{py(yv):.2f}" for xv, yv in zip(x[a:b], y[a:b]))
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1" points="{pts}"/>')
        out.append(
            f'<text x="{width - pad - 4}" y="{pad + 14 * (i + 1)}" text-anchor="end" '
            f'font-size="11" fill="{color}">{escape(str(label))}</text>'
        )
    out.append("</svg>")
    Path(path).write_text("\n".join(out) + "\n", encoding="utf-8")
