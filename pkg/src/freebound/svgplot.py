"""Minimal SVG polyline plotter (axes plus up to a few series), no external
dependencies, byte-deterministic output."""

from __future__ import annotations

from typing import Sequence

_COLORS = ["#1f6fb2", "#c23b22", "#2e8540", "#7d3c98"]


def svg_plot(series: Sequence[tuple[Sequence[float], Sequence[float]]],
             width: int = 640, height: int = 420, margin: int = 48,
             title: str = "") -> str:
    xs_all = [float(x) for xs, _ in series for x in xs]
    ys_all = [float(y) for _, ys in series for y in ys]
    if not xs_all:
        raise ValueError("nothing to plot")
    x0, x1 = min(xs_all), max(xs_all)
    y0, y1 = min(ys_all), max(ys_all)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    pad = 0.05 * (y1 - y0)
    y0 -= pad
    y1 += pad

    def px(x: float) -> float:
        return margin + (x - x0) / (x1 - x0) * (width - 2 * margin)

    def py(y: float) -> float:
        return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin)

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height-margin}" x2="{width-margin}" y2="{height-margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height-margin}" stroke="black"/>',
        f'<text x="{margin}" y="{height-margin+16}" font-size="11">{x0:.6g}</text>',
        f'<text x="{width-margin-30}" y="{height-margin+16}" font-size="11">{x1:.6g}</text>',
        f'<text x="4" y="{height-margin}" font-size="11">{y0:.6g}</text>',
        f'<text x="4" y="{margin+4}" font-size="11">{y1:.6g}</text>',
    ]
    if title:
        lines.append(f'<text x="{width//2-60}" y="18" font-size="13">{title}</text>')
    for idx, (xs, ys) in enumerate(series):
        pts = " ".join(f"{px(float(x)):.2f},{py(float(y)):.2f}" for x, y in zip(xs, ys))
        color = _COLORS[idx % len(_COLORS)]
        lines.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.4" points="{pts}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
