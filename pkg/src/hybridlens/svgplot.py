"""Deterministic SVG 1.1 scatter rendering for benchmark suites.

Pure string building: a given record list always yields identical bytes,
so plots can serve as golden files. Data points are the only <circle>
elements (the legend uses <rect> swatches), ordered by image_id then
sigma within each filter-kind panel.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

# matplotlib's tab10 cycle, hardcoded so output never depends on a plot library
_PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)

_PANEL_W = 440
_PANEL_H = 320
_MARGIN_L = 70
_MARGIN_R = 16
_MARGIN_T = 34
_MARGIN_B = 48
_LEGEND_W = 130
_TICKS = 5


def sigma_palette(sigmas: Sequence[float]) -> Dict[float, str]:
    """Stable sigma -> color assignment over the sorted distinct sigmas."""
    return {s: _PALETTE[i % len(_PALETTE)] for i, s in enumerate(sorted(set(sigmas)))}


def _scale(v: float, lo: float, hi: float, px0: float, px1: float) -> float:
    if hi <= lo:
        return (px0 + px1) / 2.0
    return px0 + (v - lo) / (hi - lo) * (px1 - px0)


def _ticks(lo: float, hi: float) -> List[float]:
    if hi <= lo:
        return [lo]
    return [lo + (hi - lo) * i / (_TICKS - 1) for i in range(_TICKS)]


def _fmt(v: float) -> str:
    return f"{v:.4g}"


def render_scatter(records: Sequence) -> bytes:
    """Render one panel per filter kind plus a shared sigma legend."""
    kinds = sorted({r.filter_kind for r in records})
    colors = sigma_palette([r.sigma for r in records])

    width = _PANEL_W * len(kinds) + _LEGEND_W
    height = _PANEL_H
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" '
        'font-family="sans-serif" font-size="11">\n',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>\n',
    ]

    for panel, kind in enumerate(kinds):
        sub = sorted(
            (r for r in records if r.filter_kind == kind),
            key=lambda r: (r.image_id, r.sigma),
        )
        ox = panel * _PANEL_W
        x0, x1 = ox + _MARGIN_L, ox + _PANEL_W - _MARGIN_R
        y0, y1 = _PANEL_H - _MARGIN_B, _MARGIN_T  # y grows downward in SVG

        xs = [r.size_metric for r in sub]
        ys = [r.elapsed_ns / 1e6 for r in sub]
        x_hi = max(xs) * 1.05 if max(xs) > 0 else 1.0
        y_hi = max(ys) * 1.05 if max(ys) > 0 else 1.0

        parts.append(
            f'<text x="{(x0 + x1) / 2:.1f}" y="{_MARGIN_T - 14}" '
            f'text-anchor="middle" font-size="13">{kind}</text>\n'
        )
        parts.append(
            f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>\n'
            f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>\n'
        )
        for tv in _ticks(0.0, x_hi):
            px = _scale(tv, 0.0, x_hi, x0, x1)
            parts.append(
                f'<line x1="{px:.2f}" y1="{y0}" x2="{px:.2f}" y2="{y0 + 4}" stroke="black"/>\n'
                f'<text x="{px:.2f}" y="{y0 + 16}" text-anchor="middle">{_fmt(tv)}</text>\n'
            )
        for tv in _ticks(0.0, y_hi):
            py = _scale(tv, 0.0, y_hi, y0, y1)
            parts.append(
                f'<line x1="{x0 - 4}" y1="{py:.2f}" x2="{x0}" y2="{py:.2f}" stroke="black"/>\n'
                f'<text x="{x0 - 7}" y="{py + 3.5:.2f}" text-anchor="end">{_fmt(tv)}</text>\n'
            )
        parts.append(
            f'<text x="{(x0 + x1) / 2:.1f}" y="{_PANEL_H - 12}" text-anchor="middle">'
            "size (width*height*channels)</text>\n"
        )
        parts.append(
            f'<text x="{ox + 16}" y="{(y0 + y1) / 2:.1f}" text-anchor="middle" '
            f'transform="rotate(-90 {ox + 16} {(y0 + y1) / 2:.1f})">time (ms)</text>\n'
        )
        for r, xv, yv in zip(sub, xs, ys):
            px = _scale(xv, 0.0, x_hi, x0, x1)
            py = _scale(yv, 0.0, y_hi, y0, y1)
            parts.append(
                f'<circle cx="{px:.2f}" cy="{py:.2f}" r="4" '
                f'fill="{colors[r.sigma]}" fill-opacity="0.8"/>\n'
            )

    lx = _PANEL_W * len(kinds) + 10
    parts.append(f'<text x="{lx}" y="{_MARGIN_T}" font-size="12">sigma</text>\n')
    for i, (sigma, color) in enumerate(sorted(colors.items())):
        ly = _MARGIN_T + 14 + i * 18
        parts.append(
            f'<rect x="{lx}" y="{ly - 9}" width="11" height="11" fill="{color}"/>\n'
            f'<text x="{lx + 16}" y="{ly}">{_fmt(sigma)}</text>\n'
        )

    parts.append("</svg>\n")
    return "".join(parts).encode("utf-8")
