"""Minimal dependency-free SVG line charts.

Deterministic output: the same data always renders to the same bytes.
"""

from __future__ import annotations

from typing import Sequence

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")
_WIDTH, _HEIGHT, _PAD = 720, 440, 56


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def line_chart(x: Sequence[float],
               series: Sequence[tuple[str, Sequence[float]]],
               title: str = "",
               xlabel: str = "",
               ylabel: str = "",
               vline: float | None = None,
               vline_label: str = "") -> str:
    """Render one or more y-series against a shared x-axis as SVG markup.

    series is a list of (label, values) pairs; vline draws a dashed
    vertical marker (e.g. at a detected transition point).
    """
    xs = [float(v) for v in x]
    if not xs or not series:
        raise ValueError("need at least one point and one series")
    x_lo, x_hi = min(xs), max(xs)
    all_y = [float(v) for _, ys in series for v in ys]
    y_lo, y_hi = min(all_y + [0.0]), max(all_y)
    if y_hi - y_lo < 1e-12:
        y_hi = y_lo + 1.0
    span_x = x_hi - x_lo if x_hi > x_lo else 1.0
    span_y = y_hi - y_lo

    def px(v: float) -> float:
        return _PAD + (v - x_lo) / span_x * (_WIDTH - 2 * _PAD)

    def py(v: float) -> float:
        return _HEIGHT - _PAD - (v - y_lo) / span_y * (_HEIGHT - 2 * _PAD)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" '
        f'height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if title:
        parts.append(f'<text x="{_WIDTH / 2:.1f}" y="24" text-anchor="middle" '
                     f'font-size="15" font-family="sans-serif">{title}</text>')

    # axes
    parts.append(f'<line x1="{_PAD}" y1="{_HEIGHT - _PAD}" x2="{_WIDTH - _PAD}" '
                 f'y2="{_HEIGHT - _PAD}" stroke="#333" stroke-width="1"/>')
    parts.append(f'<line x1="{_PAD}" y1="{_PAD}" x2="{_PAD}" '
                 f'y2="{_HEIGHT - _PAD}" stroke="#333" stroke-width="1"/>')
    for t in _ticks(x_lo, x_hi):
        parts.append(f'<line x1="{px(t):.1f}" y1="{_HEIGHT - _PAD}" '
                     f'x2="{px(t):.1f}" y2="{_HEIGHT - _PAD + 5}" stroke="#333"/>')
        parts.append(f'<text x="{px(t):.1f}" y="{_HEIGHT - _PAD + 18}" '
                     f'text-anchor="middle" font-size="11" '
                     f'font-family="sans-serif">{t:.3g}</text>')
    for t in _ticks(y_lo, y_hi):
        parts.append(f'<line x1="{_PAD - 5}" y1="{py(t):.1f}" x2="{_PAD}" '
                     f'y2="{py(t):.1f}" stroke="#333"/>')
        parts.append(f'<text x="{_PAD - 8}" y="{py(t) + 4:.1f}" '
                     f'text-anchor="end" font-size="11" '
                     f'font-family="sans-serif">{t:.3g}</text>')
    if xlabel:
        parts.append(f'<text x="{_WIDTH / 2:.1f}" y="{_HEIGHT - 14}" '
                     f'text-anchor="middle" font-size="12" '
                     f'font-family="sans-serif">{xlabel}</text>')
    if ylabel:
        parts.append(f'<text x="16" y="{_HEIGHT / 2:.1f}" text-anchor="middle" '
                     f'font-size="12" font-family="sans-serif" '
                     f'transform="rotate(-90 16 {_HEIGHT / 2:.1f})">{ylabel}</text>')

    for idx, (label, ys) in enumerate(series):
        color = _PALETTE[idx % len(_PALETTE)]
        pts = " ".join(f"{px(xv):.2f},{py(float(yv)):.2f}"
                       for xv, yv in zip(xs, ys))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                     f'stroke-width="1.8"/>')
        ly = _PAD + 16 + 16 * idx
        lx = _WIDTH - _PAD - 150
        parts.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" '
                     f'y2="{ly - 4}" stroke="{color}" stroke-width="1.8"/>')
        parts.append(f'<text x="{lx + 28}" y="{ly}" font-size="12" '
                     f'font-family="sans-serif">{label}</text>')

    if vline is not None and x_lo <= vline <= x_hi:
        parts.append(f'<line x1="{px(vline):.2f}" y1="{_PAD}" '
                     f'x2="{px(vline):.2f}" y2="{_HEIGHT - _PAD}" '
                     f'stroke="#555" stroke-width="1" stroke-dasharray="5,4"/>')
        if vline_label:
            parts.append(f'<text x="{px(vline) + 4:.2f}" y="{_PAD + 12}" '
                         f'font-size="11" font-family="sans-serif" '
                         f'fill="#555">{vline_label}</text>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
