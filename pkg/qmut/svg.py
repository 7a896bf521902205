"""Minimal standalone SVG scatter panels."""

from __future__ import annotations

from typing import List, Sequence, Tuple
from xml.sax.saxutils import escape

PANEL_SIZE = 300
MARGIN = 40
MARKER_RADIUS = 2.0
PADDING = 1.05
MARKER_COLOR = "#1f77b4"
AXIS_COLOR = "#999999"


def _fmt(value: float) -> str:
    return f"{value:.3f}".rstrip("0").rstrip(".")


class _Panel:
    def __init__(self, index: int, x_label: str, y_label: str, extent: float):
        self.left = MARGIN + index * (PANEL_SIZE + MARGIN)
        self.top = MARGIN
        self.x_label = x_label
        self.y_label = y_label
        self.extent = extent

    def to_screen(self, x: float, y: float) -> Tuple[float, float]:
        half = PANEL_SIZE / 2
        sx = self.left + half + x / self.extent * half
        sy = self.top + half - y / self.extent * half
        return sx, sy

    def frame(self) -> List[str]:
        cx, cy = self.to_screen(0.0, 0.0)
        right, bottom = self.left + PANEL_SIZE, self.top + PANEL_SIZE
        return [
            f'<rect x="{self.left}" y="{self.top}" width="{PANEL_SIZE}" height="{PANEL_SIZE}" '
            f'fill="none" stroke="black"/>',
            f'<line x1="{self.left}" y1="{_fmt(cy)}" x2="{right}" y2="{_fmt(cy)}" stroke="{AXIS_COLOR}"/>',
            f'<line x1="{_fmt(cx)}" y1="{self.top}" x2="{_fmt(cx)}" y2="{bottom}" stroke="{AXIS_COLOR}"/>',
            f'<text x="{_fmt(cx)}" y="{bottom + 25}" text-anchor="middle">{escape(self.x_label)}</text>',
            f'<text x="{self.left - 8}" y="{_fmt(cy)}" text-anchor="end">{escape(self.y_label)}</text>',
            f'<text x="{right}" y="{bottom + 12}" text-anchor="end" font-size="10">{_fmt(self.extent)}</text>',
        ]

    def marker(self, x: float, y: float) -> str:
        sx, sy = self.to_screen(x, y)
        return f'<circle cx="{_fmt(sx)}" cy="{_fmt(sy)}" r="{MARKER_RADIUS}" fill="{MARKER_COLOR}"/>'


def scatter_panels(
    columns: Sequence[Sequence[float]],
    panels: Sequence[Tuple[int, int]],
    labels: Sequence[str],
    extent: float,
    title: str = "",
) -> str:
    """Render one square panel per (x column, y column) pair, all sharing [-extent, extent]"""
    extent = extent * PADDING if extent > 0 else 1.0
    width = MARGIN + len(panels) * (PANEL_SIZE + MARGIN)
    height = PANEL_SIZE + 2 * MARGIN + 10
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if title:
        parts.append(f'<text x="{MARGIN}" y="{MARGIN - 15}">{escape(title)}</text>')
    for index, (i, j) in enumerate(panels):
        panel = _Panel(index, labels[i], labels[j], extent)
        parts.append("<g>")
        parts.extend(panel.frame())
        parts.extend(panel.marker(x, y) for x, y in zip(columns[i], columns[j]))
        parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
