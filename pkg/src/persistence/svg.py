"""
SVG 输出：直接写文本（折线 + 坐标轴），不依赖绘图库
"""
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple
from xml.sax.saxutils import escape

import numpy as np

from ..curve import CurveLike, chart_xy

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")
MARGIN = 56
CHART_CAPTION = "chart rendering (x, y) = (r cos u, r sin u), not isometric"


@dataclass
class Series:
    """One polyline (or marker set) of a plot"""
    label: str
    x: Sequence[float]
    y: Sequence[float]
    markers: bool = False


@dataclass
class _Frame:
    size: int
    x_range: Tuple[float, float]
    y_range: Tuple[float, float]
    parts: List[str] = field(default_factory=list)

    def map(self, x: float, y: float) -> Tuple[float, float]:
        (x0, x1), (y0, y1) = self.x_range, self.y_range
        span = self.size - 2 * MARGIN
        px = MARGIN + (x - x0) / (x1 - x0) * span
        py = self.size - MARGIN - (y - y0) / (y1 - y0) * span
        return px, py


def _num(value: float) -> str:
    return f"{value:.2f}"


def _tick(value: float) -> str:
    return f"{value:.4g}"


def _range(values: np.ndarray, pad: float = 0.05) -> Tuple[float, float]:
    finite = values[np.isfinite(values)]
    if finite.size == 0:
        return -1.0, 1.0
    low, high = float(finite.min()), float(finite.max())
    if high - low < 1e-12 * max(1.0, abs(high)):
        low, high = low - 0.5, high + 0.5
    width = high - low
    return low - pad * width, high + pad * width


def _header(frame: _Frame, title: str) -> None:
    size = frame.size
    frame.parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}" font-family="sans-serif" font-size="11">'
    )
    frame.parts.append(f'<rect width="{size}" height="{size}" fill="white"/>')
    frame.parts.append(f'<text x="{size // 2}" y="20" text-anchor="middle" font-size="14">{escape(title)}</text>')


def _axes(frame: _Frame, xlabel: str, ylabel: str) -> None:
    size = frame.size
    low, high = MARGIN, size - MARGIN
    frame.parts.append(
        f'<rect x="{low}" y="{low}" width="{high - low}" height="{high - low}" '
        f'fill="none" stroke="black" stroke-width="1"/>'
    )
    for k in range(5):
        fx = frame.x_range[0] + (frame.x_range[1] - frame.x_range[0]) * k / 4
        fy = frame.y_range[0] + (frame.y_range[1] - frame.y_range[0]) * k / 4
        px, _ = frame.map(fx, frame.y_range[0])
        _, py = frame.map(frame.x_range[0], fy)
        frame.parts.append(f'<line x1="{_num(px)}" y1="{high}" x2="{_num(px)}" y2="{high + 4}" stroke="black"/>')
        frame.parts.append(f'<text x="{_num(px)}" y="{high + 16}" text-anchor="middle">{_tick(fx)}</text>')
        frame.parts.append(f'<line x1="{low - 4}" y1="{_num(py)}" x2="{low}" y2="{_num(py)}" stroke="black"/>')
        frame.parts.append(f'<text x="{low - 6}" y="{_num(py + 4)}" text-anchor="end">{_tick(fy)}</text>')
    frame.parts.append(f'<text x="{size // 2}" y="{size - 14}" text-anchor="middle">{escape(xlabel)}</text>')
    frame.parts.append(
        f'<text x="14" y="{size // 2}" text-anchor="middle" transform="rotate(-90 14 {size // 2})">'
        f'{escape(ylabel)}</text>'
    )


def _polyline(frame: _Frame, x: Sequence[float], y: Sequence[float], color: str, closed: bool = False) -> None:
    points = [frame.map(float(a), float(b)) for a, b in zip(x, y) if math.isfinite(a) and math.isfinite(b)]
    if not points:
        return
    text = " ".join(f"{_num(px)},{_num(py)}" for px, py in points)
    tag = "polygon" if closed else "polyline"
    frame.parts.append(f'<{tag} points="{text}" fill="none" stroke="{color}" stroke-width="1.2"/>')


def _markers(frame: _Frame, x: Sequence[float], y: Sequence[float], color: str) -> None:
    for a, b in zip(x, y):
        if math.isfinite(a) and math.isfinite(b):
            px, py = frame.map(float(a), float(b))
            frame.parts.append(f'<circle cx="{_num(px)}" cy="{_num(py)}" r="3" fill="{color}"/>')


def _legend(frame: _Frame, labels: Sequence[str]) -> None:
    for k, label in enumerate(labels):
        y = MARGIN + 14 + 14 * k
        color = PALETTE[k % len(PALETTE)]
        frame.parts.append(f'<line x1="{MARGIN + 8}" y1="{y - 4}" x2="{MARGIN + 24}" y2="{y - 4}" stroke="{color}" stroke-width="2"/>')
        frame.parts.append(f'<text x="{MARGIN + 28}" y="{y}">{escape(label)}</text>')


def line_plot(series: Sequence[Series], title: str, xlabel: str, ylabel: str, size: int = 640) -> str:
    """Polyline plot of several series on shared axes"""
    xs = np.concatenate([np.asarray(s.x, dtype=float) for s in series]) if series else np.zeros(0)
    ys = np.concatenate([np.asarray(s.y, dtype=float) for s in series]) if series else np.zeros(0)
    frame = _Frame(size, _range(xs), _range(ys))
    _header(frame, title)
    _axes(frame, xlabel, ylabel)
    for k, s in enumerate(series):
        color = PALETTE[k % len(PALETTE)]
        if s.markers:
            _markers(frame, s.x, s.y, color)
        else:
            _polyline(frame, s.x, s.y, color)
    _legend(frame, [s.label for s in series])
    frame.parts.append("</svg>")
    return "\n".join(frame.parts) + "\n"


def curves_plot(curves: Sequence[CurveLike], labels: Sequence[str], title: str,
                size: int = 640, max_curves: Optional[int] = None) -> str:
    """Closed curves in the chart plane with equal axis scaling"""
    if max_curves is not None and len(curves) > max_curves:
        picks = np.unique(np.linspace(0, len(curves) - 1, max_curves).round().astype(int))
        curves = [curves[k] for k in picks]
        labels = [labels[k] for k in picks]
    coords = [chart_xy(c) for c in curves]
    extent = max((float(np.max(np.abs(np.concatenate([x, y])))) for x, y in coords), default=1.0)
    extent = 1.05 * extent if extent > 0.0 else 1.0
    frame = _Frame(size, (-extent, extent), (-extent, extent))
    _header(frame, title)
    _axes(frame, "x = r cos u", "y = r sin u")
    px, py = frame.map(0.0, 0.0)
    frame.parts.append(f'<circle cx="{_num(px)}" cy="{_num(py)}" r="2" fill="black"/>')
    for k, (x, y) in enumerate(coords):
        _polyline(frame, x, y, PALETTE[k % len(PALETTE)], closed=True)
    _legend(frame, labels)
    frame.parts.append(
        f'<text x="{size // 2}" y="{size - 30}" text-anchor="middle" font-style="italic">{escape(CHART_CAPTION)}</text>'
    )
    frame.parts.append("</svg>")
    return "\n".join(frame.parts) + "\n"
