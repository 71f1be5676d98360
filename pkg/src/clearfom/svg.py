"""
Minimal standalone SVG plots: trend scatter + fit, and the two-technology surface map.

Output is plain text built by hand so it stays deterministic and diffable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import IO, Sequence
from xml.sax.saxutils import escape, quoteattr

from .breakeven import SurfaceGrid
from .errors import EmptyData, InvalidParams, SinkWriteError
from .trends import TrendFit, fit_trend

PALETTE = {"a": "#d62728", "b": "#1f77b4"}  # electrical red, hybrid blue
FILL = {"a": "#f7d4d4", "b": "#d4e4f7"}
MARGIN = (70, 20, 30, 55)  # left, right, top, bottom


@dataclass
class PlotSpec:
    width_px: int = 640
    height_px: int = 420
    x_label: str = ""
    y_label: str = ""
    x_log: bool = False
    y_log: bool = True
    title: str = ""
    annotations: list[tuple[str, float, float]] = field(default_factory=list)

    def __post_init__(self):
        if self.width_px <= MARGIN[0] + MARGIN[1] or self.height_px <= MARGIN[2] + MARGIN[3]:
            raise InvalidParams(f"plot too small: {self.width_px}x{self.height_px}")


def _n(v: float) -> str:
    return f"{v:.2f}"


class _Axis:
    def __init__(self, lo: float, hi: float, log: bool, p0: float, p1: float):
        if log and (lo <= 0 or hi <= 0):
            raise InvalidParams("log axis needs positive data")
        self.log = log
        a, b = (math.log10(lo), math.log10(hi)) if log else (lo, hi)
        if a == b:
            a, b = a - 0.5, b + 0.5
        self.a, self.b, self.p0, self.p1 = a, b, p0, p1

    def __call__(self, v: float) -> float:
        u = math.log10(v) if self.log else v
        return self.p0 + (u - self.a) / (self.b - self.a) * (self.p1 - self.p0)

    def ticks(self) -> list[tuple[float, str]]:
        if self.log:
            lo, hi = math.ceil(self.a - 1e-9), math.floor(self.b + 1e-9)
            step = max(1, math.ceil((hi - lo + 1) / 8))
            return [(10.0**k, f"1e{k}") for k in range(lo, hi + 1, step)]
        span = self.b - self.a
        raw = span / 6
        mag = 10 ** math.floor(math.log10(raw))
        step = next(m * mag for m in (1, 2, 5, 10) if m * mag >= raw)
        first = math.ceil(self.a / step) * step
        out = []
        k = 0
        while first + k * step <= self.b + 1e-9 * span:
            v = first + k * step
            out.append((v, f"{v:g}"))
            k += 1
        return out


class _Doc:
    def __init__(self, spec: PlotSpec):
        self.spec = spec
        self.parts = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{spec.width_px}" '
            f'height="{spec.height_px}" viewBox="0 0 {spec.width_px} {spec.height_px}" '
            'font-family="sans-serif" font-size="11">',
            f'<rect x="0" y="0" width="{spec.width_px}" height="{spec.height_px}" fill="white"/>',
        ]
        self.x0, self.x1 = MARGIN[0], spec.width_px - MARGIN[1]
        self.y0, self.y1 = spec.height_px - MARGIN[3], MARGIN[2]

    def add(self, s: str):
        self.parts.append(s)

    def axes(self, xa: _Axis, ya: _Axis):
        s = self.spec
        self.add(
            f'<path class="axis" d="M{_n(self.x0)} {_n(self.y1)} L{_n(self.x0)} {_n(self.y0)} '
            f'L{_n(self.x1)} {_n(self.y0)}" fill="none" stroke="black"/>'
        )
        for v, label in xa.ticks():
            x = xa(v)
            self.add(f'<path class="tick" d="M{_n(x)} {_n(self.y0)} v4" stroke="black"/>')
            self.add(f'<text class="xtick" x="{_n(x)}" y="{_n(self.y0 + 16)}" text-anchor="middle">{escape(label)}</text>')
        for v, label in ya.ticks():
            y = ya(v)
            self.add(f'<path class="tick" d="M{_n(self.x0)} {_n(y)} h-4" stroke="black"/>')
            self.add(f'<text class="ytick" x="{_n(self.x0 - 6)}" y="{_n(y + 4)}" text-anchor="end">{escape(label)}</text>')
        if s.x_label:
            self.add(
                f'<text class="xlabel" x="{_n((self.x0 + self.x1) / 2)}" y="{_n(s.height_px - 10)}" '
                f'text-anchor="middle">{escape(s.x_label)}</text>'
            )
        if s.y_label:
            cy = (self.y0 + self.y1) / 2
            self.add(
                f'<text class="ylabel" x="14" y="{_n(cy)}" text-anchor="middle" '
                f'transform="rotate(-90 14 {_n(cy)})">{escape(s.y_label)}</text>'
            )
        if s.title:
            self.add(f'<text class="title" x="{_n(self.x0)}" y="16">{escape(s.title)}</text>')

    def annotations(self, xa: _Axis, ya: _Axis):
        for label, x, y in self.spec.annotations:
            px, py = xa(x), ya(y)
            self.add(
                f'<g class="annotation"><circle cx="{_n(px)}" cy="{_n(py)}" r="5" fill="#ffd700" stroke="black"/>'
                f'<text x="{_n(px + 7)}" y="{_n(py - 7)}">{escape(label)}</text></g>'
            )

    def write(self, sink: IO) -> int:
        self.add("</svg>")
        data = ("\n".join(self.parts) + "\n").encode("utf-8")
        try:
            if hasattr(sink, "buffer"):
                sink = sink.buffer
            sink.write(data)
        except (OSError, ValueError) as exc:
            raise SinkWriteError(str(exc)) from exc
        return len(data)


def render_trend_svg(
    series: Sequence[tuple[float, float]], spec: PlotSpec, sink: IO[bytes], fit: TrendFit | None = None
) -> int:
    """Scatter of ``(year, value)`` points plus one fitted line; returns bytes written."""
    if not series:
        raise EmptyData("nothing to plot")
    if fit is None and len(series) >= 2 and len({p[0] for p in series}) >= 2:
        fit = fit_trend(series)
    xs = [p[0] for p in series] + [a[1] for a in spec.annotations]
    ys = [p[1] for p in series] + [a[2] for a in spec.annotations]
    doc = _Doc(spec)
    xa = _Axis(min(xs), max(xs), spec.x_log, doc.x0, doc.x1)
    ya = _Axis(min(ys), max(ys), spec.y_log, doc.y0, doc.y1)
    doc.axes(xa, ya)
    for x, y in series:
        doc.add(f'<circle class="marker" cx="{_n(xa(x))}" cy="{_n(ya(y))}" r="3" fill="{PALETTE["b"]}"/>')
    if fit is not None:
        t0, t1 = fit.year_range
        v0 = 2.0 ** (fit.slope_log2_per_year * t0 + fit.intercept_log2)
        v1 = 2.0 ** (fit.slope_log2_per_year * t1 + fit.intercept_log2)
        doc.add(
            f'<line class="fit" x1="{_n(xa(t0))}" y1="{_n(ya(v0))}" x2="{_n(xa(t1))}" y2="{_n(ya(v1))}" '
            f'stroke="{PALETTE["a"]}" stroke-width="1.5"/>'
        )
    doc.annotations(xa, ya)
    return doc.write(sink)


def _bounds(vals: Sequence[float], log: bool) -> list[float]:
    u = [math.log10(v) if log else v for v in vals]
    if len(u) == 1:
        b = [u[0] - 0.5, u[0] + 0.5]
    else:
        mids = [(a + c) / 2 for a, c in zip(u, u[1:])]
        b = [u[0] - (mids[0] - u[0])] + mids + [u[-1] + (u[-1] - mids[-1])]
    return [10.0**x for x in b] if log else b


def _iso_segments(xs, ys, field_, level):
    """Marching squares over field_[i][j] sampled at (xs[i], ys[j]); coordinates in data space."""
    segs = []
    for i in range(len(xs) - 1):
        for j in range(len(ys) - 1):
            corners = [
                (xs[i], ys[j], field_[i][j]),
                (xs[i + 1], ys[j], field_[i + 1][j]),
                (xs[i + 1], ys[j + 1], field_[i + 1][j + 1]),
                (xs[i], ys[j + 1], field_[i][j + 1]),
            ]
            pts = []
            for k in range(4):
                (xa, ya, fa), (xb, yb, fb) = corners[k], corners[(k + 1) % 4]
                if (fa >= level) != (fb >= level):
                    t = (level - fa) / (fb - fa)
                    pts.append((xa + t * (xb - xa), ya + t * (yb - ya)))
            if len(pts) == 2:
                segs.append((pts[0], pts[1]))
            elif len(pts) == 4:
                segs.append((pts[0], pts[1]))
                segs.append((pts[2], pts[3]))
    return segs


def render_surface_svg(grid: SurfaceGrid, spec: PlotSpec, sink: IO[bytes], max_levels: int = 8) -> int:
    """
    Year x length map of two technologies.

    Cells are filled by whichever technology has the larger CLEAR value, each
    technology contributes a family of iso-CLEAR curves at whole decades, and
    the break-even lengths are joined into a polyline.
    """
    if not grid.years or not grid.lengths:
        raise EmptyData("empty surface grid")
    doc = _Doc(spec)
    xb = _bounds(grid.years, False)
    yb = _bounds(grid.lengths, True)
    xs_all = [xb[0], xb[-1]] + [a[1] for a in spec.annotations]
    ys_all = [yb[0], yb[-1]] + [a[2] for a in spec.annotations]
    xa = _Axis(min(xs_all), max(xs_all), False, doc.x0, doc.x1)
    ya = _Axis(min(ys_all), max(ys_all), True, doc.y0, doc.y1)

    # dominance fill, merged into vertical runs per year column
    for i in range(len(grid.years)):
        row_a, row_b = grid.values_a[i], grid.values_b[i]
        j = 0
        while j < len(grid.lengths):
            side = "a" if row_a[j] >= row_b[j] else "b"
            k = j
            while k + 1 < len(grid.lengths) and ("a" if row_a[k + 1] >= row_b[k + 1] else "b") == side:
                k += 1
            x0, x1 = xa(xb[i]), xa(xb[i + 1])
            y_top, y_bot = ya(yb[k + 1]), ya(yb[j])
            doc.add(
                f'<rect class="dom-{side}" x="{_n(x0)}" y="{_n(y_top)}" width="{_n(x1 - x0)}" '
                f'height="{_n(y_bot - y_top)}" fill="{FILL[side]}"/>'
            )
            j = k + 1

    log_lengths = [math.log10(x) for x in grid.lengths]
    for side, values in (("a", grid.values_a), ("b", grid.values_b)):
        logs = [[math.log10(v) for v in row] for row in values]
        lo = math.ceil(min(min(r) for r in logs))
        hi = math.floor(max(max(r) for r in logs))
        step = max(1, math.ceil((hi - lo + 1) / max_levels))
        doc.add(f'<g class="iso-{side}" fill="none" stroke="{PALETTE[side]}" stroke-width="0.8">')
        for level in range(lo, hi + 1, step):
            segs = _iso_segments(grid.years, log_lengths, logs, level)
            if not segs:
                continue
            d = " ".join(
                f"M{_n(xa(p[0]))} {_n(ya(10.0 ** p[1]))} L{_n(xa(q[0]))} {_n(ya(10.0 ** q[1]))}" for p, q in segs
            )
            doc.add(f'<path class="level" data-level={quoteattr(str(level))} d="{d}"/>')
        doc.add("</g>")

    pts = [(y, r.crossing_length_m) for y, r in grid.crossing_curve if r.crossing_length_m is not None]
    if pts:
        coords = " ".join(f"{_n(xa(x))},{_n(ya(y))}" for x, y in pts)
        doc.add(f'<polyline class="crossing" points="{coords}" fill="none" stroke="black" stroke-width="2"/>')

    doc.axes(xa, ya)
    legend_y = doc.y1 + 12
    for k, (side, label) in enumerate((("a", grid.label_a), ("b", grid.label_b))):
        lx = doc.x1 - 150 + 75 * k
        doc.add(
            f'<rect x="{_n(lx)}" y="{_n(legend_y - 9)}" width="10" height="10" fill="{PALETTE[side]}"/>'
            f'<text x="{_n(lx + 14)}" y="{_n(legend_y)}">{escape(label)}</text>'
        )
    doc.annotations(xa, ya)
    return doc.write(sink)
