"""Minimal SVG figures (heatmap, scatter, line) written without a plotting library."""
from __future__ import annotations

import csv
import math
from typing import Dict, Optional, Sequence
from xml.sax.saxutils import escape

import numpy as np

from .errors import ConfigError

__all__ = ["heatmap_svg", "scatter_svg", "line_svg", "read_csv_columns", "emit_plot"]

WIDTH, HEIGHT = 640, 480
LEFT, RIGHT, TOP, BOTTOM = 80, 110, 30, 60

# Anchor colours of a perceptually ordered blue-green-yellow map.
_CMAP = np.array([
    [68, 1, 84], [72, 40, 120], [62, 74, 137], [49, 104, 142], [38, 130, 142],
    [31, 158, 137], [53, 183, 121], [109, 205, 89], [180, 222, 44], [253, 231, 37],
], dtype=float)
_LINE_COLOURS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"]


def _colour(t):
    t = min(max(float(t), 0.0), 1.0) if math.isfinite(t) else 0.0
    pos = t * (len(_CMAP) - 1)
    i = min(int(pos), len(_CMAP) - 2)
    rgb = _CMAP[i] + (pos - i) * (_CMAP[i + 1] - _CMAP[i])
    return "#%02x%02x%02x" % tuple(int(round(c)) for c in rgb)


def _transform(values, log):
    v = np.asarray(values, dtype=float)
    if log:
        if np.any(v <= 0):
            raise ConfigError("log axis needs positive values")
        return np.log10(v)
    return v


def _span(v):
    lo, hi = float(np.nanmin(v)), float(np.nanmax(v))
    if hi == lo:
        lo, hi = lo - 0.5, hi + 0.5
    return lo, hi


class _Axes:
    def __init__(self, x, y, logx=False, logy=False):
        self.logx, self.logy = logx, logy
        self.x0, self.x1 = _span(_transform(x, logx))
        self.y0, self.y1 = _span(_transform(y, logy))
        self.w = WIDTH - LEFT - RIGHT
        self.h = HEIGHT - TOP - BOTTOM

    def px(self, x):
        return LEFT + (_transform(x, self.logx) - self.x0) / (self.x1 - self.x0) * self.w

    def py(self, y):
        return TOP + self.h - (_transform(y, self.logy) - self.y0) / (self.y1 - self.y0) * self.h

    def frame(self, xlabel, ylabel, title):
        out = [f'<rect x="{LEFT}" y="{TOP}" width="{self.w}" height="{self.h}" fill="none" stroke="black"/>']
        for k in range(6):
            fx = self.x0 + (self.x1 - self.x0) * k / 5
            fy = self.y0 + (self.y1 - self.y0) * k / 5
            X = LEFT + self.w * k / 5
            Y = TOP + self.h - self.h * k / 5
            lx = 10**fx if self.logx else fx
            ly = 10**fy if self.logy else fy
            out.append(f'<line x1="{X:.2f}" y1="{TOP + self.h}" x2="{X:.2f}" y2="{TOP + self.h + 5}" stroke="black"/>')
            out.append(f'<text x="{X:.2f}" y="{TOP + self.h + 20}" font-size="11" text-anchor="middle">{lx:.3g}</text>')
            out.append(f'<line x1="{LEFT - 5}" y1="{Y:.2f}" x2="{LEFT}" y2="{Y:.2f}" stroke="black"/>')
            out.append(f'<text x="{LEFT - 8}" y="{Y + 4:.2f}" font-size="11" text-anchor="end">{ly:.3g}</text>')
        out.append(f'<text x="{LEFT + self.w / 2}" y="{HEIGHT - 15}" font-size="13" text-anchor="middle">{escape(xlabel)}</text>')
        out.append(f'<text x="18" y="{TOP + self.h / 2}" font-size="13" text-anchor="middle" '
                   f'transform="rotate(-90 18 {TOP + self.h / 2})">{escape(ylabel)}</text>')
        if title:
            out.append(f'<text x="{LEFT + self.w / 2}" y="{TOP - 10}" font-size="13" text-anchor="middle">{escape(title)}</text>')
        return out


def _colourbar(z0, z1, label, logz):
    out = []
    x = WIDTH - RIGHT + 20
    h = HEIGHT - TOP - BOTTOM
    n = 50
    for i in range(n):
        y = TOP + h - (i + 1) * h / n
        out.append(f'<rect x="{x}" y="{y:.2f}" width="15" height="{h / n + 0.5:.2f}" fill="{_colour((i + 0.5) / n)}"/>')
    for k in range(5):
        f = z0 + (z1 - z0) * k / 4
        y = TOP + h - h * k / 4
        lab = 10**f if logz else f
        out.append(f'<text x="{x + 20}" y="{y + 4:.2f}" font-size="10">{lab:.3g}</text>')
    out.append(f'<text x="{x}" y="{TOP - 10}" font-size="11">{escape(label)}</text>')
    return out


def _write(path, body):
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">')
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join([head, f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>', *body, "</svg>"]) + "\n")


def _require_data(*arrays):
    for a in arrays:
        if a is None:
            continue
        if np.asarray(a).size == 0:
            raise ConfigError("nothing to plot: no data rows")


def heatmap_svg(x, y, z, path, xlabel="x", ylabel="y", zlabel="z", logx=False, logy=False, logz=False,
                title: str = ""):
    """Heatmap of ``z`` sampled on the tensor grid spanned by the unique ``x`` and ``y``."""
    _require_data(x, y, z)
    x, y, z = (np.asarray(a, dtype=float) for a in (x, y, z))
    xs, ys = np.unique(x), np.unique(y)
    if logz:
        zt = np.log10(np.where(z > 0, z, np.nan))
    else:
        zt = np.where(np.isfinite(z), z, np.nan)
    z0, z1 = _span(zt[np.isfinite(zt)]) if np.any(np.isfinite(zt)) else (0.0, 1.0)
    ax = _Axes(xs, ys, logx, logy)

    def edges(v, log):
        t = _transform(v, log)
        if t.size == 1:
            return np.array([t[0] - 0.5, t[0] + 0.5])
        mid = 0.5 * (t[1:] + t[:-1])
        e = np.concatenate([[t[0] - (mid[0] - t[0])], mid, [t[-1] + (t[-1] - mid[-1])]])
        return 10**e if log else e

    ex, ey = edges(xs, logx), edges(ys, logy)
    ax.x0, ax.x1 = _span(_transform(ex, logx))
    ax.y0, ax.y1 = _span(_transform(ey, logy))
    body = []
    ix = np.searchsorted(xs, x)
    iy = np.searchsorted(ys, y)
    for i, j, v in zip(ix, iy, zt):
        if not math.isfinite(v):
            continue
        x_a, x_b = ax.px(ex[i]), ax.px(ex[i + 1])
        y_a, y_b = ax.py(ey[j + 1]), ax.py(ey[j])
        body.append(f'<rect x="{x_a:.2f}" y="{y_a:.2f}" width="{x_b - x_a + 0.3:.2f}" height="{y_b - y_a + 0.3:.2f}" '
                    f'fill="{_colour((v - z0) / (z1 - z0))}"/>')
    body += ax.frame(xlabel, ylabel, title)
    body += _colourbar(z0, z1, zlabel, logz)
    _write(path, body)


def scatter_svg(x, y, path, colour=None, size=None, xlabel="x", ylabel="y", clabel="", logx=False, logy=False,
                logc=False, title: str = ""):
    """Scatter plot; optional ``colour`` values map onto the colour scale and ``size`` onto marker radius."""
    _require_data(x, y)
    x, y = np.asarray(x, float), np.asarray(y, float)
    ok = np.isfinite(x) & np.isfinite(y)
    if not np.any(ok):
        raise ConfigError("nothing to plot: no finite points")
    ax = _Axes(x[ok], y[ok], logx, logy)
    body = []
    if colour is not None:
        ct = _transform(colour, logc)
        c0, c1 = _span(ct[ok])
    if size is not None:
        s = np.asarray(size, float)
        s0, s1 = _span(np.log(s[ok]))
    for i in np.nonzero(ok)[0]:
        fill = _colour((ct[i] - c0) / (c1 - c0)) if colour is not None else _LINE_COLOURS[0]
        r = 2.0 + 5.0 * (math.log(s[i]) - s0) / (s1 - s0) if size is not None else 3.0
        body.append(f'<circle cx="{ax.px(x[i]):.2f}" cy="{ax.py(y[i]):.2f}" r="{r:.2f}" fill="{fill}" fill-opacity="0.8"/>')
    body += ax.frame(xlabel, ylabel, title)
    if colour is not None:
        body += _colourbar(c0, c1, clabel, logc)
    _write(path, body)


def line_svg(x, ys: Dict[str, Sequence[float]], path, xlabel="x", ylabel="y", logx=False, logy=False,
             title: str = ""):
    """One polyline per entry of ``ys`` against the shared ``x``."""
    _require_data(x)
    x = np.asarray(x, float)
    order = np.argsort(x)
    allv = np.concatenate([np.asarray(v, float) for v in ys.values()])
    ax = _Axes(x, allv[np.isfinite(allv)], logx, logy)
    body = []
    for n, (name, v) in enumerate(ys.items()):
        v = np.asarray(v, float)[order]
        pts = " ".join(f"{ax.px(a):.2f},{ax.py(b):.2f}" for a, b in zip(x[order], v) if math.isfinite(b))
        col = _LINE_COLOURS[n % len(_LINE_COLOURS)]
        body.append(f'<polyline points="{pts}" fill="none" stroke="{col}" stroke-width="1.5"/>')
        body.append(f'<text x="{WIDTH - RIGHT + 10}" y="{TOP + 15 * (n + 1)}" font-size="11" fill="{col}">{escape(name)}</text>')
    body += ax.frame(xlabel, ylabel, title)
    _write(path, body)


def read_csv_columns(path) -> Dict[str, np.ndarray]:
    """Read a CSV written by the command-line runner, skipping ``#`` comment lines."""
    with open(path, "r", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(line for line in fh if not line.startswith("#") and line.strip())]
    if not rows:
        raise ConfigError(f"{path} has no header row")
    header, data = rows[0], rows[1:]
    if not data:
        raise ConfigError(f"{path} has no data rows")
    cols = {}
    for j, name in enumerate(header):
        vals = [r[j] for r in data]
        try:
            cols[name] = np.array([float(v) for v in vals])
        except ValueError:
            cols[name] = np.array(vals, dtype=object)
    return cols


def emit_plot(csv_path, kind: str, x: str, y: str, out, z: Optional[str] = None, size: Optional[str] = None,
              logx=False, logy=False, logz=False, title: str = ""):
    """Render a CSV produced by the runner as an SVG figure.

    ``kind`` is ``heatmap`` (needs ``z``), ``scatter`` (``z`` optional, used
    as colour) or ``line`` (``y`` may list several comma-separated columns).
    Nothing is written when the CSV holds no data.
    """
    cols = read_csv_columns(csv_path)
    names = [x, *(y.split(",") if kind == "line" else [y])] + ([z] if z else []) + ([size] if size else [])
    missing = [n for n in names if n not in cols]
    if missing:
        raise ConfigError(f"columns {missing} not in {csv_path}; available: {list(cols)}")
    if kind == "heatmap":
        if z is None:
            raise ConfigError("heatmap needs a z column")
        heatmap_svg(cols[x], cols[y], cols[z], out, x, y, z, logx, logy, logz, title)
    elif kind == "scatter":
        scatter_svg(cols[x], cols[y], out, cols[z] if z else None, cols[size] if size else None,
                    x, y, z or "", logx, logy, logz, title)
    elif kind == "line":
        line_svg(cols[x], {n: cols[n] for n in y.split(",")}, out, x, y, logx, logy, title)
    else:
        raise ConfigError(f"unknown plot kind {kind!r}")
