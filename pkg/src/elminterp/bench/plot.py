"""Standalone SVG convergence plots (no plotting library needed).

One panel per node family, one polyline per activation (seed medians) plus
the polynomial baseline, log-scaled error axis, and a reference-rate
triangle when the target has a known rate for the chosen scale.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable
from xml.sax.saxutils import escape, quoteattr

from ..errors import ValidationError
from ..metrics import SCALES, ErrorRecord
from ..targets import TARGETS
from .runner import POLY, median_records

PANEL_W, PANEL_H = 340, 280
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 62, 14, 30, 42
COLORS = {"LS": "#1f77b4", "SP": "#2ca02c", "GRB": "#d62728", POLY: "#000000"}
SERIES_ORDER = ("LS", "SP", "GRB", POLY)
NODE_ORDER = ("equispaced", "chebyshev", "random")


def decade_ticks(lo: float, hi: float, max_ticks: int = 9) -> list[int]:
    """Integer exponents covering [lo, hi] (log10 values), both ends included."""
    a, b = math.floor(lo), math.ceil(hi)
    if a == b:
        b += 1
    step = max(1, math.ceil((b - a) / (max_ticks - 1)))
    ticks = list(range(a, b + 1, step))
    if ticks[-1] != b:
        ticks.append(b)
    return ticks


def _fmt_exp(e: int) -> str:
    return f"1e{e}"


class _Axes:
    def __init__(self, x0, y0, xs, ys, scale):
        self.x0, self.y0, self.scale = x0, y0, scale
        self.w = PANEL_W - MARGIN_L - MARGIN_R
        self.h = PANEL_H - MARGIN_T - MARGIN_B
        lx = [self.xt(v) for v in xs]
        self.xlo, self.xhi = min(lx), max(lx)
        if self.xhi == self.xlo:
            self.xlo, self.xhi = self.xlo - 1, self.xhi + 1
        ly = [math.log10(v) for v in ys]
        self.yticks = decade_ticks(min(ly), max(ly))
        self.ylo, self.yhi = self.yticks[0], self.yticks[-1]

    def xt(self, M):
        return math.log10(M) if self.scale == "loglog" else float(M)

    def px(self, M):
        return self.x0 + MARGIN_L + (self.xt(M) - self.xlo) / (self.xhi - self.xlo) * self.w

    def py_log(self, ly):
        return self.y0 + MARGIN_T + (self.yhi - ly) / (self.yhi - self.ylo) * self.h

    def py(self, err):
        return self.py_log(math.log10(err))


def _triangle(ax: _Axes, slope: float, label: str) -> list[str]:
    # horizontal leg over a fifth of the x range, placed in the lower left
    xa = ax.xlo + 0.12 * (ax.xhi - ax.xlo)
    xb = xa + 0.2 * (ax.xhi - ax.xlo)
    drop = slope * (xb - xa)
    ytop = ax.ylo + 0.45 * (ax.yhi - ax.ylo)
    ybot = ytop + drop
    if ybot < ax.ylo:
        ytop, ybot = ax.ylo - drop, ax.ylo

    def X(v):
        return ax.x0 + MARGIN_L + (v - ax.xlo) / (ax.xhi - ax.xlo) * ax.w

    p1, p2, p3 = (X(xa), ax.py_log(ytop)), (X(xb), ax.py_log(ytop)), (X(xb), ax.py_log(ybot))
    pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in (p1, p2, p3))
    return [
        f'<polygon class="reference-rate" points="{pts}" fill="#cccccc" stroke="#000000" '
        f'data-slope="{slope:.6g}"/>',
        f'<text x="{p3[0] + 4:.2f}" y="{(p2[1] + p3[1]) / 2:.2f}" font-size="10">{escape(label)}</text>',
    ]


def _rate_label(slope: float, scale: str) -> str:
    if scale == "loglog":
        return f"M^{slope:g}"
    return f"slope {slope:.4f} per M"


def render_svg(records: Iterable[ErrorRecord], scale: str = "semilogy", title: str | None = None) -> str:
    """SVG text for `records`; see :func:`emit_plot`."""
    if scale not in SCALES:
        raise ValidationError(f"scale must be one of {SCALES}")
    med = [r for r in median_records(records) if r.err > 0]
    if not med:
        raise ValidationError("nothing to plot: no successful records with positive error")
    kinds = sorted({r.node_kind for r in med}, key=lambda k: (NODE_ORDER.index(k) if k in NODE_ORDER else 9, k))
    fns = sorted({r.function_id for r in med})
    width, height = PANEL_W * len(kinds), PANEL_H + (24 if title else 0)
    top = 24 if title else 0
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}" font-family="sans-serif">',
           f'<rect width="{width}" height="{height}" fill="#ffffff"/>']
    if title:
        out.append(f'<text x="{width / 2:.1f}" y="16" text-anchor="middle" font-size="13">{escape(title)}</text>')
    rate = TARGETS[fns[0]].expected_rate.reference_slope(scale) if len(fns) == 1 and fns[0] in TARGETS else None
    for i, kind in enumerate(kinds):
        rows = [r for r in med if r.node_kind == kind]
        ax = _Axes(i * PANEL_W, top, [r.M for r in rows], [r.err for r in rows], scale)
        out.append(f'<g class="panel" data-node-kind={quoteattr(kind)}>')
        L, T = ax.x0 + MARGIN_L, ax.y0 + MARGIN_T
        out.append(f'<rect x="{L}" y="{T}" width="{ax.w}" height="{ax.h}" fill="none" stroke="#000000"/>')
        out.append(f'<text x="{L + ax.w / 2:.1f}" y="{T - 8}" text-anchor="middle" font-size="11">{escape(kind)}</text>')
        for e in ax.yticks:
            y = ax.py_log(e)
            out.append(f'<line x1="{L}" x2="{L + ax.w}" y1="{y:.2f}" y2="{y:.2f}" stroke="#e0e0e0"/>')
            out.append(f'<text class="ytick" x="{L - 4}" y="{y + 3:.2f}" text-anchor="end" font-size="9">{_fmt_exp(e)}</text>')
        for M in sorted({r.M for r in rows}):
            x = ax.px(M)
            out.append(f'<text class="xtick" x="{x:.2f}" y="{T + ax.h + 13}" text-anchor="middle" font-size="9">{M}</text>')
        out.append(f'<text x="{L + ax.w / 2:.1f}" y="{T + ax.h + 30}" text-anchor="middle" font-size="10">M</text>')
        acts = sorted({r.activation for r in rows}, key=lambda a: (SERIES_ORDER.index(a) if a in SERIES_ORDER else 9, a))
        for j, act in enumerate(acts):
            pts = sorted((r.M, r.err) for r in rows if r.activation == act)
            color = COLORS.get(act, "#7f7f7f")
            dash = ' stroke-dasharray="5,3"' if act == POLY else ""
            coords = " ".join(f"{ax.px(M):.2f},{ax.py(e):.2f}" for M, e in pts)
            out.append(f'<polyline class="series" data-activation={quoteattr(act)} points="{coords}" '
                       f'fill="none" stroke="{color}" stroke-width="1.5"{dash}/>')
            for M, e in pts:
                out.append(f'<circle cx="{ax.px(M):.2f}" cy="{ax.py(e):.2f}" r="2.2" fill="{color}"/>')
            ly = T + 12 + 12 * j
            out.append(f'<line x1="{L + ax.w - 58}" x2="{L + ax.w - 42}" y1="{ly - 3}" y2="{ly - 3}" stroke="{color}"{dash}/>')
            out.append(f'<text x="{L + ax.w - 38}" y="{ly}" font-size="9">{escape(act)}</text>')
        if rate is not None:
            out.extend(_triangle(ax, rate, _rate_label(rate, scale)))
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_plot(records: Iterable[ErrorRecord], scale: str, path, title: str | None = None) -> Path:
    """Write a convergence plot of `records` to `path` as SVG.

    Raises :class:`~elminterp.errors.ValidationError` (and writes nothing)
    when there is nothing to draw.
    """
    text = render_svg(list(records), scale, title)
    path = Path(path)
    path.write_text(text, encoding="utf-8")
    return path
