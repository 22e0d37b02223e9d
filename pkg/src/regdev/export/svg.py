"""Static SVG plots with machine-readable sidecars.

Everything is written as plain text so outputs are byte-stable and diffable;
tests read the sidecars (and count elements), never pixels.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from ..cluster.hierarchy import Dendrogram
from ..errors import UnknownColumn
from ..index import IndexSeries
from ..panel import Scope
from .common import RATING_RAMP, atomic_write, diverging_color, fmt_full, rating_colors

PLOT = 360.0  # square plotting area
MARGIN = 60.0
CELL = 160.0
GAP = 20.0
NEUTRAL = "#4d4d4d"


@dataclass(frozen=True)
class PlotSpec:
    kind: str = "scatter"  # scatter | pair
    x: str = "economic"
    y: str = "social"
    columns: tuple[str, ...] = ("economic", "social", "socioeconomic")
    title: str = ""
    bins: int = 10
    ramp: tuple[str, ...] = field(default=RATING_RAMP)


def _f(v: float) -> str:
    return f"{v:.2f}"


def _header(width: float, height: float) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_f(width)}" '
        f'height="{_f(height)}" viewBox="0 0 {_f(width)} {_f(height)}">',
        f'<rect x="0" y="0" width="{_f(width)}" height="{_f(height)}" fill="#ffffff"/>',
    ]


def _range(v: np.ndarray) -> tuple[float, float]:
    lo, hi = float(np.min(v)), float(np.max(v))
    if hi == lo:
        lo, hi = lo - 0.5, hi + 0.5
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def _scale(v, lo, hi, a, b):
    return a + (np.asarray(v, dtype=float) - lo) / (hi - lo) * (b - a)


def _column(series: IndexSeries, name: str) -> np.ndarray:
    try:
        return series.values[Scope(name)]
    except (ValueError, KeyError):
        raise UnknownColumn(f"no index column {name!r}; have {[s.value for s in series.scopes]}") from None


def sidecar(path, suffix: str) -> Path:
    return Path(path).with_suffix(suffix)


def _marker_colors(ratings, n: int, ramp) -> tuple[list[str], list[str]]:
    if ratings is None:
        return [NEUTRAL] * n, [""] * n
    labels = [lab for lab, _ in ratings]
    ranks = [int(r) for _, r in ratings]
    colors = rating_colors(max(ranks) + 1, ramp)
    return [colors[r] for r in ranks], labels


def write_scatter(series: IndexSeries, ratings: Sequence[tuple[str, int]] | None,
                  spec: PlotSpec, path) -> Path:
    """Scatter of two index columns (or a pair grid), one marker per row.

    ``ratings`` holds a (label, rank) pair per series row; rank 0 is the
    lowest rating.  Returns the sidecar path.
    """
    n = len(series.rows)
    if ratings is not None and len(ratings) != n:
        raise ValueError("one rating per series row required")
    colors, labels = _marker_colors(ratings, n, spec.ramp)
    if spec.kind == "pair":
        return _write_pair(series, colors, labels, spec, path)
    if spec.kind != "scatter":
        raise ValueError(f"unsupported plot kind {spec.kind!r}")

    xs, ys = _column(series, spec.x), _column(series, spec.y)
    xr, yr = _range(xs), _range(ys)
    left, top = MARGIN, MARGIN
    px = _scale(xs, *xr, left, left + PLOT)
    py = _scale(ys, *yr, top + PLOT, top)
    out = _header(PLOT + 2 * MARGIN, PLOT + 2 * MARGIN)
    if spec.title:
        out.append(f'<text x="{_f(left + PLOT / 2)}" y="{_f(top / 2)}" text-anchor="middle" font-size="14">{escape(spec.title)}</text>')
    out += _axes(left, top, PLOT, xr, yr, spec.x, spec.y)
    for i, (code, year) in enumerate(series.rows):
        out.append(
            f'<circle class="marker" cx="{_f(px[i])}" cy="{_f(py[i])}" r="3" fill="{colors[i]}" '
            f'data-region={quoteattr(code)} data-year="{year}"/>'
        )
    out.append("</svg>")
    with atomic_write(path) as fh:
        fh.write("\n".join(out) + "\n")

    side = sidecar(path, ".csv")
    with atomic_write(side) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["region_code", "year", spec.x, spec.y, "label", "px", "py"])
        for i, (code, year) in enumerate(series.rows):
            w.writerow([code, year, fmt_full(xs[i]), fmt_full(ys[i]), labels[i], _f(px[i]), _f(py[i])])
    return side


def _axes(left, top, size, xr, yr, xlab, ylab) -> list[str]:
    bottom, right = top + size, left + size
    out = [
        f'<line class="axis" x1="{_f(left)}" y1="{_f(bottom)}" x2="{_f(right)}" y2="{_f(bottom)}" stroke="#000000"/>',
        f'<line class="axis" x1="{_f(left)}" y1="{_f(top)}" x2="{_f(left)}" y2="{_f(bottom)}" stroke="#000000"/>',
        f'<text class="xlabel" x="{_f(left + size / 2)}" y="{_f(bottom + 40)}" text-anchor="middle" font-size="12">{escape(xlab)}</text>',
        f'<text class="ylabel" x="{_f(left - 40)}" y="{_f(top + size / 2)}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 {_f(left - 40)} {_f(top + size / 2)})">{escape(ylab)}</text>',
    ]
    for t in np.linspace(0, 1, 5):
        xv, yv = xr[0] + t * (xr[1] - xr[0]), yr[0] + t * (yr[1] - yr[0])
        x, y = left + t * size, bottom - t * size
        out.append(f'<text x="{_f(x)}" y="{_f(bottom + 16)}" text-anchor="middle" font-size="9">{xv:.2f}</text>')
        out.append(f'<text x="{_f(left - 6)}" y="{_f(y + 3)}" text-anchor="end" font-size="9">{yv:.2f}</text>')
    return out


def _write_pair(series, colors, labels, spec: PlotSpec, path) -> Path:
    cols = list(spec.columns)
    data = [_column(series, c) for c in cols]
    ranges = [_range(d) for d in data]
    m = len(cols)
    size = MARGIN * 2 + m * CELL + (m - 1) * GAP
    out = _header(size, size)
    for r in range(m):
        for c in range(m):
            x0 = MARGIN + c * (CELL + GAP)
            y0 = MARGIN + r * (CELL + GAP)
            frame = f'<rect x="{_f(x0)}" y="{_f(y0)}" width="{_f(CELL)}" height="{_f(CELL)}" fill="none" stroke="#999999"/>'
            if r == c:
                counts, edges = np.histogram(data[c], bins=spec.bins, range=ranges[c])
                out.append(f'<g class="hist" data-column="{cols[c]}">')
                out.append(frame)
                bw = CELL / spec.bins
                peak = max(int(counts.max()), 1)
                for b, cnt in enumerate(counts):
                    h = CELL * cnt / peak
                    out.append(f'<rect class="bar" x="{_f(x0 + b * bw)}" y="{_f(y0 + CELL - h)}" '
                               f'width="{_f(bw)}" height="{_f(h)}" fill="#6baed6" data-count="{int(cnt)}"/>')
            else:
                px = _scale(data[c], *ranges[c], x0, x0 + CELL)
                py = _scale(data[r], *ranges[r], y0 + CELL, y0)
                out.append(f'<g class="panel" data-x="{cols[c]}" data-y="{cols[r]}">')
                out.append(frame)
                for i in range(len(px)):
                    out.append(f'<circle class="marker" cx="{_f(px[i])}" cy="{_f(py[i])}" r="2" fill="{colors[i]}"/>')
            if r == m - 1:
                out.append(f'<text x="{_f(x0 + CELL / 2)}" y="{_f(y0 + CELL + 16)}" text-anchor="middle" font-size="11">{escape(cols[c])}</text>')
            out.append("</g>")
        out.append(f'<text x="{_f(MARGIN - 8)}" y="{_f(MARGIN + r * (CELL + GAP) + CELL / 2)}" text-anchor="end" font-size="11">{escape(cols[r])}</text>')
    out.append("</svg>")
    with atomic_write(path) as fh:
        fh.write("\n".join(out) + "\n")
    side = sidecar(path, ".csv")
    with atomic_write(side) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["region_code", "year"] + cols + ["label"])
        for i, (code, year) in enumerate(series.rows):
            w.writerow([code, year] + [fmt_full(d[i]) for d in data] + [labels[i]])
    return side


def write_dendrogram(tree: Dendrogram, path) -> Path:
    """Leaves along the bottom, merge height upward.  Sidecar lists merges."""
    n = tree.n
    order = tree.leaf_order()
    step = 14.0
    width = 2 * MARGIN + max(n - 1, 1) * step
    height = PLOT + 2 * MARGIN + 80
    base = MARGIN + PLOT
    hmax = float(tree.heights.max()) if tree.merges else 1.0
    hmax = hmax if hmax > 0 else 1.0

    def y_of(h):
        return base - h / hmax * PLOT

    xpos = {leaf: MARGIN + i * step for i, leaf in enumerate(order)}
    ypos = {leaf: base for leaf in range(n)}
    out = _header(width, height)
    out.append(f'<line class="axis" x1="{_f(MARGIN - 10)}" y1="{_f(base)}" x2="{_f(MARGIN - 10)}" '
               f'y2="{_f(y_of(hmax))}" stroke="#000000"/>')
    for t in np.linspace(0, 1, 5):
        out.append(f'<text x="{_f(MARGIN - 14)}" y="{_f(y_of(t * hmax) + 3)}" text-anchor="end" font-size="9">{t * hmax:.2f}</text>')
    for t, m in enumerate(tree.merges):
        xa, xb = xpos[m.a], xpos[m.b]
        y = y_of(m.height)
        out.append(f'<path class="link" d="M {_f(xa)} {_f(ypos[m.a])} V {_f(y)} H {_f(xb)} V {_f(ypos[m.b])}" '
                   f'fill="none" stroke="#000000" data-height="{fmt_full(m.height)}"/>')
        xpos[n + t] = (xa + xb) / 2
        ypos[n + t] = y
    for leaf in order:
        x = xpos[leaf]
        out.append(f'<text class="leaf" x="{_f(x)}" y="{_f(base + 8)}" font-size="9" '
                   f'transform="rotate(90 {_f(x)} {_f(base + 8)})">{escape(tree.labels[leaf])}</text>')
    out.append("</svg>")
    with atomic_write(path) as fh:
        fh.write("\n".join(out) + "\n")

    side = sidecar(path, ".txt")
    with atomic_write(side) as fh:
        fh.write(f"# linkage={tree.linkage.value} leaves={n}\n")
        fh.write("child_a\tchild_b\theight\tsize\n")
        for m in tree.merges:
            fh.write(f"{tree.node_name(m.a)}\t{tree.node_name(m.b)}\t{fmt_full(m.height)}\t{m.size}\n")
    return side


def read_merge_sidecar(path) -> list[tuple[str, str, float, int]]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("#") or line.startswith("child_a"):
                continue
            a, b, h, s = line.rstrip("\n").split("\t")
            rows.append((a, b, float(h), int(s)))
    return rows


def write_corr_heatmap(corr, path) -> Path:
    """p x p grid, red for +1, white for 0, blue for -1; CSV sidecar."""
    from .tables import write_matrix_csv

    cols = list(corr.columns)
    p = len(cols)
    cell = 28.0
    left = 150.0
    size = left + p * cell + MARGIN
    out = _header(size + 60, size)
    for i in range(p):
        for j in range(p):
            r = float(corr.values[i, j])
            out.append(f'<rect class="cell" x="{_f(left + j * cell)}" y="{_f(MARGIN + i * cell)}" '
                       f'width="{_f(cell)}" height="{_f(cell)}" fill="{diverging_color(r)}" '
                       f'data-row="{escape(cols[i])}" data-col="{escape(cols[j])}" data-r="{r:.4f}"/>')
        out.append(f'<text x="{_f(left - 6)}" y="{_f(MARGIN + i * cell + cell / 2 + 3)}" text-anchor="end" font-size="9">{escape(cols[i])}</text>')
    for j in range(p):
        x = left + j * cell + cell / 2
        y = MARGIN - 6
        out.append(f'<text x="{_f(x)}" y="{_f(y)}" font-size="9" transform="rotate(-60 {_f(x)} {_f(y)})">{escape(cols[j])}</text>')
    # legend
    lx = left + p * cell + 20
    for t in range(11):
        r = 1 - t / 5
        out.append(f'<rect class="legend" x="{_f(lx)}" y="{_f(MARGIN + t * 12)}" width="12" height="12" fill="{diverging_color(r)}"/>')
        out.append(f'<text x="{_f(lx + 16)}" y="{_f(MARGIN + t * 12 + 10)}" font-size="8">{r:+.1f}</text>')
    out.append("</svg>")
    with atomic_write(path) as fh:
        fh.write("\n".join(out) + "\n")
    side = sidecar(path, ".csv")
    write_matrix_csv(cols, corr.values, side)
    return side
