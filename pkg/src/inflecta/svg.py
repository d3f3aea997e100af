"""Static SVG rendering of a sampled curve and its report."""

from __future__ import annotations

from typing import Optional

import numpy as np

from .geometry import GeometricReport, SampledCurve, inflection_edges

SIZE = 480
MARGIN = 24


def render_svg(curve: SampledCurve, report: Optional[GeometricReport] = None) -> str:
    pts = curve.points
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = float(max(hi - lo))
    scale = (SIZE - 2 * MARGIN) / span if span > 0 else 1.0

    def xy(p):
        # flip y so the picture has the usual orientation
        return MARGIN + (p[0] - lo[0]) * scale, SIZE - MARGIN - (p[1] - lo[1]) * scale

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if report is not None:
        for b in report.bitangents:
            (x1, y1), (x2, y2) = xy(pts[b.i]), xy(pts[b.j])
            colour = "#3a7bd5" if b.same_side else "#d5533a"
            out.append(
                f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                f'stroke="{colour}" stroke-width="0.8" stroke-dasharray="4 3"/>'
            )
    path = " ".join(f"{x:.2f},{y:.2f}" for x, y in map(xy, pts))
    out.append(f'<polygon points="{path}" fill="none" stroke="black" stroke-width="1.4"/>')
    for k in inflection_edges(curve):
        mid = (pts[k] + pts[(k + 1) % len(pts)]) / 2
        x, y = xy(mid)
        out.append(f'<rect x="{x - 3:.2f}" y="{y - 3:.2f}" width="6" height="6" fill="#2a9d3a"/>')
    if report is not None:
        for c in report.crossings:
            x, y = xy(np.array(c.location))
            out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="none" stroke="#b03060" stroke-width="1.2"/>')
        caption = (
            f"m={report.m} i={report.i} R={report.R} d1={report.d1} d2={report.d2} "
            f"mu={report.mu} {report.planar_key}"
        )
        out.append(f'<text x="{MARGIN}" y="{MARGIN - 8}" font-family="monospace" font-size="11">{caption}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
