"""Straight-line drawings of combinatorial curves.

The 4-valent map of a curve can have loops and parallel edges, so it is
first refined into a simple triangulation:

* every arc is split into four segments by three arc points;
* at every corner of a face a chord joins the two arc points nearest to
  the crossing;
* every face gets a centre joined to all arc points on its boundary.

A Tutte (barycentric) embedding of that triangulation, with one triangle
of the outer face as the fixed boundary, is planar.  The curve is then
read back along its arc points.  At each crossing the two strands are
replaced by chords of a small circle, which cross transversally because
their ends alternate around the circle.  A few rounds of corner cutting
make the polyline look smooth; every result is re-extracted and checked
against the input class.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .curve import CombinatorialCurve, PlanarEmbedding, build_embedding, canonical_form
from .errors import InflectaError
from .geometry import SampledCurve, full_report

N_SUB = 3  # arc points per arc


class DrawingFailed(InflectaError):
    pass


def _arc_point(arc: int, k: int) -> tuple:
    return ("p", arc, k)


def _dart_points(emb: PlanarEmbedding, d: int) -> list:
    """Arc points met when leaving a crossing along dart ``d``."""
    n = emb.n_arcs
    p, kind = divmod(d, 2)
    if kind == 0:
        return [_arc_point(p, k) for k in range(N_SUB)]
    arc = (p - 1) % n
    return [_arc_point(arc, k) for k in reversed(range(N_SUB))]


def triangulation(emb: PlanarEmbedding):
    """Vertices, edges and the boundary triangle of the refined map."""
    n = emb.n_arcs
    verts = [("x", label) for label in range(1, emb.m + 1)]
    verts += [_arc_point(a, k) for a in range(n) for k in range(N_SUB)]
    verts += [("f", f) for f in range(emb.n_faces)]
    edges = set()

    def add(u, v):
        if u == v:
            raise DrawingFailed(f"loop at {u}")
        edges.add((min(u, v), max(u, v)))

    index = {v: i for i, v in enumerate(verts)}
    for a in range(n):
        start, end = emb.curve.word[a], emb.curve.word[(a + 1) % n]
        chain = [("x", start)] + [_arc_point(a, k) for k in range(N_SUB)] + [("x", end)]
        for u, v in zip(chain, chain[1:]):
            add(index[u], index[v])
    for d in range(2 * n):
        near_a = _dart_points(emb, d)[0]
        near_b = _dart_points(emb, emb.rot_next[d])[0]
        add(index[near_a], index[near_b])
    fans = {}
    for f, orbit in enumerate(emb.faces):
        fan = [pt for h in orbit for pt in _dart_points(emb, h)]
        if len(set(fan)) != len(fan):
            raise DrawingFailed(f"face {f} meets an arc on both sides")
        fans[f] = fan
        for pt in fan:
            add(index[("f", f)], index[pt])
    n_edges = len(edges)
    if n_edges != 3 * len(verts) - 6:
        raise DrawingFailed(f"{n_edges} edges do not triangulate {len(verts)} vertices")
    outer = fans[emb.outer_face]
    boundary = (index[("f", emb.outer_face)], index[outer[0]], index[outer[1]])
    return verts, sorted(edges), boundary


def tutte_positions(n_verts: int, edges, boundary, mirror: bool = False) -> np.ndarray:
    pos = np.zeros((n_verts, 2))
    angles = [math.pi / 2 + 2 * math.pi * k / 3 for k in range(3)]
    if not mirror:
        angles = angles[::-1]
    fixed = {}
    for v, ang in zip(boundary, angles):
        fixed[v] = (math.cos(ang), math.sin(ang))
    free = [v for v in range(n_verts) if v not in fixed]
    col = {v: i for i, v in enumerate(free)}
    A = np.zeros((len(free), len(free)))
    b = np.zeros((len(free), 2))
    for u, v in edges:
        for s, t in ((u, v), (v, u)):
            if s in col:
                A[col[s], col[s]] += 1
                if t in col:
                    A[col[s], col[t]] -= 1
                else:
                    b[col[s]] += fixed[t]
    sol = np.linalg.solve(A, b)
    for v, i in col.items():
        pos[v] = sol[i]
    for v, xy in fixed.items():
        pos[v] = xy
    return pos


def _point_segment_distance(p, a, b) -> float:
    ab = b - a
    t = np.clip(np.dot(p - a, ab) / np.dot(ab, ab), 0.0, 1.0)
    return float(np.hypot(*(a + t * ab - p)))


def _polyline(emb: PlanarEmbedding, verts, edges, pos, shrink: float, spread: float) -> np.ndarray:
    """Read the curve off the drawing; ``spread`` pulls the four strand
    ends at each crossing toward right angles."""
    index = {v: i for i, v in enumerate(verts)}
    n = emb.n_arcs
    radius = {}
    direction = {}
    for label in range(1, emb.m + 1):
        x = index[("x", label)]
        far = [
            _point_segment_distance(pos[x], pos[u], pos[v])
            for u, v in edges if x not in (u, v)
        ]
        near = [np.hypot(*(pos[u] - pos[v])) for u, v in edges if x in (u, v)]
        radius[label] = shrink * min(min(far), min(near))
        # darts in counterclockwise order, starting from the out-dart of the first visit
        darts = [2 * emb.curve.visits(label)[0]]
        while len(darts) < 4:
            darts.append(emb.rot_next[darts[-1]])
        angles = []
        for d in darts:
            v = pos[index[_dart_points(emb, d)[0]]] - pos[x]
            angles.append(math.atan2(v[1], v[0]))
        unwrapped = [angles[0]]
        for a in angles[1:]:
            unwrapped.append(unwrapped[-1] + (a - unwrapped[-1]) % (2 * math.pi))
        offset = sum(u - k * math.pi / 2 for k, u in enumerate(unwrapped)) / 4
        for k, (d, u) in enumerate(zip(darts, unwrapped)):
            direction[d] = (1 - spread) * u + spread * (offset + k * math.pi / 2)

    def on_circle(d):
        label = emb.vertex(d)
        c = pos[index[("x", label)]]
        ang = direction[d]
        return c + radius[label] * np.array([math.cos(ang), math.sin(ang)])

    pts = []
    for a in range(n):
        inner = [_arc_point(a, k) for k in range(N_SUB)]
        pts.append(on_circle(2 * a))
        pts.extend(pos[index[q]] for q in inner)
        pts.append(on_circle(emb.twin(2 * a)))
    return np.array(pts)


def chaikin(points: np.ndarray, rounds: int = 1) -> np.ndarray:
    """Corner cutting on a closed polyline."""
    for _ in range(rounds):
        nxt = np.roll(points, -1, axis=0)
        q = 0.75 * points + 0.25 * nxt
        r = 0.25 * points + 0.75 * nxt
        points = np.empty((2 * len(points), 2))
        points[0::2] = q
        points[1::2] = r
    return points


def draw(
    curve: CombinatorialCurve,
    outer=None,
    shrink: float = 0.4,
    spreads=(0.5, 1.0, 0.25, 0.75, 0.0),
    rounds=(3, 4, 5, 6),
) -> SampledCurve:
    """A generic polyline in the planar class of ``curve``.

    Candidates are accepted only if they re-extract to the same class and
    pass :func:`~inflecta.geometry.full_report` with all identity checks.
    """
    emb = build_embedding(curve, outer)
    target = canonical_form(emb).planar_key
    if emb.m == 0:
        t = 2 * math.pi * (np.arange(64) + 0.1234) / 64
        return SampledCurve(np.column_stack([np.cos(t), 0.7 * np.sin(t)]))
    verts, edges, boundary = triangulation(emb)
    pos = tutte_positions(len(verts), edges, boundary)
    last_error: Optional[Exception] = None
    for spread in spreads:
        base = _polyline(emb, verts, edges, pos, shrink, spread)
        for k in rounds:
            sampled = SampledCurve(chaikin(base, k))
            try:
                report = full_report(sampled)
            except InflectaError as exc:
                last_error = exc
                continue
            if report.planar_key != target:
                last_error = DrawingFailed(f"drawing has class {report.planar_key}")
                continue
            return sampled
    raise DrawingFailed(f"no valid drawing of {target}: {last_error}")


def resample(points: np.ndarray, n: int) -> np.ndarray:
    """``n`` points equally spaced in arclength along a closed polyline."""
    closed = np.vstack([points, points[:1]])
    seg = np.hypot(*np.diff(closed, axis=0).T)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    s = (np.arange(n) + 0.5) * cum[-1] / n
    x = np.interp(s, cum, closed[:, 0])
    y = np.interp(s, cum, closed[:, 1])
    return np.column_stack([x, y])

