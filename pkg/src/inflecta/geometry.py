"""Geometry of sampled closed curves.

Curves are closed polylines.  All counts use the polygon versions of the
smooth notions: an inflection is an edge whose two end vertices turn in
opposite directions, a double tangent is a line through two vertices that
supports the polygon locally at both.  With these definitions the
Fabricius-Bjerre count ``d1 - d2 = crossings + inflections / 2`` holds
exactly for polygons in general position, so every orientation test is
decided exactly: floating-point values near zero are recomputed with
rational arithmetic on the (exactly representable) input coordinates.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .curve import CombinatorialCurve, PlanarEmbedding, build_embedding, canonical_form
from .errors import AmbiguousBitangent, ConventionFailure, Degenerate, IdentityViolation

TOL_ANGLE = 1e-3
TWO_PI = 2.0 * math.pi
_ERRBOUND = 1e-15  # float orientation error is below this times |t1| + |t2| (orient2d filter)


@dataclass(frozen=True)
class SampledCurve:
    points: np.ndarray
    source: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        pts = np.ascontiguousarray(np.asarray(self.points, dtype=float))
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError("points must be an (n, 2) array")
        if len(pts) > 1 and np.array_equal(pts[0], pts[-1]):
            pts = pts[:-1]
        if len(pts) < 8:
            raise Degenerate(f"need at least 8 points, got {len(pts)}")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_trig(cls, ax, bx, ay, by, samples: int = 1024, phase: float = 0.1234) -> "SampledCurve":
        """Sample ``x(t) = sum ax[k] cos kt + bx[k] sin kt`` (likewise ``y``).

        The sample grid is offset by ``phase`` steps so that symmetric curves
        do not put vertices exactly on their own crossings.
        """
        t = TWO_PI * (np.arange(samples) + phase) / samples
        x = _trig_eval(ax, bx, t)
        y = _trig_eval(ay, by, t)
        spec = {"ax": list(ax), "bx": list(bx), "ay": list(ay), "by": list(by), "samples": samples}
        return cls(np.column_stack([x, y]), {"trig": spec})

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def edges(self) -> np.ndarray:
        return np.roll(self.points, -1, axis=0) - self.points

    @property
    def arclength(self) -> np.ndarray:
        """Cumulative length at each vertex; entry ``n`` is the total length."""
        lengths = np.hypot(*self.edges.T)
        return np.concatenate([[0.0], np.cumsum(lengths)])

    @property
    def length(self) -> float:
        return float(self.arclength[-1])

    def reversed(self) -> "SampledCurve":
        return SampledCurve(self.points[::-1].copy(), self.source)

    def transformed(self, matrix, offset=(0.0, 0.0)) -> "SampledCurve":
        # the trig spec no longer describes the moved points, so drop it
        pts = self.points @ np.asarray(matrix, dtype=float).T + np.asarray(offset, dtype=float)
        return SampledCurve(pts)

    def to_csv(self) -> str:
        buf = io.StringIO()
        for x, y in self.points:
            buf.write(f"{float(x)!r},{float(y)!r}\n")
        return buf.getvalue()


def _trig_eval(a, b, t):
    out = np.zeros_like(t)
    for k, coef in enumerate(a):
        out += coef * np.cos(k * t)
    for k, coef in enumerate(b):
        out += coef * np.sin(k * t)
    return out


def read_curve(path) -> SampledCurve:
    """Load a CSV ``x,y`` polyline or a JSON ``{"trig": {...}}`` spec."""
    with open(path) as fh:
        text = fh.read()
    return parse_curve_text(text)


def parse_curve_text(text: str) -> SampledCurve:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        data = json.loads(text)
        if "trig" in data:
            spec = data["trig"]
            return SampledCurve.from_trig(
                spec["ax"], spec["bx"], spec["ay"], spec["by"],
                samples=int(spec.get("samples", 1024)),
                phase=float(spec.get("phase", 0.1234)),
            )
        if "points" in data:
            return SampledCurve(np.array(data["points"], dtype=float))
        raise ValueError("JSON curve needs a 'trig' or 'points' entry")
    rows = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].lstrip().startswith("#")]
    if rows and not _is_number(rows[0][0]):
        rows = rows[1:]  # header
    return SampledCurve(np.array([[float(r[0]), float(r[1])] for r in rows]))


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


# -- exact orientation ---------------------------------------------------------


def _exact_cross(ax, ay, bx, by, cx, cy) -> int:
    """Sign of ``(b - a) x (c - a)`` in exact rational arithmetic."""
    ax, ay, bx, by, cx, cy = (Fraction(float(v)) for v in (ax, ay, bx, by, cx, cy))
    v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (v > 0) - (v < 0)


def _orient_signs(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Exact signs of ``orient(a, b, c)`` for broadcast point arrays.

    Values whose magnitude is within the floating-point error bound are
    recomputed in rational arithmetic.
    """
    a, b, c = np.broadcast_arrays(a, b, c)
    d1 = b - a
    d2 = c - a
    t1 = d1[..., 0] * d2[..., 1]
    t2 = d1[..., 1] * d2[..., 0]
    val = t1 - t2
    sign = np.sign(val).astype(np.int8)
    close = np.abs(val) <= _ERRBOUND * (np.abs(t1) + np.abs(t2))
    # both products exactly zero means a zero coordinate difference: exact 0
    close &= (t1 != 0) | (t2 != 0)
    for idx in zip(*np.nonzero(close)):
        sign[idx] = _exact_cross(*a[idx], *b[idx], *c[idx])
    return sign


_BLOCK = 256


def _orient_matrix(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """``_orient_signs`` over an (rows x cols) grid, built in row blocks.

    Each argument has shape ``(rows, 1, 2)`` or ``(1, cols, 2)``.
    """
    rows = max(x.shape[0] for x in (a, b, c))
    cols = max(x.shape[1] for x in (a, b, c))
    out = np.empty((rows, cols), dtype=np.int8)
    for start in range(0, rows, _BLOCK):
        sl = slice(start, start + _BLOCK)
        parts = [x[sl] if x.shape[0] > 1 else x for x in (a, b, c)]
        out[sl] = _orient_signs(*parts)
    return out


def _scale(points: np.ndarray) -> float:
    span = points.max(axis=0) - points.min(axis=0)
    return float(max(span.max(), 1e-300))


# -- discrete curvature ----------------------------------------------------------


def turning_angles(curve: SampledCurve) -> np.ndarray:
    """Signed exterior angle at each vertex, in ``(-pi, pi)``."""
    e = curve.edges
    prev = np.roll(e, 1, axis=0)
    cross = prev[:, 0] * e[:, 1] - prev[:, 1] * e[:, 0]
    dot = (prev * e).sum(axis=1)
    return np.arctan2(cross, dot)


def curvature_signs(curve: SampledCurve) -> np.ndarray:
    pts = curve.points
    return _orient_signs(np.roll(pts, 1, axis=0), pts, np.roll(pts, -1, axis=0))


# -- genericity ------------------------------------------------------------------


@dataclass
class GenericityReport:
    ok: bool
    issues: list = field(default_factory=list)

    def raise_if_failed(self):
        if not self.ok:
            msg, loc = self.issues[0]
            raise Degenerate(msg, loc)


@dataclass(frozen=True)
class Crossing:
    seg_a: int
    t_a: float
    seg_b: int
    t_b: float
    location: tuple[float, float]
    sign: int  # orientation of (tangent at first visit, tangent at second visit)
    sin_angle: float
    s1: float  # arclength parameters of the two visits
    s2: float
    n1: Optional[int] = None
    n2: Optional[int] = None
    alpha: Optional[float] = None

    @property
    def params(self) -> tuple[float, float]:
        return self.seg_a + self.t_a, self.seg_b + self.t_b

    @property
    def W(self) -> Optional[int]:
        if self.n1 is None:
            return None
        return self.n1 - self.n2

    def to_json(self) -> dict:
        out = {
            "params": list(self.params),
            "arclength": [self.s1, self.s2],
            "location": list(self.location),
            "sign": self.sign,
        }
        if self.n1 is not None:
            out.update(n1=self.n1, n2=self.n2, alpha=self.alpha, W=self.W)
        return out


def _raw_crossings(curve: SampledCurve):
    """Pairs of properly intersecting non-adjacent edges, exact predicates."""
    pts = curve.points
    n = curve.n
    nxt = np.roll(pts, -1, axis=0)
    # O[i, j] = orient(P_i, P_{i+1}, P_j)
    O = _orient_matrix(pts[:, None, :], nxt[:, None, :], pts[None, :, :])
    O_next = np.roll(O, -1, axis=1)  # orient(P_i, P_{i+1}, P_{j+1})
    straddle = O * O_next
    hits = (straddle < 0) & (straddle.T < 0)
    touch = ((straddle <= 0) & (straddle.T <= 0)) & ~hits
    idx = np.arange(n)
    near = (np.abs(idx[:, None] - idx[None, :]) <= 1) | (np.abs(idx[:, None] - idx[None, :]) == n - 1)
    hits &= ~near
    touch &= ~near
    pairs = [(int(i), int(j)) for i, j in zip(*np.nonzero(np.triu(hits)))]
    touching = [(int(i), int(j)) for i, j in zip(*np.nonzero(np.triu(touch)))]
    return pairs, touching


def _segment_params(curve: SampledCurve, i: int, j: int):
    p, r = curve.points[i], curve.edges[i]
    q, s = curve.points[j], curve.edges[j]
    rxs = r[0] * s[1] - r[1] * s[0]
    qp = q - p
    t = (qp[0] * s[1] - qp[1] * s[0]) / rxs
    u = (qp[0] * r[1] - qp[1] * r[0]) / rxs
    sin_angle = rxs / (np.hypot(*r) * np.hypot(*s))
    return float(t), float(u), p + t * r, float(sin_angle)


def validate_genericity(curve: SampledCurve, tol_angle: float = TOL_ANGLE, raise_on_fail: bool = True) -> GenericityReport:
    """Check repeated points, curvature zeros, tangential crossings, triple points."""
    issues = []
    pts = curve.points
    lengths = np.hypot(*curve.edges.T)
    for i in np.nonzero(lengths == 0)[0]:
        issues.append((f"repeated point at vertex {i}", tuple(pts[i])))
    if not issues:
        ks = curvature_signs(curve)
        for i in np.nonzero(ks == 0)[0]:
            issues.append((f"zero curvature (collinear vertices) at vertex {i}", tuple(pts[i])))
        prev, nxt = np.roll(ks, 1), np.roll(ks, -1)
        flicker = (prev == nxt) & (ks != prev) & (ks != 0) & (prev != 0)
        for i in np.nonzero(flicker)[0]:
            issues.append((f"unstable curvature sign at vertex {i}", tuple(pts[i])))
        pairs, touching = _raw_crossings(curve)
        for i, j in touching:
            issues.append((f"edges {i} and {j} touch without crossing transversally", tuple(pts[i])))
        locs = []
        for i, j in pairs:
            t, u, loc, sin_angle = _segment_params(curve, i, j)
            if abs(sin_angle) < tol_angle:
                issues.append((f"near-tangential crossing of edges {i} and {j}", tuple(loc)))
            locs.append(loc)
        if len(locs) > 1:
            arr = np.array(locs)
            dist = np.hypot(*(arr[:, None, :] - arr[None, :, :]).transpose(2, 0, 1))
            np.fill_diagonal(dist, np.inf)
            if dist.min() < 1e-9 * _scale(pts):
                k = int(np.argmin(dist.min(axis=1)))
                issues.append(("near-triple point", tuple(arr[k])))
    report = GenericityReport(not issues, issues)
    if raise_on_fail:
        report.raise_if_failed()
    return report


# -- counts ------------------------------------------------------------------------


def find_crossings(curve: SampledCurve) -> list[Crossing]:
    """Transversal self-intersections ordered by the first-visit parameter."""
    pairs, _ = _raw_crossings(curve)
    arclen = curve.arclength
    seg = np.diff(arclen)
    out = []
    for i, j in pairs:
        t, u, loc, sin_angle = _segment_params(curve, i, j)
        out.append(Crossing(
            i, t, j, u, (float(loc[0]), float(loc[1])), 1 if sin_angle > 0 else -1, sin_angle,
            float(arclen[i] + t * seg[i]), float(arclen[j] + u * seg[j]),
        ))
    return sorted(out, key=lambda c: c.params)


def inflection_count(curve: SampledCurve) -> int:
    ks = curvature_signs(curve)
    return int(np.count_nonzero(ks != np.roll(ks, -1)))


def inflection_edges(curve: SampledCurve) -> list[int]:
    ks = curvature_signs(curve)
    return [int(i) for i in np.nonzero(ks != np.roll(ks, -1))[0]]


def rotation_index(curve: SampledCurve) -> int:
    total = turning_angles(curve).sum() / TWO_PI
    r = int(round(total))
    if abs(total - r) > 1e-6:  # pragma: no cover - closed polylines turn by 2*pi*k
        raise Degenerate(f"total turning {total} is not integral")
    return r


def winding_data(curve: SampledCurve, crossing: Crossing, turning: Optional[np.ndarray] = None) -> Crossing:
    """Tangent turn counts ``n1``, ``n2`` on the two loops split at ``crossing``.

    The loops are labelled so that the tangent at the end of the first one
    is the tangent at its start rotated counterclockwise by ``alpha`` in
    ``(0, pi)``; the first loop then turns by ``2 pi n1 + alpha`` and the
    second by ``2 pi n2 - alpha``.
    """
    if turning is None:
        turning = turning_angles(curve)
    n = curve.n
    total = turning.sum()
    a, b = crossing.seg_a, crossing.seg_b
    ea, eb = curve.edges[a], curve.edges[b]
    if crossing.sign > 0:
        start, end, t_start, t_end = a, b, ea, eb
    else:
        start, end, t_start, t_end = b, a, eb, ea
    alpha = math.atan2(t_start[0] * t_end[1] - t_start[1] * t_end[0], float(np.dot(t_start, t_end)))
    if not (TOL_ANGLE / 10 < alpha < math.pi - TOL_ANGLE / 10):
        raise ConventionFailure(f"crossing at {crossing.location}: alpha={alpha} outside (0, pi)")
    verts = [(start + k) % n for k in range(1, (end - start) % n + 1)]
    theta = float(turning[verts].sum())
    n1f = (theta - alpha) / TWO_PI
    n2f = (total - theta + alpha) / TWO_PI
    n1, n2 = round(n1f), round(n2f)
    if abs(n1f - n1) > 1e-6 or abs(n2f - n2) > 1e-6:
        raise ConventionFailure(f"non-integral turn counts {n1f}, {n2f}")
    return Crossing(
        crossing.seg_a, crossing.t_a, crossing.seg_b, crossing.t_b, crossing.location,
        crossing.sign, crossing.sin_angle, crossing.s1, crossing.s2, int(n1), int(n2), alpha,
    )


@dataclass(frozen=True)
class Bitangent:
    i: int
    j: int
    same_side: bool
    size: int  # vertex pairs merged into this line


@dataclass(frozen=True)
class DoubleTangents:
    d1: int
    d2: int
    lines: tuple[Bitangent, ...]
    raw_pairs: int


def double_tangents(curve: SampledCurve, cluster: bool = True) -> DoubleTangents:
    """Lines through two vertices supporting the polygon locally at both."""
    pts = curve.points
    n = curve.n
    prev, nxt = np.roll(pts, 1, axis=0), np.roll(pts, -1, axis=0)
    A = pts[:, None, :]
    B = pts[None, :, :]
    s_prev_i = _orient_matrix(A, B, prev[:, None, :])
    s_next_i = _orient_matrix(A, B, nxt[:, None, :])
    s_prev_j = _orient_matrix(A, B, prev[None, :, :])
    s_next_j = _orient_matrix(A, B, nxt[None, :, :])
    idx = np.arange(n)
    gap = np.abs(idx[:, None] - idx[None, :])
    valid = (idx[:, None] < idx[None, :]) & (gap >= 2) & (gap <= n - 2)
    zero = valid & ((s_prev_i == 0) | (s_next_i == 0) | (s_prev_j == 0) | (s_next_j == 0))
    if zero.any():
        i, j = map(int, np.argwhere(zero)[0])
        raise Degenerate(f"three collinear vertices on the line through {i} and {j}", tuple(pts[i]))
    support = valid & (s_prev_i == s_next_i) & (s_prev_j == s_next_j)
    found = [(int(i), int(j), bool(s_prev_i[i, j] == s_prev_j[i, j])) for i, j in np.argwhere(support)]
    if not cluster:
        lines = tuple(Bitangent(i, j, same, 1) for i, j, same in found)
    else:
        lines = _cluster(found, n)
    d1 = sum(1 for b in lines if b.same_side)
    return DoubleTangents(d1, len(lines) - d1, lines, len(found))


def _cyc(a: int, b: int, n: int) -> int:
    d = abs(a - b) % n
    return min(d, n - d)


def _cluster(found, n) -> tuple[Bitangent, ...]:
    parent = list(range(len(found)))

    def root(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in range(len(found)):
        for y in range(x):
            (i1, j1, _), (i2, j2, _) = found[x], found[y]
            if (_cyc(i1, i2, n) <= 1 and _cyc(j1, j2, n) <= 1) or (
                _cyc(i1, j2, n) <= 1 and _cyc(j1, i2, n) <= 1
            ):
                parent[root(x)] = root(y)
    groups: dict[int, list] = {}
    for x in range(len(found)):
        groups.setdefault(root(x), []).append(found[x])
    lines = []
    for members in groups.values():
        sides = {same for _, _, same in members}
        if len(sides) > 1:
            raise AmbiguousBitangent(f"vertex pairs {members} disagree on side; resample")
        i, j, same = min(members)
        lines.append(Bitangent(i, j, same, len(members)))
    return tuple(sorted(lines, key=lambda b: (b.i, b.j)))


def fb_residual(d1: int, d2: int, m: int, i: int) -> int:
    """``d1 - d2 - m - i/2``; zero for generic curves."""
    return d1 - d2 - m - i // 2


# -- bridge to combinatorics -------------------------------------------------------------


def extract_code(curve: SampledCurve, crossings: Optional[list[Crossing]] = None) -> PlanarEmbedding:
    """Signed Gauss code and outer face of a sampled curve.

    The basepoint is vertex 0; the outer face is the one just below the
    lowest vertex.
    """
    if crossings is None:
        crossings = find_crossings(curve)
    if not crossings:
        return build_embedding(CombinatorialCurve((), (), (0, "L")))
    visits = []
    for k, c in enumerate(crossings):
        pa, pb = c.params
        visits.append((pa, k))
        visits.append((pb, k))
    visits.sort()
    word = [k + 1 for _, k in visits]
    # crossings are sorted by first visit, so labels are already normalized
    signs = tuple(c.sign for c in crossings)
    pts = curve.points
    low = int(np.lexsort((pts[:, 0], pts[:, 1]))[0])
    e_in, e_out = curve.edges[low - 1], curve.edges[low]
    side = "R" if e_in[0] * e_out[1] - e_in[1] * e_out[0] > 0 else "L"
    before = sum(1 for p, _ in visits if p < low)
    arc = (before - 1) % len(word)
    # keep the outer face on the code so that mirrored()/reversed() carry it
    return build_embedding(CombinatorialCurve(tuple(word), signs, (arc, side)))


# -- report ----------------------------------------------------------------------


@dataclass
class GeometricReport:
    m: int
    i: int
    R: int
    d1: int
    d2: int
    crossings: list
    bitangents: list
    fb_residual: int
    planar_key: str
    spherical_key: str
    mu: int
    delta_lower: int
    sum_W: Optional[int]
    halpern_ok: Optional[bool]
    n_points: int

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "i": self.i,
            "R": self.R,
            "d1": self.d1,
            "d2": self.d2,
            "fb_residual": self.fb_residual,
            "planar_key": self.planar_key,
            "spherical_key": self.spherical_key,
            "mu": self.mu,
            "delta_lower": self.delta_lower,
            "sum_W": self.sum_W,
            "halpern_ok": self.halpern_ok,
            "n_points": self.n_points,
            "crossings": [c.to_json() for c in self.crossings],
            "bitangents": [{"i": b.i, "j": b.j, "same_side": b.same_side} for b in self.bitangents],
        }


def oriented_positively(curve: SampledCurve) -> SampledCurve:
    """The curve, reversed if its rotation index is negative."""
    return curve.reversed() if rotation_index(curve) < 0 else curve


def full_report(curve: SampledCurve, check: bool = True, tol_angle: float = TOL_ANGLE) -> GeometricReport:
    from .mu import compute_mu
    from .polygons import admissible_polygons

    validate_genericity(curve, tol_angle)
    crossings = find_crossings(curve)
    i = inflection_count(curve)
    R = rotation_index(curve)
    dt = double_tangents(curve)
    emb = extract_code(curve, crossings)
    form = canonical_form(emb)
    mu = compute_mu(admissible_polygons(emb), emb.m).mu

    oriented = oriented_positively(curve)
    turning = turning_angles(oriented)
    wound = [winding_data(oriented, c, turning) for c in find_crossings(oriented)]
    m = len(crossings)
    sum_W = sum(c.W for c in wound)
    residual = fb_residual(dt.d1, dt.d2, m, i)
    halpern = dt.d1 + dt.d2 <= m * (2 * m - 1) if i == 0 else None
    report = GeometricReport(
        m, i, R, dt.d1, dt.d2, wound, list(dt.lines), residual,
        form.planar_key, form.spherical_key, mu, m + mu // 2,
        sum_W, halpern, curve.n,
    )
    if check:
        if residual != 0:
            raise IdentityViolation("fabricius-bjerre", f"d1-d2-m-i/2 = {residual}")
        if i < mu:
            raise IdentityViolation("inflection-bound", f"i={i} < mu={mu}")
        if any(c.n1 + c.n2 != abs(R) for c in wound):
            raise IdentityViolation("turn-split", "n1 + n2 != R at some crossing")
        if i == 0:
            if dt.d2 != sum_W:
                raise IdentityViolation("d2-winding", f"d2={dt.d2} but sum W={sum_W}")
            if not halpern:
                raise IdentityViolation("ozawa", f"d1+d2={dt.d1 + dt.d2} > m(2m-1)={m * (2 * m - 1)}")
    return report
