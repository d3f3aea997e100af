"""Admissible polygons of an embedded curve.

A polygon is a set of arcs whose union is a simple closed curve.  Its
corners are the crossings where it switches from one strand to the other;
it passes straight through the remaining crossings it meets.  Convexity of
a corner is read off combinatorially: the two boundary darts cut the four
sectors around the crossing 1 | 3, and the corner is convex exactly when
the interior gets the single sector.
"""

from __future__ import annotations

import json
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .curve import PlanarEmbedding
from .errors import InconsistentColoring

POSITIVE = "positive"
NEGATIVE = "negative"
MIXED = "mixed"


@dataclass(frozen=True)
class Corner:
    label: int
    convex: bool


@dataclass(frozen=True)
class Interval:
    arcs: tuple[int, ...]  # consecutive arcs in curve order
    sign: int


@dataclass(frozen=True)
class AdmissiblePolygon:
    arc_set: frozenset
    corners: tuple[Corner, ...]
    pass_throughs: tuple[int, ...]
    intervals: tuple[Interval, ...]
    interior_faces: frozenset
    sign_class: str

    @property
    def n(self) -> int:
        return len(self.corners)

    @property
    def convex_corners(self) -> int:
        return sum(c.convex for c in self.corners)

    @property
    def kind(self) -> str:
        return {1: "shell", 2: "leaf", 3: "triangle"}.get(self.n, f"{self.n}-gon")

    def arc_signs(self) -> dict[int, int]:
        return {a: iv.sign for iv in self.intervals for a in iv.arcs}

    def sort_key(self):
        return tuple(sorted(self.arc_set))

    def to_json(self) -> dict:
        return {
            "arcs": sorted(self.arc_set),
            "n": self.n,
            "kind": self.kind,
            "corners": [{"crossing": c.label, "convex": c.convex} for c in self.corners],
            "pass_throughs": list(self.pass_throughs),
            "intervals": [{"arcs": list(iv.arcs), "sign": iv.sign} for iv in self.intervals],
            "interior_faces": sorted(self.interior_faces),
            "sign_class": self.sign_class,
        }


def _arc_ends(emb: PlanarEmbedding, arc: int) -> tuple[int, int]:
    word = emb.curve.word
    return word[arc], word[(arc + 1) % len(word)]


def _is_simple_cycle(emb: PlanarEmbedding, arcs: Iterable[int]) -> bool:
    arcs = list(arcs)
    if not arcs:
        return False
    degree: dict[int, int] = defaultdict(int)
    adj: dict[int, list[int]] = defaultdict(list)
    for a in arcs:
        u, v = _arc_ends(emb, a)
        degree[u] += 1
        degree[v] += 1
        adj[u].append(v)
        adj[v].append(u)
    if any(k != 2 for k in degree.values()):
        return False
    start = next(iter(degree))
    seen = {start}
    todo = [start]
    while todo:
        u = todo.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return len(seen) == len(degree)


def enumerate_cycles_bruteforce(emb: PlanarEmbedding) -> list[frozenset]:
    """Filter all ``2^(2m)`` arc subsets; the oracle for :func:`enumerate_cycles`."""
    n = emb.n_arcs
    out = []
    for mask in range(1, 1 << n):
        arcs = [a for a in range(n) if mask >> a & 1]
        if len(arcs) < n and _is_simple_cycle(emb, arcs):
            out.append(frozenset(arcs))
    return sorted(out, key=lambda s: tuple(sorted(s)))


def enumerate_cycles(emb: PlanarEmbedding) -> list[frozenset]:
    """All arc sets forming a simple closed curve, via DFS with vertex marking.

    Each cycle is rooted at its smallest crossing label and grown through
    larger labels only; both traversal directions are found and merged.
    """
    n = emb.n_arcs
    incident: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for a in range(n):
        u, v = _arc_ends(emb, a)
        incident[u].append((a, v))
        if u != v:
            incident[v].append((a, u))
    found = set()
    for root in sorted(incident):
        for a, v in incident[root]:
            if v == root:
                found.add(frozenset((a,)))
        stack = [(root, (), frozenset((root,)))]
        while stack:
            u, path, used = stack.pop()
            for a, v in incident[u]:
                if a in path or v == u:
                    continue
                if v == root:
                    if path:
                        found.add(frozenset(path + (a,)))
                elif v > root and v not in used:
                    stack.append((v, path + (a,), used | {v}))
    # a cycle through every crossing on both strands would be the whole curve
    found.discard(frozenset(range(n)))
    return sorted(found, key=lambda s: tuple(sorted(s)))


def interior_side(cycle: frozenset, emb: PlanarEmbedding) -> frozenset:
    """Faces on the side of ``cycle`` not containing the outer face."""
    adj: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for a in range(emb.n_arcs):
        left, right = emb.arc_faces(a)
        flip = 1 if a in cycle else 0
        adj[left].append((right, flip))
        adj[right].append((left, flip))
    color = {emb.outer_face: 0}
    queue = deque([emb.outer_face])
    while queue:
        f = queue.popleft()
        for g, flip in adj[f]:
            c = color[f] ^ flip
            if g not in color:
                color[g] = c
                queue.append(g)
            elif color[g] != c:
                raise InconsistentColoring(f"arc set {sorted(cycle)} does not separate faces")
    return frozenset(f for f, c in color.items() if c == 1)


def _intervals(cycle: frozenset, interior: frozenset, emb: PlanarEmbedding):
    """Maximal runs of consecutive arcs with their signs, and the sign class."""
    n = emb.n_arcs
    signs = {a: 1 if emb.arc_faces(a)[0] in interior else -1 for a in cycle}
    # runs of parameter-consecutive arcs, each starting right after a corner
    starts = sorted(a for a in cycle if (a - 1) % n not in cycle)
    intervals = []
    for s in starts:
        run = [s]
        while (run[-1] + 1) % n in cycle:
            run.append((run[-1] + 1) % n)
        if len({signs[a] for a in run}) != 1:  # pragma: no cover
            raise AssertionError("sign not constant on an interval")
        intervals.append(Interval(tuple(run), signs[s]))
    values = {iv.sign for iv in intervals}
    if values == {1}:
        sign_class = POSITIVE
    elif values == {-1}:
        sign_class = NEGATIVE
    else:
        sign_class = MIXED
    return tuple(intervals), sign_class


def _corners(cycle: frozenset, interior: frozenset, emb: PlanarEmbedding):
    used: dict[int, list[int]] = defaultdict(list)
    for a in cycle:
        out_dart = 2 * a
        in_dart = emb.twin(out_dart)
        used[emb.vertex(out_dart)].append(out_dart)
        used[emb.vertex(in_dart)].append(in_dart)
    corners = []
    passes = []
    for label in sorted(used):
        d1, d2 = used[label]
        if d1 // 2 == d2 // 2:
            passes.append(label)
            continue
        inside = sum(emb.face_of[d] in interior for d in emb.darts_at(label))
        if inside not in (1, 3):  # pragma: no cover - 2 would be a straight corner
            raise InconsistentColoring(f"corner at {label} has {inside} interior sectors")
        corners.append(Corner(label, inside == 1))
    return tuple(corners), tuple(passes)


def polygon_record(cycle: frozenset, interior: frozenset, emb: PlanarEmbedding) -> AdmissiblePolygon:
    """Corners, intervals and sign class of ``cycle``, admissible or not."""
    corners, passes = _corners(cycle, interior, emb)
    intervals, sign_class = _intervals(cycle, interior, emb)
    return AdmissiblePolygon(frozenset(cycle), corners, passes, intervals, interior, sign_class)


def classify_polygon(
    cycle: frozenset, interior: frozenset, emb: PlanarEmbedding
) -> Optional[AdmissiblePolygon]:
    """Corners, signs and sign class of ``cycle``; ``None`` if not admissible
    (three or more convex corners)."""
    poly = polygon_record(cycle, interior, emb)
    if poly.convex_corners > 2:
        return None
    return poly


def rejected_polygons(emb: PlanarEmbedding) -> list[AdmissiblePolygon]:
    """Polygons with three or more convex corners, with their would-be signs."""
    out = []
    for cycle in enumerate_cycles(emb):
        poly = polygon_record(cycle, interior_side(cycle, emb), emb)
        if poly.convex_corners > 2:
            out.append(poly)
    return out


def all_polygons(emb: PlanarEmbedding) -> list[tuple[frozenset, frozenset, Optional[AdmissiblePolygon]]]:
    """Every cycle with its interior and classification (``None`` = rejected)."""
    out = []
    for cycle in enumerate_cycles(emb):
        interior = interior_side(cycle, emb)
        out.append((cycle, interior, classify_polygon(cycle, interior, emb)))
    return out


def admissible_polygons(emb: PlanarEmbedding) -> list[AdmissiblePolygon]:
    return [p for _, _, p in all_polygons(emb) if p is not None]


def polygon_stats(polygons: list[AdmissiblePolygon]) -> dict:
    """Counts by ``n`` (shells, leaves, ...) and sign class."""
    stats: dict = {}
    for p in polygons:
        bucket = stats.setdefault(p.kind, {POSITIVE: 0, NEGATIVE: 0, MIXED: 0})
        bucket[p.sign_class] += 1
    return dict(sorted(stats.items(), key=lambda kv: (len(kv[0]), kv[0])))


def dump_polygons(polygons: list[AdmissiblePolygon]) -> str:
    """JSON-lines dump, one polygon per line."""
    return "\n".join(json.dumps(p.to_json(), sort_keys=True) for p in polygons)
