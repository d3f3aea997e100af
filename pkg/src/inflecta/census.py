"""Enumeration of spherical and planar curve types up to a crossing bound."""

from __future__ import annotations

import json
import logging
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .curve import (
    CombinatorialCurve,
    NotSpherical,
    all_chiralities,
    build_embedding,
    canonical_form,
    curve_from_key,
    face_orbits,
)
from .mu import compute_mu, sign_scan
from .polygons import admissible_polygons, polygon_stats

log = logging.getLogger(__name__)

CHECKED_MAX_M = 5
ORIENTED = "oriented"
UNORIENTED = "unoriented"  # mirror images identified


def _matchings(n: int) -> Iterator[tuple[int, ...]]:
    """Double-occurrence words of length ``n`` labelled by first appearance."""
    word = [0] * n

    def fill(pos, next_label, open_labels):
        if pos == n:
            yield tuple(word)
            return
        # close a label that is still waiting for its second visit
        for label in sorted(open_labels):
            word[pos] = label
            yield from fill(pos + 1, next_label, open_labels - {label})
        if len(open_labels) + 1 <= n - pos - 1:
            word[pos] = next_label
            yield from fill(pos + 1, next_label + 1, open_labels | {next_label})

    yield from fill(0, 1, frozenset())


def _relabel(word) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(x, len(seen) + 1) for x in word)


def word_class_rep(word) -> tuple[int, ...]:
    """Smallest normalized word over rotations and reversal."""
    n = len(word)
    if n == 0:
        return ()
    cands = []
    for w in (tuple(word), tuple(word[::-1])):
        for k in range(n):
            cands.append(_relabel(w[k:] + w[:k]))
    return min(cands)


def enumerate_words(m: int) -> list[tuple[int, ...]]:
    """One double-occurrence word per (rotation, reversal, relabel) class."""
    reps = {word_class_rep(w) for w in _matchings(2 * m)}
    return sorted(reps)


def spherical_types(m: int) -> list[str]:
    """Spherical keys of all curves with ``m`` crossings."""
    keys = set()
    for word in enumerate_words(m):
        for curve in all_chiralities(word):
            try:
                emb = build_embedding(curve)
            except NotSpherical:
                continue
            keys.add(canonical_form(emb).spherical_key)
    return sorted(keys, key=_key_order)


def _key_order(key: str):
    spherical, _, outer = key.partition("|")
    word_text, _, signs = spherical.partition("/")
    return (len(word_text.split()), tuple(int(x) for x in word_text.split()), signs, outer)


@dataclass(frozen=True)
class CensusEntry:
    planar_key: str
    spherical_key: str
    m: int
    mu: int
    has_positive: bool
    has_negative: bool
    polygon_stats: dict
    n_polygons: int
    witness: tuple[str, ...] = ()
    mirror_key: str = ""  # planar key of the reflected curve

    @property
    def achiral(self) -> bool:
        return self.mirror_key == self.planar_key

    @property
    def unoriented_key(self) -> str:
        """Class key up to reflection: the smaller of the two keys."""
        return min(self.planar_key, self.mirror_key or self.planar_key, key=_key_order)

    def to_json(self) -> dict:
        return {
            "planar_key": self.planar_key,
            "spherical_key": self.spherical_key,
            "m": self.m,
            "mu": self.mu,
            "has_positive": self.has_positive,
            "has_negative": self.has_negative,
            "n_polygons": self.n_polygons,
            "polygon_stats": self.polygon_stats,
            "witness": list(self.witness),
            "mirror_key": self.mirror_key,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CensusEntry":
        return cls(
            data["planar_key"], data["spherical_key"], data["m"], data["mu"],
            data["has_positive"], data["has_negative"], data["polygon_stats"],
            data["n_polygons"], tuple(data.get("witness", ())),
            data.get("mirror_key", ""),
        )


def analyze_planar(curve: CombinatorialCurve) -> CensusEntry:
    emb = build_embedding(curve)
    form = canonical_form(emb)
    polys = admissible_polygons(emb)
    scan = sign_scan(polys)
    result = compute_mu(polys, emb.m)
    return CensusEntry(
        form.planar_key, form.spherical_key, emb.m, result.mu,
        scan.has_positive, scan.has_negative, polygon_stats(polys), len(polys),
        result.witness.patterns,
        canonical_form(build_embedding(emb.curve.mirrored())).planar_key,
    )


def planar_curves(spherical_key: str) -> list[CombinatorialCurve]:
    """One curve per outer-face orbit of the given spherical type."""
    emb = build_embedding(curve_from_key(spherical_key))
    _, orbit = face_orbits(emb)
    reps = sorted(set(orbit.values()))
    return [emb.curve.with_outer(arc, "LR"[side]) for arc, side in reps]


def planar_types(m: int, workers: Optional[int] = None) -> list[CensusEntry]:
    curves = [c for key in spherical_types(m) for c in planar_curves(key)]
    entries = _map(analyze_planar, curves, workers)
    return sorted(entries, key=lambda e: _key_order(e.planar_key))


def _workers(requested: Optional[int]) -> int:
    if requested is not None:
        return max(1, requested)
    try:
        return max(1, int(os.environ.get("INFLECTA_THREADS", "1")))
    except ValueError:
        return 1


def _map(fn, items: list, workers: Optional[int]):
    n = _workers(workers)
    if n == 1 or len(items) < 32:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items, chunksize=16))


@dataclass
class CensusReport:
    max_m: int
    entries: list[CensusEntry]
    spherical_counts: dict[int, int] = field(default_factory=dict)

    def by_m(self, m: int, convention: str = ORIENTED) -> list[CensusEntry]:
        """Entries with ``m`` crossings; ``unoriented`` keeps one entry per
        mirror pair."""
        entries = [e for e in self.entries if e.m == m]
        if convention == ORIENTED:
            return entries
        if convention != UNORIENTED:
            raise ValueError(f"unknown convention {convention!r}")
        return [e for e in entries if e.planar_key == e.unoriented_key]

    def planar_count(self, m: int, convention: str = ORIENTED) -> int:
        return len(self.by_m(m, convention))

    def mu_histogram(self, m: int, convention: str = ORIENTED) -> dict[int, int]:
        return dict(sorted(Counter(e.mu for e in self.by_m(m, convention)).items()))

    def mu_zero(self, m: int, convention: str = ORIENTED) -> int:
        return sum(1 for e in self.by_m(m, convention) if e.mu == 0)

    def max_mu_ratio(self) -> Fraction:
        ratios = [Fraction(e.mu, 2 * e.m) for e in self.entries if e.m > 0]
        return max(ratios) if ratios else Fraction(0)

    def ratio_attainers(self) -> list[str]:
        best = self.max_mu_ratio()
        return [e.planar_key for e in self.entries if e.m > 0 and Fraction(e.mu, 2 * e.m) == best]

    @property
    def experimental(self) -> bool:
        return self.max_m > CHECKED_MAX_M

    def summary_rows(self, convention: str = ORIENTED) -> list[dict]:
        rows = []
        cumulative = 0
        for m in range(self.max_m + 1):
            cumulative += self.mu_zero(m, convention)
            rows.append({
                "convention": convention,
                "m": m,
                "spherical": self.spherical_counts.get(m, 0),
                "planar": self.planar_count(m, convention),
                "mu0": self.mu_zero(m, convention),
                "mu0_cumulative": cumulative,
                "histogram": self.mu_histogram(m, convention),
            })
        return rows

    def summary_text(self) -> str:
        lines = []
        for convention, title in ((ORIENTED, "oriented planar classes (mirror images distinct)"),
                                  (UNORIENTED, "planar classes up to reflection")):
            lines.append(title)
            lines.append(f"{'m':>2}  {'spherical':>9}  {'planar':>6}  {'mu=0':>5}  {'mu=0 (<=m)':>10}  mu histogram")
            for r in self.summary_rows(convention):
                hist = " ".join(f"{k}:{v}" for k, v in r["histogram"].items())
                lines.append(
                    f"{r['m']:>2}  {r['spherical']:>9}  {r['planar']:>6}  {r['mu0']:>5}  "
                    f"{r['mu0_cumulative']:>10}  {hist}"
                )
            lines.append("")
        ratio = self.max_mu_ratio()
        lines.append(f"max mu/2m = {ratio} attained by {len(self.ratio_attainers())} class(es)")
        if self.experimental:
            lines.append(f"note: m > {CHECKED_MAX_M} is experimental")
        return "\n".join(lines)

    def summary_csv(self) -> str:
        lines = ["convention,m,spherical,planar,mu0,mu0_cumulative,histogram"]
        for convention in (ORIENTED, UNORIENTED):
            for r in self.summary_rows(convention):
                hist = ";".join(f"{k}:{v}" for k, v in r["histogram"].items())
                lines.append(
                    f"{convention},{r['m']},{r['spherical']},{r['planar']},{r['mu0']},{r['mu0_cumulative']},{hist}"
                )
        return "\n".join(lines) + "\n"


def census_report(max_m: int, workers: Optional[int] = None) -> CensusReport:
    if max_m > CHECKED_MAX_M:
        log.warning("census beyond m=%d is experimental", CHECKED_MAX_M)
    entries: list[CensusEntry] = []
    spherical_counts = {}
    for m in range(max_m + 1):
        spherical_counts[m] = len(spherical_types(m))
        entries.extend(planar_types(m, workers))
        log.info("m=%d: %d spherical, %d planar", m, spherical_counts[m], len(entries))
    return CensusReport(max_m, entries, spherical_counts)


def write_catalog(entries: Iterable[CensusEntry], path) -> None:
    with open(path, "w") as fh:
        for e in entries:
            fh.write(json.dumps(e.to_json(), sort_keys=True) + "\n")


def read_catalog(path) -> list[CensusEntry]:
    with open(path) as fh:
        return [CensusEntry.from_json(json.loads(line)) for line in fh if line.strip()]
