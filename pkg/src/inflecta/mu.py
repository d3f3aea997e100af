"""Exact computation of the inflection lower bound ``mu``.

An admissible function puts signs on points of the curve away from the
crossings so that every admissible polygon contains a point whose sign
matches the polygon's orientation there.  ``mu`` is the least number of
cyclic sign changes such a function can have.

Two points per gap between consecutive crossings (slots ``t_i``, ``s_i``)
suffice, so a function is a per-gap pattern drawn from ``PATTERNS``.
Whether a polygon is hit only depends on which signs occur in each of its
arcs, which turns every polygon into a pair of arc bitmasks.

The solver deepens over ``2k`` sign changes.  Filling the zeros of an
admissible function with the sign of a neighbouring support point never
adds sign changes and never breaks a constraint, so at depth ``k`` it is
enough to place ``2k`` block boundaries among the ``4m`` cyclic slot gaps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

import numpy as np

from .errors import Infeasible
from .polygons import NEGATIVE, POSITIVE, AdmissiblePolygon

PATTERNS = ("", "+", "-", "+-", "-+")
_PATTERN_SLOTS = {"": (0, 0), "+": (1, 0), "-": (-1, 0), "+-": (1, -1), "-+": (-1, 1)}


def cyclic_sign_changes(values: Sequence[int]) -> int:
    """Sign flips of the cyclic sequence after discarding zeros."""
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    if len(signs) < 2:
        return 0
    return sum(a != b for a, b in zip(signs, signs[1:] + signs[:1]))


@dataclass(frozen=True)
class SignScan:
    has_positive: bool
    has_negative: bool

    @property
    def mu_positive(self) -> bool:
        return self.has_positive and self.has_negative


def sign_scan(polygons: Sequence[AdmissiblePolygon]) -> SignScan:
    """``mu > 0`` exactly when both a positive and a negative polygon exist."""
    classes = {p.sign_class for p in polygons}
    return SignScan(POSITIVE in classes, NEGATIVE in classes)


def constraint_masks(polygons: Sequence[AdmissiblePolygon]) -> list[tuple[int, int]]:
    """Per polygon, bitmasks of its positive arcs and of its negative arcs."""
    masks = set()
    for p in polygons:
        plus = minus = 0
        for a, s in p.arc_signs().items():
            if s > 0:
                plus |= 1 << a
            else:
                minus |= 1 << a
        masks.add((plus, minus))
    return sorted(masks)


@dataclass(frozen=True)
class ReducedFunction:
    patterns: tuple[str, ...]

    def slot_values(self) -> list[int]:
        return [v for pat in self.patterns for v in _PATTERN_SLOTS[pat]]

    def sign_changes(self) -> int:
        return cyclic_sign_changes(self.slot_values())

    def masks(self) -> tuple[int, int]:
        plus = minus = 0
        for a, pat in enumerate(self.patterns):
            if "+" in pat:
                plus |= 1 << a
            if "-" in pat:
                minus |= 1 << a
        return plus, minus

    def is_admissible(self, polygons: Sequence[AdmissiblePolygon]) -> bool:
        plus, minus = self.masks()
        return all((pm & plus) or (mm & minus) for pm, mm in constraint_masks(polygons))

    def to_text(self) -> str:
        return " ".join(p or "0" for p in self.patterns)


@dataclass(frozen=True)
class MuResult:
    mu: int
    witness: ReducedFunction
    exhaustive: bool = True
    refuted: dict = field(default_factory=dict)  # k -> placements refuted with 2k changes

    def to_json(self) -> dict:
        return {
            "mu": self.mu,
            "witness": list(self.witness.patterns),
            "certificate": {
                "exhaustive": self.exhaustive,
                "refuted": {str(2 * k): n for k, n in sorted(self.refuted.items())},
            },
        }


@lru_cache(maxsize=None)
def _block_signs(n_slots: int, k: int) -> np.ndarray:
    """Slot signs for every placement of ``2k`` boundaries, slot 0 positive."""
    if k == 0:
        return np.ones((1, n_slots), dtype=np.int8)
    cuts = np.array(list(combinations(range(n_slots), 2 * k)), dtype=np.intp)
    marks = np.zeros((len(cuts), n_slots), dtype=np.int8)
    np.put_along_axis(marks, cuts, 1, axis=1)
    # a boundary at b separates slot b from slot b+1
    before = np.cumsum(marks, axis=1) - marks
    return (1 - 2 * (before % 2)).astype(np.int8)


def _feasible(vals: np.ndarray, masks: list[tuple[int, int]]) -> np.ndarray:
    weights = 1 << np.arange(vals.shape[1] // 2, dtype=np.int64)
    plus = ((vals[:, 0::2] > 0) | (vals[:, 1::2] > 0)).astype(np.int64) @ weights
    minus = ((vals[:, 0::2] < 0) | (vals[:, 1::2] < 0)).astype(np.int64) @ weights
    ok = np.ones(len(vals), dtype=bool)
    for pm, mm in masks:
        ok &= ((plus & pm) | (minus & mm)) != 0
    return ok


def _pattern_codes(vals: np.ndarray) -> np.ndarray:
    """Index into ``PATTERNS`` of each gap of each full-support row."""
    t, s = vals[:, 0::2], vals[:, 1::2]
    codes = np.where(t > 0, np.where(s > 0, 1, 3), np.where(s < 0, 2, 4))
    return codes


def _lexmin_row(codes: np.ndarray) -> np.ndarray:
    order = np.lexsort(codes.T[::-1])
    return codes[order[0]]


def compute_mu(polygons: Sequence[AdmissiblePolygon], m: int) -> MuResult:
    """Minimum cyclic sign changes over admissible functions.

    The witness is the lexicographically smallest pattern sequence (in
    ``PATTERNS`` order) among the optimal full-support functions.
    """
    n_gaps = 2 * m
    masks = constraint_masks(polygons)
    if n_gaps == 0 or not masks:
        return MuResult(0, ReducedFunction(("",) * n_gaps))
    refuted = {}
    for k in range(0, m + 1):
        base = _block_signs(2 * n_gaps, k)
        vals = np.concatenate([base, -base])
        ok = _feasible(vals, masks)
        if ok.any():
            row = _lexmin_row(_pattern_codes(vals[ok]))
            witness = ReducedFunction(tuple(PATTERNS[c] for c in row))
            return MuResult(2 * k, witness, True, refuted)
        refuted[k] = len(vals)
    raise Infeasible(f"no admissible function with at most {2 * m} sign changes")


def _cyclic_changes_rows(vals: np.ndarray) -> np.ndarray:
    n, width = vals.shape
    doubled = np.concatenate([vals, vals], axis=1)
    idx = np.where(doubled != 0, np.arange(2 * width), -1)
    last = np.maximum.accumulate(idx, axis=1)
    prev = last[:, width - 1 : 2 * width - 1]
    prev_val = np.take_along_axis(doubled, np.maximum(prev, 0), axis=1)
    flips = (vals != 0) & (prev >= 0) & (prev_val != vals)
    return flips.sum(axis=1)


def compute_mu_bruteforce(polygons: Sequence[AdmissiblePolygon], m: int, chunk: int = 200_000) -> MuResult:
    """Scan all ``5^(2m)`` per-gap patterns; the oracle for :func:`compute_mu`."""
    n_gaps = 2 * m
    masks = constraint_masks(polygons)
    table = np.array([_PATTERN_SLOTS[p] for p in PATTERNS], dtype=np.int8)
    best = None
    best_codes = None
    all_codes = np.array(list(product(range(len(PATTERNS)), repeat=n_gaps)), dtype=np.int8)
    if n_gaps == 0:
        return MuResult(0, ReducedFunction(()))
    for start in range(0, len(all_codes), chunk):
        codes = all_codes[start : start + chunk]
        vals = table[codes].reshape(len(codes), 2 * n_gaps)
        ok = _feasible(vals, masks) if masks else np.ones(len(codes), dtype=bool)
        if not ok.any():
            continue
        changes = _cyclic_changes_rows(vals[ok])
        low = changes.min()
        cand = _lexmin_row(codes[ok][changes == low])
        if best is None or low < best or (low == best and tuple(cand) < tuple(best_codes)):
            best, best_codes = int(low), cand
    if best is None:
        raise Infeasible("no admissible pattern")
    return MuResult(best, ReducedFunction(tuple(PATTERNS[c] for c in best_codes)))
