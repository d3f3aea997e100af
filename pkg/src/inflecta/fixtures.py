"""Sampled example curves with expected values.

Every fixture is a closed polyline plus the values it must reproduce
through :func:`~inflecta.geometry.full_report`.  The intended class and
its ``mu`` come from the combinatorial side, so the round trip checks the
geometric pipeline against an independent answer.  Each expected value
carries a provenance tag: ``PUBLISHED`` for numbers stated in the
published source (with the quoted phrase), ``DERIVED`` for values
computed here (measured on the polyline or obtained from the
combinatorial class).

Locally convex fixtures are exact trigonometric polynomials: with a
positive radius of curvature ``rho(phi)`` and tangent angle ``R phi`` the
curve ``z(phi) = integral rho(phi) exp(i R phi) d phi`` closes as soon as
``rho`` has no harmonic of order ``R``.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .curve import NotSpherical, all_chiralities, build_embedding, canonical_form, curve_from_key
from .geometry import SampledCurve, full_report, validate_genericity
from .mu import compute_mu
from .polygons import admissible_polygons

DEFAULT_SAMPLES = 1024


def convex_trig(R: int, cos_terms: Sequence[float] = (), sin_terms: Sequence[float] = (), samples: int = DEFAULT_SAMPLES) -> SampledCurve:
    """Locally convex curve of rotation index ``R`` from ``rho = 1 + sum ...``.

    ``cos_terms[k-1]`` and ``sin_terms[k-1]`` are the coefficients of
    ``cos k phi`` and ``sin k phi`` in ``rho``; order ``R`` must be zero.
    """
    coef = {0: 1.0 + 0j}
    for k, a in enumerate(cos_terms, start=1):
        coef[k] = coef.get(k, 0) + a / 2
        coef[-k] = coef.get(-k, 0) + a / 2
    for k, b in enumerate(sin_terms, start=1):
        coef[k] = coef.get(k, 0) + b / 2j
        coef[-k] = coef.get(-k, 0) - b / 2j
    if abs(coef.get(-R, 0)) > 1e-12:
        raise ValueError(f"rho must not contain harmonics of order {R}")
    size = max(abs(k + R) for k in coef) + 1
    ax, bx, ay, by = (np.zeros(size) for _ in range(4))
    for k, c in coef.items():
        f = k + R
        if f == 0:
            continue
        w = c / (1j * f)
        s = 1 if f > 0 else -1
        ax[abs(f)] += w.real
        bx[abs(f)] += -s * w.imag
        ay[abs(f)] += w.imag
        by[abs(f)] += s * w.real
    return SampledCurve.from_trig(ax.tolist(), bx.tolist(), ay.tolist(), by.tolist(), samples)


def trig_curve(ax, bx, ay, by, samples: int = DEFAULT_SAMPLES) -> SampledCurve:
    return SampledCurve.from_trig(ax, bx, ay, by, samples)


def chain_plain(n: int, samples: int = DEFAULT_SAMPLES) -> SampledCurve:
    """``(cos t, sin t cos nt)``: n crossings, lobes in a row."""
    bx = [0.0] * (n + 2)
    by = [0.0] * (n + 2)
    # sin t cos nt = (sin (n+1)t - sin (n-1)t) / 2
    by[n + 1] += 0.5
    if n - 1 > 0:
        by[n - 1] -= 0.5
    return SampledCurve.from_trig([0.0, 1.0], bx, [0.0], by, samples)


def chain_spiral(n: int, samples: int = 2048, bend: float = 1.5 * math.pi, width: Optional[float] = None) -> SampledCurve:
    """The chain bent along a circular arc.

    The two strands run along the arc in opposite directions, so one turns
    left and the other right; the curvature changes sign only where the
    end shells turn around.  Wide chains keep small inflection pairs inside
    the lobes, so the default width shrinks with ``n``.
    """
    if width is None:
        width = 0.3 if n <= 3 else 0.1 if n <= 5 else 0.05
    t = 2 * math.pi * (np.arange(samples) + 0.1234) / samples
    x, y = np.cos(t), np.sin(t) * np.cos(n * t)
    radius = 1.0 + width * y
    angle = bend / 2 * x
    return SampledCurve(np.column_stack([radius * np.cos(angle), radius * np.sin(angle)]))


def ellipse(samples: int = DEFAULT_SAMPLES) -> SampledCurve:
    return SampledCurve.from_trig([0.0, 2.0], [0.0], [0.0], [0.0, 1.0], samples)


def gerono(samples: int = 512) -> SampledCurve:
    """Lemniscate of Gerono ``(cos t, sin t cos t)``."""
    return SampledCurve.from_trig([0.0, 1.0], [0.0], [0.0], [0.0, 0.0, 0.5], samples)


@dataclass
class Fixture:
    name: str
    build: Callable[[], SampledCurve]
    key: str  # intended planar class
    quotes: dict = field(default_factory=dict)  # field -> published phrase
    note: str = ""
    pair: Optional[str] = None  # another drawing of the same class

    def expected(self, curve: Optional[SampledCurve] = None) -> dict:
        """Expected values: class data from combinatorics, the rest measured."""
        if curve is None:
            curve = self.build()
        emb = build_embedding(curve_from_key(self.key))
        form = canonical_form(emb)
        mu = compute_mu(admissible_polygons(emb), emb.m).mu
        report = full_report(curve)
        values = {
            "planar_key": form.planar_key,
            "spherical_key": form.spherical_key,
            "m": emb.m,
            "mu": mu,
            "delta_lower": emb.m + mu // 2,
            "i": report.i,
            "R": report.R,
            "d1": report.d1,
            "d2": report.d2,
            "fb_residual": report.fb_residual,
        }
        if report.i == 0:
            values["sum_W"] = report.sum_W
            values["W"] = sorted(c.W for c in report.crossings)
        provenance = {k: "DERIVED" for k in values}
        for k in ("planar_key", "spherical_key", "m", "mu", "delta_lower"):
            provenance[k] = "DERIVED: combinatorial class"
        for k in ("i", "R", "d1", "d2", "fb_residual", "sum_W", "W"):
            if k in values:
                provenance[k] = "DERIVED: measured on polyline"
        for k, quote in self.quotes.items():
            provenance[k] = f"PUBLISHED: {quote}"
        return {"name": self.name, "values": values, "provenance": provenance, "note": self.note, "pair": self.pair}


def _drawn(key: str) -> Callable[[], SampledCurve]:
    def build():
        from .drawer import draw

        return draw(curve_from_key(key))
    return build


KEY_1_1 = "1 1/-|0L"
KEY_1_1B = "1 1/-|0R"
KEY_1_2 = "1 1 2 2/-+|0L"
KEY_1_2B = "1 1 2 2/-+|0R"
KEY_2_2 = "1 1 2 2/--|1R"
KEY_2_2B = "1 1 2 2/--|0L"
KEY_2_2C = "1 1 2 2/--|0R"
KEY_I4 = "1 1 2 2 3 3 4 4/-+-+|0R"
KEY_OKEY = "1 1 2 2 3 3/---|0R"
KEY_OHNO = "1 1 2 3 4 2 5 5 3 4/--+--|2L"


def chain_word(n: int) -> tuple[int, ...]:
    """Visit order of the chain: along the top strand and back along the bottom."""
    return tuple(range(1, n + 1)) + tuple(range(n, 0, -1))


def chain_key(n: int) -> str:
    """Planar class of the chain with ``n`` crossings.

    In the chain every arc bounds the unbounded face, so the class is the
    realization of :func:`chain_word` with a face of degree ``2n`` as
    outer face.  Found combinatorially, independent of any drawing.
    """
    keys = set()
    for curve in all_chiralities(chain_word(n)):
        try:
            emb = build_embedding(curve)
        except NotSpherical:
            continue
        for f, orbit in enumerate(emb.faces):
            if len(orbit) == 2 * n:
                keys.add(canonical_form(emb.with_outer_face(f)).planar_key)
    if len(keys) != 1:
        raise ValueError(f"chain({n}) class is not unique: {sorted(keys)}")
    return keys.pop()


KEY_I4_SECOND = "1 1 2 2 3 3 4 4/---+|2L"

# Coefficients found by tools/search_fixtures.py with seed 7.
CURL_RHO = ((-0.077, 0.0, 0.007, -0.347), (-0.163, 0.0, 0.004, -0.188))
TYPE_1_2_RHO = ((0.023, -0.227, 0.0, -0.141), (0.854, -0.262, 0.0, 0.008))
TYPE_2_2_RHO = ((-0.379, -0.394, 0.0, -0.132), (-0.123, -0.43, 0.0, 0.146))
FIG_FB_TRIG = {
    "ax": [0.0, -0.606, -0.57, -0.07], "bx": [0.0, -0.359, 0.031, -0.16],
    "ay": [0.0, -0.362, -0.013, 0.245], "by": [0.0, -0.504, -0.155, -0.21],
}
TYPE_2_2B_TRIG = {
    "ax": [0.0, 0.155, -0.301, -0.037], "bx": [0.0, -0.168, 0.128, -0.192],
    "ay": [0.0, -0.209, 0.009, 0.233], "by": [0.0, 0.203, -0.475, -0.088],
}
TYPE_2_2C_TRIG = {
    "ax": [0.0, -0.346, -0.656], "bx": [0.0, -0.265, 0.445],
    "ay": [0.0, -0.586, -0.314], "by": [0.0, 0.079, 0.016],
}
OKEY_TRIG = {
    "ax": [0.0, 0.194, -0.649], "bx": [0.0, 0.427, 0.235],
    "ay": [0.0, -0.855, -0.124], "by": [0.0, 0.318, 0.753],
}

PAIR_SAMPLES = 1536


def _moved(curve: SampledCurve, angle: float, scale: float, shift) -> SampledCurve:
    c, s = math.cos(angle), math.sin(angle)
    return curve.transformed(scale * np.array([[c, -s], [s, c]]), shift)


def _convex(R, rho, samples=DEFAULT_SAMPLES):
    return lambda: convex_trig(R, rho[0], rho[1], samples)


def _convex_pair(R, rho):
    """A deformed copy: higher harmonics damped, resampled, moved."""
    cos_terms = [a * 0.9 ** k for k, a in enumerate(rho[0])]
    sin_terms = [b * 0.9 ** k for k, b in enumerate(rho[1])]

    def build():
        c = convex_trig(R, cos_terms, sin_terms, PAIR_SAMPLES)
        return _moved(c, 0.7, 1.3, (0.25, -0.4))
    return build


def _trig(spec, samples=DEFAULT_SAMPLES):
    return lambda: trig_curve(spec["ax"], spec["bx"], spec["ay"], spec["by"], samples)


def _trig_pair(spec):
    damped = {k: [a * 0.95 ** j for j, a in enumerate(v)] for k, v in spec.items()}

    def build():
        c = trig_curve(damped["ax"], damped["bx"], damped["ay"], damped["by"], PAIR_SAMPLES)
        return _moved(c, -1.1, 0.8, (1.0, 0.5))
    return build


_DELTA_QUOTE = "delta = 1, 2, 2, 3, 3 for types 1_1, 1_1b, 1_2, 2_2b, 2_2c"
_CHAIN_QUOTE = "can be drawn along a spiral with two inflections ... I = mu = 2"


def _registry() -> list[Fixture]:
    fx = [
        Fixture("ellipse", ellipse, "/|0L", note="simple closed curve"),
        Fixture("limacon", _convex(2, ((0.6,), ())), KEY_1_1,
                {"delta_lower": _DELTA_QUOTE}, "limacon with inner loop (type 1_1)", pair="curl"),
        Fixture("curl", _convex(2, CURL_RHO), KEY_1_1,
                {"delta_lower": _DELTA_QUOTE}, "type 1_1 drawn without inflections", pair="limacon"),
        Fixture("lemniscate", gerono, KEY_1_1B,
                {"mu": "the lemniscate has mu = 2", "delta_lower": _DELTA_QUOTE},
                "lemniscate of Gerono (type 1_1b)"),
    ]
    for n in range(1, 7):
        fx.append(Fixture(f"chain-{n}", (lambda n=n: chain_spiral(n)), chain_key(n),
                          {"mu": _CHAIN_QUOTE, "i": _CHAIN_QUOTE},
                          f"chain with {n} crossings bent along a spiral"))
    fx.append(Fixture("chain-plain-3", lambda: chain_plain(3), chain_key(3),
                      {"mu": _CHAIN_QUOTE}, "the straight chain (cos t, sin t cos 3t), i = 2n"))
    fig1 = "#=2, i=2, d1=4 and d2=1"
    fx += [
        Fixture("fig-fb", _trig(FIG_FB_TRIG), KEY_1_2B,
                {"m": fig1, "i": fig1, "d1": fig1, "d2": fig1},
                "type 1_2b; d = 5 also bounds delta from above"),
        Fixture("type-1_2", _convex(3, TYPE_1_2_RHO), KEY_1_2,
                {"delta_lower": _DELTA_QUOTE}, "locally convex, R = 3", pair="type-1_2-pair"),
        Fixture("type-1_2-pair", _convex_pair(3, TYPE_1_2_RHO), KEY_1_2,
                {"delta_lower": _DELTA_QUOTE}, "deformed and resampled type-1_2", pair="type-1_2"),
        Fixture("type-2_2", _convex(3, TYPE_2_2_RHO), KEY_2_2,
                note="locally convex, R = 3", pair="type-2_2-pair"),
        Fixture("type-2_2-pair", _convex_pair(3, TYPE_2_2_RHO), KEY_2_2,
                note="deformed and resampled type-2_2", pair="type-2_2"),
        Fixture("type-2_2b", _trig(TYPE_2_2B_TRIG), KEY_2_2B,
                {"delta_lower": _DELTA_QUOTE}, "mu = 2 class of the spherical type 2_2"),
        Fixture("type-2_2c", _trig(TYPE_2_2C_TRIG), KEY_2_2C,
                {"delta_lower": _DELTA_QUOTE}, "the other mu = 2 class of the spherical type 2_2"),
        Fixture("okey", _trig(OKEY_TRIG), KEY_OKEY,
                {"i": "A curve satisfying i = 0", "mu": "negative polygons which are not admissible"},
                "three curls; its negative triangle has three convex corners", pair="okey-pair"),
        Fixture("okey-pair", _trig_pair(OKEY_TRIG), KEY_OKEY,
                {"i": "A curve satisfying i = 0"}, "deformed and resampled okey", pair="okey"),
        Fixture("curl-pair", _convex_pair(2, CURL_RHO), KEY_1_1,
                note="deformed and resampled curl", pair="curl"),
        Fixture("fig-i4", _drawn(KEY_I4), KEY_I4,
                {"m": "I = mu = 4", "mu": "I = mu = 4"},
                "four curls alternating in and out; automatic drawing"),
        Fixture("fig-i4-second", _drawn(KEY_I4_SECOND), KEY_I4_SECOND,
                note="limacon whose inner loop carries three curls; a second m = 4 class with mu = 4"),
        Fixture("fig-ohno", _drawn(KEY_OHNO), KEY_OHNO,
                {"m": "I = mu = 4 and # = 5", "mu": "I = mu = 4 and # = 5"},
                "automatic drawing; it has more inflections than the hand-drawn minimum of 4"),
    ]
    return fx


_FIXTURES: Optional[dict] = None


def fixtures() -> dict[str, Fixture]:
    global _FIXTURES
    if _FIXTURES is None:
        _FIXTURES = {f.name: f for f in _registry()}
    return _FIXTURES


def write_csv(curve: SampledCurve, path) -> None:
    with open(path, "w") as fh:
        fh.write("x,y\n" + curve.to_csv())


def emit_fixtures(out_dir, names: Optional[Sequence[str]] = None) -> list[str]:
    """Write ``<name>.csv`` and ``<name>.json`` (expected values) per fixture."""
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for name, fx in fixtures().items():
        if names is not None and name not in names:
            continue
        curve = fx.build()
        write_csv(curve, os.path.join(out_dir, f"{name}.csv"))
        data = fx.expected(curve)
        data["key"] = fx.key
        if curve.source:
            data["source"] = curve.source
        with open(os.path.join(out_dir, f"{name}.json"), "w") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)
            fh.write("\n")
        written.append(name)
    return written


def random_trig_curve(rng: np.random.Generator, samples: int = DEFAULT_SAMPLES) -> SampledCurve:
    """Trig polynomial of degree 2..4 with decaying random coefficients."""
    deg = int(rng.integers(2, 5))
    scale = 1.0 / (1.0 + np.arange(deg + 1))
    coef = []
    for _ in range(4):
        a = np.round(rng.normal(0.0, 1.0, deg + 1) * scale, 4)
        a[0] = 0.0
        coef.append(a.tolist())
    return trig_curve(*coef, samples=samples)


def random_generic_curves(n: int, seed: int, samples: int = DEFAULT_SAMPLES, max_tries: int = 50):
    """``n`` seeded random trig curves that pass the genericity check.

    Yields ``(curve, report)``; curves rejected by the check are skipped.
    """
    from .errors import Degenerate

    rng = np.random.default_rng(seed)
    made = tries = 0
    while made < n:
        tries += 1
        if tries > max_tries * n:
            raise RuntimeError(f"only {made} generic curves in {tries} tries")
        curve = random_trig_curve(rng, samples)
        try:
            validate_genericity(curve)
        except Degenerate:
            continue
        yield curve
        made += 1


def emit_random_curves(out_dir, n: int, seed: int) -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    names = []
    for k, curve in enumerate(random_generic_curves(n, seed)):
        name = f"random-{seed}-{k:03d}"
        write_csv(curve, os.path.join(out_dir, f"{name}.csv"))
        with open(os.path.join(out_dir, f"{name}.json"), "w") as fh:
            json.dump({"name": name, "seed": seed, "source": curve.source}, fh, indent=2, sort_keys=True)
            fh.write("\n")
        names.append(name)
    return names
