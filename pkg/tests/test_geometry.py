import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from inflecta.curve import canonical_form, build_embedding
from inflecta.errors import Degenerate
from inflecta.fixtures import (
    FIG_FB_TRIG,
    KEY_1_1,
    KEY_1_1B,
    KEY_1_2B,
    convex_trig,
    ellipse,
    gerono,
    random_generic_curves,
    trig_curve,
)
from inflecta.geometry import (
    SampledCurve,
    double_tangents,
    extract_code,
    fb_residual,
    find_crossings,
    full_report,
    inflection_count,
    parse_curve_text,
    rotation_index,
    validate_genericity,
    winding_data,
)

from conftest import random_seed


def circle(n=256):
    t = 2 * math.pi * np.arange(n) / n
    return SampledCurve(np.column_stack([np.cos(t), np.sin(t)]))


def limacon():
    return convex_trig(2, [0.6])


def fig_fb():
    return trig_curve(FIG_FB_TRIG["ax"], FIG_FB_TRIG["bx"], FIG_FB_TRIG["ay"], FIG_FB_TRIG["by"])


def rot(angle, scale=1.0):
    c, s = math.cos(angle), math.sin(angle)
    return scale * np.array([[c, -s], [s, c]])


def test_genericity():
    assert validate_genericity(circle()).ok
    pts = circle().points
    with pytest.raises(Degenerate):
        validate_genericity(SampledCurve(np.vstack([pts[:10], pts[9:]])))
    # Gerono squashed until its two branches meet at about 2e-4 rad
    flat = gerono().transformed(np.diag([1.0, 1e-4]))
    report = validate_genericity(flat, raise_on_fail=False)
    assert not report.ok and "tangential" in report.issues[0][0]
    with pytest.raises(Degenerate):
        report.raise_if_failed()


def test_too_few_points():
    with pytest.raises(Degenerate):
        SampledCurve(np.zeros((4, 2)))


def test_crossings():
    assert find_crossings(ellipse()) == []
    cs = find_crossings(gerono())
    assert len(cs) == 1 and np.allclose(cs[0].location, (0, 0), atol=1e-4)
    assert len(find_crossings(fig_fb())) == 2


def test_inflections():
    assert inflection_count(ellipse()) == 0
    assert inflection_count(gerono()) == 2
    assert inflection_count(fig_fb()) == 2


def test_rotation_index():
    assert rotation_index(circle()) == 1
    assert rotation_index(gerono()) == 0
    assert rotation_index(limacon()) == 2
    assert rotation_index(circle().reversed()) == -1


def test_limacon_report():
    r = full_report(limacon())
    assert (r.m, r.i, r.R, r.d1, r.d2, r.mu, r.delta_lower) == (1, 0, 2, 1, 0, 0, 1)
    c = r.crossings[0]
    assert (c.n1, c.n2, c.W) == (1, 1, 0)
    assert 0 < c.alpha < math.pi
    assert r.planar_key == KEY_1_1


def test_double_tangents():
    assert (double_tangents(ellipse()).d1, double_tangents(ellipse()).d2) == (0, 0)
    dt = double_tangents(fig_fb())
    assert (dt.d1, dt.d2) == (4, 1)
    assert len(dt.lines) == 5


def test_fb_residual_values():
    assert fb_residual(4, 1, 2, 2) == 0
    assert fb_residual(0, 0, 0, 0) == 0
    r = full_report(gerono())
    assert r.d1 - r.d2 == 2 and r.fb_residual == 0


def test_extract_code():
    assert extract_code(ellipse()).m == 0
    emb = extract_code(gerono())
    assert emb.curve.word == (1, 1)
    assert canonical_form(emb).planar_key == KEY_1_1B
    assert full_report(gerono()).mu == 2
    assert full_report(fig_fb()).planar_key == KEY_1_2B


def test_winding_sum_rule():
    for curve in (limacon(), fig_fb(), convex_trig(3, [0.023, -0.227, 0.0, -0.141], [0.854, -0.262, 0.0, 0.008])):
        r = full_report(curve)
        for c in r.crossings:
            assert c.n1 + c.n2 == abs(r.R)


def test_trig_json_input():
    text = '{"trig": {"ax": [0, 2], "bx": [0], "ay": [0], "by": [0, 1], "samples": 300}}'
    c = parse_curve_text(text)
    assert c.n == 300 and full_report(c).m == 0
    csv = "x,y\n" + circle(64).to_csv()
    assert parse_curve_text(csv).n == 64


def test_report_json_fields():
    data = full_report(fig_fb()).to_json()
    for k in ("m", "i", "R", "d1", "d2", "fb_residual", "planar_key", "mu", "delta_lower", "crossings", "bitangents"):
        assert k in data


@settings(max_examples=25, deadline=None)
@given(
    st.sampled_from(["gerono", "limacon", "fig_fb"]),
    st.floats(0, 2 * math.pi),
    st.floats(0.2, 5.0),
    st.tuples(st.floats(-3, 3), st.floats(-3, 3)),
)
def test_rigid_motion_invariance(name, angle, scale, shift):
    curve = {"gerono": gerono, "limacon": limacon, "fig_fb": fig_fb}[name]()
    base = full_report(curve)
    moved = full_report(curve.transformed(rot(angle, scale), shift))
    assert (moved.m, moved.i, moved.R, moved.d1, moved.d2, moved.planar_key) == (
        base.m, base.i, base.R, base.d1, base.d2, base.planar_key)


@pytest.mark.parametrize("name", ["gerono", "limacon", "fig_fb"])
def test_reversal_and_reflection(name):
    curve = {"gerono": gerono, "limacon": limacon, "fig_fb": fig_fb}[name]()
    base = full_report(curve)
    rev = full_report(curve.reversed())
    assert rev.planar_key == base.planar_key and rev.R == -base.R and rev.i == base.i
    refl = curve.transformed(np.diag([1.0, -1.0]))
    assert rotation_index(refl) == -rotation_index(curve)
    mirror = full_report(refl)
    emb = build_embedding(extract_code(curve).curve.mirrored())
    assert mirror.planar_key == canonical_form(emb).planar_key
    assert (mirror.i, mirror.d1, mirror.d2, mirror.mu) == (base.i, base.d1, base.d2, base.mu)


def test_random_curves_fb_and_mu_bound():
    n = 0
    for curve in random_generic_curves(30, random_seed() + 1, samples=768):
        r = full_report(curve)
        assert r.fb_residual == 0
        assert r.i >= r.mu
        assert r.i % 2 == 0
        for c in r.crossings:
            assert c.n1 + c.n2 == abs(r.R)
        n += 1
    assert n == 30
