"""The shipped fixtures re-analyzed from their CSV files."""

import json

import pytest

from inflecta.cli import main
from inflecta.fixtures import emit_fixtures, fixtures
from inflecta.geometry import full_report, read_curve

from conftest import FIXTURE_DIR, load_expected, shipped_fixtures

INTEGER_FIELDS = ("m", "i", "R", "d1", "d2", "fb_residual", "mu", "delta_lower")


def test_registry_matches_shipped_files():
    assert sorted(fixtures()) == shipped_fixtures()


@pytest.mark.parametrize("name", shipped_fixtures())
def test_csv_reproduces_expected(name):
    exp = load_expected(name)
    report = full_report(read_curve(FIXTURE_DIR / f"{name}.csv"))
    values = exp["values"]
    for k in INTEGER_FIELDS:
        assert getattr(report, k) == values[k], k
    assert report.planar_key == values["planar_key"] == exp["key"]
    assert report.spherical_key == values["spherical_key"]
    if report.i == 0:
        assert report.sum_W == values["sum_W"]
        assert sorted(c.W for c in report.crossings) == values["W"]
    for field, tag in exp["provenance"].items():
        assert tag.startswith(("PUBLISHED", "DERIVED"))


@pytest.mark.parametrize("name", shipped_fixtures())
def test_reversed_fixture_same_class(name):
    curve = read_curve(FIXTURE_DIR / f"{name}.csv")
    assert full_report(curve.reversed()).planar_key == load_expected(name)["key"]


def test_w_stable_across_pairs():
    for name in shipped_fixtures():
        exp = load_expected(name)
        partner = exp.get("pair")
        if not partner or exp["values"]["i"] != 0:
            continue
        other = load_expected(partner)
        assert other["key"] == exp["key"]
        assert other["values"]["W"] == exp["values"]["W"]
        assert other["values"]["d2"] == exp["values"]["d2"]


def test_paper_tags_agree():
    fb = load_expected("fig-fb")["values"]
    assert (fb["m"], fb["i"], fb["d1"], fb["d2"]) == (2, 2, 4, 1)
    okey = load_expected("okey")["values"]
    assert okey["mu"] == 0 and okey["i"] == 0
    i4 = load_expected("fig-i4")["values"]
    assert (i4["m"], i4["mu"]) == (4, 4)
    assert load_expected("chain-3")["values"]["mu"] == 2


def test_emit_is_reproducible(tmp_path):
    names = ["lemniscate", "fig-fb", "okey"]
    emit_fixtures(tmp_path, names)
    for name in names:
        assert (tmp_path / f"{name}.csv").read_text() == (FIXTURE_DIR / f"{name}.csv").read_text()
        assert json.loads((tmp_path / f"{name}.json").read_text()) == load_expected(name)


def test_cli_analyze_round_trip(capsys):
    assert main(["analyze", "--csv", str(FIXTURE_DIR / "fig-fb.csv")]) == 0
    data = json.loads(capsys.readouterr().out)
    exp = load_expected("fig-fb")["values"]
    for k in INTEGER_FIELDS:
        assert data[k] == exp[k]
