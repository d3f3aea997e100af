import pytest

from inflecta.census import (
    UNORIENTED,
    analyze_planar,
    census_report,
    enumerate_words,
    planar_curves,
    planar_types,
    read_catalog,
    spherical_types,
    write_catalog,
)
from inflecta.curve import curve_from_key

# Arnold's table of unoriented plane curves with m double points
ARNOLD_PLANE = [1, 2, 5, 20, 82, 435]


def test_small_counts():
    assert spherical_types(0) == ["/"]
    assert spherical_types(1) == ["1 1/-"]
    assert len(spherical_types(2)) == 2
    assert len(planar_types(1)) == 2


def test_m2_eight_classes(census3):
    rows = census3.summary_rows(UNORIENTED)
    assert sum(r["planar"] for r in rows[:3]) == 8
    hist = {}
    for m in range(3):
        for k, v in census3.mu_histogram(m, UNORIENTED).items():
            hist[k] = hist.get(k, 0) + v
    assert hist == {0: 4, 2: 4}


def test_unoriented_counts_match_arnold(census5):
    assert [census5.planar_count(m, UNORIENTED) for m in range(6)] == ARNOLD_PLANE


def test_conventions_related(census5):
    for m in range(6):
        oriented = census5.by_m(m)
        chiral = sum(1 for e in oriented if not e.achiral)
        assert chiral % 2 == 0
        assert census5.planar_count(m, UNORIENTED) == len(oriented) - chiral // 2
    with pytest.raises(ValueError):
        census5.by_m(2, "sideways")


def test_mirror_keeps_mu(census5):
    by_key = {e.planar_key: e for e in census5.entries}
    for e in census5.entries:
        assert by_key[e.mirror_key].mu == e.mu
        assert by_key[e.mirror_key].mirror_key == e.planar_key


def test_words_are_canonical():
    words = enumerate_words(3)
    assert len(set(words)) == len(words)
    for w in words:
        assert sorted(w) == [1, 1, 2, 2, 3, 3]


def test_planar_curves_cover_faces():
    for key in spherical_types(3):
        curves = planar_curves(key)
        keys = {analyze_planar(c).planar_key for c in curves}
        assert len(keys) == len(curves)
        assert len(curves) <= curve_from_key(key).m + 2


def test_deterministic(census3):
    again = census_report(3)
    assert [e.to_json() for e in again.entries] == [e.to_json() for e in census3.entries]
    assert again.summary_text() == census3.summary_text()


def test_catalog_round_trip(census3, tmp_path):
    path = tmp_path / "catalog.jsonl"
    write_catalog(census3.entries, path)
    assert read_catalog(path) == census3.entries


def test_summary_outputs(census3):
    text = census3.summary_text()
    assert "up to reflection" in text and "max mu/2m = 1" in text
    csv = census3.summary_csv().splitlines()
    assert csv[0].startswith("convention,m,")
    assert len(csv) == 1 + 2 * 4


def test_ratio_attainers(census5):
    assert census5.max_mu_ratio() == 1
    assert census5.ratio_attainers() == ["1 1/-|0R"]


def test_experimental_flag():
    assert census_report(2).experimental is False
