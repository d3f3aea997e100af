import json

import pytest

from inflecta.cli import main
from inflecta.svg import render_svg
from inflecta.fixtures import gerono
from inflecta.geometry import full_report

from conftest import FIXTURE_DIR


def test_mu_lemniscate(capsys):
    assert main(["mu", "--curve", "1 1 / + / outer=0:L"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["mu"] == 2
    assert data["polygon_stats"]["shell"]["positive"] == 1


def test_polygons(capsys):
    assert main(["polygons", "--curve", "1 1 / -"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2 and all(json.loads(x)["kind"] == "shell" for x in lines)


def test_census(capsys, tmp_path):
    out = tmp_path / "cat.jsonl"
    csv = tmp_path / "summary.csv"
    assert main(["census", "--max-m", "2", "--out", str(out), "--csv", str(csv)]) == 0
    text = capsys.readouterr().out
    assert len(out.read_text().splitlines()) == 8
    assert "up to reflection" in text
    assert csv.read_text().startswith("convention,")


def test_analyze_ellipse(capsys, tmp_path):
    svg = tmp_path / "e.svg"
    assert main(["analyze", "--csv", str(FIXTURE_DIR / "ellipse.csv"), "--svg", str(svg)]) == 0
    data = json.loads(capsys.readouterr().out)
    assert (data["m"], data["i"], data["d1"], data["d2"]) == (0, 0, 0, 0)
    assert svg.read_text().startswith("<svg")


def test_analyze_trig_json(capsys, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"trig": {"ax": [0, 1], "bx": [0], "ay": [0], "by": [0, 0, 0.5]}}))
    assert main(["analyze", "--json", str(path), "--samples", "600"]) == 0
    assert json.loads(capsys.readouterr().out)["m"] == 1


def test_domain_errors_exit_1(capsys, tmp_path):
    assert main(["mu", "--curve", "1 2 1 / +"]) == 1
    assert main(["mu", "--curve", "1 2 3 1 2 3 / +++"]) == 1
    bad = tmp_path / "bad.csv"
    bad.write_text("0,0\n1,0\n1,0\n0,1\n-1,1\n-1,0\n-1,-1\n0,-1\n")
    assert main(["analyze", "--csv", str(bad)]) == 1
    assert main(["analyze", "--csv", str(tmp_path / "missing.csv")]) == 1
    assert "Degenerate" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [["bogus"], ["mu"], ["census", "--max-m", "x"], ["analyze"]])
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_fixtures_command(tmp_path, capsys, monkeypatch):
    import inflecta.fixtures as fx

    # the full set is checked in test_fixtures; only the random part here
    monkeypatch.setattr(fx, "emit_fixtures", lambda out: [])
    assert main(["--seed", "3", "fixtures", "--out", str(tmp_path), "--random", "2"]) == 0
    out = capsys.readouterr().out.split()
    assert out == ["random-3-000", "random-3-001"]
    assert (tmp_path / "random-3-001.csv").exists()


def test_svg_has_marks():
    curve = gerono()
    svg = render_svg(curve, full_report(curve))
    assert svg.count("<circle") == 1
    assert svg.count('fill="#2a9d3a"') == 2
    assert "mu=2" in svg
