import json

import pytest

from caustics import cli


@pytest.fixture()
def scene_path(tmp_path):
    doc = {
        "curve": {"kind": "circle", "params": {"radius": 1.0}},
        "radiants": [{"kind": "at_infinity", "direction_deg": 180.0}],
        "grid": {"n": 64},
    }
    path = tmp_path / "scene.json"
    path.write_text(json.dumps(doc))
    return path


def test_compute_data(scene_path, tmp_path, capsys):
    out = tmp_path / "payload.json"
    assert cli.main(["compute", "--scene", str(scene_path), "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert "caustic" in payload["layers"]
    assert payload["grid"]["n"] == 64


def test_compute_grid_override(scene_path, tmp_path):
    out = tmp_path / "payload.json"
    assert (
        cli.main(
            ["compute", "--scene", str(scene_path), "--grid", "128", "--out", str(out)]
        )
        == 0
    )
    assert json.loads(out.read_text())["grid"]["n"] == 128


def test_compute_svg(scene_path, tmp_path):
    out = tmp_path / "scene.svg"
    assert (
        cli.main(
            ["compute", "--scene", str(scene_path), "--format", "svg", "--out", str(out)]
        )
        == 0
    )
    svg = out.read_text()
    assert svg.startswith("<?xml")
    assert 'id="caustic"' in svg


def test_render_subcommand(scene_path, tmp_path):
    out = tmp_path / "scene.svg"
    assert cli.main(["render", "--scene", str(scene_path), "--out", str(out)]) == 0
    assert 'id="alpha"' in out.read_text()


def test_layer_subcommands(scene_path, tmp_path):
    for name, key in (("beta", "beta"), ("roll", "rolling_frames"), ("cusps", "cusps")):
        out = tmp_path / f"{name}.json"
        assert cli.main([name, "--scene", str(scene_path), "--out", str(out)]) == 0
        data = json.loads(out.read_text())
        assert key in data and data[key] is not None
    cusps = json.loads((tmp_path / "cusps.json").read_text())["cusps"]
    assert len(cusps) == 2  # the coffee-cup pair
    rolls = json.loads((tmp_path / "roll.json").read_text())["rolling_frames"]
    assert all(abs(f["R"] - 0.25) < 1e-12 for f in rolls)


def test_verify_subset(capsys):
    assert cli.main(["verify", "--checks", "mirror_equation_numbers"]) == 0
    out = capsys.readouterr().out
    assert "PASS mirror_equation_numbers" in out
    assert "all passed" in out


def test_verify_unknown_check(capsys):
    assert cli.main(["verify", "--checks", "bogus"]) == 2
    assert "unknown checks" in capsys.readouterr().err


def test_bad_scene_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"curve": {"kind": "circle"}, "radiants": []}))
    assert cli.main(["compute", "--scene", str(path)]) == 2
    assert "radiants" in capsys.readouterr().err
