import json
from pathlib import Path

import pytest

from hypsector.cli import main
from hypsector.orbit_io import load_ball

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def test_decompose(capsys):
    assert main(["decompose", "1", "4", "0", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["norm_sq"] == 18 and not out["degenerate"]


def test_enumerate_and_save(tmp_path, capsys):
    dest = tmp_path / "b.orb"
    assert main(["enumerate", "--c", "4", "-T", "300", "--save", str(dest)]) == 0
    info = json.loads(capsys.readouterr().out)
    assert info["complete"] and len(load_ball(dest)) == info["count"]


def test_sectors_to_stdout(capsys):
    assert main(["sectors", "-T", "200", "--harmonic", "1", "0"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "n,k,T,re,im,raw_count" and len(lines) == 3


def test_affine_to_file(tmp_path):
    out = tmp_path / "aff.csv"
    assert main(["affine", "-T", "1000", "--K", "10", "20", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 3


def test_ps(tmp_path, capsys):
    assert main(["ps", "-T", "1000", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "mu.csv").exists()


def test_bad_config_exit_code(tmp_path):
    p = tmp_path / "bad.toml"
    p.write_text("[group]\nc = 1\n")
    assert main(["report", "--config", str(p), "--out", str(tmp_path / "o")]) == 2


def test_non_free_exit_code(tmp_path):
    p = tmp_path / "nf.toml"
    p.write_text('[group]\nlabel = "nf"\ngenerators = [[1, 1, 0, 1], [1, 2, 0, 1]]\n'
                 '[orbit]\nT_max = 50.0\ngrid_decades = [0.5, 1.6]\n')
    assert main(["report", "--config", str(p), "--out", str(tmp_path / "o")]) == 3


def test_smoke_report_is_deterministic(tmp_path):
    cfg = str(CONFIGS / "gamma4-smoke.toml")
    assert main(["report", "--config", cfg, "--out", str(tmp_path / "a")]) == 0
    assert main(["report", "--config", cfg, "--out", str(tmp_path / "b")]) == 0
    a = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert a == sorted(p.name for p in (tmp_path / "b").iterdir())
    for name in a:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes(), name
    summary = json.loads((tmp_path / "a" / "summary.json").read_text())
    assert all(x["passed"] for x in summary["assertions"])
