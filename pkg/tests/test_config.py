from pathlib import Path

import pytest

from hypsector.config import ConfigError, config_from_dict, load_config

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


@pytest.mark.parametrize("name", ["gamma4-smoke.toml", "gamma4-full.toml"])
def test_shipped_configs_load(name):
    cfg = load_config(CONFIGS / name)
    assert cfg.group.presentation().label == "gamma4"
    assert cfg.orbit.grid()[-1] <= cfg.orbit.T_max


def test_minimal_dict():
    cfg = config_from_dict({"group": {"c": 3, "label": "gamma3"}})
    assert cfg.orbit.T_max == 1e3 and cfg.affine == []


def test_custom_generators():
    cfg = config_from_dict({"group": {"label": "g", "generators": [[1, 5, 0, 1], [1, 0, 5, 1]]}})
    assert cfg.group.presentation().rank == 2


@pytest.mark.parametrize("bad", [
    {},
    {"group": {"c": 4}, "nonsense": 1},
    {"group": {"c": 4, "colour": "red"}},
    {"group": {"c": 1}},
    {"group": {"c": 4}, "orbit": {"T_max": 100.0, "grid_decades": [1.0, 3.0]}},
    {"group": {"c": 4}, "orbit": {"T_grid": [10.0, 5.0]}},
    {"group": {"c": 4}, "congruence": {"moduli": [0]}},
    {"group": {"c": 4}, "affine": [{"mode": "sideways"}]},
    {"group": {"c": 4}, "ps": {"s_offset": "soon"}},
])
def test_invalid(bad):
    with pytest.raises(ConfigError):
        config_from_dict(bad)


def test_bad_toml(tmp_path):
    p = tmp_path / "x.toml"
    p.write_text("[group\nc = 4")
    with pytest.raises(ConfigError, match="TOML"):
        load_config(p)
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.toml")
