import pytest

from nntopo.config import PipelineConfig
from nntopo.vectorize import Grid


def test_round_trip_stable():
    cfg = PipelineConfig(zeta=1e-5, eta=0.02, measure="silhouette",
                         superlevel=True, degree_weights=(1.0, 0.5, 0.0, 0.0))
    text = cfg.to_json()
    again = PipelineConfig.from_json(text)
    assert again == cfg
    assert again.to_json() == text


def test_defaults_valid():
    cfg = PipelineConfig()
    assert cfg.zeta == 1e-6
    assert cfg.eta == 0.01
    assert cfg.infinity_cap == 1.0
    assert cfg.grid == Grid(0.0, 1.0, 100)


@pytest.mark.parametrize("kwargs", [
    {"zeta": 0.0},
    {"zeta": 1.0},
    {"eta": -0.1},
    {"max_degree": 4},
    {"grid_resolution": 1},
    {"grid_min": 1.0, "grid_max": 0.0},
    {"sigma": 0.0},
    {"landscape_layers": 0},
    {"silhouette_power": 0.0},
    {"measure": "barcode"},
    {"bias_mode": "shared"},
    {"degree_weights": (1.0,)},
    {"degree_weights": (1.0, 1.0, 1.0, -1.0)},
])
def test_invalid_parameters_rejected(kwargs):
    with pytest.raises(ValueError):
        PipelineConfig(**kwargs)


def test_unknown_keys_rejected():
    with pytest.raises(ValueError, match="unknown config keys"):
        PipelineConfig.from_dict({"zeta": 1e-6, "apex": 3})


def test_file_round_trip(tmp_path):
    cfg = PipelineConfig(measure="landscape", landscape_layers=4)
    path = str(tmp_path / "cfg.json")
    cfg.write(path)
    assert PipelineConfig.load(path) == cfg
