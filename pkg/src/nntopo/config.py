"""Pipeline configuration: one serializable record of every tunable knob."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass

from .vectorize import Grid


@dataclass
class PipelineConfig:
    zeta: float = 1e-6
    eta: float = 0.01
    infinity_cap: float = 1.0
    max_degree: int = 3
    grid_min: float = 0.0
    grid_max: float = 1.0
    grid_resolution: int = 100
    sigma: float = 0.1
    landscape_layers: int = 10
    silhouette_power: float = 1.0
    measure: str = "heat"
    superlevel: bool = False
    seed: int = 0
    bias_mode: str = "per-layer"
    degree_weights: tuple[float, ...] = (1.0, 1.0, 1.0, 1.0)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if not (0.0 < self.zeta < 1.0):
            raise ValueError(f"zeta must be in (0, 1), got {self.zeta}")
        if self.eta < 0:
            raise ValueError(f"eta must be >= 0, got {self.eta}")
        if self.infinity_cap <= 0:
            raise ValueError(f"infinity_cap must be > 0, got {self.infinity_cap}")
        if not (0 <= self.max_degree <= 3):
            raise ValueError(f"max_degree must be in [0, 3], got {self.max_degree}")
        if not self.grid_min < self.grid_max:
            raise ValueError("grid_min must be below grid_max")
        if self.grid_resolution < 2:
            raise ValueError("grid_resolution must be >= 2")
        if self.sigma <= 0:
            raise ValueError(f"sigma must be > 0, got {self.sigma}")
        if self.landscape_layers < 1:
            raise ValueError("landscape_layers must be >= 1")
        if self.silhouette_power <= 0:
            raise ValueError("silhouette_power must be > 0")
        if self.measure not in ("heat", "silhouette", "landscape"):
            raise ValueError(f"unknown measure {self.measure!r}")
        if self.bias_mode not in ("per-layer", "per-neuron"):
            raise ValueError(f"unknown bias_mode {self.bias_mode!r}")
        if len(self.degree_weights) < self.max_degree + 1:
            raise ValueError("degree_weights must cover degrees 0..max_degree")
        if any(w < 0 for w in self.degree_weights):
            raise ValueError("degree_weights must be nonnegative")

    @property
    def grid(self) -> Grid:
        return Grid(self.grid_min, self.grid_max, self.grid_resolution)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["degree_weights"] = list(self.degree_weights)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "PipelineConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        if "degree_weights" in d:
            d = dict(d, degree_weights=tuple(d["degree_weights"]))
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "PipelineConfig":
        return cls.from_dict(json.loads(text))

    def write(self, path: str) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_json())

    @classmethod
    def load(cls, path: str) -> "PipelineConfig":
        with open(path) as fh:
            return cls.from_json(fh.read())
