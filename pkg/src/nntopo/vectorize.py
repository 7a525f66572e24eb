"""Fixed-grid vectorizations of persistence diagrams.

Three flavors: persistence landscapes (k-th largest tent functions),
power-weighted silhouettes (normalized weighted tent averages), and heat
images (Gaussian diffusion from diagram points minus their diagonal
mirrors, which vanishes on the diagonal and is antisymmetric under
coordinate swap).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .diagrams import CleanDiagram


@dataclass(frozen=True)
class Grid:
    """Uniform sampling grid on [t_min, t_max]."""

    t_min: float = 0.0
    t_max: float = 1.0
    resolution: int = 100

    def __post_init__(self):
        if not self.t_min < self.t_max:
            raise ValueError(f"grid needs t_min < t_max, got [{self.t_min}, {self.t_max}]")
        if self.resolution < 2:
            raise ValueError("grid resolution must be >= 2")

    def points(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.resolution)

    @property
    def step(self) -> float:
        return (self.t_max - self.t_min) / (self.resolution - 1)


@dataclass
class LandscapeVec:
    grid: Grid
    layers: np.ndarray  # (k_layers, resolution), row k is the k-th layer


@dataclass
class SilhouetteVec:
    grid: Grid
    power: float
    values: np.ndarray  # (resolution,)


@dataclass
class HeatImage:
    grid: Grid
    sigma: float
    values: np.ndarray  # (resolution, resolution); [i, j] is u(points[i], points[j])


def _interval_array(intervals) -> np.ndarray:
    arr = np.asarray(intervals, dtype=float)
    if arr.size == 0:
        return np.empty((0, 2))
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("intervals must be an (n, 2) array of (birth, death)")
    # canonical order so float accumulation does not depend on input order
    return arr[np.lexsort((arr[:, 1], arr[:, 0]))]


def _tents(intervals: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Tent functions: rows are max(0, min(t - birth, death - t))."""
    if len(intervals) == 0:
        return np.zeros((0, len(t)))
    b = intervals[:, 0:1]
    d = intervals[:, 1:2]
    return np.maximum(0.0, np.minimum(t[None, :] - b, d - t[None, :]))


def landscape(intervals, k_layers: int, grid: Grid) -> LandscapeVec:
    """Persistence landscape: layer k samples the k-th largest tent value.

    Missing layers (fewer than k intervals covering t) are zero.
    """
    if k_layers < 1:
        raise ValueError("k_layers must be >= 1")
    arr = _interval_array(intervals)
    t = grid.points()
    tents = _tents(arr, t)
    if len(arr) == 0:
        return LandscapeVec(grid=grid, layers=np.zeros((k_layers, grid.resolution)))
    ordered = -np.sort(-tents, axis=0)  # descending per column
    layers = np.zeros((k_layers, grid.resolution))
    take = min(k_layers, ordered.shape[0])
    layers[:take] = ordered[:take]
    return LandscapeVec(grid=grid, layers=layers)


def landscape_norm(v: LandscapeVec, p: float = 2.0) -> float:
    """p-norm of the landscape: (sum_k ||layer_k||_p^p)^(1/p), trapezoidal."""
    if p < 1:
        raise ValueError("p must be >= 1")
    t = v.grid.points()
    total = sum(np.trapezoid(np.abs(layer) ** p, t) for layer in v.layers)
    return float(total ** (1.0 / p))


def landscape_distance(v1: LandscapeVec, v2: LandscapeVec) -> float:
    """L2 distance between landscapes: (sum_k int |l_k - m_k|^2)^(1/2)."""
    if v1.grid != v2.grid:
        raise ValueError("landscape grids differ")
    if v1.layers.shape[0] != v2.layers.shape[0]:
        raise ValueError("landscape layer counts differ")
    t = v1.grid.points()
    total = sum(
        np.trapezoid((a - b) ** 2, t) for a, b in zip(v1.layers, v2.layers)
    )
    return float(math.sqrt(total))


def silhouette(intervals, power: float, grid: Grid) -> SilhouetteVec:
    """Weighted silhouette with weights |death - birth|^power.

    The empty diagram gives the zero function.
    """
    if power <= 0:
        raise ValueError("power must be > 0")
    arr = _interval_array(intervals)
    t = grid.points()
    if len(arr) == 0:
        return SilhouetteVec(grid=grid, power=power, values=np.zeros(grid.resolution))
    weights = np.abs(arr[:, 1] - arr[:, 0]) ** power
    total = weights.sum()
    if total == 0.0:
        return SilhouetteVec(grid=grid, power=power, values=np.zeros(grid.resolution))
    values = (weights[:, None] * _tents(arr, t)).sum(axis=0) / total
    return SilhouetteVec(grid=grid, power=power, values=values)


def heat(intervals, sigma: float, grid: Grid) -> HeatImage:
    """Heat vectorization at diffusion time t = sigma^2 / 2.

    Closed form: each diagram point contributes a Gaussian minus the
    Gaussian of its mirror across the diagonal, i.e.
    u(x) = sum_p G_t(x - p) - G_t(x - p_mirror) with
    G_t(z) = exp(-|z|^2 / 4t) / (4 pi t). The image is exactly zero on the
    diagonal and changes sign under coordinate swap.
    """
    if sigma <= 0:
        raise ValueError("sigma must be > 0")
    arr = _interval_array(intervals)
    pts = grid.points()
    if len(arr) == 0:
        return HeatImage(grid=grid, sigma=sigma, values=np.zeros((grid.resolution, grid.resolution)))
    t = sigma * sigma / 2.0
    births, deaths = arr[:, 0], arr[:, 1]
    # separable Gaussians: eb[i, p] = exp(-(pts[i] - birth_p)^2 / 4t)
    eb = np.exp(-((pts[:, None] - births[None, :]) ** 2) / (4.0 * t))
    ed = np.exp(-((pts[:, None] - deaths[None, :]) ** 2) / (4.0 * t))
    values = (eb @ ed.T - ed @ eb.T) / (4.0 * math.pi * t)
    return HeatImage(grid=grid, sigma=sigma, values=values)


def vectorize_diagram(
    d: CleanDiagram,
    kind: str,
    grid: Grid,
    max_degree: int = 3,
    k_layers: int = 10,
    power: float = 1.0,
    sigma: float = 0.1,
) -> dict[int, LandscapeVec | SilhouetteVec | HeatImage]:
    """Vectorize every homology degree of a clean diagram with one method."""
    makers = {
        "landscape": lambda iv: landscape(iv, k_layers, grid),
        "silhouette": lambda iv: silhouette(iv, power, grid),
        "heat": lambda iv: heat(iv, sigma, grid),
    }
    if kind not in makers:
        raise ValueError(f"unknown vectorization kind {kind!r}")
    return {deg: makers[kind](d.intervals(deg)) for deg in range(max_degree + 1)}


# --- vectorization file format -----------------------------------------------
#
# CSV rows are `degree,<samples...>` in degree-major order; the JSON sidecar
# records kind, grid, and parameters so a file pair round-trips exactly.

def _rows_of(vec) -> list[np.ndarray]:
    if isinstance(vec, LandscapeVec):
        return [layer for layer in vec.layers]
    if isinstance(vec, SilhouetteVec):
        return [vec.values]
    if isinstance(vec, HeatImage):
        return [row for row in vec.values]
    raise ValueError(f"unsupported vectorization type {type(vec).__name__}")


def write_vectorization(per_degree: dict, kind: str, csv_path: str, sidecar_path: str) -> None:
    import csv as _csv
    import json as _json

    degrees = sorted(per_degree)
    first = per_degree[degrees[0]]
    grid = first.grid
    meta = {
        "kind": kind,
        "grid": {"t_min": grid.t_min, "t_max": grid.t_max, "resolution": grid.resolution},
        "degrees": degrees,
    }
    if isinstance(first, LandscapeVec):
        meta["k_layers"] = int(first.layers.shape[0])
    elif isinstance(first, SilhouetteVec):
        meta["power"] = first.power
    elif isinstance(first, HeatImage):
        meta["sigma"] = first.sigma
    with open(csv_path, "w", newline="") as fh:
        writer = _csv.writer(fh)
        for deg in degrees:
            for row in _rows_of(per_degree[deg]):
                writer.writerow([deg] + [repr(float(v)) for v in row])
    with open(sidecar_path, "w") as fh:
        _json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_vectorization(csv_path: str, sidecar_path: str) -> tuple[dict, str]:
    """Load a vectorization CSV + sidecar; returns (per-degree dict, kind)."""
    import csv as _csv
    import json as _json

    with open(sidecar_path) as fh:
        meta = _json.load(fh)
    kind = meta["kind"]
    grid = Grid(**meta["grid"])
    rows_by_degree: dict[int, list[list[float]]] = {}
    with open(csv_path, newline="") as fh:
        for row in _csv.reader(fh):
            if not row:
                continue
            rows_by_degree.setdefault(int(row[0]), []).append([float(v) for v in row[1:]])
    per_degree: dict[int, LandscapeVec | SilhouetteVec | HeatImage] = {}
    for deg in meta["degrees"]:
        rows = np.asarray(rows_by_degree[deg])
        if rows.shape[-1] != grid.resolution:
            raise ValueError(f"{csv_path}: row length does not match grid resolution")
        if kind == "landscape":
            per_degree[deg] = LandscapeVec(grid=grid, layers=rows)
        elif kind == "silhouette":
            per_degree[deg] = SilhouetteVec(grid=grid, power=meta["power"], values=rows[0])
        elif kind == "heat":
            per_degree[deg] = HeatImage(grid=grid, sigma=meta["sigma"], values=rows)
        else:
            raise ValueError(f"{sidecar_path}: unknown kind {kind!r}")
    return per_degree, kind
