"""Pairwise network distances and aggregated distance matrices.

Networks are compared through their per-degree diagram vectorizations
(landscape / silhouette / heat) or, as a deliberately weak baseline,
through entrywise norms of adjacency-matrix differences. Repeated runs of
an experiment are aggregated into mean/std matrices over all cross-run
pairings.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .vectorize import Grid, HeatImage, LandscapeVec, SilhouetteVec, landscape_distance

# degree -> vectorization of that degree's diagram slice
NetworkVectorization = Mapping[int, "LandscapeVec | SilhouetteVec | HeatImage"]

MEASURES = ("heat", "silhouette", "landscape")
BASELINES = ("norm1", "frobenius")


def vector_distance(a, b, p: float = 2.0) -> float:
    """Lp distance between two same-kind vectorizations via quadrature.

    Landscapes delegate to their dedicated L2 distance. Mismatched kinds,
    grids, or parameters raise ValueError.
    """
    if type(a) is not type(b):
        raise ValueError(f"vectorization kinds differ: {type(a).__name__} vs {type(b).__name__}")
    if a.grid != b.grid:
        raise ValueError("vectorization grids differ")
    if isinstance(a, LandscapeVec):
        return landscape_distance(a, b)
    t = a.grid.points()
    if isinstance(a, SilhouetteVec):
        if a.power != b.power:
            raise ValueError(f"silhouette powers differ: {a.power} vs {b.power}")
        return float(np.trapezoid(np.abs(a.values - b.values) ** p, t) ** (1.0 / p))
    if isinstance(a, HeatImage):
        if a.sigma != b.sigma:
            raise ValueError(f"heat sigmas differ: {a.sigma} vs {b.sigma}")
        inner = np.trapezoid(np.abs(a.values - b.values) ** p, t, axis=1)
        return float(np.trapezoid(inner, t) ** (1.0 / p))
    raise ValueError(f"unsupported vectorization type {type(a).__name__}")


def network_distance(
    a: NetworkVectorization,
    b: NetworkVectorization,
    p: float = 2.0,
    degree_weights: Sequence[float] | None = None,
) -> float:
    """Sum of per-degree vectorization distances, optionally weighted."""
    degrees = sorted(a.keys())
    if degrees != sorted(b.keys()):
        raise ValueError("vectorized degrees differ between networks")
    if degree_weights is None:
        degree_weights = [1.0] * len(degrees)
    if len(degree_weights) < len(degrees):
        raise ValueError("degree_weights shorter than the number of degrees")
    return sum(
        w * vector_distance(a[d], b[d], p)
        for d, w in zip(degrees, degree_weights)
    )


def baseline_norm_distance(a: np.ndarray, b: np.ndarray, kind: str = "frobenius") -> float:
    """Entrywise 1-norm or Frobenius norm of A - B.

    Only defined for equal shapes; that restriction is exactly why these
    norms fail as general network similarity measures.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    diff = a - b
    if kind == "norm1":
        return float(np.abs(diff).sum())
    if kind == "frobenius":
        return float(math.sqrt((diff * diff).sum()))
    raise ValueError(f"unknown baseline norm {kind!r}")


@dataclass
class DistanceMatrix:
    """Symmetric mean/std distance matrices over labeled experiments."""

    labels: tuple[str, ...]
    mean: np.ndarray
    std: np.ndarray
    measure: str

    def __post_init__(self):
        n = len(self.labels)
        if self.mean.shape != (n, n) or self.std.shape != (n, n):
            raise ValueError("matrix shapes do not match label count")


def assemble_matrix(
    experiments: Sequence[tuple[str, Sequence[NetworkVectorization]]],
    measure: str,
    p: float = 2.0,
    degree_weights: Sequence[float] | None = None,
) -> DistanceMatrix:
    """Mean/std distance matrix over repeated runs.

    Cell (i, j) with i != j averages the distances of all run pairs
    (run of i) x (run of j); the diagonal averages all pairs of distinct
    runs of the same experiment (zero when only one run exists). The
    result does not depend on run order within an experiment.
    """
    labels = tuple(label for label, _ in experiments)
    runs = [list(r) for _, r in experiments]
    if any(len(r) == 0 for r in runs):
        raise ValueError("every experiment needs at least one run")
    n = len(runs)
    mean = np.zeros((n, n))
    std = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            if i == j:
                vals = [
                    network_distance(runs[i][a], runs[i][b], p, degree_weights)
                    for a in range(len(runs[i]))
                    for b in range(a + 1, len(runs[i]))
                ]
            else:
                vals = [
                    network_distance(ra, rb, p, degree_weights)
                    for ra in runs[i]
                    for rb in runs[j]
                ]
            if vals:
                mean[i, j] = mean[j, i] = float(np.mean(vals))
                std[i, j] = std[j, i] = float(np.std(vals))
    return DistanceMatrix(labels=labels, mean=mean, std=std, measure=measure)


# --- matrix output -----------------------------------------------------------

def write_matrix_csv(values: np.ndarray, path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in values:
            writer.writerow([repr(float(v)) for v in row])


def read_matrix_csv(path: str) -> np.ndarray:
    with open(path, newline="") as fh:
        rows = [[float(v) for v in row] for row in csv.reader(fh) if row]
    return np.asarray(rows)


def write_matrix_manifest(dm: DistanceMatrix, path: str, extra: dict | None = None) -> None:
    doc = {"labels": list(dm.labels), "measure": dm.measure}
    if extra:
        doc.update(extra)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
