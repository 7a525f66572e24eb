"""Diagram post-processing and exact optimal-matching distances.

The exact Wasserstein and bottleneck distances here are ground-truth
oracles for small diagrams (a few thousand points at most); large diagrams
are compared through vectorizations instead. Both distances use the
standard diagonal augmentation: each diagram is extended with the
orthogonal projections of the other diagram's points onto the diagonal so
that bijections exist for any cardinalities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .persistence import INF, PersistenceDiagram


@dataclass
class CleanDiagram:
    """Diagram with every death finite (infinities capped)."""

    degrees: dict[int, tuple[tuple[float, float], ...]]

    def intervals(self, degree: int) -> tuple[tuple[float, float], ...]:
        return self.degrees.get(degree, ())

    def __eq__(self, other) -> bool:
        if not isinstance(other, CleanDiagram):
            return NotImplemented
        keys = set(self.degrees) | set(other.degrees)
        return all(sorted(self.intervals(k)) == sorted(other.intervals(k)) for k in keys)


def filter_diagram(d: PersistenceDiagram, eta: float = 0.01) -> PersistenceDiagram:
    """Drop intervals whose lifespan is under eta; infinite bars always stay."""
    if eta < 0:
        raise ValueError("eta must be >= 0")
    return PersistenceDiagram(
        degrees={
            deg: tuple(iv for iv in ivs if iv[1] - iv[0] >= eta)
            for deg, ivs in d.degrees.items()
        }
    )


def cap_infinity(d: PersistenceDiagram, cap: float = 1.0) -> CleanDiagram:
    """Replace every infinite death by ``cap``.

    Raises ValueError when a finite death exceeds the cap, since capping
    would then reorder deaths.
    """
    out: dict[int, tuple[tuple[float, float], ...]] = {}
    for deg, ivs in d.degrees.items():
        capped = []
        for birth, death in ivs:
            if death == INF:
                capped.append((birth, cap))
            elif death > cap:
                raise ValueError(f"finite death {death} exceeds cap {cap}")
            else:
                capped.append((birth, death))
        out[deg] = tuple(capped)
    return CleanDiagram(degrees=out)


def _as_points(diagram) -> np.ndarray:
    pts = np.asarray(diagram, dtype=float)
    if pts.size == 0:
        return np.empty((0, 2))
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("a diagram slice must be an (n, 2) array of (birth, death)")
    return pts


def _cost_tables(p1: np.ndarray, p2: np.ndarray):
    """Sup-norm costs: point-to-point matrix and per-point diagonal gaps."""
    if len(p1) and len(p2):
        cross = np.max(
            np.abs(p1[:, None, :] - p2[None, :, :]), axis=2
        )
    else:
        cross = np.zeros((len(p1), len(p2)))
    diag1 = (p1[:, 1] - p1[:, 0]) / 2.0 if len(p1) else np.zeros(0)
    diag2 = (p2[:, 1] - p2[:, 0]) / 2.0 if len(p2) else np.zeros(0)
    return cross, diag1, diag2


def wasserstein(d1, d2, p: float = 1.0) -> float:
    """Exact p-Wasserstein distance between two single-degree diagram slices.

    Minimizes sum of matched sup-norm costs to the power p over all
    diagonal-augmented bijections (Hungarian assignment), then takes the
    1/p root.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    p1, p2 = _as_points(d1), _as_points(d2)
    n, m = len(p1), len(p2)
    if n == 0 and m == 0:
        return 0.0
    cross, diag1, diag2 = _cost_tables(p1, p2)
    size = n + m
    cost = np.zeros((size, size))
    cost[:n, :m] = cross ** p
    cost[:n, m:] = (diag1 ** p)[:, None]
    cost[n:, :m] = (diag2 ** p)[None, :]
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].sum() ** (1.0 / p))


def bottleneck(d1, d2) -> float:
    """Exact bottleneck distance: the smallest threshold t such that a
    perfect matching exists using only (diagonal-augmented) pairs at
    sup-norm cost <= t."""
    p1, p2 = _as_points(d1), _as_points(d2)
    n, m = len(p1), len(p2)
    if n == 0 and m == 0:
        return 0.0
    cross, diag1, diag2 = _cost_tables(p1, p2)
    size = n + m
    cost = np.zeros((size, size))
    cost[:n, :m] = cross
    cost[:n, m:] = diag1[:, None]
    cost[n:, :m] = diag2[None, :]

    candidates = np.unique(np.concatenate([cross.ravel(), diag1, diag2, [0.0]]))

    def feasible(t: float) -> bool:
        mask = cost <= t
        match = maximum_bipartite_matching(csr_matrix(mask), perm_type="column")
        return int((match >= 0).sum()) == size

    lo, hi = 0, len(candidates) - 1
    if not feasible(candidates[hi]):  # cannot happen: max cost always feasible
        raise RuntimeError("no feasible matching at maximal threshold")
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(candidates[lo])
