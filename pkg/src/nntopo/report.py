"""Figure rendering for the report path. Everything lands in files (Agg)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .distances import DistanceMatrix
from .persistence import INF, PersistenceDiagram


def render_matrix(dm: DistanceMatrix, path: str, which: str = "mean", title: str | None = None) -> None:
    """Heat-map of a distance matrix with experiment labels on both axes."""
    values = dm.mean if which == "mean" else dm.std
    n = len(dm.labels)
    fig, ax = plt.subplots(figsize=(max(4.0, 0.42 * n + 2.0),) * 2)
    im = ax.imshow(values, cmap="inferno", interpolation="nearest")
    ax.set_xticks(range(n))
    ax.set_yticks(range(n))
    ax.set_xticklabels(dm.labels, rotation=90, fontsize=7)
    ax.set_yticklabels(dm.labels, fontsize=7)
    ax.set_title(title or f"{dm.measure} distance ({which})")
    fig.colorbar(im, ax=ax, fraction=0.046)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_diagram(diagram: PersistenceDiagram, path: str, cap: float = 1.0) -> None:
    """Scatter plot of a persistence diagram, one color per degree."""
    fig, ax = plt.subplots(figsize=(5, 5))
    markers = ["o", "s", "^", "D"]
    top = cap
    for deg in sorted(diagram.degrees):
        ivs = diagram.intervals(deg)
        if not ivs:
            continue
        births = [b for b, _ in ivs]
        deaths = [top if d == INF else d for _, d in ivs]
        ax.scatter(births, deaths, s=14, alpha=0.6,
                   marker=markers[deg % len(markers)], label=f"H{deg}")
    lim = [0, top * 1.05]
    ax.plot(lim, lim, "k--", linewidth=0.8)
    ax.set_xlim(lim)
    ax.set_ylim(lim)
    ax.set_xlabel("birth")
    ax.set_ylabel("death")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
