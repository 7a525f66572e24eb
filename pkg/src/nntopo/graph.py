"""Weighted digraph encoding of multilayer perceptrons.

An MLP is turned into a directed weighted graph: one vertex per neuron,
one bias vertex per layer (or per neuron, see ``bias_mode``), and one edge
per weight. Negative weights flip the edge direction and keep their
magnitude. All magnitudes are normalized jointly into (0, 1] so that the
strongest connections get the smallest values and enter a sublevel
filtration first.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

Edge = tuple[int, int, float]

DEFAULT_ZETA = 1e-6


@dataclass(frozen=True)
class LayerWeights:
    """One dense layer: ``weights`` is (out_dim, in_dim), ``bias`` is (out_dim,) or None."""

    weights: np.ndarray
    bias: np.ndarray | None = None

    @property
    def out_dim(self) -> int:
        return self.weights.shape[0]

    @property
    def in_dim(self) -> int:
        return self.weights.shape[1]


@dataclass(frozen=True)
class MlpWeights:
    """Ordered dense layers of an MLP.

    Invariants checked at construction: consecutive layer shapes chain
    (in_dim of layer k+1 equals out_dim of layer k), every entry finite.
    """

    layers: tuple[LayerWeights, ...]

    def __post_init__(self):
        if not self.layers:
            raise ValueError("MLP must have at least one layer")
        for k, layer in enumerate(self.layers):
            w = layer.weights
            if w.ndim != 2:
                raise ValueError(f"layer {k}: weights must be a 2-D matrix, got ndim={w.ndim}")
            bad = np.argwhere(~np.isfinite(w))
            if bad.size:
                r, c = bad[0]
                raise ValueError(
                    f"layer {k}: weights[{r}][{c}] is not finite ({w[r, c]!r})"
                )
            if layer.bias is not None:
                b = layer.bias
                if b.ndim != 1 or b.shape[0] != layer.out_dim:
                    raise ValueError(
                        f"layer {k}: bias length {b.shape} does not match out_dim {layer.out_dim}"
                    )
                bad = np.argwhere(~np.isfinite(b))
                if bad.size:
                    raise ValueError(
                        f"layer {k}: bias[{bad[0][0]}] is not finite ({b[bad[0][0]]!r})"
                    )
            if k > 0 and layer.in_dim != self.layers[k - 1].out_dim:
                raise ValueError(
                    f"layer {k}: in_dim {layer.in_dim} does not chain with "
                    f"previous out_dim {self.layers[k - 1].out_dim}"
                )

    @property
    def layer_sizes(self) -> tuple[int, ...]:
        """Neuron counts per layer, inputs first."""
        return (self.layers[0].in_dim,) + tuple(l.out_dim for l in self.layers)


@dataclass(frozen=True)
class WeightedDigraph:
    """Directed weighted graph, loop-free, at most one edge per ordered pair.

    ``layers`` groups neuron vertex ids by network layer (inputs first) for
    graphs built from an MLP; it is empty for graphs read back from disk.
    Bias vertices are not part of any layer group.
    """

    num_vertices: int
    edges: tuple[Edge, ...]
    vertex_labels: tuple[str, ...] = ()
    layers: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        seen = set()
        for src, dst, w in self.edges:
            if src == dst:
                raise ValueError(f"self-loop on vertex {src}")
            if not (0 <= src < self.num_vertices and 0 <= dst < self.num_vertices):
                raise ValueError(f"edge ({src},{dst}) outside vertex range")
            if (src, dst) in seen:
                raise ValueError(f"duplicate edge ({src},{dst})")
            if not (0.0 < w <= 1.0):
                raise ValueError(f"edge ({src},{dst}) weight {w} outside (0, 1]")
            seen.add((src, dst))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def out_neighbors(self) -> list[dict[int, float]]:
        """Adjacency as per-vertex dicts dst -> weight."""
        out: list[dict[int, float]] = [{} for _ in range(self.num_vertices)]
        for src, dst, w in self.edges:
            out[src][dst] = w
        return out


def normalize_weights(raw_weights: Sequence[float], zeta: float = DEFAULT_ZETA) -> list[float]:
    """Map raw weights into (0, 1], inverting magnitude.

    Each weight w becomes ``max(1 - |w| / M, zeta)`` where M is the largest
    magnitude in the pool, so the strongest weight maps to ``zeta`` and a
    zero weight maps to 1.0.

    Raises ValueError on empty input, non-finite entries, all-zero input
    (degenerate network: the denominator vanishes), or zeta outside (0, 1).
    """
    if not (0.0 < zeta < 1.0):
        raise ValueError(f"zeta must be in (0, 1), got {zeta}")
    arr = np.asarray(raw_weights, dtype=float)
    if arr.size == 0:
        raise ValueError("cannot normalize an empty weight pool")
    if not np.all(np.isfinite(arr)):
        raise ValueError("weight pool contains non-finite values")
    scale = float(np.abs(arr).max())
    if scale == 0.0:
        raise ValueError("all weights are zero; normalization denominator vanishes")
    return [max(1.0 - abs(w) / scale, zeta) for w in arr.tolist()]


def build_graph(
    mlp: MlpWeights,
    zeta: float = DEFAULT_ZETA,
    bias_mode: str = "per-layer",
) -> WeightedDigraph:
    """Encode an MLP as a weighted digraph.

    A raw weight w from neuron u to neuron v becomes the edge (u, v) when
    w >= 0 and (v, u) when w < 0; its weight is the jointly normalized
    magnitude (weights and biases share one normalization pool). Biases add
    extra vertices joined to their target neurons under the same sign rule.

    Parameters
    ----------
    mlp : MlpWeights
    zeta : float
        Smoothing floor of the normalization, default 1e-6.
    bias_mode : str
        "per-layer" adds one shared bias vertex per biased layer;
        "per-neuron" adds one bias vertex per biased target neuron.
    """
    if bias_mode not in ("per-layer", "per-neuron"):
        raise ValueError(f"bias_mode must be 'per-layer' or 'per-neuron', got {bias_mode!r}")

    sizes = mlp.layer_sizes
    layers: list[tuple[int, ...]] = []
    labels: list[str] = []
    next_id = 0
    for k, size in enumerate(sizes):
        ids = tuple(range(next_id, next_id + size))
        layers.append(ids)
        labels.extend(f"l{k}:{i}" for i in range(size))
        next_id += size

    pool: list[float] = []
    for layer in mlp.layers:
        pool.extend(layer.weights.ravel().tolist())
        if layer.bias is not None:
            pool.extend(layer.bias.tolist())
    normalized = normalize_weights(pool, zeta)

    edges: list[Edge] = []
    pos = 0
    bias_edges: list[tuple[int, int, float, float]] = []  # (layer k, target neuron, raw, norm)
    for k, layer in enumerate(mlp.layers):
        src_ids, dst_ids = layers[k], layers[k + 1]
        w = layer.weights
        for i in range(layer.out_dim):
            for j in range(layer.in_dim):
                raw = w[i, j]
                nw = normalized[pos]
                pos += 1
                if raw >= 0:
                    edges.append((src_ids[j], dst_ids[i], nw))
                else:
                    edges.append((dst_ids[i], src_ids[j], nw))
        if layer.bias is not None:
            for i in range(layer.out_dim):
                bias_edges.append((k, i, layer.bias[i], normalized[pos]))
                pos += 1

    # Bias vertices go after all neuron vertices so neuron ids are stable
    # across bias modes.
    bias_vertex: dict[tuple[int, int], int] = {}
    for k, i, raw, nw in bias_edges:
        key = (k, 0) if bias_mode == "per-layer" else (k, i)
        if key not in bias_vertex:
            bias_vertex[key] = next_id
            if bias_mode == "per-layer":
                labels.append(f"b{k + 1}")
            else:
                labels.append(f"b{k + 1}:{i}")
            next_id += 1
        b = bias_vertex[key]
        target = layers[k + 1][i]
        if raw >= 0:
            edges.append((b, target, nw))
        else:
            edges.append((target, b, nw))

    return WeightedDigraph(
        num_vertices=next_id,
        edges=tuple(edges),
        vertex_labels=tuple(labels),
        layers=tuple(layers),
    )


def permute_neurons(g: WeightedDigraph, perms: Sequence[Sequence[int]]) -> WeightedDigraph:
    """Relabel neurons within layers; bias vertices stay fixed.

    ``perms[k]`` is a permutation of ``range(len(g.layers[k]))``: the neuron
    at position i of layer k takes the vertex id formerly at position
    ``perms[k][i]``. The edge multiset is unchanged up to relabeling, so any
    quantity invariant under graph isomorphism is preserved.
    """
    if not g.layers:
        raise ValueError("graph carries no layer structure; cannot permute")
    if len(perms) != len(g.layers):
        raise ValueError(f"expected {len(g.layers)} permutations, got {len(perms)}")
    mapping = {v: v for v in range(g.num_vertices)}
    for k, perm in enumerate(perms):
        layer = g.layers[k]
        if sorted(perm) != list(range(len(layer))):
            raise ValueError(f"perms[{k}] is not a permutation of range({len(layer)})")
        for i, p in enumerate(perm):
            mapping[layer[i]] = layer[p]
    edges = tuple((mapping[s], mapping[d], w) for s, d, w in g.edges)
    return WeightedDigraph(
        num_vertices=g.num_vertices,
        edges=edges,
        vertex_labels=g.vertex_labels,
        layers=g.layers,
    )


def adjacency_matrix(g: WeightedDigraph) -> np.ndarray:
    """Dense adjacency with normalized weights; A[i, j] is the weight of i -> j."""
    a = np.zeros((g.num_vertices, g.num_vertices))
    for src, dst, w in g.edges:
        a[src, dst] = w
    return a


# --- interchange formats ---------------------------------------------------

def mlp_from_dict(doc: dict) -> MlpWeights:
    """Parse the weight interchange document {"layers": [{"weights": [[...]], "bias": [...]}]}."""
    if not isinstance(doc, dict) or "layers" not in doc:
        raise ValueError("interchange document must be an object with a 'layers' list")
    layers = []
    for k, entry in enumerate(doc["layers"]):
        if "weights" not in entry:
            raise ValueError(f"layer {k}: missing 'weights'")
        rows = entry["weights"]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError(f"layer {k}: weights must be a non-empty rectangular matrix")
        w = np.asarray(rows, dtype=float)
        bias = entry.get("bias")
        b = np.asarray(bias, dtype=float) if bias is not None else None
        layers.append(LayerWeights(weights=w, bias=b))
    return MlpWeights(layers=tuple(layers))


def load_mlp_json(path: str) -> MlpWeights:
    """Read interchange JSON from ``path``; errors carry the file path."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}") from exc
    try:
        return mlp_from_dict(doc)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc


def write_graph_tsv(g: WeightedDigraph, path: str) -> None:
    """Write the graph as TSV: a '# vertices=N' header then src/dst/weight lines."""
    with open(path, "w") as fh:
        fh.write(f"# vertices={g.num_vertices}\n")
        for src, dst, w in g.edges:
            fh.write(f"{src}\t{dst}\t{w!r}\n")


def read_graph_tsv(path: str) -> WeightedDigraph:
    """Read a graph written by :func:`write_graph_tsv`."""
    num_vertices = None
    edges: list[Edge] = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if body.startswith("vertices="):
                    num_vertices = int(body.split("=", 1)[1])
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected 'src\\tdst\\tweight'")
            src, dst, w = int(parts[0]), int(parts[1]), float(parts[2])
            if not (0.0 < w <= 1.0) or math.isnan(w):
                raise ValueError(f"{path}:{lineno}: weight {w} outside (0, 1]")
            edges.append((src, dst, w))
    if num_vertices is None:
        raise ValueError(f"{path}: missing '# vertices=N' header")
    return WeightedDigraph(num_vertices=num_vertices, edges=tuple(edges))
