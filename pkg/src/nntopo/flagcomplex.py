"""Directed flag complex of a weighted digraph.

A k-simplex is an ordered (k+1)-clique: a vertex tuple (v0, ..., vk) with
an edge (vi, vj) for every i < j. Vertices enter the filtration at 0, an
edge at its weight, and a higher simplex at the maximum of its edge
weights, so the complex grows as the threshold sweeps 0 -> 1 and faces
always precede cofaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import WeightedDigraph


@dataclass(frozen=True)
class Simplex:
    """Ordered clique with its filtration value."""

    vertices: tuple[int, ...]
    filtration: float

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


def _sort_key(s: Simplex):
    return (s.filtration, s.dim, s.vertices)


@dataclass(frozen=True)
class FilteredComplex:
    """Simplices in filtration order: (filtration, dimension, lexicographic).

    ``max_dim`` records the enumeration bound; a complex may contain no
    simplex of that dimension if the graph has none.
    """

    simplices: tuple[Simplex, ...]
    max_dim: int

    @classmethod
    def from_simplices(cls, simplices: Iterable[Simplex], max_dim: int) -> "FilteredComplex":
        return cls(tuple(sorted(simplices, key=_sort_key)), max_dim)

    def is_sorted(self) -> bool:
        keys = [_sort_key(s) for s in self.simplices]
        return all(keys[i] <= keys[i + 1] for i in range(len(keys) - 1))

    def is_valid_filtration_order(self) -> bool:
        """Weaker than :meth:`is_sorted`: filtration values never decrease.

        Face-before-coface ordering inside equal-filtration blocks is
        checked structurally when the boundary matrix is built.
        """
        f = [s.filtration for s in self.simplices]
        return all(f[i] <= f[i + 1] for i in range(len(f) - 1))

    def counts(self) -> dict[int, int]:
        """Simplex count per dimension."""
        out: dict[int, int] = {}
        for s in self.simplices:
            out[s.dim] = out.get(s.dim, 0) + 1
        return out

    def __len__(self) -> int:
        return len(self.simplices)


def enumerate_simplices(g: WeightedDigraph, max_dim: int = 4) -> FilteredComplex:
    """Enumerate all ordered cliques of dimension <= max_dim.

    Works by iterative out-neighbor intersection: after fixing a prefix
    (v0, ..., vi), the admissible next vertices are exactly the common
    out-neighbors of the prefix, and each candidate carries the largest
    edge weight connecting the prefix to it. Roots are independent, so the
    loop over v0 is trivially parallelizable; output order is canonical
    regardless of traversal or edge-list order.
    """
    if not (0 <= max_dim <= 4):
        raise ValueError(f"max_dim must be in [0, 4], got {max_dim}")
    out = g.out_neighbors()
    simplices: list[Simplex] = [Simplex((v,), 0.0) for v in range(g.num_vertices)]
    if max_dim == 0:
        return FilteredComplex.from_simplices(simplices, max_dim)

    # stack entries: (vertex tuple, filtration, candidate dict u -> max edge weight in)
    for root in range(g.num_vertices):
        stack = [((root,), 0.0, out[root])]
        while stack:
            verts, filt, cands = stack.pop()
            for u, w_in in cands.items():
                f = filt if filt >= w_in else w_in
                tup = verts + (u,)
                simplices.append(Simplex(tup, f))
                if len(tup) <= max_dim:
                    nxt = {}
                    adj_u = out[u]
                    for x, wx in cands.items():
                        wux = adj_u.get(x)
                        if wux is not None:
                            nxt[x] = wx if wx >= wux else wux
                    if nxt:
                        stack.append((tup, f, nxt))
    return FilteredComplex.from_simplices(simplices, max_dim)


def filtration_value(vertices: tuple[int, ...], g: WeightedDigraph) -> float:
    """Filtration value of an ordered clique: 0 for vertices, else max edge weight.

    Raises ValueError when ``vertices`` is not an ordered clique of ``g``.
    """
    if len(vertices) == 0:
        raise ValueError("empty vertex tuple")
    if len(set(vertices)) != len(vertices):
        raise ValueError(f"{vertices} has repeated vertices")
    out = g.out_neighbors()
    value = 0.0
    for i in range(len(vertices)):
        for j in range(i + 1, len(vertices)):
            w = out[vertices[i]].get(vertices[j])
            if w is None:
                raise ValueError(
                    f"{vertices} is not an ordered clique: missing edge "
                    f"({vertices[i]},{vertices[j]})"
                )
            value = max(value, w)
    return value


def superlevel_transform(c: FilteredComplex) -> FilteredComplex:
    """Flip the filtration convention: a simplex enters at 1 - (min edge weight).

    Under this reparametrization the family of complexes obtained by
    admitting edges of weight >= eps, eps sweeping 1 -> 0, becomes an
    ascending filtration on [0, 1]. Vertices stay at 0.
    """
    by_verts = {s.vertices: s for s in c.simplices}
    flipped = []
    for s in c.simplices:
        if s.dim == 0:
            flipped.append(s)
            continue
        if s.dim == 1:
            min_w = s.filtration
        else:
            min_w = min(
                by_verts[(s.vertices[i], s.vertices[j])].filtration
                for i in range(len(s.vertices))
                for j in range(i + 1, len(s.vertices))
            )
        flipped.append(Simplex(s.vertices, 1.0 - min_w))
    return FilteredComplex.from_simplices(flipped, c.max_dim)


def write_complex(c: FilteredComplex, path: str) -> None:
    """Dump one simplex per line: dim, filtration, comma-joined vertices."""
    with open(path, "w") as fh:
        for s in c.simplices:
            fh.write(f"{s.dim}\t{s.filtration!r}\t{','.join(map(str, s.vertices))}\n")


def read_complex(path: str, max_dim: int = 4) -> FilteredComplex:
    simplices = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected 'dim\\tfiltration\\tv0,v1,...'")
            dim, filt, verts = int(parts[0]), float(parts[1]), tuple(int(v) for v in parts[2].split(","))
            if len(verts) != dim + 1:
                raise ValueError(f"{path}:{lineno}: dim {dim} does not match {len(verts)} vertices")
            simplices.append(Simplex(verts, filt))
    return FilteredComplex.from_simplices(simplices, max_dim)
