"""Persistent homology of a filtered complex over Z2.

Columns of the boundary matrix are reduced with the clearing (twist)
optimization: dimensions are processed top-down and the pivot row of every
reduced column is zeroed out before its own turn comes, which skips the
bulk of the work on large complexes. Betti numbers of the full complex are
computed independently from Z2 ranks of the boundary operators.
"""

from __future__ import annotations

import csv
import math
import random
from dataclasses import dataclass

from .flagcomplex import FilteredComplex

INF = math.inf

# Above this size the d.d = 0 consistency check samples columns instead of
# visiting all of them.
_DDCHECK_EXHAUSTIVE_LIMIT = 2000
_DDCHECK_SAMPLES = 50


@dataclass
class PersistenceDiagram:
    """Multiset of (birth, death) intervals per homology degree; death may be inf."""

    degrees: dict[int, tuple[tuple[float, float], ...]]

    def intervals(self, degree: int) -> tuple[tuple[float, float], ...]:
        return self.degrees.get(degree, ())

    def infinite_count(self, degree: int) -> int:
        return sum(1 for _, d in self.intervals(degree) if d == INF)

    def total_intervals(self) -> int:
        return sum(len(v) for v in self.degrees.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PersistenceDiagram):
            return NotImplemented
        keys = set(self.degrees) | set(other.degrees)
        return all(
            sorted(self.intervals(k)) == sorted(other.intervals(k)) for k in keys
        )


def boundary_columns(c: FilteredComplex, check: bool = True) -> list[set[int]]:
    """Sparse Z2 boundary columns in filtration order.

    Column j holds the row indices of the facets of simplex j (k+1 entries
    for a k-simplex). Raises ValueError when the complex is not sorted, not
    closed under faces, or fails the boundary-of-boundary check.
    """
    if not c.is_valid_filtration_order():
        raise ValueError("complex is not in filtration order")
    index = {s.vertices: i for i, s in enumerate(c.simplices)}
    cols: list[set[int]] = []
    for j, s in enumerate(c.simplices):
        if s.dim == 0:
            cols.append(set())
            continue
        col = set()
        for drop in range(len(s.vertices)):
            face = s.vertices[:drop] + s.vertices[drop + 1:]
            i = index.get(face)
            if i is None:
                raise ValueError(f"complex not closed under faces: {face} missing")
            if i >= j:
                raise ValueError(f"face {face} does not precede {s.vertices}")
            col.add(i)
        cols.append(col)
    if check:
        _check_dd_zero(cols, c)
    return cols


def _check_dd_zero(cols: list[set[int]], c: FilteredComplex) -> None:
    """Verify boundary-of-boundary vanishes over Z2 (exhaustive when small)."""
    candidates = [j for j, s in enumerate(c.simplices) if s.dim >= 2]
    if len(c.simplices) > _DDCHECK_EXHAUSTIVE_LIMIT:
        rng = random.Random(0)
        candidates = rng.sample(candidates, min(_DDCHECK_SAMPLES, len(candidates)))
    for j in candidates:
        acc: set[int] = set()
        for i in cols[j]:
            acc ^= cols[i]
        if acc:
            raise ValueError(f"boundary of boundary non-zero at column {j}")


def compute_persistence(c: FilteredComplex, max_degree: int = 3) -> PersistenceDiagram:
    """Persistence diagram of a filtered complex in degrees 0..max_degree.

    Standard pairing: a column whose reduced form has a unique lowest row i
    kills the class born at simplex i, giving the interval
    (filtration(i), filtration(j)) in degree dim(i). Unpaired positive
    columns of dimension k give (filtration, inf) in degree k. Zero-length
    intervals are dropped.

    The complex must contain simplices up to dimension max_degree + 1
    (``c.max_dim`` is the enumeration bound, not the highest populated
    dimension).
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    if c.max_dim < max_degree + 1:
        raise ValueError(
            f"complex enumerated to dimension {c.max_dim} cannot support "
            f"degree {max_degree} (needs {max_degree + 1})"
        )
    cols = boundary_columns(c)
    dims = [s.dim for s in c.simplices]
    filts = [s.filtration for s in c.simplices]
    by_dim: dict[int, list[int]] = {}
    for j, d in enumerate(dims):
        by_dim.setdefault(d, []).append(j)

    top = min(max(by_dim, default=0), max_degree + 1)
    pivot_of: dict[int, int] = {}
    cleared: set[int] = set()
    pairs: list[tuple[int, int]] = []

    for d in range(top, 0, -1):
        for j in by_dim.get(d, ()):
            if j in cleared:
                continue
            col = cols[j]
            while col:
                low = max(col)
                k = pivot_of.get(low)
                if k is None:
                    break
                col = col ^ cols[k]
            cols[j] = col
            if col:
                low = max(col)
                pivot_of[low] = j
                cleared.add(low)
                pairs.append((low, j))

    paired = {i for i, _ in pairs} | {j for _, j in pairs}
    intervals: dict[int, list[tuple[float, float]]] = {
        d: [] for d in range(max_degree + 1)
    }
    for i, j in pairs:
        degree = dims[i]
        if degree > max_degree:
            continue
        birth, death = filts[i], filts[j]
        if death > birth:
            intervals[degree].append((birth, death))
    for j, d in enumerate(dims):
        if d <= max_degree and j not in paired:
            # positive column: cleared never reaches here, so it either
            # reduced to zero or was a vertex, and no later column kills it
            if d == 0 or not cols[j]:
                intervals[d].append((filts[j], INF))

    return PersistenceDiagram(
        degrees={d: tuple(sorted(v)) for d, v in intervals.items()}
    )


def _z2_rank(columns: list[int]) -> int:
    """Rank of a Z2 matrix given as column bitmasks."""
    pivots: dict[int, int] = {}
    rank = 0
    for col in columns:
        while col:
            low = col.bit_length() - 1
            p = pivots.get(low)
            if p is None:
                pivots[low] = col
                rank += 1
                break
            col ^= p
    return rank


def betti_numbers(c: FilteredComplex, degree: int) -> int:
    """Betti number of the full complex (filtration ignored).

    beta_d = dim Ker(boundary_d) - dim Im(boundary_{d+1}), both from Z2
    ranks. Requires degree <= c.max_dim - 1 so the image term is available.
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    if degree > c.max_dim - 1:
        raise ValueError(
            f"degree {degree} exceeds max enumerated dimension {c.max_dim} minus one"
        )
    grouped: dict[int, list[tuple[int, ...]]] = {}
    for s in c.simplices:
        grouped.setdefault(s.dim, []).append(s.vertices)

    def rank_boundary(d: int) -> int:
        if d == 0 or d not in grouped or (d - 1) not in grouped:
            return 0
        row = {verts: i for i, verts in enumerate(grouped[d - 1])}
        columns = []
        for verts in grouped[d]:
            mask = 0
            for drop in range(len(verts)):
                mask |= 1 << row[verts[:drop] + verts[drop + 1:]]
            columns.append(mask)
        return _z2_rank(columns)

    n_d = len(grouped.get(degree, ()))
    kernel = n_d - rank_boundary(degree)
    return kernel - rank_boundary(degree + 1)


# --- diagram file format -----------------------------------------------------

def write_diagram_csv(diagram: PersistenceDiagram, path: str) -> None:
    """CSV rows degree,birth,death with 'inf' for unbounded deaths."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["degree", "birth", "death"])
        for degree in sorted(diagram.degrees):
            for birth, death in diagram.degrees[degree]:
                writer.writerow([degree, repr(birth), "inf" if death == INF else repr(death)])


def read_diagram_csv(path: str) -> PersistenceDiagram:
    degrees: dict[int, list[tuple[float, float]]] = {}
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["degree", "birth", "death"]:
            raise ValueError(f"{path}: expected header 'degree,birth,death'")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise ValueError(f"{path}:{lineno}: expected 3 columns")
            degree = int(row[0])
            birth = float(row[1])
            death = INF if row[2].strip() == "inf" else float(row[2])
            if death < birth:
                raise ValueError(f"{path}:{lineno}: death {death} before birth {birth}")
            degrees.setdefault(degree, []).append((birth, death))
    return PersistenceDiagram(degrees={d: tuple(sorted(v)) for d, v in degrees.items()})
