"""Acceptance suite: one test per criterion, one PASS line per test.

Run with `pytest tests/test_acceptance.py -v -s` to see the summary lines.
Tolerances are fixed here and nowhere else.
"""

import time

import numpy as np
import pytest

from nntopo.diagrams import bottleneck, cap_infinity, filter_diagram, wasserstein
from nntopo.distances import (
    baseline_norm_distance,
    network_distance,
)
from nntopo.flagcomplex import enumerate_simplices
from nntopo.graph import (
    WeightedDigraph,
    adjacency_matrix,
    build_graph,
    normalize_weights,
    permute_neurons,
)
from nntopo.persistence import betti_numbers, compute_persistence
from nntopo.vectorize import Grid, heat, landscape, silhouette, vectorize_diagram

from oracles import (
    brute_matching_distances,
    dense_betti,
    naive_reduction,
    random_diagram_slice,
    random_digraph,
    random_mlp,
)

FLOAT_SLACK = 1e-9


def _announce(name):
    print(f"\nACCEPTANCE {name}: PASS")


def test_homology_oracle_equivalence():
    """200 seeded random digraphs: engine == brute-force Z2 elimination, < 60 s."""
    t0 = time.monotonic()
    for seed in range(200):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(4, 13))
        density = float(rng.uniform(0.3, 0.7))
        g = random_digraph(rng, n, density)
        c = enumerate_simplices(g, max_dim=4)
        d = compute_persistence(c, max_degree=3)
        assert naive_reduction(c, 3) == {k: sorted(d.intervals(k)) for k in range(4)}, \
            f"diagram mismatch at seed {seed}"
        for deg in range(4):
            expected = dense_betti(c, deg)
            assert betti_numbers(c, deg) == expected, f"betti mismatch seed {seed} deg {deg}"
            assert d.infinite_count(deg) == expected, f"inf-bar mismatch seed {seed} deg {deg}"
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0, f"took {elapsed:.1f}s, budget is 60s"
    _announce(f"homology-oracle-equivalence (200 digraphs, {elapsed:.1f}s)")


def test_known_topology_fixtures():
    """Directed 3-cycle has one loop; transitive tournaments are acyclic in homology."""
    cycle = WeightedDigraph(num_vertices=3,
                            edges=((0, 1, 0.2), (1, 2, 0.3), (2, 0, 0.5)))
    c = enumerate_simplices(cycle, max_dim=4)
    assert betti_numbers(c, 0) == 1
    assert betti_numbers(c, 1) == 1
    assert compute_persistence(c, 3).infinite_count(1) == 1

    rng = np.random.default_rng(123)
    for n in range(2, 6):
        edges = tuple(
            (i, j, float(rng.uniform(0.1, 1.0)))
            for i in range(n) for j in range(i + 1, n)
        )
        tournament = WeightedDigraph(num_vertices=n, edges=edges)
        tc = enumerate_simplices(tournament, max_dim=4)
        assert betti_numbers(tc, 0) == 1
        for k in range(1, min(4, n - 1) + 1):
            if k <= tc.max_dim - 1:
                assert betti_numbers(tc, k) == 0, f"tournament n={n} degree {k}"
        diag = compute_persistence(tc, 3)
        for k in range(1, 4):
            assert diag.infinite_count(k) == 0
    _announce("known-topology-fixtures (3-cycle, tournaments n<=5)")


def test_metric_axiom_suite():
    """500 random triples: symmetry, triangle inequality, agreement with
    exhaustive matching for W1, W2, and bottleneck."""
    metrics = {
        "w1": lambda a, b: wasserstein(a, b, 1),
        "w2": lambda a, b: wasserstein(a, b, 2),
        "bottleneck": bottleneck,
    }
    for seed in range(500):
        rng = np.random.default_rng(10_000 + seed)
        triple = [random_diagram_slice(rng, 6) for _ in range(3)]
        pair_values = {}
        for a, b in ((0, 1), (1, 2), (0, 2)):
            da, db = triple[a], triple[b]
            brute_w, brute_b = brute_matching_distances(da, db)
            for name, fn in metrics.items():
                fwd, rev = fn(da, db), fn(db, da)
                assert abs(fwd - rev) <= FLOAT_SLACK, f"{name} asymmetric at seed {seed}"
                reference = brute_b if name == "bottleneck" else brute_w[float(name[1])]
                assert abs(fwd - reference) <= FLOAT_SLACK, \
                    f"{name} disagrees with brute force at seed {seed}: {fwd} vs {reference}"
                assert fwd >= -FLOAT_SLACK
                pair_values[(name, a, b)] = fwd
        for name in metrics:
            dab = pair_values[(name, 0, 1)]
            dbc = pair_values[(name, 1, 2)]
            dac = pair_values[(name, 0, 2)]
            assert dac <= dab + dbc + FLOAT_SLACK, f"{name} triangle violation at seed {seed}"
    _announce("metric-axiom-suite (500 triples, exact vs brute force)")


def test_vectorization_invariants():
    """1000 random diagrams at resolution 100: landscape ordering and
    Lipschitz bound, silhouette convexity, heat diagonal zero and
    antisymmetry; no violation beyond 1e-9."""
    grid = Grid(0.0, 1.0, 100)
    t = grid.points()
    step = grid.step
    for seed in range(1000):
        rng = np.random.default_rng(20_000 + seed)
        d = random_diagram_slice(rng, 8)

        lv = landscape(d, 5, grid)
        assert np.all(lv.layers[:-1] - lv.layers[1:] >= -FLOAT_SLACK), f"ordering seed {seed}"
        assert np.all(lv.layers >= -FLOAT_SLACK)
        assert np.all(np.abs(np.diff(lv.layers, axis=1)) <= step + FLOAT_SLACK), \
            f"Lipschitz seed {seed}"

        if d:
            sv = silhouette(d, 1.0, grid)
            arr = np.asarray(d)
            tents = np.maximum(0.0, np.minimum(t[None, :] - arr[:, 0:1], arr[:, 1:2] - t[None, :]))
            assert np.all(sv.values <= tents.max(axis=0) + FLOAT_SLACK), f"silhouette upper seed {seed}"
            assert np.all(sv.values >= tents.min(axis=0) - FLOAT_SLACK), f"silhouette lower seed {seed}"

        hv = heat(d, 0.1, grid)
        assert np.all(np.abs(np.diag(hv.values)) <= FLOAT_SLACK), f"heat diagonal seed {seed}"
        assert np.all(np.abs(hv.values + hv.values.T) <= FLOAT_SLACK), f"heat antisymmetry seed {seed}"
    _announce("vectorization-invariants (1000 diagrams, resolution 100)")


def test_permutation_invariance_vs_baseline_failure():
    """50 random MLPs: within-layer neuron permutation leaves every
    vectorization distance at 0 (<= 1e-9) while both adjacency-norm
    baselines report nonzero dissimilarity."""
    grid = Grid(0.0, 1.0, 100)

    def fingerprint(g, kind):
        diagram = compute_persistence(enumerate_simplices(g, max_dim=4), 3)
        clean = cap_infinity(filter_diagram(diagram, 0.01), 1.0)
        return vectorize_diagram(clean, kind, grid, max_degree=3)

    for seed in range(50):
        rng = np.random.default_rng(30_000 + seed)
        depth = int(rng.integers(1, 4))
        sizes = [int(rng.integers(2, 6)) for _ in range(depth + 1)]
        g = build_graph(random_mlp(rng, sizes), 1e-6)

        perms = []
        nontrivial = False
        for layer in g.layers:
            perm = list(rng.permutation(len(layer)))
            if len(layer) > 1 and perm == sorted(perm):
                perm[0], perm[1] = perm[1], perm[0]
            nontrivial = nontrivial or perm != sorted(perm)
            perms.append(perm)
        assert nontrivial
        h = permute_neurons(g, perms)

        assert baseline_norm_distance(adjacency_matrix(g), adjacency_matrix(h), "norm1") > 0.0
        assert baseline_norm_distance(adjacency_matrix(g), adjacency_matrix(h), "frobenius") > 0.0
        for kind in ("heat", "silhouette", "landscape"):
            dist = network_distance(fingerprint(g, kind), fingerprint(h, kind))
            assert dist <= FLOAT_SLACK, f"{kind} distance {dist} at seed {seed}"
    _announce("permutation-invariance-vs-baseline-failure (50 MLPs)")


def test_normalization_reference_values():
    """The three normalization examples, exact to 1e-12."""
    out = normalize_weights([3.0, -4.0, 1.0], 1e-6)
    assert out == pytest.approx([0.25, 1e-6, 0.75], abs=1e-12)
    out = normalize_weights([0.0, 5.0], 1e-6)
    assert abs(out[0] - 1.0) <= 1e-12
    out = normalize_weights([2.0, -7.0], 1e-6)
    assert abs(out[1] - 1e-6) <= 1e-12
    _announce("normalization-reference-values (exact to 1e-12)")
