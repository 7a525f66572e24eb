import numpy as np
import pytest

from nntopo.diagrams import cap_infinity, filter_diagram
from nntopo.distances import (
    DistanceMatrix,
    assemble_matrix,
    baseline_norm_distance,
    network_distance,
    read_matrix_csv,
    vector_distance,
    write_matrix_csv,
)
from nntopo.flagcomplex import enumerate_simplices
from nntopo.graph import adjacency_matrix, build_graph, permute_neurons
from nntopo.persistence import compute_persistence
from nntopo.vectorize import Grid, heat, landscape, silhouette, vectorize_diagram

from oracles import random_diagram_slice, random_mlp

GRID = Grid(0.0, 1.0, 60)


def _heat_vec(d):
    return heat(d, 0.1, GRID)


def _sil_vec(d):
    return silhouette(d, 1.0, GRID)


def _land_vec(d):
    return landscape(d, 5, GRID)


class TestVectorDistance:
    @pytest.mark.parametrize("maker", [_heat_vec, _sil_vec, _land_vec])
    def test_identity(self, maker):
        v = maker([(0.1, 0.7), (0.2, 0.4)])
        assert vector_distance(v, v) == 0.0

    def test_kind_mismatch(self):
        with pytest.raises(ValueError, match="kinds differ"):
            vector_distance(_heat_vec([(0, 1)]), _sil_vec([(0, 1)]))

    def test_grid_mismatch(self):
        a = silhouette([(0, 1)], 1.0, Grid(0, 1, 60))
        b = silhouette([(0, 1)], 1.0, Grid(0, 1, 61))
        with pytest.raises(ValueError, match="grids differ"):
            vector_distance(a, b)

    def test_param_mismatch(self):
        a = silhouette([(0, 1)], 1.0, GRID)
        b = silhouette([(0, 1)], 2.0, GRID)
        with pytest.raises(ValueError, match="powers differ"):
            vector_distance(a, b)
        c = heat([(0, 1)], 0.1, GRID)
        d = heat([(0, 1)], 0.2, GRID)
        with pytest.raises(ValueError, match="sigmas differ"):
            vector_distance(c, d)

    @pytest.mark.parametrize("maker", [_heat_vec, _sil_vec, _land_vec])
    @pytest.mark.parametrize("seed", range(8))
    def test_triangle_inequality(self, maker, seed):
        rng = np.random.default_rng(4000 + seed)
        va, vb, vc = (maker(random_diagram_slice(rng, 6)) for _ in range(3))
        dab = vector_distance(va, vb)
        dbc = vector_distance(vb, vc)
        dac = vector_distance(va, vc)
        assert dac <= dab + dbc + 1e-10

    def test_heat_continuity_under_point_motion(self):
        delta = 1e-4
        a = _heat_vec([(0.3, 0.7)])
        b = _heat_vec([(0.3 + delta, 0.7)])
        assert vector_distance(a, b) < 1e-2


class TestNetworkDistance:
    def test_degree_weighting(self):
        clean_a = cap_infinity(filter_diagram(
            _diagram({0: ((0.0, 0.5),), 1: ((0.2, 0.8),)}), 0.01), 1.0)
        clean_b = cap_infinity(filter_diagram(
            _diagram({0: ((0.0, 0.7),), 1: ((0.2, 0.8),)}), 0.01), 1.0)
        va = vectorize_diagram(clean_a, "silhouette", GRID, max_degree=1)
        vb = vectorize_diagram(clean_b, "silhouette", GRID, max_degree=1)
        full = network_distance(va, vb)
        only_h0 = network_distance(va, vb, degree_weights=[1.0, 0.0])
        assert full == pytest.approx(only_h0)  # degree 1 slices are identical
        assert network_distance(va, vb, degree_weights=[0.0, 1.0]) == pytest.approx(0.0)

    def test_mismatched_degrees(self):
        clean = cap_infinity(_diagram({0: ((0.0, 0.5),)}), 1.0)
        va = vectorize_diagram(clean, "silhouette", GRID, max_degree=1)
        vb = vectorize_diagram(clean, "silhouette", GRID, max_degree=2)
        with pytest.raises(ValueError, match="degrees differ"):
            network_distance(va, vb)


def _diagram(degrees):
    from nntopo.persistence import PersistenceDiagram

    return PersistenceDiagram(degrees=degrees)


class TestBaselineNorms:
    def test_identical(self):
        a = np.ones((3, 3))
        assert baseline_norm_distance(a, a, "norm1") == 0.0
        assert baseline_norm_distance(a, a, "frobenius") == 0.0

    def test_reference_values(self):
        a = np.array([[1.0, -1.0], [0.0, 0.0]])
        b = np.zeros((2, 2))
        assert baseline_norm_distance(a, b, "norm1") == pytest.approx(2.0)
        assert baseline_norm_distance(a, b, "frobenius") == pytest.approx(np.sqrt(2.0))

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError, match="shape mismatch"):
            baseline_norm_distance(np.ones((2, 2)), np.ones((3, 3)))

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown baseline"):
            baseline_norm_distance(np.ones((2, 2)), np.ones((2, 2)), "spectral")


class TestPermutationContrast:
    def test_baseline_large_while_topology_zero(self):
        rng = np.random.default_rng(77)
        g = build_graph(random_mlp(rng, [4, 5, 3]), 1e-6)
        perms = [[2, 0, 3, 1], [4, 2, 0, 1, 3], [1, 2, 0]]
        h = permute_neurons(g, perms)

        assert baseline_norm_distance(adjacency_matrix(g), adjacency_matrix(h), "norm1") > 0
        assert baseline_norm_distance(adjacency_matrix(g), adjacency_matrix(h), "frobenius") > 0

        def fingerprint(graph):
            diagram = compute_persistence(enumerate_simplices(graph, max_dim=4), 3)
            clean = cap_infinity(filter_diagram(diagram, 0.01), 1.0)
            return vectorize_diagram(clean, "heat", GRID, max_degree=3)

        assert network_distance(fingerprint(g), fingerprint(h)) <= 1e-9


class TestAssembleMatrix:
    def _runs(self, rng, n_runs):
        out = []
        for _ in range(n_runs):
            clean = cap_infinity(_diagram({0: tuple(random_diagram_slice(rng, 4))}), 1.0)
            out.append(vectorize_diagram(clean, "silhouette", GRID, max_degree=0))
        return out

    def test_single_experiment_identical_runs(self):
        rng = np.random.default_rng(1)
        run = self._runs(rng, 1)[0]
        dm = assemble_matrix([("only", [run, run, run])], measure="silhouette")
        assert dm.mean.shape == (1, 1)
        assert dm.mean[0, 0] == 0.0 and dm.std[0, 0] == 0.0

    def test_single_run_diagonal_zero(self):
        rng = np.random.default_rng(2)
        dm = assemble_matrix([("a", self._runs(rng, 1)), ("b", self._runs(rng, 1))],
                             measure="silhouette")
        assert dm.mean[0, 0] == 0.0 and dm.mean[1, 1] == 0.0
        assert dm.mean[0, 1] == dm.mean[1, 0]

    def test_nineteen_experiments_shape(self):
        rng = np.random.default_rng(3)
        experiments = [(f"e{i}", self._runs(rng, 5)) for i in range(19)]
        dm = assemble_matrix(experiments, measure="silhouette")
        assert dm.mean.shape == (19, 19)
        assert dm.std.shape == (19, 19)
        assert np.allclose(dm.mean, dm.mean.T, atol=1e-12)
        assert np.all(dm.std >= 0.0)

    def test_run_order_invariance(self):
        rng = np.random.default_rng(4)
        runs_a = self._runs(rng, 4)
        runs_b = self._runs(rng, 3)
        dm1 = assemble_matrix([("a", runs_a), ("b", runs_b)], measure="silhouette")
        dm2 = assemble_matrix([("a", list(reversed(runs_a))), ("b", runs_b[::-1])],
                              measure="silhouette")
        assert np.allclose(dm1.mean, dm2.mean, atol=1e-12)
        assert np.allclose(dm1.std, dm2.std, atol=1e-12)

    def test_empty_run_list_rejected(self):
        with pytest.raises(ValueError, match="at least one run"):
            assemble_matrix([("a", [])], measure="silhouette")


def test_matrix_csv_round_trip(tmp_path):
    m = np.array([[0.0, 1.25], [1.25, 0.0]])
    path = str(tmp_path / "m.csv")
    write_matrix_csv(m, path)
    assert np.array_equal(read_matrix_csv(path), m)
