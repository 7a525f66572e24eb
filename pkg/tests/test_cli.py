import json
from pathlib import Path

import numpy as np
import pytest

from nntopo.cli import main
from nntopo.distances import read_matrix_csv
from nntopo.persistence import INF, read_diagram_csv

from oracles import random_mlp


def write_weights(path: Path, layers):
    doc = {"layers": layers}
    path.write_text(json.dumps(doc))
    return str(path)


def mlp_json(rng, sizes, path: Path):
    mlp = random_mlp(rng, sizes)
    layers = [
        {"weights": l.weights.tolist(), "bias": l.bias.tolist()}
        for l in mlp.layers
    ]
    return write_weights(path, layers)


@pytest.fixture
def two_layer_weights(tmp_path):
    return write_weights(tmp_path / "w.json", [
        {"weights": [[2.0, -1.0], [0.5, 1.5]], "bias": [0.25, -0.75]},
        {"weights": [[1.0, -2.0]]},
    ])


class TestGraphCommand:
    def test_writes_tsv_and_config(self, tmp_path, two_layer_weights):
        out = str(tmp_path / "g.tsv")
        assert main(["graph", two_layer_weights, "-o", out]) == 0
        lines = Path(out).read_text().splitlines()
        assert lines[0].startswith("# vertices=")
        assert Path(out + ".config.json").exists()

    def test_missing_bias_accepted(self, tmp_path):
        weights = write_weights(tmp_path / "w.json", [{"weights": [[1.0, -0.5]]}])
        out = str(tmp_path / "g.tsv")
        assert main(["graph", weights, "-o", out]) == 0

    def test_nan_weight_rejected(self, tmp_path, capsys):
        weights = write_weights(tmp_path / "w.json", [{"weights": [[1.0, float("nan")]]}])
        out = str(tmp_path / "g.tsv")
        assert main(["graph", weights, "-o", out]) == 1
        err = capsys.readouterr().err
        assert "weights[0][1]" in err

    def test_malformed_json_rejected(self, tmp_path, capsys):
        bad = tmp_path / "w.json"
        bad.write_text("{oops")
        assert main(["graph", str(bad), "-o", str(tmp_path / "g.tsv")]) == 1
        assert str(bad) in capsys.readouterr().err


class TestPhCommand:
    def test_empty_graph_gives_empty_diagram(self, tmp_path):
        g = tmp_path / "g.tsv"
        g.write_text("# vertices=0\n")
        out = str(tmp_path / "d.csv")
        assert main(["ph", str(g), "-o", out]) == 0
        d = read_diagram_csv(out)
        assert d.total_intervals() == 0

    def test_single_edge_graph(self, tmp_path):
        g = tmp_path / "g.tsv"
        g.write_text("# vertices=2\n0\t1\t0.2\n")
        out = str(tmp_path / "d.csv")
        assert main(["ph", str(g), "-o", out]) == 0
        d = read_diagram_csv(out)
        # one vertex pair dies at 0.2, the surviving component is capped at 1.0
        assert sorted(d.intervals(0)) == [(0.0, 0.2), (0.0, 1.0)]

    def test_raw_keeps_infinity(self, tmp_path):
        g = tmp_path / "g.tsv"
        g.write_text("# vertices=2\n0\t1\t0.2\n")
        out = str(tmp_path / "d.csv")
        assert main(["ph", str(g), "-o", out, "--raw"]) == 0
        d = read_diagram_csv(out)
        assert (0.0, INF) in d.intervals(0)

    def test_weight_out_of_range_rejected(self, tmp_path, capsys):
        g = tmp_path / "g.tsv"
        g.write_text("# vertices=2\n0\t1\t1.5\n")
        assert main(["ph", str(g), "-o", str(tmp_path / "d.csv")]) == 1
        assert "outside" in capsys.readouterr().err

    def test_deterministic_outputs(self, tmp_path, two_layer_weights):
        gpath = str(tmp_path / "g.tsv")
        main(["graph", two_layer_weights, "-o", gpath])
        out1, out2 = str(tmp_path / "d1.csv"), str(tmp_path / "d2.csv")
        assert main(["ph", gpath, "-o", out1]) == 0
        assert main(["ph", gpath, "-o", out2]) == 0
        assert Path(out1).read_bytes() == Path(out2).read_bytes()
        assert (Path(out1 + ".config.json").read_bytes()
                == Path(out2 + ".config.json").read_bytes())

    def test_batch_with_workers_and_dump(self, tmp_path):
        rng = np.random.default_rng(9)
        graph_paths = []
        for i in range(3):
            w = mlp_json(rng, [3, 4, 2], tmp_path / f"w{i}.json")
            gpath = str(tmp_path / f"g{i}.tsv")
            main(["graph", w, "-o", gpath])
            graph_paths.append(gpath)
        out_dir = tmp_path / "diagrams"
        assert main(["ph", *graph_paths, "--out-dir", str(out_dir),
                     "--workers", "2", "--dump-complex"]) == 0
        assert sorted(p.name for p in out_dir.glob("*.diagram.csv")) == \
            ["g0.diagram.csv", "g1.diagram.csv", "g2.diagram.csv"]
        assert (out_dir / "g0.complex.tsv").exists()
        assert (out_dir / "pipeline.config.json").exists()

    def test_multiple_inputs_require_out_dir(self, tmp_path, capsys):
        g = tmp_path / "g.tsv"
        g.write_text("# vertices=0\n")
        assert main(["ph", str(g), str(g), "-o", str(tmp_path / "d.csv")]) == 1


class TestVecDistMatrix:
    def _diagram_file(self, tmp_path, rng, name, sizes=(3, 4, 2)):
        w = mlp_json(rng, list(sizes), tmp_path / f"{name}.json")
        gpath = str(tmp_path / f"{name}.tsv")
        main(["graph", w, "-o", gpath])
        dpath = str(tmp_path / f"{name}.csv")
        main(["ph", gpath, "-o", dpath])
        return dpath

    def test_vec_writes_csv_and_sidecar(self, tmp_path):
        rng = np.random.default_rng(21)
        dpath = self._diagram_file(tmp_path, rng, "net")
        out = str(tmp_path / "v.csv")
        assert main(["vec", dpath, "-o", out, "--measure", "landscape",
                     "--grid-resolution", "24", "--landscape-layers", "3"]) == 0
        sidecar = json.loads(Path(out).with_suffix(".json").read_text())
        assert sidecar["kind"] == "landscape"
        assert sidecar["grid"]["resolution"] == 24

    def test_dist_single_file_zero_matrix(self, tmp_path):
        rng = np.random.default_rng(22)
        dpath = self._diagram_file(tmp_path, rng, "net")
        prefix = str(tmp_path / "out")
        assert main(["dist", dpath, "--out-prefix", prefix, "--no-plot"]) == 0
        mean = read_matrix_csv(prefix + ".mean.csv")
        assert mean.shape == (1, 1)
        assert mean[0, 0] == 0.0

    def test_dist_renders_heatmap(self, tmp_path):
        rng = np.random.default_rng(23)
        d1 = self._diagram_file(tmp_path, rng, "n1")
        d2 = self._diagram_file(tmp_path, rng, "n2")
        prefix = str(tmp_path / "report")
        assert main(["dist", d1, d2, "--out-prefix", prefix,
                     "--grid-resolution", "32"]) == 0
        assert Path(prefix + ".mean.png").exists()
        assert Path(prefix + ".std.png").exists()
        manifest = json.loads(Path(prefix + ".json").read_text())
        assert manifest["labels"] == ["n1", "n2"]

    def test_dist_mismatched_grids_rejected(self, tmp_path, capsys):
        rng = np.random.default_rng(24)
        dpath = self._diagram_file(tmp_path, rng, "net")
        v1 = str(tmp_path / "v1.csv")
        v2 = str(tmp_path / "v2.csv")
        main(["vec", dpath, "-o", v1, "--grid-resolution", "24"])
        main(["vec", dpath, "-o", v2, "--grid-resolution", "32"])
        assert main(["dist", v1, v2, "--out-prefix", str(tmp_path / "x"),
                     "--no-plot"]) == 1
        assert "grids differ" in capsys.readouterr().err

    def test_matrix_nineteen_experiments(self, tmp_path):
        rng = np.random.default_rng(25)
        entries = []
        for i in range(19):
            d1 = self._diagram_file(tmp_path, rng, f"e{i}r0")
            d2 = self._diagram_file(tmp_path, rng, f"e{i}r1")
            entries.append({"label": f"exp{i + 1}", "diagrams": [d1, d2]})
        manifest_path = tmp_path / "manifest.json"
        manifest_path.write_text(json.dumps({"experiments": entries}))
        prefix = str(tmp_path / "matrix")
        assert main(["matrix", "--manifest", str(manifest_path),
                     "--out-prefix", prefix, "--no-plot",
                     "--grid-resolution", "16", "--measure", "silhouette"]) == 0
        mean = read_matrix_csv(prefix + ".mean.csv")
        std = read_matrix_csv(prefix + ".std.csv")
        assert mean.shape == (19, 19)
        assert std.shape == (19, 19)


class TestCompareBaseline:
    def test_permuted_networks_contrast(self, tmp_path):
        rng = np.random.default_rng(31)
        mlp = random_mlp(rng, [3, 4, 2])
        layers = [{"weights": l.weights.tolist(), "bias": l.bias.tolist()} for l in mlp.layers]
        a = write_weights(tmp_path / "a.json", layers)
        # permute hidden neurons: rows of layer 0 and columns of layer 1
        perm = [2, 0, 3, 1]
        permuted = [
            {"weights": mlp.layers[0].weights[perm].tolist(),
             "bias": mlp.layers[0].bias[perm].tolist()},
            {"weights": mlp.layers[1].weights[:, perm].tolist(),
             "bias": mlp.layers[1].bias.tolist()},
        ]
        b = write_weights(tmp_path / "b.json", permuted)
        out = str(tmp_path / "cmp.json")
        assert main(["compare-baseline", a, b, "-o", out,
                     "--grid-resolution", "40"]) == 0
        result = json.loads(Path(out).read_text())
        assert result["norm1"] > 0.0
        assert result["frobenius"] > 0.0
        assert result["heat_distance"] <= 1e-9

    def test_shape_mismatch(self, tmp_path, capsys):
        rng = np.random.default_rng(32)
        a = mlp_json(rng, [3, 4, 2], tmp_path / "a.json")
        b = mlp_json(rng, [3, 5, 2], tmp_path / "b.json")
        assert main(["compare-baseline", a, b]) == 1
        assert "shape mismatch" in capsys.readouterr().err


class TestExitCodes:
    def test_usage_error_is_input_error(self):
        assert main(["ph"]) == 1

    def test_missing_file(self, tmp_path):
        assert main(["graph", str(tmp_path / "nope.json"), "-o", "x"]) == 1

    def test_help_exits_zero(self):
        assert main(["--help"]) == 0
