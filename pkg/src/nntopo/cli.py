"""Command-line pipeline: graph, ph, vec, dist, matrix, compare-baseline.

Every command resolves a full PipelineConfig (config file overridden by
explicit flags) and writes it next to its outputs, so a run can be
reproduced from its artifacts alone. Exit codes: 0 success, 1 input error,
2 numerical/internal error.
"""

from __future__ import annotations

import concurrent.futures
import json
import sys
from pathlib import Path

import click

from .config import PipelineConfig
from .diagrams import cap_infinity, filter_diagram
from .distances import (
    assemble_matrix,
    baseline_norm_distance,
    network_distance,
    write_matrix_csv,
    write_matrix_manifest,
)
from .flagcomplex import enumerate_simplices, superlevel_transform, write_complex
from .graph import (
    WeightedDigraph,
    adjacency_matrix,
    build_graph,
    load_mlp_json,
    read_graph_tsv,
    write_graph_tsv,
)
from .persistence import (
    PersistenceDiagram,
    compute_persistence,
    read_diagram_csv,
    write_diagram_csv,
)
from .vectorize import read_vectorization, vectorize_diagram, write_vectorization

_INPUT_ERRORS = (ValueError, OSError, KeyError)


def run_persistence(g: WeightedDigraph, cfg: PipelineConfig) -> PersistenceDiagram:
    """Flag complex + persistence for one graph under a config."""
    complex_ = enumerate_simplices(g, max_dim=min(cfg.max_degree + 1, 4))
    if cfg.superlevel:
        complex_ = superlevel_transform(complex_)
    return compute_persistence(complex_, max_degree=cfg.max_degree)


def clean_diagram(d: PersistenceDiagram, cfg: PipelineConfig):
    return cap_infinity(filter_diagram(d, cfg.eta), cfg.infinity_cap)


def vectorize_with_config(clean, cfg: PipelineConfig):
    return vectorize_diagram(
        clean,
        kind=cfg.measure,
        grid=cfg.grid,
        max_degree=cfg.max_degree,
        k_layers=cfg.landscape_layers,
        power=cfg.silhouette_power,
        sigma=cfg.sigma,
    )


def _config_options(fn):
    decorators = [
        click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
                     default=None, help="JSON config file; explicit flags override it."),
        click.option("--zeta", type=float, default=None, help="Normalization smoothing floor."),
        click.option("--eta", type=float, default=None, help="Minimum interval lifespan kept."),
        click.option("--infinity-cap", type=float, default=None, help="Replacement for infinite deaths."),
        click.option("--max-degree", type=int, default=None, help="Highest homology degree (0-3)."),
        click.option("--grid-min", type=float, default=None),
        click.option("--grid-max", type=float, default=None),
        click.option("--grid-resolution", type=int, default=None),
        click.option("--sigma", type=float, default=None, help="Heat kernel bandwidth."),
        click.option("--landscape-layers", type=int, default=None),
        click.option("--silhouette-power", type=float, default=None),
        click.option("--measure", type=click.Choice(["heat", "silhouette", "landscape"]), default=None),
        click.option("--superlevel/--sublevel", "superlevel", default=None,
                     help="Flip the filtration convention (min-edge-weight entry)."),
        click.option("--seed", type=int, default=None),
        click.option("--bias-mode", type=click.Choice(["per-layer", "per-neuron"]), default=None),
    ]
    for dec in reversed(decorators):
        fn = dec(fn)
    return fn


def _resolve_config(config_path, **overrides) -> PipelineConfig:
    cfg = PipelineConfig.load(config_path) if config_path else PipelineConfig()
    fields = {k: v for k, v in overrides.items() if v is not None}
    if fields:
        d = cfg.to_dict()
        d.update(fields)
        cfg = PipelineConfig.from_dict(d)
    return cfg


@click.group()
def cli():
    """Topological fingerprints of MLP weight graphs."""


@cli.command("graph")
@click.argument("weights_json", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", required=True, type=click.Path(dir_okay=False))
@_config_options
def cmd_graph(weights_json, output, config_path, **overrides):
    """Convert interchange weight JSON into the TSV edge-list graph."""
    cfg = _resolve_config(config_path, **overrides)
    mlp = load_mlp_json(weights_json)
    g = build_graph(mlp, zeta=cfg.zeta, bias_mode=cfg.bias_mode)
    write_graph_tsv(g, output)
    cfg.write(output + ".config.json")
    click.echo(f"wrote {output}: {g.num_vertices} vertices, {g.num_edges} edges")


def _ph_one(args) -> str:
    in_path, out_path, cfg_dict, raw, dump_path, plot = args
    cfg = PipelineConfig.from_dict(cfg_dict)
    g = read_graph_tsv(in_path)
    complex_ = enumerate_simplices(g, max_dim=min(cfg.max_degree + 1, 4))
    if cfg.superlevel:
        complex_ = superlevel_transform(complex_)
    if dump_path:
        write_complex(complex_, dump_path)
    diagram = compute_persistence(complex_, max_degree=cfg.max_degree)
    if not raw:
        clean = clean_diagram(diagram, cfg)
        diagram = PersistenceDiagram(degrees=clean.degrees)
    write_diagram_csv(diagram, out_path)
    if plot:
        from . import report  # matplotlib import is slow; only pay when plotting

        report.render_diagram(diagram, str(Path(out_path).with_suffix(".png")),
                              cap=cfg.infinity_cap)
    return out_path


@cli.command("ph")
@click.argument("graphs", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Diagram CSV (single input only).")
@click.option("--out-dir", type=click.Path(file_okay=False), default=None,
              help="Directory for <stem>.diagram.csv outputs.")
@click.option("--raw", is_flag=True, help="Skip lifespan filtering and infinity capping.")
@click.option("--dump-complex", is_flag=True, help="Also write <stem>.complex.tsv.")
@click.option("--plot", is_flag=True, help="Also render a diagram scatter PNG.")
@click.option("--workers", type=int, default=1, show_default=True)
@_config_options
def cmd_ph(graphs, output, out_dir, raw, dump_complex, plot, workers, config_path, **overrides):
    """Persistent homology of graph TSVs: filtered diagrams as CSV."""
    cfg = _resolve_config(config_path, **overrides)
    if output and len(graphs) > 1:
        raise click.UsageError("use --out-dir with multiple inputs")
    if output is None and out_dir is None:
        raise click.UsageError("one of --output/--out-dir is required")

    jobs = []
    for path in graphs:
        stem = Path(path).stem
        if output:
            out_path = output
            dump_path = str(Path(output).with_suffix(".complex.tsv")) if dump_complex else None
        else:
            Path(out_dir).mkdir(parents=True, exist_ok=True)
            out_path = str(Path(out_dir) / f"{stem}.diagram.csv")
            dump_path = str(Path(out_dir) / f"{stem}.complex.tsv") if dump_complex else None
        jobs.append((path, out_path, cfg.to_dict(), raw, dump_path, plot))

    if workers > 1 and len(jobs) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            done = list(pool.map(_ph_one, jobs))
    else:
        done = [_ph_one(job) for job in jobs]

    if output:
        cfg.write(output + ".config.json")
    else:
        cfg.write(str(Path(out_dir) / "pipeline.config.json"))
    for path in done:
        click.echo(f"wrote {path}")


@cli.command("vec")
@click.argument("diagram_csv", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", required=True, type=click.Path(dir_okay=False))
@_config_options
def cmd_vec(diagram_csv, output, config_path, **overrides):
    """Vectorize a diagram CSV onto the configured grid (CSV + JSON sidecar)."""
    cfg = _resolve_config(config_path, **overrides)
    diagram = read_diagram_csv(diagram_csv)
    clean = clean_diagram(diagram, cfg)
    per_degree = vectorize_with_config(clean, cfg)
    sidecar = str(Path(output).with_suffix(".json"))
    write_vectorization(per_degree, cfg.measure, output, sidecar)
    cfg.write(output + ".config.json")
    click.echo(f"wrote {output} (+ {sidecar})")


def _load_inputs_as_vectorizations(paths, cfg):
    """Diagram CSVs are vectorized under cfg; vec CSVs load from their sidecars.

    The two formats are told apart by content: diagram files start with the
    'degree,birth,death' header, vectorization files rely on their JSON
    sidecar.
    """
    out = []
    for path in paths:
        with open(path) as fh:
            first = fh.readline().strip()
        if first == "degree,birth,death":
            diagram = read_diagram_csv(path)
            per_degree = vectorize_with_config(clean_diagram(diagram, cfg), cfg)
        else:
            sidecar = Path(path).with_suffix(".json")
            if not sidecar.exists():
                raise ValueError(f"{path}: not a diagram CSV and no {sidecar.name} sidecar found")
            per_degree, kind = read_vectorization(path, str(sidecar))
            if kind != cfg.measure:
                raise ValueError(
                    f"{path}: vectorization kind {kind!r} does not match measure {cfg.measure!r}"
                )
        out.append(per_degree)
    return out


def _emit_matrix(dm, out_prefix, cfg, plot):
    write_matrix_csv(dm.mean, f"{out_prefix}.mean.csv")
    write_matrix_csv(dm.std, f"{out_prefix}.std.csv")
    write_matrix_manifest(dm, f"{out_prefix}.json")
    if plot:
        from . import report  # matplotlib import is slow; only pay when plotting

        report.render_matrix(dm, f"{out_prefix}.mean.png", which="mean")
        report.render_matrix(dm, f"{out_prefix}.std.png", which="std")
    cfg.write(f"{out_prefix}.config.json")
    click.echo(f"wrote {out_prefix}.mean.csv / .std.csv / .json")


@cli.command("dist")
@click.argument("inputs", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out-prefix", required=True, help="Prefix for .mean.csv/.std.csv/.json[/.png].")
@click.option("--plot/--no-plot", default=True, show_default=True)
@_config_options
def cmd_dist(inputs, out_prefix, plot, config_path, **overrides):
    """Pairwise distance matrix; each input (diagram or vec CSV) is one experiment."""
    cfg = _resolve_config(config_path, **overrides)
    vecs = _load_inputs_as_vectorizations(inputs, cfg)
    experiments = [
        (Path(path).stem.removesuffix(".diagram"), [vec])
        for path, vec in zip(inputs, vecs)
    ]
    dm = assemble_matrix(experiments, measure=cfg.measure,
                         degree_weights=cfg.degree_weights)
    _emit_matrix(dm, out_prefix, cfg, plot)


@cli.command("matrix")
@click.option("--manifest", "manifest_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help='JSON: {"experiments": [{"label": ..., "diagrams": [paths]}]}')
@click.option("--out-prefix", required=True)
@click.option("--plot/--no-plot", default=True, show_default=True)
@_config_options
def cmd_matrix(manifest_path, out_prefix, plot, config_path, **overrides):
    """Mean/std distance matrix over labeled experiments with repeated runs."""
    cfg = _resolve_config(config_path, **overrides)
    with open(manifest_path) as fh:
        manifest = json.load(fh)
    if "experiments" not in manifest:
        raise ValueError(f"{manifest_path}: missing 'experiments' list")
    base = Path(manifest_path).parent
    experiments = []
    for entry in manifest["experiments"]:
        paths = [str(base / p) if not Path(p).is_absolute() else p for p in entry["diagrams"]]
        vecs = _load_inputs_as_vectorizations(paths, cfg)
        experiments.append((entry["label"], vecs))
    dm = assemble_matrix(experiments, measure=cfg.measure,
                         degree_weights=cfg.degree_weights)
    _emit_matrix(dm, out_prefix, cfg, plot)


@cli.command("compare-baseline")
@click.argument("weights_a", type=click.Path(exists=True, dir_okay=False))
@click.argument("weights_b", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Optional JSON report path.")
@_config_options
def cmd_compare_baseline(weights_a, weights_b, output, config_path, **overrides):
    """Adjacency-norm baselines vs the topological distance for two networks."""
    cfg = _resolve_config(config_path, **overrides)
    graphs = []
    for path in (weights_a, weights_b):
        mlp = load_mlp_json(path)
        graphs.append(build_graph(mlp, zeta=cfg.zeta, bias_mode=cfg.bias_mode))
    a, b = (adjacency_matrix(g) for g in graphs)
    result = {
        "norm1": baseline_norm_distance(a, b, "norm1"),
        "frobenius": baseline_norm_distance(a, b, "frobenius"),
    }
    vec_pair = [
        vectorize_with_config(clean_diagram(run_persistence(g, cfg), cfg), cfg)
        for g in graphs
    ]
    result[f"{cfg.measure}_distance"] = network_distance(
        vec_pair[0], vec_pair[1], degree_weights=cfg.degree_weights
    )
    text = json.dumps(result, indent=2, sort_keys=True)
    click.echo(text)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
        cfg.write(output + ".config.json")


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 1
    except _INPUT_ERRORS as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except Exception as exc:  # numerical / internal
        click.echo(f"internal error: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
