/**
 * Desk-scale experiment harness.
 *
 * Reproduces the control-experiment layout at laptop size: a 19-experiment
 * grid (4 layer widths, 5 depths, 5 input orders, 5 label counts) trained
 * several times each, pushed through the topology pipeline's CLI, and
 * aggregated into 19x19 mean/std distance matrices per measure. The
 * harness then checks that the input-order block (the control group) is
 * markedly dimmer than its cross-group distances.
 */

import { execFileSync } from "node:child_process";
import * as fs from "node:fs";
import * as path from "node:path";

import { Checkpoint, saveCheckpoint, trainToy } from "./checkpoint.js";
import { DatasetTag } from "./datasets.js";
import { exportCheckpoint } from "./interchange.js";

export interface ExperimentSpec {
  /** 1-based index matching the matrix row/column order */
  index: number;
  label: string;
  group: "layer-size" | "num-layers" | "input-order" | "num-labels";
  width: number;
  depth: number;
  labels: number;
  permSeed: number;
}

export interface HarnessConfig {
  outDir: string;
  dataset: DatasetTag;
  runs: number;
  samplesPerClass: number;
  epochs: number;
  baseWidth: number;
  baseDepth: number;
  baseLabels: number;
  widths: number[];
  depths: number[];
  labelCounts: number[];
  inputOrderSeeds: number[];
  measures: string[];
  gridResolution: number;
  workers: number;
  nntopoBin: string;
  plot: boolean;
}

export const DEFAULT_HARNESS: HarnessConfig = {
  outDir: "harness-out",
  dataset: "digits",
  runs: 5,
  samplesPerClass: 30,
  epochs: 40,
  baseWidth: 64,
  baseDepth: 2,
  baseLabels: 10,
  widths: [16, 32, 64, 128],
  depths: [2, 4, 6, 8, 10],
  labelCounts: [2, 4, 6, 8, 10],
  inputOrderSeeds: [1, 2, 3, 4, 5],
  measures: ["heat", "silhouette", "landscape"],
  gridResolution: 100,
  workers: 4,
  nntopoBin: process.env.NNTOPO_BIN ?? "nntopo",
  plot: true,
};

export function experimentGrid(cfg: HarnessConfig): ExperimentSpec[] {
  const grid: ExperimentSpec[] = [];
  let index = 1;
  for (const width of cfg.widths) {
    grid.push({ index: index++, label: `width-${width}`, group: "layer-size",
                width, depth: cfg.baseDepth, labels: cfg.baseLabels, permSeed: 0 });
  }
  for (const depth of cfg.depths) {
    grid.push({ index: index++, label: `depth-${depth}`, group: "num-layers",
                width: cfg.baseWidth, depth, labels: cfg.baseLabels, permSeed: 0 });
  }
  for (const seed of cfg.inputOrderSeeds) {
    grid.push({ index: index++, label: `order-${seed}`, group: "input-order",
                width: cfg.baseWidth, depth: cfg.baseDepth, labels: cfg.baseLabels, permSeed: seed });
  }
  for (const labels of cfg.labelCounts) {
    grid.push({ index: index++, label: `labels-${labels}`, group: "num-labels",
                width: cfg.baseWidth, depth: cfg.baseDepth, labels, permSeed: 0 });
  }
  return grid;
}

export interface RunRecord {
  checkpoint: string;
  weights: string;
  graph: string;
  diagram: string;
  trainAccuracy: number;
  converged: boolean;
}

export interface SeparationResult {
  intraControlMean: number;
  crossGroupMean: number;
  ratio: number;
  pass: boolean;
}

export interface HarnessReport {
  experiments: { index: number; label: string; group: string; runs: RunRecord[] }[];
  matrixShape: [number, number];
  separation: Record<string, SeparationResult>;
  nonConvergedRuns: string[];
  timingsMs: Record<string, number>;
  pass: boolean;
}

function sh(bin: string, args: string[]): void {
  execFileSync(bin, args, { stdio: ["ignore", "ignore", "inherit"] });
}

export function readCsvMatrix(file: string): number[][] {
  return fs
    .readFileSync(file, "utf-8")
    .trim()
    .split("\n")
    .map((line) => line.split(",").map(Number));
}

/** Mean over the control block's off-diagonal cells vs control-to-rest cells. */
export function controlSeparation(
  mean: number[][],
  controlIdx: number[],
): { intra: number; cross: number } {
  const control = new Set(controlIdx);
  let intra = 0;
  let intraCount = 0;
  let cross = 0;
  let crossCount = 0;
  for (const i of controlIdx) {
    for (let j = 0; j < mean.length; j++) {
      if (j === i) continue;
      if (control.has(j)) {
        intra += mean[i][j];
        intraCount++;
      } else {
        cross += mean[i][j];
        crossCount++;
      }
    }
  }
  return { intra: intra / intraCount, cross: cross / crossCount };
}

export function runHarness(cfg: HarnessConfig): HarnessReport {
  const t0 = Date.now();
  const grid = experimentGrid(cfg);
  const dirs = {
    checkpoints: path.join(cfg.outDir, "checkpoints"),
    weights: path.join(cfg.outDir, "weights"),
    graphs: path.join(cfg.outDir, "graphs"),
    diagrams: path.join(cfg.outDir, "diagrams"),
    matrices: path.join(cfg.outDir, "matrices"),
  };
  for (const d of Object.values(dirs)) fs.mkdirSync(d, { recursive: true });

  const timings: Record<string, number> = {};
  const experiments: HarnessReport["experiments"] = [];
  const nonConverged: string[] = [];

  // 1. train + export every run
  let t = Date.now();
  for (const spec of grid) {
    const runs: RunRecord[] = [];
    for (let run = 0; run < cfg.runs; run++) {
      const tag = `exp${String(spec.index).padStart(2, "0")}_run${run}`;
      const ckpt: Checkpoint = trainToy({
        dataset: cfg.dataset,
        width: spec.width,
        depth: spec.depth,
        labels: spec.labels,
        permSeed: spec.permSeed,
        initSeed: spec.index * 1000 + run,
        samplesPerClass: cfg.samplesPerClass,
        train: { epochs: cfg.epochs },
      });
      const ckptPath = path.join(dirs.checkpoints, `${tag}.ckpt.json`);
      const weightsPath = path.join(dirs.weights, `${tag}.weights.json`);
      saveCheckpoint(ckpt, ckptPath);
      exportCheckpoint(ckpt, weightsPath, "dense");
      if (!ckpt.meta.converged) nonConverged.push(tag);
      runs.push({
        checkpoint: ckptPath,
        weights: weightsPath,
        graph: path.join(dirs.graphs, `${tag}.tsv`),
        diagram: path.join(dirs.diagrams, `${tag}.diagram.csv`),
        trainAccuracy: ckpt.meta.trainAccuracy,
        converged: ckpt.meta.converged,
      });
    }
    experiments.push({ index: spec.index, label: spec.label, group: spec.group, runs });
  }
  timings.trainMs = Date.now() - t;

  // 2. weight JSON -> graph TSV
  t = Date.now();
  for (const exp of experiments) {
    for (const run of exp.runs) {
      sh(cfg.nntopoBin, ["graph", run.weights, "-o", run.graph]);
    }
  }
  timings.graphMs = Date.now() - t;

  // 3. persistent homology for every graph in one batch
  t = Date.now();
  const allGraphs = experiments.flatMap((e) => e.runs.map((r) => r.graph));
  sh(cfg.nntopoBin, [
    "ph", ...allGraphs,
    "--out-dir", dirs.diagrams,
    "--workers", String(cfg.workers),
  ]);
  timings.phMs = Date.now() - t;

  // 4. distance matrices per measure
  t = Date.now();
  const manifest = {
    experiments: experiments.map((e) => ({
      label: e.label,
      diagrams: e.runs.map((r) => path.relative(cfg.outDir, r.diagram)),
    })),
  };
  const manifestPath = path.join(cfg.outDir, "manifest.json");
  fs.writeFileSync(manifestPath, JSON.stringify(manifest, null, 2) + "\n");
  for (const measure of cfg.measures) {
    sh(cfg.nntopoBin, [
      "matrix",
      "--manifest", manifestPath,
      "--out-prefix", path.join(dirs.matrices, measure),
      "--measure", measure,
      "--grid-resolution", String(cfg.gridResolution),
      cfg.plot ? "--plot" : "--no-plot",
    ]);
  }
  timings.matrixMs = Date.now() - t;

  // 5. control-block separation
  const controlIdx = grid.filter((s) => s.group === "input-order").map((s) => s.index - 1);
  const separation: Record<string, SeparationResult> = {};
  let shape: [number, number] = [0, 0];
  for (const measure of cfg.measures) {
    const mean = readCsvMatrix(path.join(dirs.matrices, `${measure}.mean.csv`));
    shape = [mean.length, mean[0].length];
    const { intra, cross } = controlSeparation(mean, controlIdx);
    separation[measure] = {
      intraControlMean: intra,
      crossGroupMean: cross,
      ratio: intra / cross,
      pass: intra < 0.5 * cross,
    };
  }
  timings.totalMs = Date.now() - t0;

  const shapeOk = shape[0] === grid.length && shape[1] === grid.length;
  const separationOk = ["heat", "silhouette"].every(
    (m) => !(m in separation) || separation[m].pass,
  );
  const report: HarnessReport = {
    experiments,
    matrixShape: shape,
    separation,
    nonConvergedRuns: nonConverged,
    timingsMs: timings,
    pass: shapeOk && separationOk,
  };
  fs.writeFileSync(path.join(cfg.outDir, "report.json"), JSON.stringify(report, null, 2) + "\n");
  return report;
}
