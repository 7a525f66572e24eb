#!/usr/bin/env node
/**
 * Exporter CLI.
 *
 *   train-toy --dataset digits --width 64 --depth 2 --labels 10 \
 *             --perm-seed 0 --init-seed 1 --out ckpt.json
 *   export    --ckpt ckpt.json --layers dense --out weights.json
 *   harness   [--out-dir DIR] [--runs 5] [--epochs 40] [--dataset digits]
 *             [--workers 4] [--no-plot] [--quick]
 */

import { parseArgs } from "node:util";

import { loadCheckpoint, saveCheckpoint, trainToy } from "./checkpoint.js";
import { DatasetTag } from "./datasets.js";
import { exportCheckpoint } from "./interchange.js";
import { DEFAULT_HARNESS, runHarness } from "./harness.js";

function intOption(value: string | undefined, fallback: number): number {
  if (value === undefined) return fallback;
  const n = Number(value);
  if (!Number.isFinite(n)) throw new Error(`expected a number, got ${value}`);
  return n;
}

function cmdTrainToy(argv: string[]): number {
  const { values } = parseArgs({
    args: argv,
    options: {
      dataset: { type: "string", default: "digits" },
      width: { type: "string" },
      depth: { type: "string" },
      labels: { type: "string" },
      "perm-seed": { type: "string", default: "0" },
      "init-seed": { type: "string", default: "0" },
      samples: { type: "string" },
      epochs: { type: "string" },
      out: { type: "string" },
    },
  });
  if (!values.out) throw new Error("--out is required");
  const ckpt = trainToy({
    dataset: values.dataset as DatasetTag,
    width: intOption(values.width, 64),
    depth: intOption(values.depth, 2),
    labels: intOption(values.labels, 10),
    permSeed: intOption(values["perm-seed"], 0),
    initSeed: intOption(values["init-seed"], 0),
    samplesPerClass: values.samples ? intOption(values.samples, 30) : undefined,
    train: values.epochs ? { epochs: intOption(values.epochs, 40) } : undefined,
  });
  saveCheckpoint(ckpt, values.out);
  const { trainAccuracy, converged } = ckpt.meta;
  console.log(
    `wrote ${values.out} (accuracy ${(trainAccuracy * 100).toFixed(1)}%` +
      `${converged ? "" : ", NOT converged"})`,
  );
  return 0;
}

function cmdExport(argv: string[]): number {
  const { values } = parseArgs({
    args: argv,
    options: {
      ckpt: { type: "string" },
      layers: { type: "string", default: "dense" },
      out: { type: "string" },
    },
  });
  if (!values.ckpt || !values.out) throw new Error("--ckpt and --out are required");
  const ckpt = loadCheckpoint(values.ckpt);
  const selection = values.layers === "dense" ? "dense" : values.layers!.split(",");
  const manifest = exportCheckpoint(ckpt, values.out, selection);
  console.log(
    `wrote ${manifest.outputPath}: layers [${manifest.layerNames.join(", ")}], ` +
      `shapes ${manifest.shapes.map(([o, i]) => `${o}x${i}`).join(" -> ")}`,
  );
  return 0;
}

function cmdHarness(argv: string[]): number {
  const { values } = parseArgs({
    args: argv,
    options: {
      "out-dir": { type: "string" },
      dataset: { type: "string" },
      runs: { type: "string" },
      samples: { type: "string" },
      epochs: { type: "string" },
      workers: { type: "string" },
      "grid-resolution": { type: "string" },
      "no-plot": { type: "boolean", default: false },
      quick: { type: "boolean", default: false },
    },
  });
  const cfg = { ...DEFAULT_HARNESS };
  if (values["out-dir"]) cfg.outDir = values["out-dir"];
  if (values.dataset) cfg.dataset = values.dataset as DatasetTag;
  cfg.runs = intOption(values.runs, cfg.runs);
  cfg.samplesPerClass = intOption(values.samples, cfg.samplesPerClass);
  cfg.epochs = intOption(values.epochs, cfg.epochs);
  cfg.workers = intOption(values.workers, cfg.workers);
  cfg.gridResolution = intOption(values["grid-resolution"], cfg.gridResolution);
  cfg.plot = !values["no-plot"];
  if (values.quick) {
    cfg.runs = 2;
    cfg.samplesPerClass = 12;
    cfg.epochs = 12;
  }

  const report = runHarness(cfg);
  console.log(`matrix shape: ${report.matrixShape[0]}x${report.matrixShape[1]}`);
  for (const [measure, sep] of Object.entries(report.separation)) {
    console.log(
      `${measure}: intra-control ${sep.intraControlMean.toFixed(4)} vs ` +
        `cross-group ${sep.crossGroupMean.toFixed(4)} ` +
        `(ratio ${sep.ratio.toFixed(3)}) ${sep.pass ? "PASS" : "FAIL"}`,
    );
  }
  if (report.nonConvergedRuns.length > 0) {
    console.log(`non-converged runs: ${report.nonConvergedRuns.join(", ")}`);
  }
  console.log(`total ${(report.timingsMs.totalMs / 1000).toFixed(1)}s; ` +
    `report at ${cfg.outDir}/report.json`);
  console.log(report.pass ? "HARNESS PASS" : "HARNESS FAIL");
  return report.pass ? 0 : 1;
}

function main(): number {
  const [command, ...rest] = process.argv.slice(2);
  try {
    switch (command) {
      case "train-toy":
        return cmdTrainToy(rest);
      case "export":
        return cmdExport(rest);
      case "harness":
        return cmdHarness(rest);
      default:
        console.error("usage: nntopo-exporter <train-toy|export|harness> [options]");
        return 1;
    }
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 1;
  }
}

process.exit(main());
