/**
 * Checkpoint format for the toy trainer.
 *
 * A checkpoint is a JSON document carrying typed layers (dense trainable
 * layers, plus frozen conv layers when a feature-extractor prefix is
 * simulated) and the metadata needed to reproduce the run: dataset tag,
 * architecture, and both seeds. JSON numbers round-trip float64 exactly,
 * so saving and loading is lossless.
 */

import * as fs from "node:fs";

import { DatasetTag, makeDataset, permuteFeatures } from "./datasets.js";
import { accuracy, DEFAULT_TRAIN, initMlp, Mlp, train, TrainOptions } from "./mlp.js";

export const FRAMEWORK_TAG = "toy-mlp/1";

export interface DenseLayerJson {
  kind: "dense";
  name: string;
  /** [outDim][inDim] */
  weights: number[][];
  bias: number[];
}

export interface ConvLayerJson {
  kind: "conv2d";
  name: string;
  /** flattened kernel stand-in; never exported to the topology pipeline */
  kernel: number[];
  frozen: true;
}

export type CheckpointLayer = DenseLayerJson | ConvLayerJson;

export interface CheckpointMeta {
  dataset: DatasetTag;
  width: number;
  depth: number;
  labels: number;
  permSeed: number;
  initSeed: number;
  samplesPerClass: number;
  epochs: number;
  trainAccuracy: number;
  converged: boolean;
  inputOrder: number[];
}

export interface Checkpoint {
  framework: string;
  layers: CheckpointLayer[];
  meta: CheckpointMeta;
}

export const CONVERGENCE_THRESHOLD = 0.8;

export interface TrainToyOptions {
  dataset: DatasetTag;
  width: number;
  depth: number;
  labels: number;
  permSeed: number;
  initSeed: number;
  samplesPerClass?: number;
  train?: Partial<TrainOptions>;
}

function denseToJson(mlp: Mlp): DenseLayerJson[] {
  return mlp.layers.map((layer, k) => {
    const weights: number[][] = [];
    for (let i = 0; i < layer.outDim; i++) {
      const row: number[] = new Array(layer.inDim);
      for (let j = 0; j < layer.inDim; j++) row[j] = layer.weights[i * layer.inDim + j];
      weights.push(row);
    }
    return { kind: "dense", name: `dense_${k}`, weights, bias: Array.from(layer.bias) };
  });
}

/**
 * Train one toy MLP and return its checkpoint.
 *
 * The architecture is featureCount -> width x depth -> labels. The input
 * feature order is permuted by permSeed (0 = original order, the control
 * experiment varies this). Non-converging runs are flagged in the
 * metadata, not rejected.
 */
export function trainToy(opts: TrainToyOptions): Checkpoint {
  if (opts.width < 1 || opts.depth < 1) {
    throw new Error(`width and depth must be positive, got ${opts.width}x${opts.depth}`);
  }
  const samplesPerClass = opts.samplesPerClass ?? 30;
  const raw = makeDataset(opts.dataset, samplesPerClass, 0xabc0 + opts.labels, opts.labels);
  const { data, order } = permuteFeatures(raw, opts.permSeed);
  const sizes = [data.featureCount, ...Array(opts.depth).fill(opts.width), opts.labels];
  const mlp = initMlp(sizes, opts.initSeed);
  const trainOpts: TrainOptions = { ...DEFAULT_TRAIN, ...opts.train };
  train(mlp, data, trainOpts);
  const acc = accuracy(mlp, data);
  return {
    framework: FRAMEWORK_TAG,
    layers: denseToJson(mlp),
    meta: {
      dataset: opts.dataset,
      width: opts.width,
      depth: opts.depth,
      labels: opts.labels,
      permSeed: opts.permSeed,
      initSeed: opts.initSeed,
      samplesPerClass,
      epochs: trainOpts.epochs,
      trainAccuracy: acc,
      converged: acc >= CONVERGENCE_THRESHOLD,
      inputOrder: order,
    },
  };
}

/** Prepend a fake frozen conv feature extractor, as a CNN-head checkpoint would have. */
export function withFrozenConvPrefix(ckpt: Checkpoint, kernelSize = 9): Checkpoint {
  const conv: ConvLayerJson = {
    kind: "conv2d",
    name: "conv_0",
    kernel: Array.from({ length: kernelSize }, (_, i) => Math.sin(i + 1)),
    frozen: true,
  };
  return { ...ckpt, layers: [conv, ...ckpt.layers] };
}

export function saveCheckpoint(ckpt: Checkpoint, path: string): void {
  fs.writeFileSync(path, JSON.stringify(ckpt) + "\n");
}

export function loadCheckpoint(path: string): Checkpoint {
  const doc = JSON.parse(fs.readFileSync(path, "utf-8"));
  if (doc.framework !== FRAMEWORK_TAG) {
    throw new Error(`${path}: unsupported framework tag ${doc.framework}`);
  }
  return doc as Checkpoint;
}
