/**
 * Minimal dense MLP with manual backprop.
 *
 * Deliberately dependency-free: with seeded init and fixed batch order the
 * trained weights are bit-reproducible, which downstream graph filtration
 * order depends on. All math runs in float64.
 */

import { Dataset } from "./datasets.js";
import { gaussian, mulberry32 } from "./rng.js";

export interface DenseLayer {
  /** row-major [outDim x inDim] */
  weights: Float64Array;
  bias: Float64Array;
  inDim: number;
  outDim: number;
}

export interface Mlp {
  layers: DenseLayer[];
}

export interface TrainOptions {
  epochs: number;
  batchSize: number;
  learningRate: number;
  momentum: number;
}

export const DEFAULT_TRAIN: TrainOptions = {
  epochs: 40,
  batchSize: 32,
  learningRate: 0.05,
  momentum: 0.9,
};

export function initMlp(sizes: number[], initSeed: number): Mlp {
  const gauss = gaussian(mulberry32(initSeed));
  const layers: DenseLayer[] = [];
  for (let k = 0; k + 1 < sizes.length; k++) {
    const inDim = sizes[k];
    const outDim = sizes[k + 1];
    const scale = Math.sqrt(2.0 / inDim); // He init for ReLU stacks
    const weights = new Float64Array(outDim * inDim);
    for (let i = 0; i < weights.length; i++) weights[i] = scale * gauss();
    layers.push({ weights, bias: new Float64Array(outDim), inDim, outDim });
  }
  return { layers };
}

function forward(mlp: Mlp, x: Float64Array, activations: Float64Array[]): Float64Array {
  let cur = x;
  activations[0] = x;
  for (let k = 0; k < mlp.layers.length; k++) {
    const { weights, bias, inDim, outDim } = mlp.layers[k];
    const next = new Float64Array(outDim);
    for (let i = 0; i < outDim; i++) {
      let acc = bias[i];
      const row = i * inDim;
      for (let j = 0; j < inDim; j++) acc += weights[row + j] * cur[j];
      next[i] = k + 1 < mlp.layers.length ? Math.max(0, acc) : acc; // ReLU hidden, linear head
    }
    activations[k + 1] = next;
    cur = next;
  }
  return cur;
}

function softmaxInPlace(logits: Float64Array): void {
  let max = -Infinity;
  for (const v of logits) max = Math.max(max, v);
  let total = 0;
  for (let i = 0; i < logits.length; i++) {
    logits[i] = Math.exp(logits[i] - max);
    total += logits[i];
  }
  for (let i = 0; i < logits.length; i++) logits[i] /= total;
}

export function predict(mlp: Mlp, x: Float64Array): number {
  const acts: Float64Array[] = new Array(mlp.layers.length + 1);
  const out = forward(mlp, x, acts);
  let best = 0;
  for (let i = 1; i < out.length; i++) if (out[i] > out[best]) best = i;
  return best;
}

export function accuracy(mlp: Mlp, data: Dataset): number {
  let hit = 0;
  for (let s = 0; s < data.x.length; s++) {
    if (predict(mlp, data.x[s]) === data.y[s]) hit++;
  }
  return hit / data.x.length;
}

/** Mini-batch SGD with momentum on softmax cross-entropy; returns per-epoch loss. */
export function train(mlp: Mlp, data: Dataset, opts: TrainOptions = DEFAULT_TRAIN): number[] {
  const L = mlp.layers.length;
  const gradW = mlp.layers.map((l) => new Float64Array(l.weights.length));
  const gradB = mlp.layers.map((l) => new Float64Array(l.bias.length));
  const velW = mlp.layers.map((l) => new Float64Array(l.weights.length));
  const velB = mlp.layers.map((l) => new Float64Array(l.bias.length));
  const acts: Float64Array[] = new Array(L + 1);
  const deltas: Float64Array[] = mlp.layers.map((l) => new Float64Array(l.outDim));
  const losses: number[] = [];

  for (let epoch = 0; epoch < opts.epochs; epoch++) {
    let epochLoss = 0;
    for (let start = 0; start < data.x.length; start += opts.batchSize) {
      const end = Math.min(start + opts.batchSize, data.x.length);
      const count = end - start;
      for (const g of gradW) g.fill(0);
      for (const g of gradB) g.fill(0);

      for (let s = start; s < end; s++) {
        const probs = Float64Array.from(forward(mlp, data.x[s], acts));
        softmaxInPlace(probs);
        epochLoss += -Math.log(Math.max(probs[data.y[s]], 1e-12));

        // output delta: softmax + cross-entropy
        const dOut = deltas[L - 1];
        for (let i = 0; i < dOut.length; i++) dOut[i] = probs[i] - (i === data.y[s] ? 1 : 0);

        for (let k = L - 1; k >= 0; k--) {
          const layer = mlp.layers[k];
          const input = acts[k];
          const delta = deltas[k];
          const gw = gradW[k];
          const gb = gradB[k];
          for (let i = 0; i < layer.outDim; i++) {
            const row = i * layer.inDim;
            const d = delta[i];
            gb[i] += d;
            for (let j = 0; j < layer.inDim; j++) gw[row + j] += d * input[j];
          }
          if (k > 0) {
            const prev = deltas[k - 1];
            const hidden = acts[k];
            prev.fill(0);
            for (let i = 0; i < layer.outDim; i++) {
              const row = i * layer.inDim;
              const d = delta[i];
              for (let j = 0; j < layer.inDim; j++) prev[j] += layer.weights[row + j] * d;
            }
            for (let j = 0; j < prev.length; j++) if (hidden[j] <= 0) prev[j] = 0; // ReLU gate
          }
        }
      }

      const lr = opts.learningRate / count;
      for (let k = 0; k < L; k++) {
        const layer = mlp.layers[k];
        const vw = velW[k];
        const vb = velB[k];
        const gw = gradW[k];
        const gb = gradB[k];
        for (let i = 0; i < vw.length; i++) {
          vw[i] = opts.momentum * vw[i] - lr * gw[i];
          layer.weights[i] += vw[i];
        }
        for (let i = 0; i < vb.length; i++) {
          vb[i] = opts.momentum * vb[i] - lr * gb[i];
          layer.bias[i] += vb[i];
        }
      }
    }
    losses.push(epochLoss / data.x.length);
  }
  return losses;
}
