/**
 * Export checkpoints into the weight interchange JSON consumed by the
 * topology pipeline's `graph` command:
 *
 *   {"layers": [{"weights": [[out x in]], "bias": [...]}, ...]}
 *
 * Only dense layers are exportable; frozen conv layers of a CNN-head
 * checkpoint are excluded (select them explicitly and you get an error).
 */

import * as fs from "node:fs";

import { Checkpoint, CheckpointLayer, DenseLayerJson } from "./checkpoint.js";

export interface InterchangeLayer {
  weights: number[][];
  bias?: number[];
}

export interface InterchangeDoc {
  layers: InterchangeLayer[];
}

export interface ExportManifest {
  framework: string;
  layerNames: string[];
  shapes: [number, number][];
  outputPath: string;
}

export type LayerSelection = "dense" | string[];

function selectLayers(ckpt: Checkpoint, selection: LayerSelection): CheckpointLayer[] {
  if (selection === "dense") {
    return ckpt.layers.filter((l) => l.kind === "dense");
  }
  const byName = new Map(ckpt.layers.map((l) => [l.name, l]));
  return selection.map((name) => {
    const layer = byName.get(name);
    if (!layer) throw new Error(`no layer named ${name} in checkpoint`);
    return layer;
  });
}

function checkShapeChain(layers: DenseLayerJson[]): [number, number][] {
  const shapes: [number, number][] = layers.map((l) => [l.weights.length, l.weights[0].length]);
  for (let k = 1; k < shapes.length; k++) {
    if (shapes[k][1] !== shapes[k - 1][0]) {
      throw new Error(
        `selected layers do not chain: layer ${k} expects ${shapes[k][1]} inputs, ` +
          `got ${shapes[k - 1][0]} from the previous layer`,
      );
    }
  }
  return shapes;
}

/** Convert selected checkpoint layers into an interchange document. */
export function toInterchange(ckpt: Checkpoint, selection: LayerSelection = "dense"): InterchangeDoc {
  const selected = selectLayers(ckpt, selection);
  const dense: DenseLayerJson[] = [];
  for (const layer of selected) {
    if (layer.kind !== "dense") {
      throw new Error(`layer ${layer.name} is ${layer.kind}, only dense layers can be exported`);
    }
    dense.push(layer);
  }
  if (dense.length === 0) throw new Error("no dense layers selected");
  checkShapeChain(dense);
  return {
    layers: dense.map((l) => ({ weights: l.weights, bias: l.bias })),
  };
}

/** Write the interchange JSON and return its manifest. */
export function exportCheckpoint(
  ckpt: Checkpoint,
  outputPath: string,
  selection: LayerSelection = "dense",
): ExportManifest {
  const selected = selectLayers(ckpt, selection).filter((l): l is DenseLayerJson => {
    if (l.kind !== "dense") throw new Error(`layer ${l.name} is ${l.kind}, only dense layers can be exported`);
    return true;
  });
  const doc = toInterchange(ckpt, selection);
  fs.writeFileSync(outputPath, JSON.stringify(doc) + "\n");
  return {
    framework: ckpt.framework,
    layerNames: selected.map((l) => l.name),
    shapes: checkShapeChain(selected),
    outputPath,
  };
}

export function readInterchange(path: string): InterchangeDoc {
  return JSON.parse(fs.readFileSync(path, "utf-8")) as InterchangeDoc;
}
