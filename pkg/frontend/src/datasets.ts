/**
 * Deterministic toy datasets.
 *
 * "digits": 8x8 glyph bitmaps of the digits 0-9 with per-sample jitter and
 * Gaussian pixel noise (64 features). "langfreq": letter-frequency vectors
 * of pseudo-words drawn from per-language letter preferences (26 features,
 * 7 languages). Both are pure functions of their seed.
 */

import { gaussian, mulberry32, permutation } from "./rng.js";

export interface Dataset {
  /** row-major samples, each `featureCount` long */
  x: Float64Array[];
  /** class index per sample */
  y: number[];
  featureCount: number;
  classCount: number;
}

// 8x8 glyphs, drawn by hand; '#' is ink.
const DIGIT_GLYPHS = [
  [".####...", "#....#..", "#...##..", "#..#.#..", "#.#..#..", "##...#..", ".####...", "........"],
  ["..##....", ".###....", "..##....", "..##....", "..##....", "..##....", ".####...", "........"],
  [".####...", "#....#..", ".....#..", "...##...", "..#.....", ".#......", "######..", "........"],
  [".####...", "#....#..", "....##..", "..###...", "....##..", "#....#..", ".####...", "........"],
  ["...##...", "..#.#...", ".#..#...", "#...#...", "######..", "....#...", "....#...", "........"],
  ["######..", "#.......", "#####...", ".....#..", ".....#..", "#....#..", ".####...", "........"],
  [".####...", "#.......", "#.......", "#####...", "#....#..", "#....#..", ".####...", "........"],
  ["######..", ".....#..", "....#...", "...#....", "..#.....", "..#.....", "..#.....", "........"],
  [".####...", "#....#..", "#....#..", ".####...", "#....#..", "#....#..", ".####...", "........"],
  [".####...", "#....#..", "#....#..", ".#####..", ".....#..", ".....#..", ".####...", "........"],
];

function glyphToVector(glyph: string[]): Float64Array {
  const v = new Float64Array(64);
  for (let r = 0; r < 8; r++) {
    for (let c = 0; c < 8; c++) {
      v[r * 8 + c] = glyph[r][c] === "#" ? 1.0 : 0.0;
    }
  }
  return v;
}

function shifted(v: Float64Array, dr: number, dc: number): Float64Array {
  const out = new Float64Array(64);
  for (let r = 0; r < 8; r++) {
    for (let c = 0; c < 8; c++) {
      const sr = r - dr;
      const sc = c - dc;
      if (sr >= 0 && sr < 8 && sc >= 0 && sc < 8) {
        out[r * 8 + c] = v[sr * 8 + sc];
      }
    }
  }
  return out;
}

export function makeDigits(samplesPerClass: number, seed: number, classCount = 10): Dataset {
  if (classCount < 2 || classCount > 10) {
    throw new Error(`digits supports 2..10 classes, got ${classCount}`);
  }
  const rand = mulberry32(seed);
  const gauss = gaussian(rand);
  const base = DIGIT_GLYPHS.map(glyphToVector);
  const x: Float64Array[] = [];
  const y: number[] = [];
  for (let cls = 0; cls < classCount; cls++) {
    for (let s = 0; s < samplesPerClass; s++) {
      const dr = Math.floor(rand() * 3) - 1;
      const dc = Math.floor(rand() * 3) - 1;
      const v = shifted(base[cls], dr, dc);
      for (let i = 0; i < 64; i++) {
        v[i] = v[i] + 0.15 * gauss();
      }
      x.push(v);
      y.push(cls);
    }
  }
  // deterministic shuffle so batches mix classes
  const order = permutation(x.length, rand);
  return {
    x: order.map((i) => x[i]),
    y: order.map((i) => y[i]),
    featureCount: 64,
    classCount,
  };
}

// Letter preference profiles: each language favors a band of the alphabet.
const LANGUAGE_COUNT = 7;

function languageProfile(lang: number): Float64Array {
  const p = new Float64Array(26);
  for (let i = 0; i < 26; i++) {
    const center = (lang * 26) / LANGUAGE_COUNT;
    const d = Math.min(Math.abs(i - center), 26 - Math.abs(i - center));
    p[i] = Math.exp(-0.18 * d * d) + 0.02;
  }
  let total = 0;
  for (const v of p) total += v;
  for (let i = 0; i < 26; i++) p[i] /= total;
  return p;
}

export function makeLangFreq(samplesPerClass: number, seed: number, classCount = LANGUAGE_COUNT): Dataset {
  if (classCount < 2 || classCount > LANGUAGE_COUNT) {
    throw new Error(`langfreq supports 2..${LANGUAGE_COUNT} classes, got ${classCount}`);
  }
  const rand = mulberry32(seed);
  const profiles = Array.from({ length: classCount }, (_, l) => languageProfile(l));
  const x: Float64Array[] = [];
  const y: number[] = [];
  for (let cls = 0; cls < classCount; cls++) {
    const profile = profiles[cls];
    for (let s = 0; s < samplesPerClass; s++) {
      const counts = new Float64Array(26);
      const letters = 80 + Math.floor(rand() * 60);
      for (let k = 0; k < letters; k++) {
        // inverse-CDF sample of the letter profile
        let u = rand();
        let idx = 0;
        while (idx < 25 && u > profile[idx]) {
          u -= profile[idx];
          idx++;
        }
        counts[idx] += 1;
      }
      for (let i = 0; i < 26; i++) counts[i] /= letters;
      x.push(counts);
      y.push(cls);
    }
  }
  const order = permutation(x.length, rand);
  return {
    x: order.map((i) => x[i]),
    y: order.map((i) => y[i]),
    featureCount: 26,
    classCount,
  };
}

export type DatasetTag = "digits" | "langfreq";

export function makeDataset(tag: DatasetTag, samplesPerClass: number, seed: number, classCount?: number): Dataset {
  if (tag === "digits") return makeDigits(samplesPerClass, seed, classCount ?? 10);
  if (tag === "langfreq") return makeLangFreq(samplesPerClass, seed, classCount ?? 7);
  throw new Error(`unknown dataset tag ${tag}`);
}

/** Reorder feature columns with a seeded permutation; seed 0 keeps the original order. */
export function permuteFeatures(data: Dataset, permSeed: number): { data: Dataset; order: number[] } {
  const n = data.featureCount;
  const order =
    permSeed === 0
      ? Array.from({ length: n }, (_, i) => i)
      : permutation(n, mulberry32(0x9e3779b9 ^ permSeed));
  const x = data.x.map((row) => {
    const out = new Float64Array(n);
    for (let i = 0; i < n; i++) out[i] = row[order[i]];
    return out;
  });
  return { data: { ...data, x }, order };
}
