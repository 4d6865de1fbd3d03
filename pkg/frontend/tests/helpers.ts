/** Fixture builders: write .wst files and marginal CSVs per their formats. */

import { writeFileSync } from "node:fs";

export interface GridSpec {
  n_x: number;
  n_p: number;
  x_min: number;
  x_max: number;
  p_min: number;
  p_max: number;
  hbar?: number;
  beta?: number;
  log_norm?: number;
}

export function writeWst(path: string, grid: GridSpec, w: Float64Array): void {
  const header = {
    magic: "WST",
    version: 1,
    n_x: grid.n_x,
    n_p: grid.n_p,
    x_min: grid.x_min,
    x_max: grid.x_max,
    p_min: grid.p_min,
    p_max: grid.p_max,
    hbar: grid.hbar ?? 1,
    beta: grid.beta ?? 0,
    log_norm: grid.log_norm ?? 0,
    byte_order: "little",
    dtype: "float64",
    order: "row-major-xp",
  };
  const payload = Buffer.from(w.buffer, w.byteOffset, w.byteLength);
  writeFileSync(path, Buffer.concat([Buffer.from(JSON.stringify(header) + "\n"), payload]));
}

/** Gaussian blob sampled on the grid, row-major [x][p]. */
export function gaussianField(grid: GridSpec, x0 = 0, p0 = 0, sigma = 1): Float64Array {
  const { n_x, n_p } = grid;
  const dx = (grid.x_max - grid.x_min) / n_x;
  const dp = (grid.p_max - grid.p_min) / n_p;
  const w = new Float64Array(n_x * n_p);
  for (let i = 0; i < n_x; i++) {
    const x = grid.x_min + i * dx;
    for (let j = 0; j < n_p; j++) {
      const p = grid.p_min + j * dp;
      w[i * n_p + j] = Math.exp(-((x - x0) ** 2 + (p - p0) ** 2) / (2 * sigma ** 2));
    }
  }
  return w;
}

export function writeMarginalCsv(path: string, axis: number[], density: number[]): void {
  const lines = ["x,density"];
  for (let i = 0; i < axis.length; i++) {
    lines.push(`${axis[i]},${density[i]}`);
  }
  writeFileSync(path, lines.join("\n") + "\n");
}

export const PNG_SIGNATURE = Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);
