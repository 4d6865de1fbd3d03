/** Readers for the marginal CSV files written by the solver CLI. */

import { readFileSync } from "node:fs";

export interface Series {
  axis: Float64Array;
  density: Float64Array;
}

export class CsvError extends Error {}

export function readMarginalCsv(path: string): Series {
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch (err) {
    throw new CsvError(`${path}: ${(err as Error).message}`);
  }
  const lines = text.split("\n").filter((line) => line.trim().length > 0);
  if (lines.length < 2) throw new CsvError(`${path}: no data rows`);
  const rows = lines.slice(1); // header row: "<axis>,density"
  const axis = new Float64Array(rows.length);
  const density = new Float64Array(rows.length);
  rows.forEach((row, i) => {
    const [a, d] = row.split(",");
    axis[i] = Number(a);
    density[i] = Number(d);
    if (!Number.isFinite(axis[i]) || !Number.isFinite(density[i])) {
      throw new CsvError(`${path}: malformed row ${i + 2}: ${row}`);
    }
  });
  return { axis, density };
}
