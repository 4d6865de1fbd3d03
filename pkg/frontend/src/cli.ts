#!/usr/bin/env node
/**
 * figs <fig1|fig2|fig3> --in <files...> --out <image.png> [--vmin v] [--vmax v]
 *
 * fig1: before.wst after.wst
 * fig2: ground.wst excited.wst ground_before.csv ground_after.csv
 *       excited_before.csv excited_after.csv
 * fig3: thermal.wst bose.wst fermi.wst
 */

import { realpathSync } from "node:fs";
import { pathToFileURL } from "node:url";

import { CsvError } from "./csv.js";
import { FigureError, render, type FigureJob, type FigureKind } from "./figures.js";
import { WstError } from "./wst.js";

const USAGE = "usage: figs <fig1|fig2|fig3> --in <files...> --out <image.png> " +
  "[--vmin v] [--vmax v]";

export function parseArgs(argv: string[]): FigureJob {
  if (argv.length === 0) throw new FigureError(USAGE);
  const kind = argv[0];
  if (kind !== "fig1" && kind !== "fig2" && kind !== "fig3") {
    throw new FigureError(`unknown figure kind ${kind}\n${USAGE}`);
  }
  const inputs: string[] = [];
  let output: string | undefined;
  let vmin: number | undefined;
  let vmax: number | undefined;
  let i = 1;
  while (i < argv.length) {
    const flag = argv[i];
    if (flag === "--in") {
      i += 1;
      while (i < argv.length && !argv[i].startsWith("--")) {
        inputs.push(argv[i]);
        i += 1;
      }
    } else if (flag === "--out") {
      output = argv[i + 1];
      i += 2;
    } else if (flag === "--vmin") {
      vmin = Number(argv[i + 1]);
      i += 2;
    } else if (flag === "--vmax") {
      vmax = Number(argv[i + 1]);
      i += 2;
    } else {
      throw new FigureError(`unknown option ${flag}\n${USAGE}`);
    }
  }
  if (inputs.length === 0) throw new FigureError(`no inputs given\n${USAGE}`);
  if (!output) throw new FigureError(`no output path given\n${USAGE}`);
  return { kind: kind as FigureKind, inputs, output, vmin, vmax };
}

export function main(argv: string[]): number {
  try {
    const job = parseArgs(argv);
    render(job);
    console.log(`wrote ${job.output}`);
    return 0;
  } catch (err) {
    if (err instanceof FigureError || err instanceof WstError || err instanceof CsvError) {
      console.error(`figs: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

let invokedDirectly = false;
if (process.argv[1]) {
  try {
    invokedDirectly = import.meta.url === pathToFileURL(realpathSync(process.argv[1])).href;
  } catch {
    invokedDirectly = false;
  }
}
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
