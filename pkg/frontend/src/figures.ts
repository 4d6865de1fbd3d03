/**
 * The three standard figures, rendered from .wst state files and marginal
 * CSVs only.
 *
 * fig1  two log-scale heatmaps: a thermal state before and after real-time
 *       propagation (they should be indistinguishable).
 * fig2  ground and first-excited Wigner functions on a diverging scale plus
 *       their coordinate marginals before (solid red) and after (dashed
 *       blue) propagation.
 * fig3  thermal, Bose-Einstein, and Fermi panels on one shared linear scale.
 */

import { writeFileSync } from "node:fs";

import { readMarginalCsv, type Series } from "./csv.js";
import { diverging, logScale, sequential } from "./colormap.js";
import { encodePng } from "./png.js";
import { BLACK, BLUE, GREY, RED, Raster, textWidth, type Color } from "./raster.js";
import { readWst, sameLattice, type WignerState } from "./wst.js";

export type FigureKind = "fig1" | "fig2" | "fig3";

export interface FigureJob {
  kind: FigureKind;
  inputs: string[];
  output: string;
  /** color scale bounds; by default taken from the data */
  vmin?: number;
  vmax?: number;
}

export class FigureError extends Error {}

const PANEL = 360; // heatmap panel edge length in pixels

function arrayMax(values: ArrayLike<number>): number {
  let best = -Infinity;
  for (let i = 0; i < values.length; i++) {
    if (values[i] > best) best = values[i];
  }
  return best;
}

function arrayAbsMax(values: ArrayLike<number>): number {
  let best = 0;
  for (let i = 0; i < values.length; i++) {
    const a = Math.abs(values[i]);
    if (a > best) best = a;
  }
  return best;
}
const MARGIN = 34;
const TITLE_H = 16;
export const CURVE_WIDTH = 2;

function panelOrigin(col: number, row: number): [number, number] {
  return [MARGIN + col * (PANEL + MARGIN), TITLE_H + MARGIN + row * (PANEL + MARGIN + TITLE_H)];
}

function canvasSize(cols: number, rows: number): [number, number] {
  return [
    MARGIN + cols * (PANEL + MARGIN),
    TITLE_H + MARGIN + rows * (PANEL + MARGIN + TITLE_H),
  ];
}

/** Nearest-sample heatmap: x runs along the horizontal axis, p vertical
 * (upward), matching the row-major [x][p] layout of the state file. */
function drawHeatmap(
  canvas: Raster,
  origin: [number, number],
  state: WignerState,
  shade: (value: number) => Color,
  title: string,
): void {
  const { n_x, n_p } = state.header;
  const [ox, oy] = origin;
  for (let py = 0; py < PANEL; py++) {
    const jp = n_p - 1 - Math.min(n_p - 1, Math.floor((py / PANEL) * n_p));
    for (let px = 0; px < PANEL; px++) {
      const ix = Math.min(n_x - 1, Math.floor((px / PANEL) * n_x));
      canvas.set(ox + px, oy + py, shade(state.w[ix * n_p + jp]));
    }
  }
  frame(canvas, origin, title, state.header.x_min, state.header.x_max,
        state.header.p_min, state.header.p_max);
}

function frame(
  canvas: Raster,
  origin: [number, number],
  title: string,
  x0: number,
  x1: number,
  y0: number,
  y1: number,
): void {
  const [ox, oy] = origin;
  canvas.line(ox, oy, ox + PANEL, oy, BLACK);
  canvas.line(ox, oy + PANEL, ox + PANEL, oy + PANEL, BLACK);
  canvas.line(ox, oy, ox, oy + PANEL, BLACK);
  canvas.line(ox + PANEL, oy, ox + PANEL, oy + PANEL, BLACK);
  canvas.text(ox + Math.floor((PANEL - textWidth(title)) / 2), oy - 12, title);
  canvas.text(ox - 2, oy + PANEL + 4, fmt(x0));
  canvas.text(ox + PANEL - textWidth(fmt(x1)) + 2, oy + PANEL + 4, fmt(x1));
  canvas.text(ox - textWidth(fmt(y0)) - 2, oy + PANEL - 7, fmt(y0));
  canvas.text(ox - textWidth(fmt(y1)) - 2, oy, fmt(y1));
}

function fmt(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 0.01 && abs < 1000) {
    return Number(value.toPrecision(3)).toString();
  }
  return value.toExponential(1).replace("e-", "e-").replace("e+", "e+");
}

/** Marginal overlay: solid red before, dashed blue after. */
function drawOverlay(
  canvas: Raster,
  origin: [number, number],
  before: Series,
  after: Series,
  title: string,
): void {
  const [ox, oy] = origin;
  const peak = Math.max(arrayMax(before.density), arrayMax(after.density), Number.MIN_VALUE);
  const x0 = before.axis[0];
  const x1 = before.axis[before.axis.length - 1];
  const toX = (x: number) => ox + ((x - x0) / (x1 - x0)) * PANEL;
  const toY = (d: number) => oy + PANEL - (d / (1.08 * peak)) * PANEL;
  const project = (s: Series) => ({
    xs: Array.from(s.axis, toX),
    ys: Array.from(s.density, toY),
  });
  const pre = project(before);
  const post = project(after);
  canvas.polyline(pre.xs, pre.ys, RED, CURVE_WIDTH);
  canvas.dashedPolyline(post.xs, post.ys, BLUE, CURVE_WIDTH);
  frame(canvas, origin, title, x0, x1, 0, 1.08 * peak);
}

function colorbar(
  canvas: Raster,
  origin: [number, number],
  shade: (t: number) => Color,
  low: string,
  high: string,
): void {
  const [ox, oy] = origin;
  const width = 12;
  for (let py = 0; py < PANEL; py++) {
    const t = 1 - py / (PANEL - 1);
    for (let px = 0; px < width; px++) {
      canvas.set(ox + px, oy + py, shade(t));
    }
  }
  canvas.text(ox, oy - 12, high);
  canvas.text(ox, oy + PANEL + 4, low);
}

function loadStates(paths: string[]): WignerState[] {
  const states = paths.map(readWst);
  for (const state of states.slice(1)) {
    if (!sameLattice(states[0].header, state.header)) {
      throw new FigureError(
        `grid mismatch: ${paths[0]} is ${states[0].header.n_x}x${states[0].header.n_p}, ` +
          `another input differs`,
      );
    }
  }
  return states;
}

function renderFig1(job: FigureJob): Raster {
  if (job.inputs.length !== 2) {
    throw new FigureError("fig1 needs two state files: before.wst after.wst");
  }
  const [before, after] = loadStates(job.inputs);
  const vmax = job.vmax ?? Math.max(arrayMax(before.w), arrayMax(after.w));
  const floor = 1e-14;
  const shade = (value: number) => sequential(logScale(value, vmax, floor));
  const [width, height] = canvasSize(2, 1);
  const canvas = new Raster(width + 60, height);
  drawHeatmap(canvas, panelOrigin(0, 0), before, shade, "(a) w(x,p) computed");
  drawHeatmap(canvas, panelOrigin(1, 0), after, shade, "(b) after real-time flow");
  const [cx, cy] = panelOrigin(2, 0);
  colorbar(canvas, [cx, cy], sequential, "1e-14", fmt(vmax));
  return canvas;
}

function renderFig2(job: FigureJob): Raster {
  if (job.inputs.length !== 6) {
    throw new FigureError(
      "fig2 needs six inputs: ground.wst excited.wst ground_before.csv " +
        "ground_after.csv excited_before.csv excited_after.csv",
    );
  }
  const [ground, excited] = loadStates(job.inputs.slice(0, 2));
  const series = job.inputs.slice(2).map(readMarginalCsv);
  for (const s of series) {
    if (s.axis.length !== ground.header.n_x) {
      throw new FigureError(
        `marginal length ${s.axis.length} does not match grid n_x=${ground.header.n_x}`,
      );
    }
  }
  const vmax = job.vmax ?? Math.max(arrayAbsMax(ground.w), arrayAbsMax(excited.w));
  const shade = (value: number) => diverging(0.5 + value / (2 * vmax));
  const [width, height] = canvasSize(2, 2);
  const canvas = new Raster(width + 60, height);
  drawHeatmap(canvas, panelOrigin(0, 0), ground, shade, "(a) ground state");
  drawHeatmap(canvas, panelOrigin(1, 0), excited, shade, "(b) first excited");
  drawOverlay(canvas, panelOrigin(0, 1), series[0], series[1], "(c) ground marginal");
  drawOverlay(canvas, panelOrigin(1, 1), series[2], series[3], "(d) excited marginal");
  const [cx, cy] = panelOrigin(2, 0);
  colorbar(canvas, [cx, cy], diverging, fmt(-vmax), fmt(vmax));
  return canvas;
}

function renderFig3(job: FigureJob): Raster {
  if (job.inputs.length !== 3) {
    throw new FigureError("fig3 needs three state files: thermal.wst bose.wst fermi.wst");
  }
  const states = loadStates(job.inputs);
  const vmax = job.vmax ?? Math.max(...states.map((s) => arrayMax(s.w)));
  const vmin = job.vmin ?? 0;
  const shade = (value: number) => sequential((value - vmin) / (vmax - vmin));
  const titles = ["(a) thermal", "(b) bose-einstein", "(c) thomas-fermi"];
  const [width, height] = canvasSize(3, 1);
  const canvas = new Raster(width + 60, height);
  states.forEach((state, i) => {
    drawHeatmap(canvas, panelOrigin(i, 0), state, shade, titles[i]);
  });
  const [cx, cy] = panelOrigin(3, 0);
  colorbar(canvas, [cx, cy], sequential, fmt(vmin), fmt(vmax));
  return canvas;
}

export function render(job: FigureJob): void {
  let canvas: Raster;
  switch (job.kind) {
    case "fig1":
      canvas = renderFig1(job);
      break;
    case "fig2":
      canvas = renderFig2(job);
      break;
    case "fig3":
      canvas = renderFig3(job);
      break;
    default:
      throw new FigureError(`unknown figure kind ${(job as FigureJob).kind}`);
  }
  writeFileSync(job.output, encodePng(canvas.width, canvas.height, canvas.data));
}
