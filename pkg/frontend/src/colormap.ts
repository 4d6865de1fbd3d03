/** Color scales for heatmap panels. */

import type { Color } from "./raster.js";

type Stop = [number, number, number];

/** viridis-like sequential ramp sampled at nine anchor points */
const SEQUENTIAL: Stop[] = [
  [68, 1, 84],
  [71, 44, 122],
  [59, 81, 139],
  [44, 113, 142],
  [33, 144, 141],
  [39, 173, 129],
  [92, 200, 99],
  [170, 220, 50],
  [253, 231, 37],
];

/** blue-white-red diverging ramp for signed distributions */
const DIVERGING: Stop[] = [
  [5, 48, 97],
  [67, 147, 195],
  [209, 229, 240],
  [255, 255, 255],
  [253, 219, 199],
  [214, 96, 77],
  [103, 0, 31],
];

function sample(stops: Stop[], t: number): Color {
  const clamped = Math.min(1, Math.max(0, t));
  const pos = clamped * (stops.length - 1);
  const i = Math.min(stops.length - 2, Math.floor(pos));
  const frac = pos - i;
  const a = stops[i];
  const b = stops[i + 1];
  return [
    Math.round(a[0] + frac * (b[0] - a[0])),
    Math.round(a[1] + frac * (b[1] - a[1])),
    Math.round(a[2] + frac * (b[2] - a[2])),
    255,
  ];
}

export function sequential(t: number): Color {
  return sample(SEQUENTIAL, t);
}

export function diverging(t: number): Color {
  return sample(DIVERGING, t);
}

/**
 * Log scale over [floor, vmax]: values at or below floor*vmax map to 0.
 * Used for strictly positive thermal-state panels.
 */
export function logScale(value: number, vmax: number, floor = 1e-14): number {
  if (vmax <= 0) return 0;
  const rel = Math.max(value, floor * vmax) / vmax;
  return 1 - Math.log(rel) / Math.log(floor);
}
