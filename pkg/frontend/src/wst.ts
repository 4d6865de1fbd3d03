/**
 * Reader for .wst state files: one JSON header line followed by raw
 * little-endian float64 bytes, row-major [x][p].
 */

import { readFileSync } from "node:fs";

export interface WstHeader {
  magic: string;
  version: number;
  n_x: number;
  n_p: number;
  x_min: number;
  x_max: number;
  p_min: number;
  p_max: number;
  hbar: number;
  beta: number;
  log_norm: number;
  byte_order: string;
  dtype: string;
  order: string;
}

export interface WignerState {
  header: WstHeader;
  /** row-major [x][p], length n_x * n_p */
  w: Float64Array;
}

export class WstError extends Error {}

export function readWst(path: string): WignerState {
  let raw: Buffer;
  try {
    raw = readFileSync(path);
  } catch (err) {
    throw new WstError(`${path}: ${(err as Error).message}`);
  }
  const newline = raw.indexOf(0x0a);
  if (newline < 0) throw new WstError(`${path}: missing header line`);
  let header: WstHeader;
  try {
    header = JSON.parse(raw.subarray(0, newline).toString("utf-8"));
  } catch (err) {
    throw new WstError(`${path}: malformed header: ${(err as Error).message}`);
  }
  if (header.magic !== "WST") throw new WstError(`${path}: not a WST file`);
  if (header.version !== 1) throw new WstError(`${path}: unsupported version ${header.version}`);
  if (header.dtype !== "float64" || header.byte_order !== "little") {
    throw new WstError(`${path}: unsupported element encoding`);
  }
  const expected = header.n_x * header.n_p * 8;
  const payload = raw.subarray(newline + 1);
  if (payload.length !== expected) {
    throw new WstError(
      `${path}: expected ${header.n_x}x${header.n_p} elements, found ${payload.length / 8}`,
    );
  }
  // copy to guarantee alignment for the Float64Array view
  const bytes = new Uint8Array(payload.length);
  bytes.set(payload);
  return { header, w: new Float64Array(bytes.buffer) };
}

export function sameLattice(a: WstHeader, b: WstHeader): boolean {
  return (
    a.n_x === b.n_x &&
    a.n_p === b.n_p &&
    a.x_min === b.x_min &&
    a.x_max === b.x_max &&
    a.p_min === b.p_min &&
    a.p_max === b.p_max
  );
}
