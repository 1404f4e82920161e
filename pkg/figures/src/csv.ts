/**
 * Readers for the solver's CSV schemas.
 *
 * These are deliberately strict: a file whose header does not match the
 * documented schema raises SchemaError instead of being guessed at, so a
 * plot can never silently render the wrong quantity.
 */

import { readFileSync } from "fs";

export class SchemaError extends Error {}

export interface ConvergenceRow {
  scenario: string;
  epsilon: number;
  n: number;
  branch: string;
  error: number;
  orderVsPrev: number | null;
}

export interface FieldPlane {
  plane: string;
  nx: number;
  ny: number;
  dx: number;
  dy: number;
  /** row-major [i][j] values */
  values: number[][];
  x: number[][];
  y: number[][];
}

const CONVERGENCE_HEADER = "scenario,epsilon,N,branch,error,order_vs_prev";
const PLANE_COLUMNS = "i,j,x,y,value";

function splitLines(text: string): string[] {
  return text.split(/\r?\n/).filter((line) => line.length > 0);
}

function toNumber(field: string, context: string): number {
  const v = Number(field);
  if (!Number.isFinite(v)) {
    throw new SchemaError(`${context}: expected a finite number, got ${JSON.stringify(field)}`);
  }
  return v;
}

export function parseConvergenceCsv(text: string, source = "<string>"): ConvergenceRow[] {
  const lines = splitLines(text);
  if (lines.length === 0 || lines[0] !== CONVERGENCE_HEADER) {
    throw new SchemaError(
      `${source}: expected header ${JSON.stringify(CONVERGENCE_HEADER)}, got ${JSON.stringify(lines[0] ?? "")}`);
  }
  return lines.slice(1).map((line, idx) => {
    const parts = line.split(",");
    if (parts.length !== 6) {
      throw new SchemaError(`${source}:${idx + 2}: expected 6 fields, got ${parts.length}`);
    }
    return {
      scenario: parts[0],
      epsilon: toNumber(parts[1], `${source}:${idx + 2} epsilon`),
      n: toNumber(parts[2], `${source}:${idx + 2} N`),
      branch: parts[3],
      error: toNumber(parts[4], `${source}:${idx + 2} error`),
      orderVsPrev: parts[5] === "" ? null : toNumber(parts[5], `${source}:${idx + 2} order`),
    };
  });
}

export function parseFieldPlaneCsv(text: string, source = "<string>"): FieldPlane {
  const lines = splitLines(text);
  if (lines.length < 2 || !lines[0].startsWith("# plane=")) {
    throw new SchemaError(`${source}: missing "# plane=..." header`);
  }
  const meta = new Map<string, string>();
  for (const token of lines[0].slice(2).split(/\s+/)) {
    const eq = token.indexOf("=");
    if (eq > 0) meta.set(token.slice(0, eq), token.slice(eq + 1));
  }
  for (const key of ["plane", "nx", "ny", "dx", "dy"]) {
    if (!meta.has(key)) throw new SchemaError(`${source}: header lacks ${key}=`);
  }
  if (lines[1] !== PLANE_COLUMNS) {
    throw new SchemaError(
      `${source}: expected column row ${JSON.stringify(PLANE_COLUMNS)}, got ${JSON.stringify(lines[1])}`);
  }
  const nx = toNumber(meta.get("nx")!, `${source} nx`);
  const ny = toNumber(meta.get("ny")!, `${source} ny`);
  const mk = () => Array.from({ length: nx }, () => new Array<number>(ny).fill(NaN));
  const values = mk();
  const xs = mk();
  const ys = mk();
  if (lines.length - 2 !== nx * ny) {
    throw new SchemaError(`${source}: expected ${nx * ny} rows, found ${lines.length - 2}`);
  }
  for (let r = 2; r < lines.length; r++) {
    const parts = lines[r].split(",");
    if (parts.length !== 5) {
      throw new SchemaError(`${source}:${r + 1}: expected 5 fields, got ${parts.length}`);
    }
    const i = toNumber(parts[0], `${source}:${r + 1} i`);
    const j = toNumber(parts[1], `${source}:${r + 1} j`);
    if (!Number.isInteger(i) || !Number.isInteger(j) || i < 0 || i >= nx || j < 0 || j >= ny) {
      throw new SchemaError(`${source}:${r + 1}: index (${i},${j}) out of range`);
    }
    xs[i][j] = toNumber(parts[2], `${source}:${r + 1} x`);
    ys[i][j] = toNumber(parts[3], `${source}:${r + 1} y`);
    values[i][j] = toNumber(parts[4], `${source}:${r + 1} value`);
  }
  return {
    plane: meta.get("plane")!,
    nx, ny,
    dx: toNumber(meta.get("dx")!, `${source} dx`),
    dy: toNumber(meta.get("dy")!, `${source} dy`),
    values, x: xs, y: ys,
  };
}

export function readConvergenceCsv(path: string): ConvergenceRow[] {
  return parseConvergenceCsv(readFileSync(path, "utf8"), path);
}

export function readFieldPlaneCsv(path: string): FieldPlane {
  return parseFieldPlaneCsv(readFileSync(path, "utf8"), path);
}

/** Extract the row of a plane nearest to y = 0 as (x, value) pairs sorted by x. */
export function cutAlongY0(plane: FieldPlane): { x: number[]; v: number[]; yCut: number } {
  let best = 0;
  for (let j = 1; j < plane.ny; j++) {
    if (Math.abs(plane.y[0][j]) < Math.abs(plane.y[0][best])) best = j;
  }
  const pairs = [];
  for (let i = 0; i < plane.nx; i++) {
    pairs.push({ x: plane.x[i][best], v: plane.values[i][best] });
  }
  pairs.sort((a, b) => a.x - b.x);
  return { x: pairs.map((p) => p.x), v: pairs.map((p) => p.v), yCut: plane.y[0][best] };
}
