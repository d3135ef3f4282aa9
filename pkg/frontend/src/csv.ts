/**
 * CSV ingestion for the simulator's outputs (grid dumps and metric tables).
 */

import { readFileSync } from "node:fs";
import Papa from "papaparse";

export class FigureError extends Error {}

export type Row = Record<string, number | string | boolean>;

/** Parse a CSV file into typed rows; fail loudly on empty or headerless input. */
export function readCsv(path: string): Row[] {
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch (err) {
    throw new FigureError(`cannot read ${path}: ${(err as Error).message}`);
  }
  if (text.trim() === "") {
    throw new FigureError(`empty CSV: ${path}`);
  }
  const parsed = Papa.parse<Row>(text.trim(), {
    header: true,
    dynamicTyping: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new FigureError(`cannot parse ${path}: ${first.message} (row ${first.row})`);
  }
  if (parsed.data.length === 0) {
    throw new FigureError(`empty CSV: ${path}`);
  }
  return parsed.data;
}

/** Assert the named columns exist, reporting the missing ones by name. */
export function requireColumns(rows: Row[], columns: string[], path: string): void {
  const present = new Set(Object.keys(rows[0]));
  const missing = columns.filter((c) => !present.has(c));
  if (missing.length > 0) {
    throw new FigureError(`missing column(s) ${missing.join(", ")} in ${path}`);
  }
}

export function numeric(row: Row, column: string, path: string): number {
  const value = row[column];
  if (typeof value !== "number" || !Number.isFinite(value)) {
    throw new FigureError(`non-numeric value for ${column} in ${path}: ${value}`);
  }
  return value;
}

export interface GridDump {
  psp: number[]; // ascending cell midpoints
  pwr: number[];
  /** values[i][j] for psp index i, pwr index j */
  values: number[][];
}

export const GRID_COLUMNS = [
  "psp", "pwr", "n", "q11P", "q01P", "q_ppP", "w_res", "w_atm", "w_pub",
];

/** Load one grid-dump CSV and pivot the chosen weight column into a matrix. */
export function readGridDump(path: string, column: string): GridDump {
  const rows = readCsv(path);
  requireColumns(rows, ["psp", "pwr", column], path);
  const pspValues = [...new Set(rows.map((r) => numeric(r, "psp", path)))].sort(
    (a, b) => a - b,
  );
  const pwrValues = [...new Set(rows.map((r) => numeric(r, "pwr", path)))].sort(
    (a, b) => a - b,
  );
  const pspIndex = new Map(pspValues.map((v, i) => [v, i]));
  const pwrIndex = new Map(pwrValues.map((v, i) => [v, i]));
  const values = pspValues.map(() => new Array<number>(pwrValues.length).fill(NaN));
  for (const row of rows) {
    const i = pspIndex.get(numeric(row, "psp", path))!;
    const j = pwrIndex.get(numeric(row, "pwr", path))!;
    values[i][j] = numeric(row, column, path);
  }
  for (const line of values) {
    for (const v of line) {
      if (Number.isNaN(v)) {
        throw new FigureError(`grid dump ${path} is not a complete lattice`);
      }
    }
  }
  return { psp: pspValues, pwr: pwrValues, values };
}
