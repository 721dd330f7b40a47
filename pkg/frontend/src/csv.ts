import Papa from "papaparse";

export interface HistRow {
  lineCount: number;
  frequency: number;
}

export class CsvError extends Error {}

const HEADER = ["line_count", "frequency"];

/** Parse a census histogram CSV.
 *
 * Schema: header `line_count,frequency`, then one row per observed count
 * with strictly increasing line_count and frequency >= 1.  Errors name the
 * offending row (1-based, counting the header as row 1).
 */
export function parseHistogramCsv(text: string, source = "input"): HistRow[] {
  const parsed = Papa.parse<string[]>(text.replace(/^﻿/, ""), {
    skipEmptyLines: true,
  });
  for (const err of parsed.errors) {
    const row = err.row === undefined ? "?" : String(err.row + 1);
    throw new CsvError(`${source}: row ${row}: ${err.message}`);
  }
  const rows = parsed.data;
  if (rows.length === 0) {
    throw new CsvError(`${source}: empty file, expected a header row`);
  }
  const header = rows[0].map((h) => h.trim());
  if (header.length !== 2 || header[0] !== HEADER[0] || header[1] !== HEADER[1]) {
    throw new CsvError(
      `${source}: row 1: expected header "${HEADER.join(",")}", got "${rows[0].join(",")}"`);
  }
  if (rows.length === 1) {
    throw new CsvError(`${source}: no data rows after the header`);
  }
  const out: HistRow[] = [];
  for (let i = 1; i < rows.length; i++) {
    const rowNo = i + 1;
    const cells = rows[i];
    if (cells.length !== 2) {
      throw new CsvError(`${source}: row ${rowNo}: expected 2 fields, got ${cells.length}`);
    }
    const lineCount = parseField(cells[0], "line_count", rowNo, source);
    const frequency = parseField(cells[1], "frequency", rowNo, source);
    if (frequency < 1) {
      throw new CsvError(`${source}: row ${rowNo}: frequency must be >= 1, got ${frequency}`);
    }
    if (lineCount < 0) {
      throw new CsvError(`${source}: row ${rowNo}: line_count must be >= 0, got ${lineCount}`);
    }
    const prev = out.length > 0 ? out[out.length - 1].lineCount : -1;
    if (lineCount <= prev) {
      throw new CsvError(
        `${source}: row ${rowNo}: line_count must be strictly increasing ` +
        `(${lineCount} after ${prev})`);
    }
    out.push({ lineCount, frequency });
  }
  return out;
}

function parseField(cell: string, name: string, rowNo: number, source: string): number {
  const text = cell.trim();
  if (!/^-?\d+$/.test(text)) {
    throw new CsvError(`${source}: row ${rowNo}: ${name} must be an integer, got "${cell}"`);
  }
  return parseInt(text, 10);
}

export function totalSamples(rows: HistRow[]): number {
  return rows.reduce((acc, r) => acc + r.frequency, 0);
}
