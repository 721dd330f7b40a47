#!/usr/bin/env node
import { readFileSync, realpathSync, writeFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { parseArgs } from "node:util";

import { CsvError, parseHistogramCsv } from "./csv.js";
import { renderHistogram, renderOverlay } from "./render.js";

const USAGE = `usage:
  figures plot --in HIST.csv --out FIG.svg [--title TEXT]
  figures overlay --all HIST.csv --smooth HIST.csv --out FIG.svg [--title TEXT]

Input files are census histogram CSVs (header line_count,frequency).
Output is a deterministic SVG bar chart; overlay normalizes both series
to relative frequency.`;

class UsageError extends Error {}

function readHistogram(path: string): ReturnType<typeof parseHistogramCsv> {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch (err) {
    throw new UsageError(`cannot read ${path}: ${(err as Error).message}`);
  }
  return parseHistogramCsv(text, path);
}

/** Exit codes match the census producer: 0 ok, 2 usage (flags, unreadable
 * files), 1 malformed data. */
export function main(argv: string[]): number {
  const command = argv[0];
  const rest = argv.slice(1);
  try {
    if (command === "plot") {
      const { values } = parseArgs({
        args: rest,
        options: {
          in: { type: "string" },
          out: { type: "string" },
          title: { type: "string" },
        },
      });
      if (!values.in || !values.out) {
        throw new UsageError("plot needs --in and --out");
      }
      const rows = readHistogram(values.in);
      writeFileSync(values.out, renderHistogram(rows, values.title));
      return 0;
    }
    if (command === "overlay") {
      const { values } = parseArgs({
        args: rest,
        options: {
          all: { type: "string" },
          smooth: { type: "string" },
          out: { type: "string" },
          title: { type: "string" },
        },
      });
      if (!values.all || !values.smooth || !values.out) {
        throw new UsageError("overlay needs --all, --smooth and --out");
      }
      const allRows = readHistogram(values.all);
      const smoothRows = readHistogram(values.smooth);
      writeFileSync(values.out, renderOverlay(allRows, smoothRows, values.title));
      return 0;
    }
    if (command === undefined || command === "--help" || command === "help") {
      process.stdout.write(USAGE + "\n");
      return command === undefined ? 2 : 0;
    }
    throw new UsageError(`unknown command ${command}`);
  } catch (err) {
    if (err instanceof UsageError) {
      process.stderr.write(`error: ${err.message}\n${USAGE}\n`);
      return 2;
    }
    if (err instanceof CsvError) {
      process.stderr.write(`error: ${err.message}\n`);
      return 1;
    }
    if (err instanceof TypeError && "code" in err &&
        String(err.code).startsWith("ERR_PARSE_ARGS")) {
      process.stderr.write(`error: ${err.message}\n${USAGE}\n`);
      return 2;
    }
    throw err;
  }
}

function isDirectRun(): boolean {
  if (process.argv[1] === undefined) return false;
  try {
    return realpathSync(process.argv[1]) === fileURLToPath(import.meta.url);
  } catch {
    return false;
  }
}

if (isDirectRun()) {
  process.exit(main(process.argv.slice(2)));
}
