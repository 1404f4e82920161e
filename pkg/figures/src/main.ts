#!/usr/bin/env node
/**
 * aptrans-figures: render solver CSV output as SVG.
 *
 *   aptrans-figures convergence <convergence.csv> -o out.svg [--title T]
 *   aptrans-figures heatmap <plane.csv> -o out.svg [--decades 7] [--title T]
 *   aptrans-figures cut <plane.csv>... -o out.svg [--labels a,b] [--title T]
 *
 * Exit codes: 0 success, 1 schema mismatch or bad usage, 2 I/O failure.
 */

import { writeFileSync } from "fs";
import { pathToFileURL } from "url";
import { SchemaError, readConvergenceCsv, readFieldPlaneCsv } from "./csv.js";
import { convergencePlot, cutPlot, heatmapPlot } from "./plots.js";

interface Parsed {
  command: string;
  inputs: string[];
  output: string | null;
  title: string | null;
  decades: number;
  labels: string[] | null;
}

export function parseArgs(argv: string[]): Parsed {
  if (argv.length === 0) throw new UsageError("missing command");
  const [command, ...rest] = argv;
  const parsed: Parsed = { command, inputs: [], output: null, title: null,
                           decades: 7, labels: null };
  for (let k = 0; k < rest.length; k++) {
    const a = rest[k];
    if (a === "-o" || a === "--output") parsed.output = rest[++k];
    else if (a === "--title") parsed.title = rest[++k];
    else if (a === "--decades") parsed.decades = Number(rest[++k]);
    else if (a === "--labels") parsed.labels = rest[++k].split(",");
    else if (a.startsWith("-")) throw new UsageError(`unknown flag ${a}`);
    else parsed.inputs.push(a);
  }
  if (!parsed.output) throw new UsageError("missing -o <output.svg>");
  if (parsed.inputs.length === 0) throw new UsageError("missing input CSV path");
  if (!Number.isFinite(parsed.decades) || parsed.decades <= 0) {
    throw new UsageError("--decades must be a positive number");
  }
  return parsed;
}

export class UsageError extends Error {}

export function renderCommand(p: Parsed): string {
  switch (p.command) {
    case "convergence": {
      if (p.inputs.length !== 1) throw new UsageError("convergence takes one CSV");
      const rows = readConvergenceCsv(p.inputs[0]);
      return convergencePlot(rows, p.title ?? "convergence");
    }
    case "heatmap": {
      if (p.inputs.length !== 1) throw new UsageError("heatmap takes one CSV");
      const plane = readFieldPlaneCsv(p.inputs[0]);
      return heatmapPlot(plane, p.title ?? `density (${plane.plane} plane)`, p.decades);
    }
    case "cut": {
      const planes = p.inputs.map(readFieldPlaneCsv);
      const labels = p.labels ?? p.inputs;
      return cutPlot(planes, labels, p.title ?? "density cut");
    }
    default:
      throw new UsageError(`unknown command ${JSON.stringify(p.command)}; ` +
                           "expected convergence | heatmap | cut");
  }
}

export function main(argv: string[]): number {
  let parsed: Parsed;
  try {
    parsed = parseArgs(argv);
  } catch (err) {
    process.stderr.write(`usage error: ${(err as Error).message}\n`);
    return 1;
  }
  let svg: string;
  try {
    svg = renderCommand(parsed);
  } catch (err) {
    if (err instanceof SchemaError || err instanceof UsageError) {
      process.stderr.write(`${(err as Error).message}\n`);
      return 1;
    }
    if ((err as NodeJS.ErrnoException).code) {
      process.stderr.write(`i/o error: ${(err as Error).message}\n`);
      return 2;
    }
    process.stderr.write(`${(err as Error).message}\n`);
    return 1;
  }
  try {
    writeFileSync(parsed.output!, svg);
  } catch (err) {
    process.stderr.write(`i/o error: ${(err as Error).message}\n`);
    return 2;
  }
  return 0;
}

const entry = process.argv[1];
if (entry !== undefined && import.meta.url === pathToFileURL(entry).href) {
  process.exit(main(process.argv.slice(2)));
}
