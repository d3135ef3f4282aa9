#!/usr/bin/env node
/**
 * Figure rendering CLI.
 *
 *   pubeco-figures heatmap-panels --column w_res --rows 3 --cols 3 \
 *       --panel "k=100, m=1=grids/a0.05_k100_m1.csv" ... --out surface.svg
 *
 *   pubeco-figures metric-lines --metrics-csv tables/metrics_all.csv \
 *       --metric rel --out rel_vs_alpha.svg
 *
 * Panels are given row-major as "label=path" (the last '=' splits).
 */

import { parseArgs } from "node:util";

import { FigureError } from "./csv.js";
import { renderFigure } from "./figures.js";

function parsePanel(raw: string): { label: string; csvPath: string } {
  const split = raw.lastIndexOf("=");
  if (split <= 0 || split === raw.length - 1) {
    throw new FigureError(`panel must be "label=path", got ${raw}`);
  }
  return { label: raw.slice(0, split), csvPath: raw.slice(split + 1) };
}

export function main(argv: string[]): number {
  const command = argv[0];
  const rest = argv.slice(1);
  try {
    if (command === "heatmap-panels") {
      const { values } = parseArgs({
        args: rest,
        options: {
          column: { type: "string", default: "w_res" },
          rows: { type: "string", default: "1" },
          cols: { type: "string", default: "1" },
          panel: { type: "string", multiple: true },
          out: { type: "string" },
          title: { type: "string" },
          "clip-quantile": { type: "string" },
        },
      });
      if (!values.out || !values.panel || values.panel.length === 0) {
        throw new FigureError("heatmap-panels needs --out and at least one --panel");
      }
      renderFigure({
        id: "heatmap-panels",
        column: values.column!,
        rows: parseInt(values.rows!, 10),
        cols: parseInt(values.cols!, 10),
        panels: values.panel.map(parsePanel),
        outPath: values.out,
        title: values.title,
        clipQuantile: values["clip-quantile"]
          ? parseFloat(values["clip-quantile"])
          : undefined,
      });
      console.log(`wrote ${values.out}`);
      return 0;
    }
    if (command === "metric-lines") {
      const { values } = parseArgs({
        args: rest,
        options: {
          "metrics-csv": { type: "string" },
          metric: { type: "string" },
          out: { type: "string" },
          title: { type: "string" },
        },
      });
      if (!values["metrics-csv"] || !values.metric || !values.out) {
        throw new FigureError("metric-lines needs --metrics-csv, --metric, and --out");
      }
      renderFigure({
        id: "metric-lines",
        metricsCsvPath: values["metrics-csv"],
        metric: values.metric,
        outPath: values.out,
        title: values.title,
      });
      console.log(`wrote ${values.out}`);
      return 0;
    }
    console.error(`unknown command: ${command ?? "(none)"}; use heatmap-panels or metric-lines`);
    return 2;
  } catch (err) {
    if (err instanceof FigureError) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

const isDirectRun =
  process.argv[1] !== undefined &&
  import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (isDirectRun) {
  process.exit(main(process.argv.slice(2)));
}
