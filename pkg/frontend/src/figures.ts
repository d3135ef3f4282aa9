/**
 * Figure specifications and the render dispatcher.
 */

import { writeFileSync } from "node:fs";

import { HeatmapPanel, renderHeatmapFigure } from "./heatmap.js";
import { renderMetricLines } from "./lineplot.js";

export interface HeatmapFigureSpec {
  id: "heatmap-panels";
  column: string;
  rows: number;
  cols: number;
  panels: HeatmapPanel[];
  outPath: string;
  title?: string;
  clipQuantile?: number;
}

export interface MetricLinesFigureSpec {
  id: "metric-lines";
  metricsCsvPath: string;
  metric: string;
  outPath: string;
  title?: string;
}

export type FigureSpec = HeatmapFigureSpec | MetricLinesFigureSpec;

/** Render one figure to its output path; deterministic for identical inputs. */
export function renderFigure(spec: FigureSpec): string {
  let svg: string;
  if (spec.id === "heatmap-panels") {
    svg = renderHeatmapFigure({
      column: spec.column,
      rows: spec.rows,
      cols: spec.cols,
      panels: spec.panels,
      title: spec.title,
      clipQuantile: spec.clipQuantile,
    });
  } else {
    svg = renderMetricLines({
      metricsCsvPath: spec.metricsCsvPath,
      metric: spec.metric,
      title: spec.title,
    });
  }
  writeFileSync(spec.outPath, svg, "utf-8");
  return spec.outPath;
}
