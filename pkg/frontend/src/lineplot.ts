/**
 * Metric-vs-alpha line panels from the all-ecosystems metrics CSV.
 *
 * Two panels (no power screen | power screen), alpha on a log axis, one
 * line per (k, m) pair: color encodes k, dash pattern encodes m.
 */

import { Row, numeric, readCsv, requireColumns } from "./csv.js";
import { SERIES_COLORS, SERIES_DASHES } from "./color.js";
import { el, fmt, linearScale, svgDocument, ticks } from "./svg.js";

export interface MetricLinesOptions {
  metricsCsvPath: string;
  metric: string; // any numeric metrics column, e.g. rel, dscv, pr, stpr
  title?: string;
}

const PANEL_W = 300;
const PANEL_H = 240;
const MARGIN = { left: 64, right: 24, top: 48, bottom: 86 };
const GAP = 46;

interface Series {
  k: number;
  m: number;
  points: { alpha: number; value: number }[];
}

function collectSeries(rows: Row[], metric: string, ssr: boolean, path: string): Series[] {
  const byKey = new Map<string, Series>();
  for (const row of rows) {
    const rowSsr = row.ssr === true || row.ssr === "true";
    if (rowSsr !== ssr) continue;
    const k = numeric(row, "k", path);
    const m = numeric(row, "m", path);
    const key = `${k}|${m}`;
    if (!byKey.has(key)) {
      byKey.set(key, { k, m, points: [] });
    }
    byKey.get(key)!.points.push({
      alpha: numeric(row, "alpha", path),
      value: numeric(row, metric, path),
    });
  }
  const series = [...byKey.values()];
  for (const s of series) {
    s.points.sort((a, b) => a.alpha - b.alpha);
  }
  series.sort((a, b) => a.k - b.k || a.m - b.m);
  return series;
}

export function renderMetricLines(options: MetricLinesOptions): string {
  const rows = readCsv(options.metricsCsvPath);
  requireColumns(rows, ["alpha", "k", "m", "ssr", options.metric], options.metricsCsvPath);

  const panels: { label: string; series: Series[] }[] = [
    { label: "no power screen", series: collectSeries(rows, options.metric, false, options.metricsCsvPath) },
    { label: "with power screen", series: collectSeries(rows, options.metric, true, options.metricsCsvPath) },
  ];
  const drawn = panels.filter((p) => p.series.length > 0);
  if (drawn.length === 0) {
    throw new Error(`no rows with metric ${options.metric} in ${options.metricsCsvPath}`);
  }

  const allValues = drawn.flatMap((p) => p.series.flatMap((s) => s.points.map((q) => q.value)));
  const allAlphas = [...new Set(drawn.flatMap((p) => p.series.flatMap((s) => s.points.map((q) => q.alpha))))].sort((a, b) => a - b);
  const vMax = Math.max(...allValues);
  const vMin = Math.min(0, Math.min(...allValues));
  const yDomain: [number, number] = [vMin, vMax * 1.06 || 1];

  const kValues = [...new Set(drawn.flatMap((p) => p.series.map((s) => s.k)))].sort((a, b) => a - b);
  const mValues = [...new Set(drawn.flatMap((p) => p.series.map((s) => s.m)))].sort((a, b) => a - b);

  const width = MARGIN.left + drawn.length * PANEL_W + (drawn.length - 1) * GAP + MARGIN.right;
  const height = MARGIN.top + PANEL_H + MARGIN.bottom;
  const parts: string[] = [];
  parts.push(
    el(
      "text",
      { x: width / 2, y: 22, "font-size": 14, "text-anchor": "middle" },
      [],
      options.title ?? `${options.metric} across significance thresholds`,
    ),
  );

  drawn.forEach((panel, index) => {
    const x0 = MARGIN.left + index * (PANEL_W + GAP);
    const y0 = MARGIN.top;
    const xScale = linearScale(
      [Math.log10(allAlphas[0]), Math.log10(allAlphas[allAlphas.length - 1])],
      [x0 + 12, x0 + PANEL_W - 12],
    );
    const yScale = linearScale(yDomain, [y0 + PANEL_H, y0]);

    parts.push(
      el("rect", {
        x: x0, y: y0, width: PANEL_W, height: PANEL_H,
        fill: "none", stroke: "#333333", "stroke-width": 1,
      }),
      el(
        "text",
        { x: x0 + PANEL_W / 2, y: y0 - 6, "font-size": 11, "text-anchor": "middle" },
        [],
        panel.label,
      ),
    );
    for (const t of ticks(yDomain[0], yDomain[1], 5)) {
      parts.push(
        el("line", {
          x1: x0, y1: yScale(t), x2: x0 + PANEL_W, y2: yScale(t),
          stroke: "#dddddd", "stroke-width": 0.6,
        }),
        el(
          "text",
          { x: x0 - 6, y: yScale(t) + 3, "font-size": 9, "text-anchor": "end" },
          [],
          fmt(t),
        ),
      );
    }
    for (const alpha of allAlphas) {
      const x = xScale(Math.log10(alpha));
      parts.push(
        el("line", { x1: x, y1: y0 + PANEL_H, x2: x, y2: y0 + PANEL_H + 4, stroke: "#333333" }),
        el(
          "text",
          { x, y: y0 + PANEL_H + 16, "font-size": 9, "text-anchor": "middle" },
          [],
          fmt(alpha),
        ),
      );
    }
    for (const series of panel.series) {
      const color = SERIES_COLORS[kValues.indexOf(series.k) % SERIES_COLORS.length];
      const dash = SERIES_DASHES[mValues.indexOf(series.m) % SERIES_DASHES.length];
      const points = series.points
        .map((p) => `${xScale(Math.log10(p.alpha)).toFixed(2)},${yScale(p.value).toFixed(2)}`)
        .join(" ");
      const attrs: Record<string, string | number> = {
        points,
        fill: "none",
        stroke: color,
        "stroke-width": 1.6,
      };
      if (dash) attrs["stroke-dasharray"] = dash;
      parts.push(el("polyline", attrs));
    }
    parts.push(
      el(
        "text",
        { x: x0 + PANEL_W / 2, y: y0 + PANEL_H + 34, "font-size": 11, "text-anchor": "middle" },
        [],
        "alpha (log scale)",
      ),
    );
  });

  // legend: colors are k, dashes are m
  const legendY = height - 30;
  let legendX = MARGIN.left;
  kValues.forEach((k, i) => {
    parts.push(
      el("line", {
        x1: legendX, y1: legendY, x2: legendX + 26, y2: legendY,
        stroke: SERIES_COLORS[i % SERIES_COLORS.length], "stroke-width": 2,
      }),
      el("text", { x: legendX + 32, y: legendY + 3, "font-size": 10 }, [], `k=${fmt(k)}`),
    );
    legendX += 96;
  });
  mValues.forEach((m, i) => {
    const attrs: Record<string, string | number> = {
      x1: legendX, y1: legendY, x2: legendX + 26, y2: legendY,
      stroke: "#555555", "stroke-width": 2,
    };
    const dash = SERIES_DASHES[i % SERIES_DASHES.length];
    if (dash) attrs["stroke-dasharray"] = dash;
    parts.push(
      el("line", attrs),
      el("text", { x: legendX + 32, y: legendY + 3, "font-size": 10 }, [], `m=${fmt(m)}`),
    );
    legendX += 80;
  });
  parts.push(
    el(
      "text",
      {
        x: 18, y: MARGIN.top + PANEL_H / 2, "font-size": 12, "text-anchor": "middle",
        transform: `rotate(-90 18 ${MARGIN.top + PANEL_H / 2})`,
      },
      [],
      options.metric,
    ),
  );
  return svgDocument(width, height, parts);
}
