/**
 * Multi-panel strategy-space heatmaps from grid-dump CSVs.
 *
 * Each panel rasterizes one dump's weight column (psp on x, pwr on y, origin
 * bottom-left) into an embedded PNG; axes, labels, and the shared colorbar
 * are vector elements.  No model math happens here: the dump already carries
 * the densities.
 */

import { GridDump, readGridDump } from "./csv.js";
import { viridis, viridisHex } from "./color.js";
import { encodePng } from "./png.js";
import { el, fmt, linearScale, svgDocument, ticks } from "./svg.js";

export interface HeatmapPanel {
  label: string;
  csvPath: string;
}

export interface HeatmapFigureOptions {
  /** which dump column to plot (w_res for the publication surface, w_pub for published density) */
  column: string;
  rows: number;
  cols: number;
  panels: HeatmapPanel[]; // row-major, rows*cols entries
  title?: string;
  /** normalize color per panel (each panel spans its own [0, max]) */
  perPanelScale?: boolean;
  /**
   * clip the color scale at this quantile of the plotted values (display
   * only; narrow spikes otherwise wash out the broad structure)
   */
  clipQuantile?: number;
}

function quantile(sortedValues: number[], q: number): number {
  const pos = q * (sortedValues.length - 1);
  const lo = Math.floor(pos);
  const hi = Math.min(lo + 1, sortedValues.length - 1);
  return sortedValues[lo] + (pos - lo) * (sortedValues[hi] - sortedValues[lo]);
}

const PANEL_W = 240;
const PANEL_H = 200;
const MARGIN = { left: 64, right: 86, top: 48, bottom: 56 };
const GAP = 22;

function rasterize(dump: GridDump, vmax: number): string {
  const height = dump.pwr.length;
  const width = dump.psp.length;
  const rgb = new Uint8Array(width * height * 3);
  for (let y = 0; y < height; y++) {
    // pwr increases upward; PNG rows run top to bottom
    const j = height - 1 - y;
    for (let x = 0; x < width; x++) {
      const t = vmax > 0 ? dump.values[x][j] / vmax : 0;
      const [r, g, b] = viridis(t);
      const o = (y * width + x) * 3;
      rgb[o] = r;
      rgb[o + 1] = g;
      rgb[o + 2] = b;
    }
  }
  return encodePng(width, height, rgb).toString("base64");
}

function colorbar(x: number, y: number, height: number, vmax: number): string {
  const steps = 64;
  const cells: string[] = [];
  for (let i = 0; i < steps; i++) {
    const t = 1 - i / (steps - 1);
    cells.push(
      el("rect", {
        x,
        y: y + (i * height) / steps,
        width: 12,
        height: height / steps + 0.5,
        fill: viridisHex(t),
      }),
    );
  }
  cells.push(
    el("text", { x: x + 16, y: y + 6, "font-size": 10 }, [], fmt(vmax)),
    el("text", { x: x + 16, y: y + height, "font-size": 10 }, [], "0"),
  );
  return cells.join("\n");
}

export function renderHeatmapFigure(options: HeatmapFigureOptions): string {
  const { rows, cols, panels, column } = options;
  if (panels.length !== rows * cols) {
    throw new Error(`expected ${rows * cols} panels, got ${panels.length}`);
  }
  const dumps = panels.map((p) => readGridDump(p.csvPath, column));
  const clip = options.clipQuantile ?? 1.0;
  const panelMax = (d: GridDump) => {
    const flat = d.values.flat();
    if (clip >= 1.0) return Math.max(...flat);
    return quantile(flat.sort((a, b) => a - b), clip);
  };
  const globalMax = Math.max(...dumps.map(panelMax));

  const width = MARGIN.left + cols * PANEL_W + (cols - 1) * GAP + MARGIN.right;
  const height = MARGIN.top + rows * PANEL_H + (rows - 1) * GAP + MARGIN.bottom;
  const parts: string[] = [];
  if (options.title) {
    parts.push(
      el(
        "text",
        { x: width / 2, y: 22, "font-size": 14, "text-anchor": "middle" },
        [],
        options.title,
      ),
    );
  }

  dumps.forEach((dump, index) => {
    const r = Math.floor(index / cols);
    const c = index % cols;
    const x0 = MARGIN.left + c * (PANEL_W + GAP);
    const y0 = MARGIN.top + r * (PANEL_H + GAP);
    const vmax = options.perPanelScale ? panelMax(dump) : globalMax;
    const xScale = linearScale([dump.psp[0], dump.psp[dump.psp.length - 1]], [x0, x0 + PANEL_W]);
    const yScale = linearScale([dump.pwr[0], dump.pwr[dump.pwr.length - 1]], [y0 + PANEL_H, y0]);

    parts.push(
      el("image", {
        x: x0,
        y: y0,
        width: PANEL_W,
        height: PANEL_H,
        preserveAspectRatio: "none",
        href: `data:image/png;base64,${rasterize(dump, vmax)}`,
      }),
      el("rect", {
        x: x0, y: y0, width: PANEL_W, height: PANEL_H,
        fill: "none", stroke: "#333333", "stroke-width": 1,
      }),
      el(
        "text",
        { x: x0 + PANEL_W / 2, y: y0 - 6, "font-size": 11, "text-anchor": "middle" },
        [],
        panels[index].label,
      ),
    );

    // ticks only on outer panels to keep the lattice readable
    if (r === rows - 1) {
      for (const t of ticks(xScale.domain[0], xScale.domain[1], 4)) {
        parts.push(
          el("line", {
            x1: xScale(t), y1: y0 + PANEL_H, x2: xScale(t), y2: y0 + PANEL_H + 4,
            stroke: "#333333",
          }),
          el(
            "text",
            { x: xScale(t), y: y0 + PANEL_H + 16, "font-size": 9, "text-anchor": "middle" },
            [],
            fmt(t),
          ),
        );
      }
    }
    if (c === 0) {
      for (const t of ticks(yScale.domain[0], yScale.domain[1], 4)) {
        parts.push(
          el("line", {
            x1: x0 - 4, y1: yScale(t), x2: x0, y2: yScale(t), stroke: "#333333",
          }),
          el(
            "text",
            { x: x0 - 7, y: yScale(t) + 3, "font-size": 9, "text-anchor": "end" },
            [],
            fmt(t),
          ),
        );
      }
    }
  });

  parts.push(
    el(
      "text",
      { x: width / 2, y: height - 14, "font-size": 12, "text-anchor": "middle" },
      [],
      "psp",
    ),
    el(
      "text",
      {
        x: 18, y: height / 2, "font-size": 12, "text-anchor": "middle",
        transform: `rotate(-90 18 ${height / 2})`,
      },
      [],
      "pwr",
    ),
    colorbar(width - MARGIN.right + 28, MARGIN.top, PANEL_H, globalMax),
  );
  return svgDocument(width, height, parts);
}
