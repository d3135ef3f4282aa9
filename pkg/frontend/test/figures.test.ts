import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { FigureError, readCsv, readGridDump, requireColumns } from "../src/csv.js";
import { encodePng } from "../src/png.js";
import { renderHeatmapFigure } from "../src/heatmap.js";
import { renderMetricLines } from "../src/lineplot.js";
import { renderFigure } from "../src/figures.js";
import { main } from "../src/cli.js";

const GRID_HEADER = "psp,pwr,n,q11P,q01P,q_ppP,w_res,w_atm,w_pub";

function tempDir(): string {
  return mkdtempSync(join(tmpdir(), "pubeco-figures-"));
}

function writeGridDump(path: string, cells = 4, seedScale = 1.0): void {
  const lines = [GRID_HEADER];
  for (let i = 0; i < cells; i++) {
    for (let j = 0; j < cells; j++) {
      const psp = (i + 0.5) / cells;
      const pwr = 0.05 + ((j + 0.5) * 0.945) / cells;
      const w = (seedScale * (1 + i + j * 2)) / 100;
      lines.push(
        `${psp},${pwr},${100 + j},${0.1 * psp},${0.05 * (1 - psp)},${psp * pwr},${w},${w * 0.9},${w * w}`,
      );
    }
  }
  writeFileSync(path, lines.join("\n") + "\n");
}

function writeMetricsCsv(path: string): void {
  const lines = ["name,alpha,k,m,ssr,rel,pr,dscv,stpr"];
  for (const ssr of [false, true]) {
    for (const alpha of [0.001, 0.005, 0.05, 0.1]) {
      for (const k of [100, 500]) {
        for (const m of [1, 3]) {
          const rel = 0.9 - alpha * 2 + (ssr ? 0.05 : 0) - m * 0.02;
          lines.push(
            `x,${alpha},${k},${m},${ssr},${rel},${0.1 - alpha},${alpha * m},${0.5}`,
          );
        }
      }
    }
  }
  writeFileSync(path, lines.join("\n") + "\n");
}

describe("png encoder", () => {
  it("emits a valid signature and is deterministic", () => {
    const rgb = new Uint8Array([255, 0, 0, 0, 255, 0, 0, 0, 255, 10, 20, 30]);
    const a = encodePng(2, 2, rgb);
    const b = encodePng(2, 2, rgb);
    expect([...a.subarray(0, 8)]).toEqual([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);
    expect(a.equals(b)).toBe(true);
    expect(a.subarray(12, 16).toString("ascii")).toBe("IHDR");
    expect(a.subarray(a.length - 8, a.length - 4).toString("ascii")).toBe("IEND");
  });

  it("rejects a mis-sized buffer", () => {
    expect(() => encodePng(2, 2, new Uint8Array(5))).toThrow(/buffer size/);
  });
});

describe("csv loading", () => {
  it("rejects an empty csv explicitly", () => {
    const dir = tempDir();
    const path = join(dir, "empty.csv");
    writeFileSync(path, "");
    expect(() => readCsv(path)).toThrow(/empty CSV/);
  });

  it("reports missing columns by name", () => {
    const dir = tempDir();
    const path = join(dir, "short.csv");
    writeFileSync(path, "psp,pwr\n0.5,0.5\n");
    const rows = readCsv(path);
    expect(() => requireColumns(rows, ["psp", "w_res", "w_pub"], path)).toThrow(
      /missing column\(s\) w_res, w_pub/,
    );
  });

  it("pivots a grid dump into an ascending lattice", () => {
    const dir = tempDir();
    const path = join(dir, "grid.csv");
    writeGridDump(path, 3);
    const dump = readGridDump(path, "w_res");
    expect(dump.psp).toHaveLength(3);
    expect(dump.pwr).toHaveLength(3);
    expect(dump.values[2][1]).toBeGreaterThan(0);
    expect([...dump.psp]).toEqual([...dump.psp].sort((a, b) => a - b));
  });
});

describe("heatmap panels", () => {
  it("renders a 2x2 panel figure with embedded rasters", () => {
    const dir = tempDir();
    const panels = [0, 1, 2, 3].map((i) => {
      const path = join(dir, `g${i}.csv`);
      writeGridDump(path, 4, 1 + i);
      return { label: `panel ${i}`, csvPath: path };
    });
    const svg = renderHeatmapFigure({ column: "w_pub", rows: 2, cols: 2, panels });
    expect(svg).toContain("<svg");
    expect(svg.match(/<image /g)).toHaveLength(4);
    expect(svg).toContain("panel 3");
    expect(svg).toContain("data:image/png;base64,");
    expect(svg).toContain(">psp<");
    expect(svg).toContain(">pwr<");
  });

  it("is deterministic", () => {
    const dir = tempDir();
    const path = join(dir, "g.csv");
    writeGridDump(path, 4);
    const panels = [{ label: "p", csvPath: path }];
    const a = renderHeatmapFigure({ column: "w_res", rows: 1, cols: 1, panels });
    const b = renderHeatmapFigure({ column: "w_res", rows: 1, cols: 1, panels });
    expect(a).toBe(b);
  });

  it("rejects a panel-count mismatch", () => {
    const dir = tempDir();
    const path = join(dir, "g.csv");
    writeGridDump(path, 4);
    expect(() =>
      renderHeatmapFigure({
        column: "w_res",
        rows: 3,
        cols: 3,
        panels: [{ label: "p", csvPath: path }],
      }),
    ).toThrow(/expected 9 panels/);
  });

  it("propagates empty-csv errors instead of writing an image", () => {
    const dir = tempDir();
    const bad = join(dir, "empty.csv");
    writeFileSync(bad, "");
    expect(() =>
      renderHeatmapFigure({
        column: "w_res",
        rows: 1,
        cols: 1,
        panels: [{ label: "p", csvPath: bad }],
      }),
    ).toThrow(FigureError);
  });
});

describe("metric lines", () => {
  it("renders two panels with one polyline per (k, m) series", () => {
    const dir = tempDir();
    const path = join(dir, "metrics.csv");
    writeMetricsCsv(path);
    const svg = renderMetricLines({ metricsCsvPath: path, metric: "rel" });
    expect(svg).toContain("no power screen");
    expect(svg).toContain("with power screen");
    expect(svg.match(/<polyline /g)).toHaveLength(8); // 2 panels x 4 series
    expect(svg).toContain("k=100");
    expect(svg).toContain("m=3");
    expect(svg).toContain("alpha (log scale)");
  });

  it("reports a missing metric column", () => {
    const dir = tempDir();
    const path = join(dir, "metrics.csv");
    writeMetricsCsv(path);
    expect(() => renderMetricLines({ metricsCsvPath: path, metric: "nope" })).toThrow(
      /missing column\(s\) nope/,
    );
  });
});

describe("figure dispatch and cli", () => {
  it("writes heatmap and line figures through renderFigure", () => {
    const dir = tempDir();
    const grid = join(dir, "g.csv");
    writeGridDump(grid, 4);
    const metrics = join(dir, "m.csv");
    writeMetricsCsv(metrics);
    const heatOut = join(dir, "heat.svg");
    const lineOut = join(dir, "lines.svg");
    renderFigure({
      id: "heatmap-panels",
      column: "w_res",
      rows: 1,
      cols: 1,
      panels: [{ label: "p", csvPath: grid }],
      outPath: heatOut,
    });
    renderFigure({
      id: "metric-lines",
      metricsCsvPath: metrics,
      metric: "dscv",
      outPath: lineOut,
    });
    expect(readFileSync(heatOut, "utf-8")).toContain("<svg");
    expect(readFileSync(lineOut, "utf-8")).toContain("<svg");
  });

  it("cli renders and returns exit codes", () => {
    const dir = tempDir();
    const grid = join(dir, "g.csv");
    writeGridDump(grid, 4);
    const out = join(dir, "fig.svg");
    const code = main([
      "heatmap-panels",
      "--column", "w_res",
      "--rows", "1",
      "--cols", "1",
      "--panel", `k=100, m=1=${grid}`,
      "--out", out,
    ]);
    expect(code).toBe(0);
    expect(readFileSync(out, "utf-8")).toContain("k=100, m=1");
    expect(main(["bogus"])).toBe(2);
    expect(main(["metric-lines", "--metric", "rel"])).toBe(1);
  });
});
