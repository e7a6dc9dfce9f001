/** Multi-panel figure rendering from sweep CSVs. Pure function of the input file. */

import { mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { EmptyInputError, Table, distinctInOrder, parseCsv, requireColumns } from "./csv.js";
import { AXIS_SHORT, FigureSpec, GROUP_SERIES_COLORS, STRATEGY_COLORS,
         figureSpec, requiredColumns } from "./figures.js";
import { Canvas, Rgb, colormap } from "./raster.js";
import { encodePng } from "./png.js";

const BLACK: Rgb = [0, 0, 0];
const GRAY: Rgb = [150, 150, 150];

const PLOT_W = 220;
const PLOT_H = 150;
const MARGIN_LEFT = 50;
const MARGIN_RIGHT = 12;
const MARGIN_TOP = 16;
const MARGIN_BOTTOM = 32;
const LEGEND_H = 20;

const CELL_W = MARGIN_LEFT + PLOT_W + MARGIN_RIGHT;
const CELL_H = MARGIN_TOP + PLOT_H + MARGIN_BOTTOM;

export interface RenderResult {
  figure: string;
  panels: number;
  grid: [number, number];
  width: number;
  height: number;
  path: string;
}

function tickLabel(value: number): string {
  if (!Number.isFinite(value)) return "?";
  return String(Number(value.toPrecision(3)));
}

interface Scale {
  lo: number;
  hi: number;
  map(value: number): number;
}

function makeScale(lo: number, hi: number, pixelLo: number, pixelHi: number): Scale {
  const span = hi - lo || 1;
  return {
    lo,
    hi,
    map: (value) => pixelLo + ((value - lo) / span) * (pixelHi - pixelLo),
  };
}

function drawAxes(canvas: Canvas, x0: number, y0: number, xScale: Scale,
                  yScale: Scale, title: string, xLabel: string, yLabel: string,
                  bottomRow: boolean): void {
  canvas.rect(x0, y0, PLOT_W, PLOT_H, GRAY);
  canvas.text(x0 + 2, y0 - 11, title, BLACK);
  canvas.text(x0 - MARGIN_LEFT + 2, y0 - 11, yLabel, GRAY);
  for (let i = 0; i <= 4; i++) {
    const vx = xScale.lo + (i / 4) * (xScale.hi - xScale.lo);
    const px = Math.round(xScale.map(vx));
    canvas.line(px, y0 + PLOT_H, px, y0 + PLOT_H + 3, GRAY);
    canvas.textCentered(px, y0 + PLOT_H + 6, tickLabel(vx), BLACK);
    const vy = yScale.lo + (i / 4) * (yScale.hi - yScale.lo);
    const py = Math.round(yScale.map(vy));
    canvas.line(x0 - 3, py, x0, py, GRAY);
    canvas.textRight(x0 - 5, py - 3, tickLabel(vy), BLACK);
  }
  if (bottomRow) {
    canvas.textCentered(x0 + PLOT_W / 2, y0 + PLOT_H + 18, xLabel, BLACK);
  }
}

function polyline(canvas: Canvas, points: [number, number][], rgb: Rgb): void {
  for (let i = 1; i < points.length; i++) {
    canvas.line(points[i - 1][0], points[i - 1][1], points[i][0], points[i][1], rgb);
  }
  if (points.length === 1) {
    canvas.fillRect(points[0][0] - 1, points[0][1] - 1, 3, 3, rgb);
  }
}

interface PanelData {
  title: string;
  rows: string[][];
}

function panelSplit(table: Table, spec: FigureSpec,
                    col: Map<string, number>): { panels: PanelData[]; grid: [number, number] } {
  const rowVals = spec.panelRows ? distinctInOrder(table, col.get(spec.panelRows)!) : [""];
  const colVals = spec.panelCols ? distinctInOrder(table, col.get(spec.panelCols)!) : [""];
  const panels: PanelData[] = [];
  for (const rv of rowVals) {
    for (const cv of colVals) {
      const rows = table.rows.filter((row) =>
        (!spec.panelRows || row[col.get(spec.panelRows)!] === rv) &&
        (!spec.panelCols || row[col.get(spec.panelCols)!] === cv));
      const parts: string[] = [];
      if (spec.panelCols) parts.push(`${AXIS_SHORT[spec.panelCols] ?? spec.panelCols}=${cv}`);
      if (spec.panelRows) parts.push(`${AXIS_SHORT[spec.panelRows] ?? spec.panelRows}=${rv}`);
      panels.push({ title: parts.join(" "), rows });
    }
  }
  return { panels, grid: [rowVals.length, colVals.length] };
}

function globalRange(values: number[], fallback: [number, number]): [number, number] {
  const finite = values.filter((v) => Number.isFinite(v));
  if (finite.length === 0) return fallback;
  let lo = Math.min(...finite);
  let hi = Math.max(...finite);
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const pad = 0.05 * (hi - lo);
  return [lo - pad, hi + pad];
}

export function renderFigure(csvPath: string, figId: string, outDir: string): RenderResult {
  const spec = figureSpec(figId);
  const table = parseCsv(readFileSync(csvPath, "utf8"));
  const col = requireColumns(table, requiredColumns(spec));
  if (table.rows.length === 0) {
    throw new EmptyInputError(`${csvPath}: no data rows`);
  }
  const { panels, grid } = panelSplit(table, spec, col);
  const width = grid[1] * CELL_W + 8;
  const height = LEGEND_H + grid[0] * CELL_H + 6;
  const canvas = new Canvas(width, height);
  const xIndex = col.get(spec.x)!;
  const xLabel = AXIS_SHORT[spec.x] ?? spec.x;
  const plot = spec.plot;

  drawLegend(canvas, spec, table, col);

  let valueRange: [number, number] = [0, 1];
  if (plot.kind === "grouped") {
    valueRange = globalRange(
      table.rows.flatMap((row) => [Number(row[col.get(plot.value)!]),
                                   Number(row[col.get(plot.baseline)!])]),
      [0, 1]);
  } else if (plot.kind === "heatmap") {
    valueRange = plot.valueRange ?? globalRange(
      table.rows.map((row) => Number(row[col.get(plot.value)!])), [0, 1]);
  }

  panels.forEach((panel, index) => {
    const gridRow = Math.floor(index / grid[1]);
    const gridCol = index % grid[1];
    const x0 = 4 + gridCol * CELL_W + MARGIN_LEFT;
    const y0 = LEGEND_H + gridRow * CELL_H + MARGIN_TOP;
    const xsAll = panel.rows.map((row) => Number(row[xIndex]));
    const xScale = makeScale(Math.min(...xsAll), Math.max(...xsAll), x0, x0 + PLOT_W);
    const bottomRow = gridRow === grid[0] - 1;

    if (plot.kind === "heatmap") {
      const yIndex = col.get(plot.y)!;
      const vIndex = col.get(plot.value)!;
      const xs = [...new Set(xsAll)].sort((a, b) => a - b);
      const ys = [...new Set(panel.rows.map((row) => Number(row[yIndex])))]
        .sort((a, b) => a - b);
      const yScale = makeScale(ys[0], ys[ys.length - 1], y0 + PLOT_H, y0);
      drawAxes(canvas, x0, y0, xScale, yScale, panel.title, xLabel,
               AXIS_SHORT[plot.y] ?? plot.y, bottomRow);
      const cellW = PLOT_W / xs.length;
      const cellH = PLOT_H / ys.length;
      for (const row of panel.rows) {
        const ix = xs.indexOf(Number(row[xIndex]));
        const iy = ys.indexOf(Number(row[yIndex]));
        const value = Number(row[vIndex]);
        const t = (value - valueRange[0]) / (valueRange[1] - valueRange[0] || 1);
        canvas.fillRect(x0 + ix * cellW + 1, y0 + PLOT_H - (iy + 1) * cellH + 1,
                        Math.max(1, cellW - 1), Math.max(1, cellH - 1), colormap(t));
      }
      return;
    }

    const yRange = plot.kind === "lines" ? (plot.yRange ?? valueRange) : valueRange;
    const yScale = makeScale(yRange[0], yRange[1], y0 + PLOT_H, y0);
    drawAxes(canvas, x0, y0, xScale, yScale, panel.title, xLabel, plot.yLabel, bottomRow);

    const ordered = [...panel.rows].sort((a, b) => Number(a[xIndex]) - Number(b[xIndex]));
    if (plot.kind === "lines") {
      plot.columns.forEach((column) => {
        const rgb = STRATEGY_COLORS[column.replace("freq_", "")] ?? BLACK;
        const points: [number, number][] = ordered.map((row) => [
          Math.round(xScale.map(Number(row[xIndex]))),
          Math.round(yScale.map(Number(row[col.get(column)!]))),
        ]);
        polyline(canvas, points, rgb);
      });
    } else {
      const groupIndex = col.get(plot.groupBy)!;
      const groups = [...new Set(ordered.map((row) => row[groupIndex]))];
      groups.forEach((groupValue, gi) => {
        const rows = ordered.filter((row) => row[groupIndex] === groupValue);
        const rgb = GROUP_SERIES_COLORS[gi % GROUP_SERIES_COLORS.length];
        polyline(canvas, rows.map((row) => [
          Math.round(xScale.map(Number(row[xIndex]))),
          Math.round(yScale.map(Number(row[col.get(plot.value)!]))),
        ]), rgb);
      });
      const baseRows = ordered.filter((row) => row[groupIndex] === groups[0]);
      polyline(canvas, baseRows.map((row) => [
        Math.round(xScale.map(Number(row[xIndex]))),
        Math.round(yScale.map(Number(row[col.get(plot.baseline)!]))),
      ]), BLACK);
    }
  });

  mkdirSync(outDir, { recursive: true });
  const path = join(outDir, `${figId}.png`);
  writeFileSync(path, encodePng(width, height, canvas.data));
  return { figure: figId, panels: panels.length, grid, width, height, path };
}

function drawLegend(canvas: Canvas, spec: FigureSpec, table: Table,
                    col: Map<string, number>): void {
  const plot = spec.plot;
  let cursor = 8;
  const y = 6;
  canvas.text(cursor, y, spec.id, BLACK);
  cursor += spec.id.length * 6 + 14;
  if (plot.kind === "lines") {
    for (const column of plot.columns) {
      const name = column.replace("freq_", "");
      const rgb = STRATEGY_COLORS[name] ?? BLACK;
      canvas.fillRect(cursor, y + 1, 8, 5, rgb);
      canvas.text(cursor + 11, y, name, BLACK);
      cursor += 11 + name.length * 6 + 10;
    }
  } else if (plot.kind === "grouped") {
    const groups = distinctInOrder(table, col.get(plot.groupBy)!);
    groups.forEach((value, gi) => {
      const label = `${AXIS_SHORT[plot.groupBy] ?? plot.groupBy}=${value}`;
      const rgb = GROUP_SERIES_COLORS[gi % GROUP_SERIES_COLORS.length];
      canvas.fillRect(cursor, y + 1, 8, 5, rgb);
      canvas.text(cursor + 11, y, label, BLACK);
      cursor += 11 + label.length * 6 + 10;
    });
    canvas.fillRect(cursor, y + 1, 8, 5, BLACK);
    canvas.text(cursor + 11, y, "baseline", BLACK);
  } else {
    for (let i = 0; i < 60; i++) {
      canvas.fillRect(cursor + i, y, 1, 7, colormap(i / 59));
    }
    canvas.text(cursor + 66, y, plot.valueLabel, BLACK);
  }
}
