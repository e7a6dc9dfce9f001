/** Figure layouts: which CSV columns feed each panel grid and plot kind. */

export const STRATEGY_COLORS: Record<string, [number, number, number]> = {
  HP: [31, 119, 180],
  LP: [255, 127, 14],
  HN: [44, 160, 44],
  LN: [214, 39, 40],
  HC: [148, 103, 189],
  LC: [140, 86, 75],
  HF: [227, 119, 194],
  LF: [127, 127, 127],
};

export const GROUP_SERIES_COLORS: [number, number, number][] = [
  [31, 119, 180],
  [255, 127, 14],
  [44, 160, 44],
  [148, 103, 189],
];

export const AXIS_SHORT: Record<string, string> = {
  alpha: "alpha",
  eps: "eps",
  delta: "delta",
  beta: "beta",
  benefit_high: "bH",
  mu: "mu",
  theta1: "th1",
  theta2: "th2",
};

const PAIR_FREQ = ["freq_HP", "freq_LP", "freq_HN", "freq_LN",
                   "freq_HC", "freq_LC", "freq_HF", "freq_LF"];
const GROUP_FREQ = PAIR_FREQ.slice(0, 6);

export interface LinesSpec {
  kind: "lines";
  columns: string[];
  yLabel: string;
  yRange?: [number, number];
}

export interface GroupedLinesSpec {
  kind: "grouped";
  groupBy: string;
  value: string;
  baseline: string;
  yLabel: string;
}

export interface HeatmapSpec {
  kind: "heatmap";
  y: string;
  value: string;
  valueLabel: string;
  valueRange?: [number, number];
}

export interface FigureSpec {
  id: string;
  x: string;
  panelRows?: string;
  panelCols?: string;
  plot: LinesSpec | GroupedLinesSpec | HeatmapSpec;
}

const freqLines = (columns: string[]): LinesSpec => ({
  kind: "lines",
  columns,
  yLabel: "frequency",
  yRange: [0, 1],
});

const welfareLines: GroupedLinesSpec = {
  kind: "grouped",
  groupBy: "eps",
  value: "welfare_commit",
  baseline: "welfare_baseline",
  yLabel: "welfare",
};

export const FIGURES: Record<string, FigureSpec> = {
  fig1: { id: "fig1", x: "alpha", panelCols: "eps", panelRows: "beta",
          plot: freqLines(PAIR_FREQ) },
  fig2: { id: "fig2", x: "eps", panelCols: "alpha", panelRows: "beta",
          plot: { kind: "heatmap", y: "delta", value: "freq_proposers",
                  valueLabel: "HP+LP", valueRange: [0, 1] } },
  fig3: { id: "fig3", x: "alpha", panelCols: "benefit_high", panelRows: "beta",
          plot: welfareLines },
  fig4: { id: "fig4", x: "eps", panelCols: "mu", panelRows: "benefit_high",
          plot: freqLines(GROUP_FREQ) },
  fig5: { id: "fig5", x: "alpha", panelCols: "eps", panelRows: "benefit_high",
          plot: freqLines(GROUP_FREQ) },
  fig6: { id: "fig6", x: "mu", panelCols: "benefit_high",
          plot: { kind: "heatmap", y: "eps", value: "freq_proposers",
                  valueLabel: "HP+LP", valueRange: [0, 1] } },
  fig7: { id: "fig7", x: "mu", panelCols: "beta", panelRows: "benefit_high",
          plot: welfareLines },
  fig8: { id: "fig8", x: "theta1", panelCols: "alpha", panelRows: "beta",
          plot: { kind: "heatmap", y: "theta2", value: "welfare_commit",
                  valueLabel: "welfare" } },
  fig9: { id: "fig9", x: "eps", plot: freqLines(GROUP_FREQ) },
  fig10: { id: "fig10", x: "alpha", panelCols: "eps", panelRows: "beta",
           plot: freqLines(GROUP_FREQ) },
};

export function figureSpec(id: string): FigureSpec {
  const spec = FIGURES[id];
  if (!spec) {
    throw new Error(`unknown figure id: ${id} (expected fig1..fig10)`);
  }
  return spec;
}

export function requiredColumns(spec: FigureSpec): string[] {
  const needed = [spec.x];
  if (spec.panelRows) needed.push(spec.panelRows);
  if (spec.panelCols) needed.push(spec.panelCols);
  const plot = spec.plot;
  if (plot.kind === "lines") {
    needed.push(...plot.columns);
  } else if (plot.kind === "grouped") {
    needed.push(plot.groupBy, plot.value, plot.baseline);
  } else {
    needed.push(plot.y, plot.value);
  }
  return needed;
}
