/**
 * The three figure kinds:
 *
 * - convergence: error vs grid size on log-log axes, one polyline per
 *   (scenario, epsilon) series, with first- and second-order slope guides;
 * - heatmap: a field plane on a log color scale clipped a fixed number of
 *   decades below its maximum (default seven);
 * - cut: the y=0 profile of one or more field planes, overlaid.
 *
 * Pure readers of the documented CSV schemas; nothing here recomputes
 * physics.
 */

import { ConvergenceRow, FieldPlane, cutAlongY0 } from "./csv.js";
import { AxisSpec, SvgCanvas, drawAxes, fmt, linearScale, linearTicks,
         logScale, logTicks, rampColor } from "./svg.js";

const SERIES_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

const MARGIN = { left: 64, right: 24, top: 28, bottom: 48 };

export function convergencePlot(rows: ConvergenceRow[], title = "convergence"): string {
  if (rows.length === 0) throw new Error("no convergence rows to plot");
  const width = 560;
  const height = 420;
  const svg = new SvgCanvas(width, height);
  const ns = rows.map((r) => r.n);
  const errs = rows.map((r) => r.error);
  const xScale = logScale([Math.min(...ns) / 1.2, Math.max(...ns) * 1.2],
                          [MARGIN.left, width - MARGIN.right]);
  const yScale = logScale([Math.min(...errs) / 2, Math.max(...errs) * 2],
                          [height - MARGIN.bottom, MARGIN.top]);
  drawAxes(svg, {
    xScale, yScale,
    xTicks: logTicks(xScale.domain), yTicks: logTicks(yScale.domain),
    xLabel: "grid size N", yLabel: "l2 error",
  } as AxisSpec);

  // slope guides anchored at the first data point
  const n0 = Math.min(...ns);
  const n1 = Math.max(...ns);
  const e0 = Math.max(...errs);
  for (const slope of [1, 2]) {
    const pts: Array<[number, number]> = [
      [xScale(n0), yScale(e0)],
      [xScale(n1), yScale(e0 * Math.pow(n0 / n1, slope))],
    ];
    svg.polyline(pts, "#999999", `stroke-dasharray="5,4" stroke-width="1"`);
    svg.text(xScale(n1) + 2, yScale(e0 * Math.pow(n0 / n1, slope)),
             `slope ${slope}`, 'font-size="9" fill="#777777"');
  }

  const keys = [...new Set(rows.map((r) => `${r.scenario} eps=${fmt(r.epsilon)}`))];
  keys.forEach((key, ki) => {
    const series = rows.filter((r) => `${r.scenario} eps=${fmt(r.epsilon)}` === key)
                       .sort((a, b) => a.n - b.n);
    const color = SERIES_COLORS[ki % SERIES_COLORS.length];
    svg.polyline(series.map((r) => [xScale(r.n), yScale(r.error)]), color,
                 'stroke-width="1.5"');
    for (const r of series) {
      // filled marker for the hyperbolic step-size branch, open for parabolic
      if (r.branch === "hyperbolic") {
        svg.circle(xScale(r.n), yScale(r.error), 3.5, color);
      } else {
        svg.add(`<circle cx="${xScale(r.n).toFixed(2)}" cy="${yScale(r.error).toFixed(2)}" r="3.5" fill="white" stroke="${color}"/>`);
      }
    }
    svg.text(width - MARGIN.right - 140, MARGIN.top + 14 * (ki + 1), key,
             `font-size="11" fill="${color}"`);
  });
  svg.text(MARGIN.left, 16, title, 'font-size="13"');
  return svg.render();
}

export function heatmapPlot(plane: FieldPlane, title = "density",
                            logFloorDecades = 7): string {
  const width = 560;
  const height = 520;
  const svg = new SvgCanvas(width, height);
  const flat = plane.values.flat();
  const vmax = Math.max(...flat);
  if (!(vmax > 0)) throw new Error("heatmap needs a positive maximum for log scaling");
  const floor = vmax * Math.pow(10, -logFloorDecades);
  const lmin = Math.log10(floor);
  const lmax = Math.log10(vmax);
  const plotW = width - MARGIN.left - MARGIN.right - 40; // room for colorbar
  const plotH = height - MARGIN.top - MARGIN.bottom;
  const cw = plotW / plane.nx;
  const ch = plotH / plane.ny;
  for (let i = 0; i < plane.nx; i++) {
    for (let j = 0; j < plane.ny; j++) {
      const v = Math.max(plane.values[i][j], floor);
      const t = (Math.log10(v) - lmin) / (lmax - lmin);
      svg.rect(MARGIN.left + i * cw, MARGIN.top + plotH - (j + 1) * ch,
               cw + 0.5, ch + 0.5, rampColor(t));
    }
  }
  // frame and coordinate labels from the actual sample positions
  svg.add(`<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="black"/>`);
  const x0 = plane.x[0][0];
  const x1 = plane.x[plane.nx - 1][0];
  const y0 = plane.y[0][0];
  const y1 = plane.y[0][plane.ny - 1];
  svg.text(MARGIN.left, height - 22, `x in [${fmt(x0)}, ${fmt(x1)}]`, 'font-size="10"');
  svg.text(MARGIN.left, height - 8, `y in [${fmt(y0)}, ${fmt(y1)}]`, 'font-size="10"');
  // colorbar
  const cbX = width - MARGIN.right - 24;
  const steps = 64;
  for (let k = 0; k < steps; k++) {
    svg.rect(cbX, MARGIN.top + plotH - ((k + 1) * plotH) / steps, 14,
             plotH / steps + 0.5, rampColor(k / (steps - 1)));
  }
  svg.text(cbX - 4, MARGIN.top + 10, `1e${Math.round(lmax)}`, 'text-anchor="end" font-size="9"');
  svg.text(cbX - 4, MARGIN.top + plotH, `1e${Math.round(lmin)}`, 'text-anchor="end" font-size="9"');
  svg.text(MARGIN.left, 16, `${title} (log scale, ${logFloorDecades} decades)`, 'font-size="13"');
  return svg.render();
}

export function cutPlot(planes: FieldPlane[], labels: string[],
                        title = "density cut"): string {
  if (planes.length === 0) throw new Error("no planes to cut");
  if (labels.length !== planes.length) throw new Error("one label per input plane");
  const cuts = planes.map(cutAlongY0);
  const width = 560;
  const height = 420;
  const svg = new SvgCanvas(width, height);
  const allX = cuts.flatMap((c) => c.x);
  const allV = cuts.flatMap((c) => c.v);
  const vmin = Math.min(...allV);
  const vmax = Math.max(...allV);
  const pad = 0.05 * (vmax - vmin || 1);
  const xScale = linearScale([Math.min(...allX), Math.max(...allX)],
                             [MARGIN.left, width - MARGIN.right]);
  const yScale = linearScale([vmin - pad, vmax + pad],
                             [height - MARGIN.bottom, MARGIN.top]);
  drawAxes(svg, {
    xScale, yScale,
    xTicks: linearTicks(xScale.domain), yTicks: linearTicks(yScale.domain),
    xLabel: "x", yLabel: "density",
  } as AxisSpec);
  cuts.forEach((cut, k) => {
    const color = SERIES_COLORS[k % SERIES_COLORS.length];
    svg.polyline(cut.x.map((x, i) => [xScale(x), yScale(cut.v[i])] as [number, number]),
                 color, 'stroke-width="1.5"');
    svg.text(width - MARGIN.right - 150, MARGIN.top + 14 * (k + 1), labels[k],
             `font-size="11" fill="${color}"`);
  });
  svg.text(MARGIN.left, 16, `${title} (row nearest y=0: y=${fmt(cuts[0].yCut)})`,
           'font-size="13"');
  return svg.render();
}
