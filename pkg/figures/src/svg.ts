/**
 * Minimal deterministic SVG construction: linear/log scales, axes with
 * tick labels, polylines, filled cells and a small perceptual colormap.
 * No timestamps, no randomness -- identical inputs give identical bytes.
 */

export interface Scale {
  (v: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const k = d1 === d0 ? 0 : (r1 - r0) / (d1 - d0);
  const f = ((v: number) => r0 + (v - d0) * k) as Scale;
  f.domain = domain;
  f.range = range;
  return f;
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  if (domain[0] <= 0 || domain[1] <= 0) {
    throw new Error("log scale needs a positive domain");
  }
  const inner = linearScale([Math.log10(domain[0]), Math.log10(domain[1])], range);
  const f = ((v: number) => inner(Math.log10(v))) as Scale;
  f.domain = domain;
  f.range = range;
  return f;
}

export function fmt(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(1).replace("+", "");
  return Number(v.toPrecision(4)).toString();
}

/** Decade ticks for a log axis. */
export function logTicks(domain: [number, number]): number[] {
  const lo = Math.ceil(Math.log10(domain[0]) - 1e-9);
  const hi = Math.floor(Math.log10(domain[1]) + 1e-9);
  const out = [];
  for (let e = lo; e <= hi; e++) out.push(10 ** e);
  return out;
}

/** Round-number ticks for a linear axis. */
export function linearTicks(domain: [number, number], count = 6): number[] {
  const span = domain[1] - domain[0];
  if (span <= 0) return [domain[0]];
  const step0 = span / count;
  const mag = 10 ** Math.floor(Math.log10(step0));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => span / s <= count)! ;
  const start = Math.ceil(domain[0] / step) * step;
  const out = [];
  for (let v = start; v <= domain[1] + 1e-12 * span; v += step) {
    out.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return out;
}

/** Five-anchor approximation of a dark-to-bright perceptual ramp. */
const RAMP: Array<[number, number, number]> = [
  [68, 1, 84], [59, 82, 139], [33, 145, 140], [94, 201, 98], [253, 231, 37],
];

export function rampColor(t: number): string {
  const u = Math.min(1, Math.max(0, t)) * (RAMP.length - 1);
  const k = Math.min(RAMP.length - 2, Math.floor(u));
  const f = u - k;
  const mix = (a: number, b: number) => Math.round(a + (b - a) * f);
  const [r, g, b] = [0, 1, 2].map((c) => mix(RAMP[k][c], RAMP[k + 1][c]));
  return `rgb(${r},${g},${b})`;
}

export class SvgCanvas {
  readonly width: number;
  readonly height: number;
  private parts: string[] = [];

  constructor(width: number, height: number) {
    this.width = width;
    this.height = height;
  }

  add(fragment: string): void {
    this.parts.push(fragment);
  }

  text(x: number, y: number, s: string, opts = ""): void {
    this.add(`<text x="${x.toFixed(2)}" y="${y.toFixed(2)}" font-family="sans-serif" ${opts}>${escapeXml(s)}</text>`);
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, extra = ""): void {
    this.add(`<line x1="${x1.toFixed(2)}" y1="${y1.toFixed(2)}" x2="${x2.toFixed(2)}" y2="${y2.toFixed(2)}" stroke="${stroke}" ${extra}/>`);
  }

  polyline(pts: Array<[number, number]>, stroke: string, extra = ""): void {
    const d = pts.map(([x, y]) => `${x.toFixed(2)},${y.toFixed(2)}`).join(" ");
    this.add(`<polyline points="${d}" fill="none" stroke="${stroke}" ${extra}/>`);
  }

  circle(x: number, y: number, r: number, fill: string): void {
    this.add(`<circle cx="${x.toFixed(2)}" cy="${y.toFixed(2)}" r="${r}" fill="${fill}"/>`);
  }

  rect(x: number, y: number, w: number, h: number, fill: string): void {
    this.add(`<rect x="${x.toFixed(3)}" y="${y.toFixed(3)}" width="${w.toFixed(3)}" height="${h.toFixed(3)}" fill="${fill}"/>`);
  }

  render(): string {
    return [
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" height="${this.height}" viewBox="0 0 ${this.width} ${this.height}">`,
      `<rect x="0" y="0" width="${this.width}" height="${this.height}" fill="white"/>`,
      ...this.parts,
      "</svg>",
    ].join("\n") + "\n";
  }
}

export function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export interface AxisSpec {
  xScale: Scale;
  yScale: Scale;
  xTicks: number[];
  yTicks: number[];
  xLabel: string;
  yLabel: string;
}

/** Draw a plot frame with ticks and labels into the canvas. */
export function drawAxes(svg: SvgCanvas, spec: AxisSpec): void {
  const [x0, x1] = spec.xScale.range;
  const [y0, y1] = spec.yScale.range; // y0 is the bottom pixel (larger value)
  svg.line(x0, y0, x1, y0, "black");
  svg.line(x0, y0, x0, y1, "black");
  for (const t of spec.xTicks) {
    const px = spec.xScale(t);
    svg.line(px, y0, px, y0 + 4, "black");
    svg.text(px, y0 + 16, fmt(t), 'text-anchor="middle" font-size="10"');
  }
  for (const t of spec.yTicks) {
    const py = spec.yScale(t);
    svg.line(x0 - 4, py, x0, py, "black");
    svg.text(x0 - 6, py + 3, fmt(t), 'text-anchor="end" font-size="10"');
  }
  svg.text((x0 + x1) / 2, y0 + 32, spec.xLabel, 'text-anchor="middle" font-size="12"');
  svg.add(`<text x="14" y="${(y0 + y1) / 2}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 14 ${(y0 + y1) / 2})">${escapeXml(spec.yLabel)}</text>`);
}
