import { scaleLinear, scaleLog, type ScaleContinuousNumeric } from "d3-scale";
import { line } from "d3-shape";

import { readTables } from "./csv.js";
import { buildSeries, xIntercept, type Series } from "./series.js";
import type { FigureSpec } from "./spec.js";

const WIDTH = 640;
const HEIGHT = 420;
const MARGIN = { top: 42, right: 168, bottom: 48, left: 60 };
const PLOT_W = WIDTH - MARGIN.left - MARGIN.right;
const PLOT_H = HEIGHT - MARGIN.top - MARGIN.bottom;

/** Pinned palette; series pick colors in label order. */
const COLORS = ["#1b6ca8", "#d1495b", "#3c8d53", "#8a5fbf", "#c07d2b", "#4f6272"];

const LOG_FLOOR = 1e-9;

/** Render the figure for ``spec`` and return the SVG document. */
export function renderFigure(spec: FigureSpec): string {
  const referenced = [spec.xColumn, spec.yColumn];
  if (spec.seriesColumn) referenced.push(spec.seriesColumn);
  const table = readTables(spec.inputs, referenced);
  const series = buildSeries(table.rows, spec.xColumn, spec.yColumn, spec.seriesColumn);
  return renderSeries(series, spec);
}

/** Pure SVG assembly from prepared series; exported for tests. */
export function renderSeries(series: Series[], spec: FigureSpec): string {
  const xs = series.flatMap((s) => s.points.map((p) => p.x));
  const ys = series.flatMap((s) => s.points.map((p) => p.y));
  const x = makeScale(spec.xLog ?? false, extent(xs), [MARGIN.left, MARGIN.left + PLOT_W]);
  // Rates live on [0, max]; a log axis clamps zeros onto its floor so
  // zero-rate stretches still hug the axis.
  const yMax = Math.max(...ys, LOG_FLOOR) * 1.05;
  const yMin = spec.yLog ? logFloor(ys) : 0;
  const y = makeScale(spec.yLog ?? false, [yMin, yMax], [MARGIN.top + PLOT_H, MARGIN.top]);
  const clampY = (v: number) => (spec.yLog ? Math.max(v, yMin) : v);

  const path = line<{ x: number; y: number }>()
    .x((p) => round2(x(p.x)))
    .y((p) => round2(y(clampY(p.y))));

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif" font-size="12">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  if (spec.title) {
    parts.push(
      `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="15">${escapeXml(spec.title)}</text>`,
    );
  }
  parts.push(...axes(x, y, spec));

  series.forEach((s, i) => {
    const color = COLORS[i % COLORS.length];
    if (s.points.length === 1) {
      const p = s.points[0];
      parts.push(
        `<circle cx="${round2(x(p.x))}" cy="${round2(y(clampY(p.y)))}" r="4" fill="${color}"/>`,
      );
    } else {
      parts.push(
        `<path d="${path(s.points)}" fill="none" stroke="${color}" stroke-width="1.8"/>`,
      );
    }
    const crossing = xIntercept(s.points);
    if (crossing !== null) {
      const cx = round2(x(crossing));
      const base = MARGIN.top + PLOT_H;
      parts.push(
        `<line x1="${cx}" y1="${base}" x2="${cx}" y2="${base - 10}" stroke="${color}" stroke-width="1.2"/>`,
        `<text x="${cx}" y="${base - 14}" text-anchor="middle" fill="${color}" font-size="10">${crossing.toFixed(3)}</text>`,
      );
    }
  });

  parts.push(...legend(series));
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

function makeScale(
  log: boolean,
  domain: [number, number],
  range: [number, number],
): ScaleContinuousNumeric<number, number> {
  const scale = log ? scaleLog() : scaleLinear();
  return scale.domain(domain).range(range);
}

function logFloor(ys: number[]): number {
  const positive = ys.filter((v) => v > 0);
  return positive.length > 0 ? Math.min(...positive) / 2 : LOG_FLOOR;
}

function extent(values: number[]): [number, number] {
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  return lo === hi ? [lo - 0.5, hi + 0.5] : [lo, hi];
}

function axes(
  x: ScaleContinuousNumeric<number, number>,
  y: ScaleContinuousNumeric<number, number>,
  spec: FigureSpec,
): string[] {
  const parts: string[] = [];
  const bottom = MARGIN.top + PLOT_H;
  const right = MARGIN.left + PLOT_W;
  parts.push(
    `<line x1="${MARGIN.left}" y1="${bottom}" x2="${right}" y2="${bottom}" stroke="black"/>`,
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${bottom}" stroke="black"/>`,
  );
  for (const t of x.ticks(7)) {
    const px = round2(x(t));
    parts.push(
      `<line x1="${px}" y1="${bottom}" x2="${px}" y2="${bottom + 5}" stroke="black"/>`,
      `<text x="${px}" y="${bottom + 18}" text-anchor="middle">${x.tickFormat(7)(t)}</text>`,
    );
  }
  for (const t of y.ticks(6)) {
    const py = round2(y(t));
    parts.push(
      `<line x1="${MARGIN.left - 5}" y1="${py}" x2="${MARGIN.left}" y2="${py}" stroke="black"/>`,
      `<text x="${MARGIN.left - 8}" y="${py + 4}" text-anchor="end">${y.tickFormat(6)(t)}</text>`,
      `<line x1="${MARGIN.left}" y1="${py}" x2="${right}" y2="${py}" stroke="#dddddd" stroke-dasharray="3,3"/>`,
    );
  }
  parts.push(
    `<text x="${MARGIN.left + PLOT_W / 2}" y="${bottom + 36}" text-anchor="middle">${escapeXml(spec.xColumn)}</text>`,
    `<text x="16" y="${MARGIN.top + PLOT_H / 2}" text-anchor="middle" transform="rotate(-90 16 ${MARGIN.top + PLOT_H / 2})">${escapeXml(spec.yColumn)}</text>`,
  );
  return parts;
}

function legend(series: Series[]): string[] {
  const parts: string[] = [];
  const x0 = MARGIN.left + PLOT_W + 14;
  series.forEach((s, i) => {
    const y0 = MARGIN.top + 10 + i * 18;
    const color = COLORS[i % COLORS.length];
    parts.push(
      `<line x1="${x0}" y1="${y0}" x2="${x0 + 18}" y2="${y0}" stroke="${color}" stroke-width="1.8"/>`,
      `<text x="${x0 + 24}" y="${y0 + 4}">${escapeXml(s.label)}</text>`,
    );
  });
  return parts;
}

function round2(v: number): number {
  return Math.round(v * 100) / 100;
}

function escapeXml(s: string): string {
  return s
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}
