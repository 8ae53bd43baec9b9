import type { Row } from "./csv.js";

export interface Point {
  x: number;
  y: number;
}

export interface Series {
  label: string;
  points: Point[];
}

const Y_EPS = 1e-12;

/** Group rows into per-series point lists, sorted by x. */
export function buildSeries(
  rows: Row[],
  xColumn: string,
  yColumn: string,
  seriesColumn?: string,
): Series[] {
  const groups = new Map<string, Point[]>();
  for (const row of rows) {
    const x = Number(row[xColumn]);
    const y = Number(row[yColumn]);
    if (!Number.isFinite(x) || !Number.isFinite(y)) continue;
    const key = seriesColumn ? `${seriesColumn}=${row[seriesColumn]}` : yColumn;
    const points = groups.get(key) ?? [];
    points.push({ x, y });
    groups.set(key, points);
  }
  if (groups.size === 0) {
    throw new Error(`no numeric (${xColumn}, ${yColumn}) points in the input`);
  }
  const labels = [...groups.keys()].sort(compareLabels);
  return labels.map((label) => ({
    label,
    points: groups.get(label)!.slice().sort((a, b) => a.x - b.x),
  }));
}

/** Numeric-aware label order so nesting=2 precedes nesting=10. */
function compareLabels(a: string, b: string): number {
  const na = Number(a.split("=").pop());
  const nb = Number(b.split("=").pop());
  if (Number.isFinite(na) && Number.isFinite(nb)) return na - nb;
  return a < b ? -1 : a > b ? 1 : 0;
}

/**
 * Interpolated x where the curve first drops to zero, or null if it never
 * does inside the sampled range.  Rates cross zero with finite slope, so
 * the secant through the last two positive samples pins the crossing far
 * better than the sampling grid; it is clamped to the bracketing segment.
 */
export function xIntercept(points: Point[]): number | null {
  let last = -1;
  for (let i = 0; i < points.length; i++) {
    if (points[i].y > Y_EPS) last = i;
  }
  if (last < 0 || last === points.length - 1) return null;
  const a = points[last];
  const b = points[last + 1];
  if (last > 0 && points[last - 1].y > a.y) {
    const prev = points[last - 1];
    const slope = (a.y - prev.y) / (a.x - prev.x);
    const crossing = a.x - a.y / slope;
    return Math.min(Math.max(crossing, a.x), b.x);
  }
  const t = a.y / (a.y - b.y || a.y);
  return a.x + t * (b.x - a.x);
}
