/** Step-chart geometry for the signature panel.
 *
 * Charts plot one value per spectrum interval against the interval index
 * (not raw alpha, mirroring the slider), as staircase polylines in a unit
 * square; the canvas layer only scales and strokes them.  Clicking maps
 * back to the interval index, closing the steering loop.
 */

export interface ChartSeries {
  name: string;
  values: number[];
}

export interface StepPoint {
  x: number; // 0..1 across the intervals
  y: number; // 0..1, zero at the bottom
}

/** Staircase polyline for a series, normalized to the unit square. */
export function stepPolyline(values: number[]): StepPoint[] {
  const count = values.length;
  if (count === 0) {
    return [];
  }
  let hi = -Infinity;
  let lo = Infinity;
  for (const v of values) {
    if (Number.isFinite(v)) {
      hi = Math.max(hi, v);
      lo = Math.min(lo, v);
    }
  }
  if (!Number.isFinite(hi)) {
    hi = 1;
    lo = 0;
  }
  if (hi === lo) {
    hi = lo + 1;
  }
  const norm = (v: number) => (v - lo) / (hi - lo);
  const points: StepPoint[] = [];
  for (let i = 0; i < count; i++) {
    const y = norm(values[i]);
    points.push({ x: i / count, y });
    points.push({ x: (i + 1) / count, y });
  }
  return points;
}

/** Interval index under a click at pixel x of a chart of given width. */
export function clickToIndex(x: number, width: number, count: number): number {
  if (width <= 0 || count <= 0) {
    return 0;
  }
  const frac = Math.min(Math.max(x / width, 0), 1);
  return Math.min(count - 1, Math.floor(frac * count));
}

/** Cursor x position (pixel center of the interval's step) for the slider sync. */
export function cursorX(interval: number, width: number, count: number): number {
  return ((interval + 0.5) / count) * width;
}
