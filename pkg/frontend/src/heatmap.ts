/**
 * Canvas heatmap for surface grids: colour mapping, hit testing and the
 * current-point marker.  Pure helpers are exported for tests.
 */
import type { SurfaceGrid } from "./api.js";

/** Blue (low) through yellow to red (high) over the 0..100 scale. */
export function colorFor(value: number, lo = 0, hi = 100): string {
  const span = hi > lo ? hi - lo : 1;
  const t = Math.min(Math.max((value - lo) / span, 0), 1);
  const hue = 240 - 240 * t;
  return `hsl(${hue.toFixed(0)}, 85%, ${(32 + 23 * t).toFixed(0)}%)`;
}

export interface CellIndex {
  ix: number;
  iy: number;
}

/** Map canvas pixel coordinates to a grid cell; null outside the canvas. */
export function cellAt(
  px: number,
  py: number,
  width: number,
  height: number,
  steps: number,
): CellIndex | null {
  if (px < 0 || py < 0 || px >= width || py >= height) {
    return null;
  }
  const ix = Math.min(Math.floor((px / width) * steps), steps - 1);
  // canvas y grows downward; grid rows grow with the y coordinate
  const iy = Math.min(Math.floor(((height - 1 - py) / height) * steps), steps - 1);
  return { ix, iy };
}

export function axisCoords(lo: number, hi: number, steps: number): number[] {
  const out: number[] = [];
  for (let i = 0; i < steps; i++) {
    out.push(lo + (i * (hi - lo)) / (steps - 1));
  }
  return out;
}

export function nearestIndex(coords: readonly number[], value: number): number {
  let best = 0;
  let bestDist = Infinity;
  coords.forEach((c, i) => {
    const d = Math.abs(c - value);
    if (d < bestDist) {
      bestDist = d;
      best = i;
    }
  });
  return best;
}

export function render(
  canvas: HTMLCanvasElement,
  grid: SurfaceGrid,
  marker: { x: number; y: number } | null,
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) {
    return;
  }
  const steps = grid.x_axis.steps;
  const cw = canvas.width / steps;
  const ch = canvas.height / steps;
  for (let iy = 0; iy < steps; iy++) {
    const row = grid.values[iy];
    if (!row) {
      continue;
    }
    for (let ix = 0; ix < steps; ix++) {
      ctx.fillStyle = colorFor(row[ix] ?? 0);
      // flip vertically: low y at the bottom
      ctx.fillRect(ix * cw, canvas.height - (iy + 1) * ch, cw + 0.5, ch + 0.5);
    }
  }
  if (marker) {
    const xs = axisCoords(grid.x_axis.lo, grid.x_axis.hi, steps);
    const ys = axisCoords(grid.y_axis.lo, grid.y_axis.hi, steps);
    const ix = nearestIndex(xs, marker.x);
    const iy = nearestIndex(ys, marker.y);
    ctx.strokeStyle = "#ffffff";
    ctx.lineWidth = 2;
    ctx.strokeRect(ix * cw + 1, canvas.height - (iy + 1) * ch + 1, cw - 2, ch - 2);
  }
}
