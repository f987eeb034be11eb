import { describe, expect, it } from "vitest";

import { axisCoords, cellAt, colorFor, nearestIndex } from "../src/heatmap.js";

describe("colorFor", () => {
  it("sweeps hue from blue (low) to red (high)", () => {
    expect(colorFor(0)).toMatch(/^hsl\(240,/);
    expect(colorFor(100)).toMatch(/^hsl\(0,/);
  });

  it("clamps outside the scale", () => {
    expect(colorFor(-20)).toBe(colorFor(0));
    expect(colorFor(140)).toBe(colorFor(100));
  });

  it("is monotone in hue", () => {
    const hue = (v: number) => parseFloat(colorFor(v).slice(4));
    let previous = hue(0);
    for (let v = 5; v <= 100; v += 5) {
      const h = hue(v);
      expect(h).toBeLessThanOrEqual(previous);
      previous = h;
    }
  });
});

describe("cellAt", () => {
  const width = 420;
  const height = 420;
  const steps = 21;

  it("bottom-left pixel is cell (0, 0)", () => {
    expect(cellAt(0, height - 1, width, height, steps)).toEqual({ ix: 0, iy: 0 });
  });

  it("top-right pixel is the last cell", () => {
    expect(cellAt(width - 1, 0, width, height, steps)).toEqual({ ix: 20, iy: 20 });
  });

  it("cell centres map back to their own indices", () => {
    const cw = width / steps;
    for (const idx of [0, 7, 13, 20]) {
      const px = idx * cw + cw / 2;
      const py = height - (idx * cw + cw / 2) - 1;
      expect(cellAt(px, py, width, height, steps)).toEqual({ ix: idx, iy: idx });
    }
  });

  it("outside the canvas is null", () => {
    expect(cellAt(-1, 10, width, height, steps)).toBeNull();
    expect(cellAt(10, height, width, height, steps)).toBeNull();
  });
});

describe("axisCoords", () => {
  it("spans the full range inclusively", () => {
    const coords = axisCoords(0, 30, 21);
    expect(coords).toHaveLength(21);
    expect(coords[0]).toBe(0);
    expect(coords[20]).toBe(30);
    expect(coords[10]).toBeCloseTo(15, 12);
  });
});

describe("nearestIndex", () => {
  const coords = axisCoords(0, 5, 21);

  it("finds exact grid points", () => {
    expect(nearestIndex(coords, 2.5)).toBe(10);
  });

  it("rounds to the closest cell", () => {
    expect(nearestIndex(coords, 2.62)).toBe(10);
    expect(nearestIndex(coords, 2.64)).toBe(11);
  });
});
