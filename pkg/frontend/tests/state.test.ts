import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import type { Evaluation } from "../src/api.js";
import {
  EVALUATE_DEBOUNCE_MS,
  SequenceGate,
  addPin,
  clamp,
  debounce,
  formatIncentive,
  pinDelta,
  uniquePinName,
} from "../src/state.js";

const evaluation = (incentive: number): Evaluation => ({ incentive, firing: [] });
const inputs = { npv: 20e6, gen: 18, divers: 4 };

describe("uniquePinName", () => {
  it("keeps unused names", () => {
    expect(uniquePinName([], "base case")).toBe("base case");
  });

  it("suffixes the second use with (2)", () => {
    expect(uniquePinName(["base"], "base")).toBe("base (2)");
  });

  it("keeps counting past existing suffixes", () => {
    expect(uniquePinName(["base", "base (2)", "base (3)"], "base")).toBe("base (4)");
  });

  it("falls back to a default for empty names", () => {
    expect(uniquePinName([], "   ")).toBe("pin");
  });
});

describe("addPin", () => {
  it("appends without mutating the existing list", () => {
    const first = addPin([], "stable", inputs, evaluation(69.0), "a");
    const second = addPin(first, "growth", inputs, evaluation(86.0), "a");
    expect(first).toHaveLength(1);
    expect(second).toHaveLength(2);
    expect(second[1]!.name).toBe("a (2)");
    expect(second[0]).toBe(first[0]); // snapshots are immutable
  });

  it("copies the inputs so later slider moves cannot rewrite a pin", () => {
    const live = { ...inputs };
    const pins = addPin([], "stable", live, evaluation(69.0), "x");
    live.gen = 30;
    expect(pins[0]!.inputs.gen).toBe(18);
  });
});

describe("pinDelta", () => {
  it("is latest minus pinned", () => {
    const pins = addPin([], "stable", inputs, evaluation(69.0), "x");
    expect(pinDelta(pins[0]!, evaluation(86.0))).toBeCloseTo(17.0, 10);
  });

  it("is null with no evaluation yet", () => {
    const pins = addPin([], "stable", inputs, evaluation(69.0), "x");
    expect(pinDelta(pins[0]!, null)).toBeNull();
  });
});

describe("formatIncentive", () => {
  it("shows one decimal", () => {
    expect(formatIncentive(69.04761904761905)).toBe("69.0");
    expect(formatIncentive(71.44)).toBe("71.4");
  });

  it("display error stays within 0.05", () => {
    for (const v of [0, 12.3456, 49.9999, 50.0001, 71.42857, 95.2381, 100]) {
      expect(Math.abs(parseFloat(formatIncentive(v)) - v)).toBeLessThanOrEqual(0.05);
    }
  });
});

describe("clamp", () => {
  it("snaps to bounds", () => {
    expect(clamp(-1, 0, 5)).toBe(0);
    expect(clamp(9, 0, 5)).toBe(5);
    expect(clamp(3, 0, 5)).toBe(3);
  });
});

describe("SequenceGate", () => {
  it("discards responses that arrive after a newer one", () => {
    const gate = new SequenceGate();
    const first = gate.issue();
    const second = gate.issue();
    expect(gate.accept(second)).toBe(true);
    expect(gate.accept(first)).toBe(false); // stale
  });

  it("accepts in-order responses", () => {
    const gate = new SequenceGate();
    const a = gate.issue();
    expect(gate.accept(a)).toBe(true);
    const b = gate.issue();
    expect(gate.accept(b)).toBe(true);
  });
});

describe("debounce", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("collapses a burst of slider events into one call", () => {
    const fn = vi.fn();
    const wrapped = debounce(fn, EVALUATE_DEBOUNCE_MS);
    for (let i = 0; i < 10; i++) {
      wrapped();
      vi.advanceTimersByTime(40);
    }
    expect(fn).not.toHaveBeenCalled();
    vi.advanceTimersByTime(EVALUATE_DEBOUNCE_MS);
    expect(fn).toHaveBeenCalledTimes(1);
  });

  it("fires well inside the 500 ms freshness budget after the last move", () => {
    const fn = vi.fn();
    const wrapped = debounce(fn, EVALUATE_DEBOUNCE_MS);
    wrapped();
    vi.advanceTimersByTime(499);
    expect(fn).toHaveBeenCalledTimes(1);
    expect(EVALUATE_DEBOUNCE_MS).toBeLessThan(500);
  });

  it("can be cancelled", () => {
    const fn = vi.fn();
    const wrapped = debounce(fn, 150);
    wrapped();
    wrapped.cancel();
    vi.advanceTimersByTime(1000);
    expect(fn).not.toHaveBeenCalled();
  });
});
