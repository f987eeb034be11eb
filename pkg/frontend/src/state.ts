/**
 * Pure what-if session state: slider values bounded by the model,
 * pinned snapshots, and the bookkeeping that keeps stale responses out.
 */
import type { Evaluation, Inputs, Scenario } from "./api.js";

export interface PinnedSnapshot {
  name: string;
  scenario: Scenario;
  inputs: Inputs;
  incentive: number;
}

export function clamp(value: number, lo: number, hi: number): number {
  return Math.min(Math.max(value, lo), hi);
}

/** Gauge precision: one decimal, so display error is at most 0.05. */
export function formatIncentive(value: number): string {
  return value.toFixed(1);
}

export function formatInput(name: string, value: number): string {
  if (name === "NPV") {
    return `${(value / 1e6).toFixed(2)} M€`;
  }
  if (name === "GEN") {
    return value.toFixed(1);
  }
  return value.toFixed(2);
}

/** Second pin with the same name becomes "name (2)", then "name (3)", ... */
export function uniquePinName(existing: readonly string[], base: string): string {
  const trimmed = base.trim() || "pin";
  if (!existing.includes(trimmed)) {
    return trimmed;
  }
  let n = 2;
  while (existing.includes(`${trimmed} (${n})`)) {
    n += 1;
  }
  return `${trimmed} (${n})`;
}

/** Append-only within a session; never mutates the input list. */
export function addPin(
  pins: readonly PinnedSnapshot[],
  scenario: Scenario,
  inputs: Inputs,
  evaluation: Evaluation,
  name: string,
): PinnedSnapshot[] {
  const snapshot: PinnedSnapshot = {
    name: uniquePinName(pins.map((p) => p.name), name),
    scenario,
    inputs: { ...inputs },
    incentive: evaluation.incentive,
  };
  return [...pins, snapshot];
}

export function pinDelta(pin: PinnedSnapshot, latest: Evaluation | null): number | null {
  return latest === null ? null : latest.incentive - pin.incentive;
}

/**
 * Monotone ticket counter per request kind; responses for superseded
 * tickets are discarded so a slow old evaluation can never overwrite a
 * newer one.
 */
export class SequenceGate {
  private issued = 0;
  private applied = 0;

  issue(): number {
    this.issued += 1;
    return this.issued;
  }

  accept(ticket: number): boolean {
    if (ticket < this.applied) {
      return false;
    }
    this.applied = ticket;
    return true;
  }
}

/** Trailing debounce; the returned function also exposes cancel(). */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  delayMs: number,
): ((...args: A) => void) & { cancel: () => void } {
  let handle: ReturnType<typeof setTimeout> | null = null;
  const wrapped = (...args: A) => {
    if (handle !== null) {
      clearTimeout(handle);
    }
    handle = setTimeout(() => {
      handle = null;
      fn(...args);
    }, delayMs);
  };
  wrapped.cancel = () => {
    if (handle !== null) {
      clearTimeout(handle);
      handle = null;
    }
  };
  return wrapped;
}

/** Evaluation refresh delay: live feel without flooding the service. */
export const EVALUATE_DEBOUNCE_MS = 150;
