/**
 * DOM wiring for the what-if client.  All numbers come from the
 * service; this file only moves them between widgets.
 */
import {
  Evaluation,
  Inputs,
  ModelInfo,
  Scenario,
  ServiceClient,
  SurfaceGrid,
  VariableInfo,
} from "./api.js";
import { axisCoords, cellAt, colorFor, render } from "./heatmap.js";
import {
  EVALUATE_DEBOUNCE_MS,
  PinnedSnapshot,
  SequenceGate,
  addPin,
  debounce,
  formatIncentive,
  formatInput,
  pinDelta,
} from "./state.js";

const client = new ServiceClient("");

const el = <T extends HTMLElement>(id: string): T => {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
};

const scenarioInputs = () =>
  Array.from(document.querySelectorAll<HTMLInputElement>('input[name="scenario"]'));

const sliderIds: Record<string, string> = { NPV: "npv", GEN: "gen", DIVERS: "divers" };

interface Session {
  scenario: Scenario;
  models: Record<Scenario, ModelInfo>;
  latest: Evaluation | null;
  pins: PinnedSnapshot[];
  fixedVar: string;
  grid: SurfaceGrid | null;
}

const evaluateGate = new SequenceGate();
const surfaceGate = new SequenceGate();

function currentInputs(): Inputs {
  return {
    npv: parseFloat(el<HTMLInputElement>("slider-npv").value),
    gen: parseFloat(el<HTMLInputElement>("slider-gen").value),
    divers: parseFloat(el<HTMLInputElement>("slider-divers").value),
  };
}

function setSlider(variable: string, value: number): void {
  const slider = el<HTMLInputElement>(`slider-${sliderIds[variable]}`);
  slider.value = String(value);
  el(`value-${sliderIds[variable]}`).textContent = formatInput(variable, value);
}

function showBanner(message: string): void {
  const banner = el("banner");
  banner.textContent = message;
  banner.classList.remove("hidden");
  el("gauge").classList.add("stale");
}

function clearBanner(): void {
  el("banner").classList.add("hidden");
  el("gauge").classList.remove("stale");
}

function ruleLabel(session: Session, ruleIndex: number): string {
  const rule = session.models[session.scenario].rules[ruleIndex];
  if (!rule) {
    return `rule ${ruleIndex}`;
  }
  const ante = rule.antecedent
    .map((c) => `${c.var} is ${c.label}`)
    .join(` ${rule.connective} `);
  return `${ante} → ${rule.consequent.label}`;
}

function renderEvaluation(session: Session): void {
  const gauge = el("gauge-value");
  if (!session.latest) {
    gauge.textContent = "—";
    return;
  }
  gauge.textContent = formatIncentive(session.latest.incentive);
  el<HTMLDivElement>("gauge-fill").style.width = `${session.latest.incentive}%`;
  const list = el("firing-list");
  list.innerHTML = "";
  const fired = [...session.latest.firing].sort((a, b) => b.strength - a.strength);
  for (const entry of fired) {
    const row = document.createElement("div");
    row.className = "firing-row";
    const label = document.createElement("span");
    label.className = "firing-label";
    label.textContent = ruleLabel(session, entry.rule);
    const bar = document.createElement("div");
    bar.className = "firing-bar";
    const fill = document.createElement("div");
    fill.className = "firing-fill";
    fill.style.width = `${entry.strength * 100}%`;
    bar.appendChild(fill);
    const strength = document.createElement("span");
    strength.className = "firing-strength";
    strength.textContent = entry.strength.toFixed(2);
    row.append(label, bar, strength);
    list.appendChild(row);
  }
}

function renderPins(session: Session): void {
  const tbody = el("pins-body");
  tbody.innerHTML = "";
  for (const pin of session.pins) {
    const delta = pinDelta(pin, session.latest);
    const tr = document.createElement("tr");
    const cells = [
      pin.name,
      pin.scenario,
      formatInput("NPV", pin.inputs.npv),
      formatInput("GEN", pin.inputs.gen),
      formatInput("DIVERS", pin.inputs.divers),
      formatIncentive(pin.incentive),
      delta === null ? "—" : `${delta >= 0 ? "+" : ""}${delta.toFixed(1)}`,
    ];
    for (const text of cells) {
      const td = document.createElement("td");
      td.textContent = text;
      tr.appendChild(td);
    }
    tbody.appendChild(tr);
  }
}

function renderHeatmap(session: Session): void {
  if (!session.grid) {
    return;
  }
  const canvas = el<HTMLCanvasElement>("heatmap");
  const inputs = currentInputs();
  const coords: Record<string, number> = {
    NPV: inputs.npv,
    GEN: inputs.gen,
    DIVERS: inputs.divers,
  };
  render(canvas, session.grid, {
    x: coords[session.grid.x_axis.var] ?? 0,
    y: coords[session.grid.y_axis.var] ?? 0,
  });
  el("heatmap-caption").textContent =
    `${session.grid.x_axis.var} × ${session.grid.y_axis.var} at ` +
    `${session.grid.fixed.var} = ${formatInput(session.grid.fixed.var, session.grid.fixed.value)} ` +
    `(${formatIncentive(session.grid.stats.min)} .. ${formatIncentive(session.grid.stats.max)})`;
  el("legend-low").style.background = colorFor(session.grid.stats.min);
  el("legend-high").style.background = colorFor(session.grid.stats.max);
}

async function refreshEvaluation(session: Session): Promise<void> {
  const ticket = evaluateGate.issue();
  try {
    const evaluation = await client.evaluate(session.scenario, currentInputs(), true);
    if (!evaluateGate.accept(ticket)) {
      return; // superseded by a newer request
    }
    session.latest = evaluation;
    clearBanner();
    renderEvaluation(session);
    renderPins(session);
  } catch (err) {
    showBanner(`evaluation failed: ${(err as Error).message}`);
  }
}

async function refreshSurface(session: Session): Promise<void> {
  const ticket = surfaceGate.issue();
  const inputs = currentInputs();
  const fixedValue = { NPV: inputs.npv, GEN: inputs.gen, DIVERS: inputs.divers }[
    session.fixedVar
  ];
  try {
    const grid = await client.surface(session.scenario, session.fixedVar, fixedValue ?? 0, 21);
    if (!surfaceGate.accept(ticket)) {
      return;
    }
    session.grid = grid;
    clearBanner();
    renderHeatmap(session);
  } catch (err) {
    // keep the previous map on screen
    showBanner(`surface fetch failed: ${(err as Error).message}`);
  }
}

function configureSlider(session: Session, variable: VariableInfo): void {
  const slider = el<HTMLInputElement>(`slider-${sliderIds[variable.name]}`);
  const [lo, hi] = variable.range;
  slider.min = String(lo);
  slider.max = String(hi);
  slider.step = String((hi - lo) / 400);
  el(`range-${sliderIds[variable.name]}`).textContent =
    `${formatInput(variable.name, lo)} .. ${formatInput(variable.name, hi)}`;
}

async function init(): Promise<void> {
  const [stable, growth] = await Promise.all([client.model("stable"), client.model("growth")]);
  const session: Session = {
    scenario: "stable",
    models: { stable, growth },
    latest: null,
    pins: [],
    fixedVar: "NPV",
    grid: null,
  };

  for (const variable of stable.variables) {
    if (variable.kind === "input") {
      configureSlider(session, variable);
    }
  }

  const applyPreset = () => {
    setSlider("NPV", 20e6);
    setSlider("GEN", 18);
    setSlider("DIVERS", 4);
  };
  applyPreset();

  const scheduleEvaluate = debounce(() => void refreshEvaluation(session), EVALUATE_DEBOUNCE_MS);
  const scheduleSurface = debounce(() => void refreshSurface(session), 200);

  for (const [variable, id] of Object.entries(sliderIds)) {
    const slider = el<HTMLInputElement>(`slider-${id}`);
    slider.addEventListener("input", () => {
      el(`value-${id}`).textContent = formatInput(variable, parseFloat(slider.value));
      scheduleEvaluate();
      if (variable === session.fixedVar) {
        scheduleSurface();
      } else {
        renderHeatmap(session); // just move the marker
      }
    });
    el(`value-${id}`).textContent = formatInput(variable, parseFloat(slider.value));
  }

  for (const radio of scenarioInputs()) {
    radio.addEventListener("change", () => {
      if (radio.checked) {
        session.scenario = radio.value as Scenario;
        scheduleEvaluate();
        scheduleSurface();
      }
    });
  }

  el<HTMLButtonElement>("preset-reference").addEventListener("click", () => {
    applyPreset();
    scheduleEvaluate();
    scheduleSurface();
  });

  el<HTMLSelectElement>("fixed-var").addEventListener("change", (event) => {
    session.fixedVar = (event.target as HTMLSelectElement).value;
    scheduleSurface();
  });

  el<HTMLCanvasElement>("heatmap").addEventListener("click", (event) => {
    if (!session.grid) {
      return;
    }
    const canvas = event.currentTarget as HTMLCanvasElement;
    const rect = canvas.getBoundingClientRect();
    const scaleX = canvas.width / rect.width;
    const scaleY = canvas.height / rect.height;
    const cell = cellAt(
      (event.clientX - rect.left) * scaleX,
      (event.clientY - rect.top) * scaleY,
      canvas.width,
      canvas.height,
      session.grid.x_axis.steps,
    );
    if (!cell) {
      return;
    }
    const xs = axisCoords(session.grid.x_axis.lo, session.grid.x_axis.hi, session.grid.x_axis.steps);
    const ys = axisCoords(session.grid.y_axis.lo, session.grid.y_axis.hi, session.grid.y_axis.steps);
    setSlider(session.grid.x_axis.var, xs[cell.ix] ?? 0);
    setSlider(session.grid.y_axis.var, ys[cell.iy] ?? 0);
    scheduleEvaluate();
    renderHeatmap(session);
  });

  el<HTMLButtonElement>("pin-button").addEventListener("click", () => {
    if (!session.latest) {
      return;
    }
    const nameInput = el<HTMLInputElement>("pin-name");
    session.pins = addPin(
      session.pins,
      session.scenario,
      currentInputs(),
      session.latest,
      nameInput.value,
    );
    nameInput.value = "";
    renderPins(session);
  });

  await refreshEvaluation(session);
  await refreshSurface(session);
}

init().catch((err) => showBanner(`failed to load model metadata: ${(err as Error).message}`));
