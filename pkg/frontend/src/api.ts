/**
 * Typed client for the decision service.  Every number shown in the UI
 * originates here: the client never computes incentives itself.
 */

export type Scenario = "stable" | "growth";

export interface Inputs {
  npv: number;
  gen: number;
  divers: number;
}

export interface FiringEntry {
  rule: number;
  strength: number;
  consequent: string;
}

export interface Evaluation {
  incentive: number;
  firing: FiringEntry[];
  aggregate?: { x: number[]; mu: number[] };
}

export interface LabelInfo {
  name: string;
  shape: string;
  points: number[];
}

export interface VariableInfo {
  name: string;
  kind: "input" | "output";
  range: [number, number];
  labels: LabelInfo[];
}

export interface RuleInfo {
  antecedent: { var: string; label: string }[];
  connective: string;
  consequent: { var: string; label: string };
  weight: number;
}

export interface ModelInfo {
  scenario: Scenario;
  name: string;
  resolution: number;
  variables: VariableInfo[];
  rules: RuleInfo[];
}

export interface AxisInfo {
  var: string;
  lo: number;
  hi: number;
  steps: number;
}

export interface SurfaceGrid {
  fixed: { var: string; value: number };
  x_axis: AxisInfo;
  y_axis: AxisInfo;
  values: number[][];
  stats: {
    min: number;
    max: number;
    argmin: [number, number];
    argmax: [number, number];
    x_monotonicity: string;
    y_monotonicity: string;
  };
}

export interface ApiErrorBody {
  status: number;
  code: string;
  message: string;
  field: string | null;
}

export class ServiceError extends Error {
  readonly body: ApiErrorBody;

  constructor(body: ApiErrorBody) {
    super(body.message);
    this.body = body;
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (err) {
    throw new ServiceError({
      status: 0,
      code: "unreachable",
      message: `service unreachable: ${String(err)}`,
      field: null,
    });
  }
  const body = await response.json();
  if (!response.ok) {
    throw new ServiceError(body as ApiErrorBody);
  }
  return body as T;
}

export class ServiceClient {
  constructor(private readonly baseUrl: string = "") {}

  health(): Promise<{ status: string; models: Scenario[] }> {
    return request(`${this.baseUrl}/api/v1/health`);
  }

  model(scenario: Scenario): Promise<ModelInfo> {
    return request(`${this.baseUrl}/api/v1/model/${scenario}`);
  }

  /** Sliders are forgiving: requests always clamp to the model bounds. */
  evaluate(scenario: Scenario, inputs: Inputs, trace = true): Promise<Evaluation> {
    const query = trace ? "?trace=true" : "";
    return request(`${this.baseUrl}/api/v1/evaluate${query}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ scenario, ...inputs, clamp: true }),
    });
  }

  surface(
    scenario: Scenario,
    fixVar: string,
    fixValue: number,
    steps = 21,
  ): Promise<SurfaceGrid> {
    const fix = encodeURIComponent(`${fixVar}:${fixValue}`);
    return request(
      `${this.baseUrl}/api/v1/surface?scenario=${scenario}&fix=${fix}&steps=${steps}`,
    );
  }
}
