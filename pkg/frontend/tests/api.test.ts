import { afterEach, describe, expect, it, vi } from "vitest";

import { ServiceClient, ServiceError } from "../src/api.js";

const jsonResponse = (body: unknown, status = 200) =>
  new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("ServiceClient.evaluate", () => {
  it("always clamps and requests the trace", async () => {
    const fetchMock = vi.fn().mockResolvedValue(
      jsonResponse({ incentive: 69.0, firing: [] }),
    );
    vi.stubGlobal("fetch", fetchMock);
    const client = new ServiceClient("http://svc");
    const result = await client.evaluate("stable", { npv: 20e6, gen: 18, divers: 4 });
    expect(result.incentive).toBe(69.0);
    const [url, init] = fetchMock.mock.calls[0]!;
    expect(url).toBe("http://svc/api/v1/evaluate?trace=true");
    expect(JSON.parse((init as RequestInit).body as string)).toEqual({
      scenario: "stable",
      npv: 20e6,
      gen: 18,
      divers: 4,
      clamp: true,
    });
  });

  it("surfaces the service error body", async () => {
    const body = {
      status: 422,
      code: "bad_scenario",
      message: "unknown scenario 'boom'",
      field: "scenario",
    };
    vi.stubGlobal("fetch", vi.fn().mockResolvedValue(jsonResponse(body, 422)));
    const client = new ServiceClient("");
    const error = await client
      .evaluate("boom" as never, { npv: 0, gen: 0, divers: 0 })
      .then(() => null, (e) => e as ServiceError);
    expect(error).toBeInstanceOf(ServiceError);
    expect(error!.body).toEqual(body);
  });

  it("maps network failure to an unreachable error", async () => {
    vi.stubGlobal("fetch", vi.fn().mockRejectedValue(new TypeError("ECONNREFUSED")));
    const client = new ServiceClient("");
    const error = await client
      .evaluate("stable", { npv: 0, gen: 0, divers: 0 })
      .then(() => null, (e) => e as ServiceError);
    expect(error!.body.code).toBe("unreachable");
  });
});

describe("ServiceClient.surface", () => {
  it("builds the fix query parameter", async () => {
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse({ values: [] }));
    vi.stubGlobal("fetch", fetchMock);
    await new ServiceClient("").surface("growth", "NPV", 20e6, 21);
    expect(fetchMock.mock.calls[0]![0]).toBe(
      "/api/v1/surface?scenario=growth&fix=NPV%3A20000000&steps=21",
    );
  });
});

describe("ServiceClient.model", () => {
  it("fetches per-scenario metadata", async () => {
    const fetchMock = vi.fn().mockResolvedValue(
      jsonResponse({ scenario: "stable", variables: [], rules: [] }),
    );
    vi.stubGlobal("fetch", fetchMock);
    const model = await new ServiceClient("http://x").model("stable");
    expect(model.scenario).toBe("stable");
    expect(fetchMock.mock.calls[0]![0]).toBe("http://x/api/v1/model/stable");
  });
});
