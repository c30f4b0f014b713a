import { describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status, headers: { "content-type": "application/json" },
  });
}

describe("ApiClient", () => {
  it("parses the server error shape into ApiError", async () => {
    const fetchFn = vi.fn(async () => jsonResponse(
      { status: 400, code: "invalid_params", message: "diameter: must be > 0" }, 400));
    const api = new ApiClient("", fetchFn);
    const err = await api.setParams(1, {}).catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(400);
    expect(err.code).toBe("invalid_params");
    expect(err.message).toContain("diameter");
  });

  it("sends the documented bodies", async () => {
    const calls: Array<{ url: string; init?: RequestInit }> = [];
    const fetchFn = async (url: string, init?: RequestInit) => {
      calls.push({ url, init });
      return jsonResponse({ id: 1 });
    };
    const api = new ApiClient("", fetchFn);
    await api.createModule("pipeline", { diameter: 100 });
    await api.moveModule(1, 5, -3);
    await api.stretchModule(1, [0, 0], 2, 2);
    await api.instantiatePrototype("run", [100, 200]);
    expect(calls[0].url).toBe("/api/modules");
    expect(JSON.parse(calls[0].init!.body as string)).toMatchObject(
      { kind: "pipeline", params: { diameter: 100 } });
    expect(calls[1].url).toBe("/api/modules/1/move");
    expect(JSON.parse(calls[1].init!.body as string)).toEqual({ dx: 5, dy: -3 });
    expect(calls[2].init!.method).toBe("POST");
    expect(calls[3].url).toBe("/api/prototypes/run/instantiate");
    expect(JSON.parse(calls[3].init!.body as string)).toEqual({ at: [100, 200] });
  });

  it("keeps at most one mutating request in flight", async () => {
    let inFlight = 0;
    let peak = 0;
    const resolvers: Array<() => void> = [];
    const fetchFn = async () => {
      inFlight += 1;
      peak = Math.max(peak, inFlight);
      await new Promise<void>((resolve) => resolvers.push(resolve));
      inFlight -= 1;
      return jsonResponse({ id: 1 });
    };
    const api = new ApiClient("", fetchFn);
    const first = api.moveModule(1, 1, 0);
    const second = api.moveModule(1, 2, 0);
    const third = api.moveModule(1, 3, 0);
    await vi.waitFor(() => expect(resolvers.length).toBe(1));
    expect(peak).toBe(1);
    resolvers[0]();
    await first;
    await vi.waitFor(() => expect(resolvers.length).toBe(2));
    expect(peak).toBe(1);
    resolvers[1]();
    await second;
    await vi.waitFor(() => expect(resolvers.length).toBe(3));
    resolvers[2]();
    await third;
    expect(peak).toBe(1);
  });

  it("queues the next mutation even after a failure", async () => {
    let call = 0;
    const fetchFn = async () => {
      call += 1;
      if (call === 1) {
        return jsonResponse({ status: 400, code: "invalid_params", message: "no" }, 400);
      }
      return jsonResponse({ id: 7 });
    };
    const api = new ApiClient("", fetchFn);
    await expect(api.setParams(7, {})).rejects.toBeInstanceOf(ApiError);
    await expect(api.moveModule(7, 1, 1)).resolves.toEqual({ id: 7 });
  });

  it("requests renders with and without a viewport", async () => {
    const urls: string[] = [];
    const fetchFn = async (url: string) => {
      urls.push(url);
      return new Response("<svg/>", { status: 200 });
    };
    const api = new ApiClient("", fetchFn);
    await api.render();
    await api.render({ x0: 0, y0: -10, x1: 100, y1: 90 });
    expect(urls).toEqual([
      "/api/render",
      "/api/render?x0=0&y0=-10&x1=100&y1=90",
    ]);
  });
});
