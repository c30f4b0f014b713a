/** Typed client for the drawing server.
 *
 * All geometry truth lives server-side; this file only moves JSON around.
 * Mutating calls are queued so at most one is in flight at a time, matching
 * the server's one-writer contract.
 */

import type {
  KindSchema, ModuleDetail, ModuleSummary, PrototypeEntry, Rect, SchemaMap,
  SnapHit, SpecRow,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

async function parseError(response: Response): Promise<ApiError> {
  try {
    const body = await response.json();
    return new ApiError(response.status, body.code ?? "error",
      body.message ?? response.statusText);
  } catch {
    return new ApiError(response.status, "error", response.statusText);
  }
}

export class ApiClient {
  private mutationTail: Promise<unknown> = Promise.resolve();
  private inFlightMutations = 0;

  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  get mutationsInFlight(): number {
    return this.inFlightMutations;
  }

  private async requestJson<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.base + path, init);
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  private async requestText(path: string): Promise<string> {
    const response = await this.fetchFn(this.base + path);
    if (!response.ok) throw await parseError(response);
    return response.text();
  }

  /** Serialize mutations: each waits for the previous one to settle. */
  private mutate<T>(path: string, method: string, body?: unknown): Promise<T> {
    const run = async (): Promise<T> => {
      this.inFlightMutations += 1;
      try {
        return await this.requestJson<T>(path, {
          method,
          headers: body === undefined ? undefined
            : { "content-type": "application/json" },
          body: body === undefined ? undefined : JSON.stringify(body),
        });
      } finally {
        this.inFlightMutations -= 1;
      }
    };
    const next = this.mutationTail.then(run, run);
    this.mutationTail = next.catch(() => undefined);
    return next;
  }

  // --- reads ---------------------------------------------------------------

  getSchemas(): Promise<SchemaMap> {
    return this.requestJson("/api/schemas");
  }

  getSchema(kind: string): Promise<KindSchema> {
    return this.getSchemas().then((all) => all[kind]);
  }

  listModules(): Promise<ModuleSummary[]> {
    return this.requestJson("/api/modules");
  }

  getModule(id: number): Promise<ModuleDetail> {
    return this.requestJson(`/api/modules/${id}`);
  }

  render(viewport?: Rect): Promise<string> {
    if (!viewport) return this.requestText("/api/render");
    const q = `x0=${viewport.x0}&y0=${viewport.y0}&x1=${viewport.x1}&y1=${viewport.y1}`;
    return this.requestText(`/api/render?${q}`);
  }

  snap(x: number, y: number, r: number): Promise<SnapHit | null> {
    return this.requestJson(`/api/snap?x=${x}&y=${y}&r=${r}`);
  }

  getSpec(): Promise<SpecRow[]> {
    return this.requestJson("/api/spec");
  }

  getDuplicates(): Promise<string[]> {
    return this.requestJson("/api/spec/duplicates");
  }

  listPrototypes(): Promise<PrototypeEntry[]> {
    return this.requestJson("/api/prototypes");
  }

  previewPrototype(name: string): Promise<string> {
    return this.requestText(`/api/prototypes/${encodeURIComponent(name)}/preview`);
  }

  // --- mutations -----------------------------------------------------------

  createModule(kind: string, params: Record<string, unknown>,
    layer?: number): Promise<{ id: number }> {
    return this.mutate("/api/modules", "POST", { kind, params, layer });
  }

  setParams(id: number, params: Record<string, unknown>): Promise<{ id: number }> {
    return this.mutate(`/api/modules/${id}/params`, "PUT", { params });
  }

  moveModule(id: number, dx: number, dy: number): Promise<{ id: number }> {
    return this.mutate(`/api/modules/${id}/move`, "POST", { dx, dy });
  }

  stretchModule(id: number, base: [number, number], sx: number,
    sy: number): Promise<{ id: number }> {
    return this.mutate(`/api/modules/${id}/stretch`, "POST", { base, sx, sy });
  }

  deleteModule(id: number): Promise<{ id: number }> {
    return this.mutate(`/api/modules/${id}`, "DELETE");
  }

  savePrototype(name: string, moduleId: number,
    overwrite = false): Promise<{ name: string }> {
    return this.mutate("/api/prototypes", "POST",
      { name, module_id: moduleId, overwrite });
  }

  instantiatePrototype(name: string, at: [number, number]): Promise<{ id: number }> {
    return this.mutate(`/api/prototypes/${encodeURIComponent(name)}/instantiate`,
      "POST", { at });
  }
}
