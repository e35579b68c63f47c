// Compute-service client with latest-wins sequencing: at most one response
// is ever applied per generation, and responses that arrive after a newer
// request has been issued are reported stale and discarded by the caller.

import type { CatalogEntry, GeometryPayload, SceneDocument } from "./types";

export interface ComputeResult {
  payload: GeometryPayload | null;
  stale: boolean;
  error: string | null;
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ComputeClient {
  private seq = 0;

  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  async health(): Promise<boolean> {
    try {
      const res = await this.fetchFn(`${this.baseUrl}/health`);
      return res.ok;
    } catch {
      return false;
    }
  }

  async catalog(): Promise<CatalogEntry[]> {
    const res = await this.fetchFn(`${this.baseUrl}/catalog`);
    if (!res.ok) throw new Error(`catalog failed: ${res.status}`);
    const body = (await res.json()) as { curves: CatalogEntry[] };
    return body.curves;
  }

  /** POST the scene; a response is stale if a newer compute was issued meanwhile. */
  async compute(doc: SceneDocument): Promise<ComputeResult> {
    const mySeq = ++this.seq;
    let res: Response;
    try {
      res = await this.fetchFn(`${this.baseUrl}/compute`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(doc),
      });
    } catch (err) {
      return { payload: null, stale: mySeq !== this.seq, error: String(err) };
    }
    const stale = mySeq !== this.seq;
    if (!res.ok) {
      let message = `compute failed: ${res.status}`;
      try {
        const body = (await res.json()) as { error?: string };
        if (body.error) message = body.error;
      } catch {
        // keep the status message
      }
      return { payload: null, stale, error: message };
    }
    const payload = (await res.json()) as GeometryPayload;
    return { payload, stale, error: null };
  }
}
