import { describe, expect, it } from "vitest";

import { ComputeClient } from "../src/api";
import type { SceneDocument } from "../src/types";

const DOC: SceneDocument = {
  curve: { kind: "circle" },
  radiants: [{ kind: "at_infinity", direction_deg: 180 }],
};

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

describe("compute client sequencing", () => {
  it("marks a response stale when a newer request was issued", async () => {
    const gates: (() => void)[] = [];
    const fetchFn = () =>
      new Promise<Response>((resolve) => {
        gates.push(() => resolve(jsonResponse({ grid: {}, layers: {} })));
      });
    const client = new ComputeClient("http://x", fetchFn);

    const first = client.compute(DOC);
    const second = client.compute(DOC);
    // resolve out of order: the older response must come back stale
    gates[1]();
    gates[0]();
    expect((await first).stale).toBe(true);
    expect((await second).stale).toBe(false);
  });

  it("reports service errors without throwing", async () => {
    const client = new ComputeClient("http://x", () =>
      Promise.resolve(jsonResponse({ error: "grid too coarse: n=4 < 16" }, 400)),
    );
    const result = await client.compute(DOC);
    expect(result.payload).toBeNull();
    expect(result.error).toContain("grid too coarse");
  });

  it("reports network failures as errors", async () => {
    const client = new ComputeClient("http://x", () =>
      Promise.reject(new Error("connection refused")),
    );
    const result = await client.compute(DOC);
    expect(result.payload).toBeNull();
    expect(result.error).toContain("connection refused");
    expect(await client.health()).toBe(false);
  });
});
