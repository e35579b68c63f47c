// Live-service checks: the coffee-cup default and the discriminant-crossing
// component split. Run with the compute service up:
//
//     caustics serve --port 8077 &
//     npm run test:integration
//
// Skipped unless RUN_INTEGRATION=1 (CAUSTICS_SERVICE_URL overrides the URL).

import { describe, expect, it } from "vitest";

import { ComputeClient } from "../src/api";
import { buildSceneDocument } from "../src/sceneDoc";
import { defaultState } from "../src/state";
import { framesOf } from "../src/types";

const url = process.env.CAUSTICS_SERVICE_URL ?? "http://127.0.0.1:8077";
const enabled = process.env.RUN_INTEGRATION === "1";

describe.skipIf(!enabled)("live compute service", () => {
  const client = new ComputeClient(url);

  it("is reachable", async () => {
    expect(await client.health()).toBe(true);
  });

  it("lists the curve catalog", async () => {
    const kinds = (await client.catalog()).map((c) => c.kind);
    expect(kinds).toContain("circle");
    expect(kinds).toContain("deltoid");
  });

  it("renders the coffee-cup default with its two cusps", async () => {
    const result = await client.compute(buildSceneDocument(defaultState()));
    expect(result.error).toBeNull();
    const payload = result.payload!;
    const caustic = payload.layers.caustic![0];
    expect(caustic.components).toHaveLength(1);
    expect(payload.layers.cusps).toHaveLength(2);
    const xs = payload.layers.cusps!.map((c) => c.point[0]).sort((a, b) => a - b);
    expect(xs[0]).toBeCloseTo(-0.5, 9);
    expect(xs[1]).toBeCloseTo(0.5, 9);
    expect(framesOf(payload).length).toBeGreaterThan(0);
  });

  it("splits components when the radiant crosses the discriminant locus", async () => {
    const state = defaultState();
    state.radiantMode = "finite";

    state.finitePoint = [0.25, 0.0]; // inside: one closed component, no asymptote
    const inner = (await client.compute(buildSceneDocument(state))).payload!;
    expect(inner.layers.caustic![0].components).toHaveLength(1);
    expect(inner.layers.asymptotes).toHaveLength(0);

    state.finitePoint = [0.75, 0.0]; // dragged outward past the locus
    const outer = (await client.compute(buildSceneDocument(state))).payload!;
    expect(outer.layers.caustic![0].components).toHaveLength(2);
    expect(outer.layers.asymptotes!.length).toBeGreaterThan(0);
  });
});
