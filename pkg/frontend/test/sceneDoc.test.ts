import { describe, expect, it } from "vitest";

import { buildSceneDocument, radiantsFor } from "../src/sceneDoc";
import { defaultState } from "../src/state";

describe("scene documents", () => {
  it("defaults to the coffee-cup configuration", () => {
    const doc = buildSceneDocument(defaultState());
    expect(doc.curve).toEqual({ kind: "circle", params: { radius: 1.0 } });
    expect(doc.radiants).toEqual([{ kind: "at_infinity", direction_deg: 180.0 }]);
    expect(doc.grid).toEqual({ n: 512 });
    expect(doc.outputs).toContain("caustic");
    expect(doc.outputs).toContain("rolling_frames");
  });

  it("uses degrees as the document angle unit, unconverted", () => {
    const state = defaultState();
    state.directionDeg = 74.5;
    const doc = buildSceneDocument(state);
    expect(doc.radiants[0]).toEqual({ kind: "at_infinity", direction_deg: 74.5 });
  });

  it("switches to a finite radiant point", () => {
    const state = defaultState();
    state.radiantMode = "finite";
    state.finitePoint = [0.25, 0.0];
    expect(radiantsFor(state)).toEqual([{ kind: "finite", point: [0.25, 0.0] }]);
  });

  it("adds fixed-separation traces in multi-direction mode", () => {
    const state = defaultState();
    state.overlays.multiTraces = true;
    state.multiCount = 13;
    const radiants = radiantsFor(state);
    expect(radiants).toHaveLength(13);
    const degs = radiants.map((r) => (r.kind === "at_infinity" ? r.direction_deg : NaN));
    for (let k = 1; k < degs.length; k++) {
      expect(degs[k] - degs[k - 1]).toBeCloseTo(state.multiStepDeg, 12);
    }
  });

  it("multi-direction traces only apply at infinity", () => {
    const state = defaultState();
    state.overlays.multiTraces = true;
    state.radiantMode = "finite";
    expect(radiantsFor(state)).toHaveLength(1);
  });

  it("requests circle layers only when toggled", () => {
    const state = defaultState();
    expect(buildSceneDocument(state).outputs).not.toContain("focal_circles");
    state.overlays.focalCircles = true;
    state.overlays.discriminantCircles = true;
    const outputs = buildSceneDocument(state).outputs!;
    expect(outputs).toContain("focal_circles");
    expect(outputs).toContain("discriminant_circles");
  });
});
