// Build a scene document from explorer state. The document is the single
// source of truth the service computes from; the UI never computes geometry.

import type { ExplorerState } from "./state";
import type { RadiantDoc, SceneDocument } from "./types";

export function radiantsFor(state: ExplorerState): RadiantDoc[] {
  if (state.radiantMode === "finite") {
    return [{ kind: "finite", point: [state.finitePoint[0], state.finitePoint[1]] }];
  }
  const radiants: RadiantDoc[] = [
    { kind: "at_infinity", direction_deg: state.directionDeg },
  ];
  if (state.overlays.multiTraces) {
    for (let k = 1; k < state.multiCount; k++) {
      radiants.push({
        kind: "at_infinity",
        direction_deg: state.directionDeg + k * state.multiStepDeg,
      });
    }
  }
  return radiants;
}

export function outputsFor(state: ExplorerState): string[] {
  const outputs = ["alpha", "beta", "caustic", "cusps", "asymptotes", "rolling_frames"];
  if (state.overlays.focalCircles) outputs.push("focal_circles");
  if (state.overlays.discriminantCircles) outputs.push("discriminant_circles");
  return outputs;
}

export function buildSceneDocument(state: ExplorerState): SceneDocument {
  return {
    curve: { kind: state.curveKind, params: { ...state.curveParams } },
    radiants: radiantsFor(state),
    grid: { n: state.gridN },
    outputs: outputsFor(state),
  };
}
