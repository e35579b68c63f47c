// Explorer state: what the user is looking at and how it was produced.
// The rendered canvas must always reflect either `payload` or an explicit
// "recomputing" indicator driven by the `stale` flag - never a mixture.

import type { GeometryPayload } from "./types";

export interface OverlayToggles {
  alpha: boolean;
  beta: boolean;
  caustic: boolean;
  focalCircles: boolean;
  discriminantCircles: boolean;
  asymptotes: boolean;
  cusps: boolean;
  multiTraces: boolean;
}

export type RadiantMode = "finite" | "at_infinity";

export interface ExplorerState {
  curveKind: string;
  curveParams: Record<string, number>;
  radiantMode: RadiantMode;
  finitePoint: [number, number];
  directionDeg: number;
  multiCount: number; // extra at-infinity traces when multiTraces is on
  multiStepDeg: number;
  gridN: number;
  rollS: number; // scrubber position in arc length along the mirror
  overlays: OverlayToggles;
  payload: GeometryPayload | null;
  stale: boolean;
  banner: string | null;
}

export function defaultState(): ExplorerState {
  // the coffee-cup configuration: unit circle, source at infinity toward 180deg
  return {
    curveKind: "circle",
    curveParams: { radius: 1.0 },
    radiantMode: "at_infinity",
    finitePoint: [0.25, 0.0],
    directionDeg: 180.0,
    multiCount: 13,
    multiStepDeg: 5.729577951308232, // 0.1 rad
    gridN: 512,
    rollS: 0.0,
    overlays: {
      alpha: true,
      beta: true,
      caustic: true,
      focalCircles: false,
      discriminantCircles: false,
      asymptotes: true,
      cusps: true,
      multiTraces: false,
    },
    payload: null,
    stale: true,
    banner: null,
  };
}
