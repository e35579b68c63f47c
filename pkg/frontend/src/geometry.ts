// Payload-side helpers: world extents for the view transform and frame
// lookup for the roll scrubber. No geometry is computed here - only read.

import type { GeometryPayload, RollingFrameJson, Triple } from "./types";
import { framesOf } from "./types";

export interface Extent {
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

function grow(e: Extent, x: number, y: number): void {
  if (!Number.isFinite(x) || !Number.isFinite(y)) return;
  e.xMin = Math.min(e.xMin, x);
  e.xMax = Math.max(e.xMax, x);
  e.yMin = Math.min(e.yMin, y);
  e.yMax = Math.max(e.yMax, y);
}

export function payloadExtent(payload: GeometryPayload): Extent | null {
  const e: Extent = { xMin: Infinity, xMax: -Infinity, yMin: Infinity, yMax: -Infinity };
  const addTriples = (rows?: Triple[]) => {
    for (const [, x, y] of rows ?? []) grow(e, x, y);
  };
  addTriples(payload.layers.alpha?.samples);
  addTriples(payload.layers.beta?.samples);
  for (const entry of payload.layers.caustic ?? []) {
    for (const comp of entry.components) addTriples(comp.samples);
  }
  for (const frame of framesOf(payload)) {
    grow(e, frame.contact[0], frame.contact[1]);
    for (const tr of frame.traces) grow(e, tr.point[0], tr.point[1]);
  }
  if (!Number.isFinite(e.xMin)) return null;
  return e;
}

/** Index of the frame nearest arc length s; clamps beyond either end. */
export function nearestFrameIndex(frames: RollingFrameJson[], s: number): number {
  if (frames.length === 0) return -1;
  if (s <= frames[0].s) return 0;
  const last = frames.length - 1;
  if (s >= frames[last].s) return last;
  let lo = 0;
  let hi = last;
  while (hi - lo > 1) {
    const mid = (lo + hi) >> 1;
    if (frames[mid].s <= s) lo = mid;
    else hi = mid;
  }
  return s - frames[lo].s <= frames[hi].s - s ? lo : hi;
}

export function totalArcLength(payload: GeometryPayload | null): number {
  const frames = framesOf(payload);
  return frames.length ? frames[frames.length - 1].s : 0;
}
