import { describe, expect, it } from "vitest";

import { nearestFrameIndex, payloadExtent, totalArcLength } from "../src/geometry";
import type { GeometryPayload, RollingFrameJson } from "../src/types";

function frame(s: number): RollingFrameJson {
  return {
    t: s,
    s,
    center: [0, 0],
    R: 0.25,
    omega: 0,
    contact: [0, 0],
    beta_arclen: s,
    traces: [{ radiant: 0, point: [1, 1] }],
  };
}

describe("frame lookup", () => {
  const frames = [0, 0.5, 1.0, 1.6, 2.4].map(frame);

  it("finds the nearest frame", () => {
    expect(nearestFrameIndex(frames, 0.4)).toBe(1);
    expect(nearestFrameIndex(frames, 1.29)).toBe(2);
    expect(nearestFrameIndex(frames, 1.31)).toBe(3);
  });

  it("clamps beyond the grid", () => {
    expect(nearestFrameIndex(frames, -5)).toBe(0);
    expect(nearestFrameIndex(frames, 99)).toBe(frames.length - 1);
  });

  it("handles empty frame lists", () => {
    expect(nearestFrameIndex([], 1.0)).toBe(-1);
  });
});

describe("payload extents", () => {
  const payload: GeometryPayload = {
    grid: { t_min: 0, t_max: 1, n: 3, cyclic: false },
    layers: {
      alpha: {
        samples: [
          [0, -1, 0],
          [0.5, 0, 2],
          [1, 1, 0],
        ],
      },
      caustic: [
        {
          radiant: 0,
          components: [
            {
              id: 0,
              closed: false,
              samples: [[0, 3, -1]],
              cusps: [],
              asymptote_before: null,
              asymptote_after: null,
            },
          ],
        },
      ],
    },
  };

  it("covers every drawn layer", () => {
    const e = payloadExtent(payload)!;
    expect(e.xMin).toBe(-1);
    expect(e.xMax).toBe(3);
    expect(e.yMin).toBe(-1);
    expect(e.yMax).toBe(2);
  });

  it("is null when nothing finite exists", () => {
    expect(
      payloadExtent({ grid: payload.grid, layers: {} } as GeometryPayload),
    ).toBeNull();
  });

  it("total arc length reads the last frame", () => {
    const withFrames: GeometryPayload = {
      grid: payload.grid,
      layers: { rolling_frames: [frame(0), frame(2.2)] },
    };
    expect(totalArcLength(withFrames)).toBe(2.2);
    expect(totalArcLength(payload)).toBe(0);
  });
});
