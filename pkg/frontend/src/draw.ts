// Canvas renderer. World coordinates come straight from the payload; the
// only transformation is fit-to-canvas with the y axis pointing up.

import type { ExplorerState } from "./state";
import type { CircleJson, GeometryPayload, RollingFrameJson, Triple } from "./types";
import { framesOf } from "./types";
import { nearestFrameIndex, payloadExtent } from "./geometry";

export interface ViewTransform {
  scale: number;
  tx: number;
  ty: number;
}

export function fitTransform(
  payload: GeometryPayload,
  width: number,
  height: number,
  marginFrac = 0.08,
): ViewTransform | null {
  const e = payloadExtent(payload);
  if (!e) return null;
  const spanX = Math.max(e.xMax - e.xMin, 1e-9);
  const spanY = Math.max(e.yMax - e.yMin, 1e-9);
  const scale = Math.min(
    (width * (1 - 2 * marginFrac)) / spanX,
    (height * (1 - 2 * marginFrac)) / spanY,
  );
  const cx = 0.5 * (e.xMin + e.xMax);
  const cy = 0.5 * (e.yMin + e.yMax);
  return { scale, tx: width / 2 - scale * cx, ty: height / 2 + scale * cy };
}

export function toScreen(tr: ViewTransform, x: number, y: number): [number, number] {
  return [tr.tx + tr.scale * x, tr.ty - tr.scale * y];
}

export function toWorld(tr: ViewTransform, px: number, py: number): [number, number] {
  return [(px - tr.tx) / tr.scale, (tr.ty - py) / tr.scale];
}

const COLORS = {
  alpha: "#1a1a1a",
  beta: "#2664c7",
  caustic: "#c7262b",
  focal: "#9a9a9a",
  discriminant: "#bb8800",
  asymptote: "#7a3fbf",
  cusp: "#c7262b",
  roll: "#2c8c43",
  radiant: "#e08b00",
};

function strokePolyline(
  ctx: CanvasRenderingContext2D,
  tr: ViewTransform,
  rows: Triple[],
  closed: boolean,
): void {
  if (rows.length < 2) return;
  ctx.beginPath();
  rows.forEach(([, x, y], i) => {
    const [px, py] = toScreen(tr, x, y);
    if (i === 0) ctx.moveTo(px, py);
    else ctx.lineTo(px, py);
  });
  if (closed) ctx.closePath();
  ctx.stroke();
}

function strokeCircle(
  ctx: CanvasRenderingContext2D,
  tr: ViewTransform,
  center: [number, number],
  radius: number,
): void {
  const [px, py] = toScreen(tr, center[0], center[1]);
  ctx.beginPath();
  ctx.arc(px, py, Math.abs(radius) * tr.scale, 0, 2 * Math.PI);
  ctx.stroke();
}

function dot(
  ctx: CanvasRenderingContext2D,
  tr: ViewTransform,
  p: [number, number],
  r: number,
  color: string,
): void {
  const [px, py] = toScreen(tr, p[0], p[1]);
  ctx.fillStyle = color;
  ctx.beginPath();
  ctx.arc(px, py, r, 0, 2 * Math.PI);
  ctx.fill();
}

function drawCircleLayer(
  ctx: CanvasRenderingContext2D,
  tr: ViewTransform,
  circles: CircleJson[],
  color: string,
  every: number,
): void {
  ctx.strokeStyle = color;
  ctx.lineWidth = 0.6;
  ctx.globalAlpha = 0.5;
  circles.forEach((c, i) => {
    if (i % every !== 0) return;
    if (typeof c.R !== "number" || !c.center) return; // at-infinity marker
    strokeCircle(ctx, tr, c.center, c.R);
  });
  ctx.globalAlpha = 1.0;
}

function drawRollingFrame(
  ctx: CanvasRenderingContext2D,
  tr: ViewTransform,
  frames: RollingFrameJson[],
  index: number,
): void {
  const f = frames[index];
  ctx.strokeStyle = COLORS.roll;
  ctx.lineWidth = 1.6;
  strokeCircle(ctx, tr, f.center, f.R);
  dot(ctx, tr, f.contact, 4, COLORS.roll);
  // trails: where each trace point has been up to the scrub position
  ctx.lineWidth = 1.0;
  ctx.globalAlpha = 0.8;
  for (let rid = 0; rid < f.traces.length; rid++) {
    ctx.beginPath();
    for (let i = 0; i <= index; i++) {
      const p = frames[i].traces[rid].point;
      const [px, py] = toScreen(tr, p[0], p[1]);
      if (i === 0) ctx.moveTo(px, py);
      else ctx.lineTo(px, py);
    }
    ctx.stroke();
  }
  ctx.globalAlpha = 1.0;
  for (const trc of f.traces) dot(ctx, tr, trc.point, 3.5, COLORS.roll);
}

export function drawScene(
  canvas: HTMLCanvasElement,
  state: ExplorerState,
  transform?: ViewTransform | null,
): ViewTransform | null {
  const ctx = canvas.getContext("2d");
  if (!ctx) return null;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const payload = state.payload;
  if (!payload) return null;
  const tr = transform ?? fitTransform(payload, canvas.width, canvas.height);
  if (!tr) return null;
  const L = payload.layers;

  if (state.overlays.discriminantCircles && L.discriminant_circles) {
    drawCircleLayer(ctx, tr, L.discriminant_circles, COLORS.discriminant, 8);
  }
  if (state.overlays.focalCircles && L.focal_circles) {
    drawCircleLayer(ctx, tr, L.focal_circles.circles, COLORS.focal, 8);
  }
  if (state.overlays.asymptotes && L.asymptotes) {
    ctx.strokeStyle = COLORS.asymptote;
    ctx.lineWidth = 1.0;
    ctx.setLineDash([8, 5]);
    for (const a of L.asymptotes) {
      const reach = 1e3 / tr.scale;
      const rows: Triple[] = [
        [0, a.point[0] - reach * a.direction[0], a.point[1] - reach * a.direction[1]],
        [0, a.point[0] + reach * a.direction[0], a.point[1] + reach * a.direction[1]],
      ];
      strokePolyline(ctx, tr, rows, false);
    }
    ctx.setLineDash([]);
  }
  if (state.overlays.alpha && L.alpha) {
    ctx.strokeStyle = COLORS.alpha;
    ctx.lineWidth = 2.0;
    strokePolyline(ctx, tr, L.alpha.samples, payload.grid.cyclic);
  }
  if (state.overlays.beta && L.beta) {
    ctx.strokeStyle = COLORS.beta;
    ctx.lineWidth = 1.6;
    strokePolyline(ctx, tr, L.beta.samples, false);
  }
  if (state.overlays.caustic && L.caustic) {
    ctx.strokeStyle = COLORS.caustic;
    ctx.lineWidth = 1.6;
    for (const entry of L.caustic) {
      for (const comp of entry.components) {
        strokePolyline(ctx, tr, comp.samples, comp.closed);
      }
    }
  }
  if (state.overlays.cusps && L.cusps) {
    for (const c of L.cusps) dot(ctx, tr, c.point, 4, COLORS.cusp);
  }
  const frames = framesOf(payload);
  if (frames.length > 0) {
    const idx = nearestFrameIndex(frames, state.rollS);
    if (idx >= 0) drawRollingFrame(ctx, tr, frames, idx);
  }
  if (state.radiantMode === "finite") {
    dot(ctx, tr, state.finitePoint, 6, COLORS.radiant);
  }
  return tr;
}
