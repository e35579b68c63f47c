// DOM wiring: controls mutate state, state changes trigger a debounced
// recompute, and every repaint reflects the last payload (with an explicit
// "recomputing" badge while a newer request is in flight).

import { ComputeClient } from "./api";
import { RateLimiter } from "./debounce";
import { drawScene, toWorld, type ViewTransform } from "./draw";
import { totalArcLength } from "./geometry";
import { buildSceneDocument } from "./sceneDoc";
import { defaultState, type ExplorerState } from "./state";
import type { CatalogEntry } from "./types";

const params = new URLSearchParams(window.location.search);
const serviceUrl = params.get("service") ?? "http://127.0.0.1:8077";

const state: ExplorerState = defaultState();
const client = new ComputeClient(serviceUrl);
const limiter = new RateLimiter(50); // at most ~20 requests/second while dragging

const canvas = document.getElementById("view") as HTMLCanvasElement;
const banner = document.getElementById("banner") as HTMLDivElement;
const badge = document.getElementById("badge") as HTMLSpanElement;
const curveSelect = document.getElementById("curve") as HTMLSelectElement;
const modeSelect = document.getElementById("mode") as HTMLSelectElement;
const dial = document.getElementById("dial") as HTMLInputElement;
const dialValue = document.getElementById("dial-value") as HTMLSpanElement;
const scrub = document.getElementById("scrub") as HTMLInputElement;

let catalog: CatalogEntry[] = [];
let transform: ViewTransform | null = null;

function repaint(): void {
  transform = drawScene(canvas, state);
  badge.textContent = state.stale ? "recomputing" : "";
  banner.textContent = state.banner ?? "";
  banner.style.display = state.banner ? "block" : "none";
}

async function recompute(): Promise<void> {
  state.stale = true;
  repaint();
  const result = await client.compute(buildSceneDocument(state));
  if (result.stale) return; // a newer request owns the view
  if (result.error !== null || result.payload === null) {
    state.banner = `compute service: ${result.error ?? "no payload"}`;
    state.stale = false;
    repaint();
    return;
  }
  state.banner = null;
  state.payload = result.payload;
  state.stale = false;
  scrub.max = String(totalArcLength(state.payload));
  repaint();
}

function requestGeometry(): void {
  limiter.schedule(() => void recompute());
}

// --- controls ---------------------------------------------------------------

function refreshModeControls(): void {
  dial.disabled = state.radiantMode !== "at_infinity";
  dialValue.textContent = `${state.directionDeg.toFixed(1)} deg`;
}

curveSelect.addEventListener("change", () => {
  const entry = catalog.find((c) => c.kind === curveSelect.value);
  if (!entry) return;
  state.curveKind = entry.kind;
  state.curveParams = { ...entry.params };
  requestGeometry();
});

modeSelect.addEventListener("change", () => {
  state.radiantMode = modeSelect.value as ExplorerState["radiantMode"];
  refreshModeControls();
  requestGeometry();
});

dial.addEventListener("input", () => {
  state.directionDeg = Number(dial.value);
  refreshModeControls();
  requestGeometry();
});

scrub.addEventListener("input", () => {
  state.rollS = Number(scrub.value);
  repaint(); // scrubbing needs no recompute: frames are in the payload
});

for (const name of [
  "alpha",
  "beta",
  "caustic",
  "focalCircles",
  "discriminantCircles",
  "asymptotes",
  "cusps",
  "multiTraces",
] as const) {
  const box = document.getElementById(`toggle-${name}`) as HTMLInputElement;
  box.checked = state.overlays[name];
  box.addEventListener("change", () => {
    state.overlays[name] = box.checked;
    // circle layers and extra traces change the request; the rest just redraw
    if (name === "focalCircles" || name === "discriminantCircles" || name === "multiTraces") {
      requestGeometry();
    } else {
      repaint();
    }
  });
}

// drag the finite radiant on the canvas
let dragging = false;
canvas.addEventListener("pointerdown", (ev) => {
  if (state.radiantMode !== "finite" || !transform) return;
  dragging = true;
  canvas.setPointerCapture(ev.pointerId);
});
canvas.addEventListener("pointermove", (ev) => {
  if (!dragging || !transform) return;
  const rect = canvas.getBoundingClientRect();
  state.finitePoint = toWorld(transform, ev.clientX - rect.left, ev.clientY - rect.top);
  requestGeometry();
});
canvas.addEventListener("pointerup", () => {
  dragging = false;
});

// --- boot -------------------------------------------------------------------

async function boot(): Promise<void> {
  refreshModeControls();
  if (!(await client.health())) {
    state.banner = `compute service unreachable at ${serviceUrl} - start it with: caustics serve --port 8077`;
    repaint();
    return;
  }
  catalog = await client.catalog();
  curveSelect.innerHTML = "";
  for (const entry of catalog) {
    const opt = document.createElement("option");
    opt.value = entry.kind;
    opt.textContent = entry.label;
    curveSelect.appendChild(opt);
  }
  curveSelect.value = state.curveKind;
  await recompute();
}

void boot();
