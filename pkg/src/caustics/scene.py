"""Scene documents: loading, validation, and full geometry computation.

A scene document is JSON: a curve (catalog entry or expression pair), a
non-empty radiant list, an optional grid and output selection. User-facing
angles are degrees; everything internal is radians. The computed payload is
plain JSON with doubles at full round-trip precision; quantities that escape
to infinity are encoded as explicit {"at_infinity": true} markers - never as
non-finite number literals.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import curves as _curves
from .curves import IrregularCurveError, ParametricCurve, grid_parameters, sample_grid
from .envelope import IndeterminateChordAngleError, beta_point
from .expressions import ExpressionError, EvalError
from .optics import (
    DegenerateSourceError,
    FlatSampleError,
    Radiant,
    discriminant_circle,
    focal_circle,
)
from .tracer import rolling_frames, trace_caustic

LAYERS = (
    "alpha",
    "beta",
    "caustic",
    "focal_circles",
    "discriminant_circles",
    "rolling_frames",
    "cusps",
    "asymptotes",
)
DEFAULT_LAYERS = ("alpha", "beta", "caustic", "cusps", "asymptotes")
MIN_GRID = 16
MAX_GRID = 1 << 17
DEFAULT_GRID = 512

CATALOG = [
    {
        "kind": "circle",
        "params": {"radius": 1.0},
        "domain": [0.0, 2.0 * math.pi],
        "closed": True,
        "label": "Circle",
    },
    {
        "kind": "ellipse",
        "params": {"a": 2.0, "b": 1.0},
        "domain": [0.0, 2.0 * math.pi],
        "closed": True,
        "label": "Ellipse",
    },
    {
        "kind": "parabola",
        "params": {"b": 1.0},
        "domain": [-3.0, 3.0],
        "closed": False,
        "label": "Parabola",
    },
    {
        "kind": "deltoid",
        "params": {},
        "domain": [_curves._DELTOID_OFFSET, 2.0 * math.pi + _curves._DELTOID_OFFSET],
        "closed": True,
        "label": "Deltoid",
    },
    {
        "kind": "involute_spiral",
        "params": {},
        "domain": [0.5, 3.0 * math.pi],
        "closed": False,
        "label": "Involute spiral",
    },
]


class SceneError(ValueError):
    """Malformed or unusable scene document."""


@dataclass
class Scene:
    curve: ParametricCurve
    radiants: list[Radiant]
    t_min: float
    t_max: float
    n: int
    cyclic: bool  # grid covers a full period of a closed curve
    outputs: tuple[str, ...] = DEFAULT_LAYERS
    tolerances: dict = field(default_factory=dict)

    @property
    def ts(self) -> np.ndarray:
        return grid_parameters(self.t_min, self.t_max, self.n, self.cyclic)


def _build_curve(doc: dict) -> ParametricCurve:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise SceneError("curve must be an object with a 'kind'")
    kind = doc["kind"]
    if kind == "expression":
        for key in ("x", "y", "domain"):
            if key not in doc:
                raise SceneError(f"expression curve needs '{key}'")
        domain = doc["domain"]
        if not (isinstance(domain, (list, tuple)) and len(domain) == 2):
            raise SceneError("expression domain must be [t_min, t_max]")
        try:
            return _curves.from_expressions(
                doc["x"], doc["y"], (float(domain[0]), float(domain[1])), doc.get("closed")
            )
        except ExpressionError as exc:
            raise SceneError(f"bad expression: {exc}") from exc
    try:
        return _curves.catalog_curve(kind, **doc.get("params", {}))
    except (ValueError, TypeError) as exc:
        raise SceneError(str(exc)) from exc


def _build_radiant(doc: dict) -> Radiant:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise SceneError("radiant must be an object with a 'kind'")
    if doc["kind"] == "finite":
        point = doc.get("point")
        if not (isinstance(point, (list, tuple)) and len(point) == 2):
            raise SceneError("finite radiant needs 'point': [x, y]")
        return Radiant.finite(float(point[0]), float(point[1]))
    if doc["kind"] == "at_infinity":
        if "direction_deg" not in doc:
            raise SceneError("at-infinity radiant needs 'direction_deg'")
        return Radiant.at_angle(math.radians(float(doc["direction_deg"])))
    raise SceneError(f"unknown radiant kind {doc['kind']!r}")


def _refine_grid(curve: ParametricCurve, t_min: float, t_max: float, n: int, cyclic: bool) -> int:
    """Double n until the tangent angle turns less than pi/2 per step.

    Cells containing a declared singular parameter are exempt: the tangent
    direction genuinely jumps by pi across a mirror cusp, at any resolution.
    """
    def cell_singular(a: float, b: float) -> bool:
        return any(a < p < b for p in curve.singular_params)

    while True:
        ts = grid_parameters(t_min, t_max, n, cyclic)
        d1 = np.stack([_curves.evaluate(curve, float(t), 1)[1] for t in ts], axis=1)
        gam = np.unwrap(np.arctan2(d1[1], d1[0]))
        steps = list(np.abs(np.diff(gam)))
        edges = [(float(ts[i]), float(ts[i + 1])) for i in range(len(ts) - 1)]
        if cyclic:
            steps.append(abs((gam[0] - gam[-1] + math.pi) % (2 * math.pi) - math.pi))
            edges.append((float(ts[-1]), float(ts[-1]) + (float(ts[1]) - float(ts[0]))))
        bad = [
            s for s, (a, b) in zip(steps, edges) if s >= 0.5 * math.pi and not cell_singular(a, b)
        ]
        if not bad:
            return n
        if 2 * n > MAX_GRID:
            raise SceneError("scene grid coarser than unwrapping requirement")
        n *= 2


def load_scene(document: dict | str) -> Scene:
    """Validate a scene document and resolve it into computable form."""
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SceneError(f"invalid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise SceneError("scene document must be a JSON object")
    if "curve" not in document:
        raise SceneError("scene needs a 'curve'")
    curve = _build_curve(document["curve"])

    radiant_docs = document.get("radiants")
    if not radiant_docs:
        raise SceneError("scene needs a non-empty 'radiants' list")
    radiants = [_build_radiant(r) for r in radiant_docs]

    grid = document.get("grid", {})
    t_min = float(grid.get("t_min", curve.t_min))
    t_max = float(grid.get("t_max", curve.t_max))
    n = int(grid.get("n", DEFAULT_GRID))
    if n < MIN_GRID:
        raise SceneError(f"grid too coarse: n={n} < {MIN_GRID}")
    if not t_min < t_max:
        raise SceneError("grid needs t_min < t_max")
    if not curve.closed and (t_min < curve.t_min - 1e-12 or t_max > curve.t_max + 1e-12):
        raise SceneError(
            f"grid [{t_min}, {t_max}] exceeds the curve domain "
            f"[{curve.t_min}, {curve.t_max}]"
        )
    cyclic = curve.closed and abs((t_max - t_min) - curve.period) < 1e-9

    outputs = tuple(document.get("outputs", DEFAULT_LAYERS))
    for layer in outputs:
        if layer not in LAYERS:
            raise SceneError(f"unknown output layer {layer!r}")

    ts = grid_parameters(t_min, t_max, n, cyclic)
    try:
        _curves.check_regular(curve, ts)
    except EvalError as exc:
        raise SceneError(f"expression evaluation failed on the grid: {exc}") from exc
    except IrregularCurveError as exc:
        raise SceneError(f"irregular curve: {exc}") from exc
    n = _refine_grid(curve, t_min, t_max, n, cyclic)

    return Scene(
        curve=curve,
        radiants=radiants,
        t_min=t_min,
        t_max=t_max,
        n=n,
        cyclic=cyclic,
        outputs=outputs,
        tolerances=dict(document.get("tolerances", {})),
    )


# ---------------------------------------------------------------------------
# Geometry payload


def _point(p) -> list[float]:
    return [float(p[0]), float(p[1])]


def _asymptote_json(a) -> dict | None:
    if a is None:
        return None
    return {
        "t": float(a.t),
        "point": _point(a.point),
        "direction": _point(a.direction),
        "at_infinity": True,
    }


def compute_scene(scene: Scene) -> dict:
    """Compute every requested layer of a scene as a JSON-ready payload."""
    ts = scene.ts
    samples = sample_grid(scene.curve, ts)
    payload: dict = {
        "grid": {"t_min": scene.t_min, "t_max": scene.t_max, "n": scene.n, "cyclic": scene.cyclic},
        "layers": {},
    }
    layers = payload["layers"]

    if "alpha" in scene.outputs:
        layers["alpha"] = {
            "samples": [[smp.t, float(smp.pos[0]), float(smp.pos[1])] for smp in samples]
        }

    if "beta" in scene.outputs:
        rows = []
        for smp in samples:
            try:
                b = beta_point(scene.curve, scene.radiants[0], smp.t)
            except (FlatSampleError, IndeterminateChordAngleError, DegenerateSourceError):
                continue
            rows.append([smp.t, float(b.beta[0]), float(b.beta[1])])
        layers["beta"] = {
            "family": "at_infinity" if scene.radiants[0].at_infinity else "finite_0",
            "samples": rows,
        }

    need_caustic = any(k in scene.outputs for k in ("caustic", "cusps", "asymptotes"))
    traced = []
    if need_caustic:
        for rid, rad in enumerate(scene.radiants):
            comps = trace_caustic(scene.curve, rad, ts, closed=scene.cyclic)
            traced.append((rid, comps))

    if "caustic" in scene.outputs:
        layers["caustic"] = [
            {
                "radiant": rid,
                "components": [
                    {
                        "id": comp.id,
                        "closed": comp.closed,
                        "samples": [
                            [s.t, float(s.E[0]), float(s.E[1])]
                            for s in comp.samples
                            if s.E is not None
                        ],
                        "cusps": [{"t": c.t, "point": _point(c.point)} for c in comp.cusps],
                        "asymptote_before": _asymptote_json(comp.asymptote_before),
                        "asymptote_after": _asymptote_json(comp.asymptote_after),
                    }
                    for comp in comps
                ],
            }
            for rid, comps in traced
        ]

    if "cusps" in scene.outputs:
        layers["cusps"] = [
            {"radiant": rid, "t": c.t, "point": _point(c.point)}
            for rid, comps in traced
            for comp in comps
            for c in comp.cusps
        ]

    if "asymptotes" in scene.outputs:
        seen = set()
        rows = []
        for rid, comps in traced:
            for comp in comps:
                for a in (comp.asymptote_before, comp.asymptote_after):
                    if a is None:
                        continue
                    key = (rid, round(a.t, 12))
                    if key in seen:
                        continue
                    seen.add(key)
                    rows.append({"radiant": rid, **_asymptote_json(a)})
        layers["asymptotes"] = rows

    if "focal_circles" in scene.outputs:
        rows = []
        for smp in samples:
            try:
                fc = focal_circle(smp, scene.radiants[0])
            except (FlatSampleError, DegenerateSourceError):
                continue
            if fc.focus_at_infinity:
                rows.append({"t": smp.t, "R": {"at_infinity": True}})
            else:
                rows.append({"t": smp.t, "center": _point(fc.center), "R": float(fc.R)})
        layers["focal_circles"] = {"radiant": 0, "circles": rows}

    if "discriminant_circles" in scene.outputs:
        rows = []
        for smp in samples:
            try:
                center, radius = discriminant_circle(smp)
            except FlatSampleError:
                continue
            rows.append({"t": smp.t, "center": _point(center), "R": float(radius)})
        layers["discriminant_circles"] = rows

    if "rolling_frames" in scene.outputs:
        try:
            frames = rolling_frames(scene.curve, scene.radiants, ts)
            layers["rolling_frames"] = [
                {
                    "t": f.t,
                    "s": f.s,
                    "center": _point(f.center),
                    "R": float(f.R),
                    "omega": float(f.omega),
                    "contact": _point(f.contact),
                    "beta_arclen": float(f.beta_arclen),
                    "traces": [{"radiant": rid, "point": _point(p)} for rid, p in f.traces],
                }
                for f in frames
            ]
        except (ValueError, FlatSampleError, IndeterminateChordAngleError) as exc:
            layers["rolling_frames"] = {"unavailable": str(exc)}

    return payload


def payload_json(payload: dict) -> str:
    """Deterministic serialization: identical scenes give identical bytes."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))
