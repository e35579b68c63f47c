"""SVG rendering of computed scene payloads.

One <g> per layer with the layer name as id. The y axis is flipped at emit
time so figures read with +y up; coordinates carry 6 decimals; the viewBox
fits all finite geometry with a 5% margin.
"""

from __future__ import annotations

import math

_MAX_CIRCLES = 64  # circle layers are subsampled for legibility

_LAYER_STYLE = {
    "alpha": 'stroke="#1a1a1a" stroke-width="{w}" fill="none"',
    "beta": 'stroke="#2664c7" stroke-width="{w}" fill="none"',
    "caustic": 'stroke="#c7262b" stroke-width="{w}" fill="none"',
    "focal_circles": 'stroke="#999999" stroke-width="{thin}" fill="none" opacity="0.6"',
    "discriminant_circles": 'stroke="#bb8800" stroke-width="{thin}" fill="none" opacity="0.6"',
    "rolling_frames": 'stroke="#2c8c43" stroke-width="{thin}" fill="none"',
    "cusps": 'fill="#c7262b" stroke="none"',
    "asymptotes": 'stroke="#7a3fbf" stroke-width="{thin}" stroke-dasharray="{dash}" fill="none"',
}


class RenderError(ValueError):
    """Nothing finite to draw."""


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _collect_points(payload: dict) -> list[tuple[float, float]]:
    pts = []
    layers = payload.get("layers", {})
    for row in layers.get("alpha", {}).get("samples", []):
        pts.append((row[1], row[2]))
    for row in layers.get("beta", {}).get("samples", []):
        pts.append((row[1], row[2]))
    for entry in layers.get("caustic", []):
        for comp in entry["components"]:
            pts.extend((r[1], r[2]) for r in comp["samples"])
    for c in layers.get("cusps", []):
        pts.append(tuple(c["point"]))
    frames = layers.get("rolling_frames")
    if isinstance(frames, list):
        for f in frames:
            pts.append(tuple(f["contact"]))
            for tr in f["traces"]:
                pts.append(tuple(tr["point"]))
    return [p for p in pts if math.isfinite(p[0]) and math.isfinite(p[1])]


def _polyline(points, closed=False) -> str:
    coords = " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in points)
    tag = "polygon" if closed else "polyline"
    return f'<{tag} points="{coords}"/>'


def _subsample(rows, limit):
    if len(rows) <= limit:
        return rows
    step = max(1, len(rows) // limit)
    return rows[::step]


def render_svg(payload: dict) -> str:
    """Render the computed layers of a scene payload as an SVG document."""
    pts = _collect_points(payload)
    if not pts:
        raise RenderError("no finite geometry to render")
    xs = [p[0] for p in pts]
    ys = [-p[1] for p in pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1e-6)
    margin = 0.05 * span
    x0, x1 = x0 - margin, x1 + margin
    y0, y1 = y0 - margin, y1 + margin
    w = 0.004 * span
    thin = 0.002 * span
    dash = f"{0.02 * span:.6f},{0.012 * span:.6f}"
    cusp_r = 0.012 * span
    style = {k: v.format(w=_fmt(w), thin=_fmt(thin), dash=dash) for k, v in _LAYER_STYLE.items()}

    layers = payload.get("layers", {})
    groups = []

    if "alpha" in layers:
        rows = layers["alpha"]["samples"]
        body = _polyline([(r[1], r[2]) for r in rows], payload["grid"].get("cyclic", False))
        groups.append(f'<g id="alpha" {style["alpha"]}>{body}</g>')

    if "beta" in layers:
        rows = layers["beta"]["samples"]
        if rows:
            body = _polyline([(r[1], r[2]) for r in rows])
            groups.append(f'<g id="beta" {style["beta"]}>{body}</g>')

    if "caustic" in layers:
        parts = []
        for entry in layers["caustic"]:
            for comp in entry["components"]:
                if len(comp["samples"]) >= 2:
                    parts.append(
                        _polyline([(r[1], r[2]) for r in comp["samples"]], comp["closed"])
                    )
        groups.append(f'<g id="caustic" {style["caustic"]}>{"".join(parts)}</g>')

    for name in ("focal_circles", "discriminant_circles"):
        if name not in layers:
            continue
        rows = layers[name]["circles"] if name == "focal_circles" else layers[name]
        parts = []
        for c in _subsample([r for r in rows if isinstance(r.get("R"), float)], _MAX_CIRCLES):
            cx, cy = c["center"]
            parts.append(
                f'<circle cx="{_fmt(cx)}" cy="{_fmt(-cy)}" r="{_fmt(abs(c["R"]))}"/>'
            )
        groups.append(f'<g id="{name}" {style[name]}>{"".join(parts)}</g>')

    frames = layers.get("rolling_frames")
    if isinstance(frames, list) and frames:
        f = frames[0]  # initial pose; interactive clients scrub the rest
        parts = [
            f'<circle cx="{_fmt(f["center"][0])}" cy="{_fmt(-f["center"][1])}" r="{_fmt(abs(f["R"]))}"/>'
        ]
        cx, cy = f["contact"]
        parts.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(-cy)}" r="{_fmt(cusp_r * 0.7)}" fill="#2c8c43"/>')
        for tr in f["traces"]:
            px, py = tr["point"]
            parts.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(-py)}" r="{_fmt(cusp_r * 0.7)}" fill="#2c8c43" stroke="none"/>')
        groups.append(f'<g id="rolling_frames" {style["rolling_frames"]}>{"".join(parts)}</g>')

    if "cusps" in layers:
        parts = [
            f'<circle cx="{_fmt(c["point"][0])}" cy="{_fmt(-c["point"][1])}" r="{_fmt(cusp_r)}"/>'
            for c in layers["cusps"]
        ]
        groups.append(f'<g id="cusps" {style["cusps"]}>{"".join(parts)}</g>')

    if "asymptotes" in layers:
        parts = []
        reach = 2.0 * span
        for a in layers["asymptotes"]:
            px, py = a["point"]
            dx, dy = a["direction"]
            parts.append(
                f'<line x1="{_fmt(px - reach * dx)}" y1="{_fmt(-(py - reach * dy))}" '
                f'x2="{_fmt(px + reach * dx)}" y2="{_fmt(-(py + reach * dy))}"/>'
            )
        groups.append(f'<g id="asymptotes" {style["asymptotes"]}>{"".join(parts)}</g>')

    view = f"{_fmt(x0)} {_fmt(y0)} {_fmt(x1 - x0)} {_fmt(y1 - y0)}"
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{view}" '
        'width="720" height="720">\n'
        + "\n".join(groups)
        + "\n</svg>\n"
    )
