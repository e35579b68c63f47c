"""Independent ground truth for the caustic machinery.

The envelope of the reflected rays is recomputed here directly from line
geometry (consecutive-ray intersections with Richardson extrapolation),
deliberately sharing no code with the focal-circle pipeline. Closed-form
reference curves, a direction-angle rate check, and point-set distances
round out the toolbox.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import least_squares
from scipy.spatial import cKDTree

from .curves import ParametricCurve, arc_length, evaluate, frenet_sample
from .optics import Radiant, ray_geometry

_PARALLEL_EPS = 1e-12


class NoEnvelopeError(ValueError):
    """Line family with no well-defined envelope (all pairs parallel)."""


@dataclass
class LineFamily:
    """One line per grid parameter: here, reflected rays of a scene."""

    ts: np.ndarray  # (n,)
    points: np.ndarray  # (n, 2) a point on each line
    dirs: np.ndarray  # (n, 2) unit directions
    closed: bool = False

    def __post_init__(self):
        norms = np.hypot(self.dirs[:, 0], self.dirs[:, 1])
        if np.any(np.abs(norms - 1.0) > 1e-12):
            self.dirs = self.dirs / norms[:, None]


@dataclass
class EnvelopeResult:
    ts: np.ndarray
    points: np.ndarray  # (n, 2); rows with valid=False are NaN
    valid: np.ndarray  # (n,) bool
    notes: list[str] = field(default_factory=list)


def reflected_ray_family(
    curve: ParametricCurve, radiant: Radiant, ts: Sequence[float], closed: bool = False
) -> LineFamily:
    """Reflected rays of a scene as a line family."""
    pts, dirs = [], []
    for t in ts:
        smp = frenet_sample(curve, float(t), with_arclength=False)
        ray = ray_geometry(smp, radiant)
        pts.append(smp.pos)
        dirs.append(ray.reflected_dir)
    return LineFamily(
        ts=np.asarray(ts, dtype=float),
        points=np.asarray(pts),
        dirs=np.asarray(dirs),
        closed=closed,
    )


def _intersect_lines(p1, d1, p2, d2):
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    if abs(denom) < _PARALLEL_EPS:
        return None
    dp = p2 - p1
    a = (dp[0] * d2[1] - dp[1] * d2[0]) / denom
    return p1 + a * d1


def envelope_of_lines(family: LineFamily) -> EnvelopeResult:
    """Envelope points as limits of consecutive-line intersections.

    At each index the intersections of the line pairs one and two grid steps
    apart (a centered h and 2h) are Richardson-combined, (4*X_h - X_2h)/3,
    cancelling the O(h^2) term of the symmetric intersection. Near-parallel
    pairs are skipped with a note.
    """
    n = len(family.ts)
    if n < 3:
        raise ValueError("need at least 3 lines")
    points = np.full((n, 2), np.nan)
    valid = np.zeros(n, dtype=bool)
    notes = []

    def line(i):
        j = i % n if family.closed else i
        return family.points[j], family.dirs[j]

    any_pair_ok = False
    for i in range(n):
        if not family.closed and (i < 2 or i > n - 3):
            continue
        p_a, d_a = line(i - 1)
        p_b, d_b = line(i + 1)
        x1 = _intersect_lines(p_a, d_a, p_b, d_b)
        p_a2, d_a2 = line(i - 2)
        p_b2, d_b2 = line(i + 2)
        x2 = _intersect_lines(p_a2, d_a2, p_b2, d_b2)
        if x1 is None or x2 is None:
            notes.append(f"parallel pair near t={family.ts[i]}: skipped")
            continue
        any_pair_ok = True
        points[i] = (4.0 * x1 - x2) / 3.0
        valid[i] = True
    if not any_pair_ok:
        raise NoEnvelopeError("no envelope: all line pairs parallel")
    return EnvelopeResult(ts=family.ts.copy(), points=points, valid=valid, notes=notes)


# ---------------------------------------------------------------------------
# Envelopes of circle families (both sheets), for cross-validation


def _intersect_circles(c1, r1, c2, r2):
    d = float(np.hypot(*(c2 - c1)))
    if d < _PARALLEL_EPS:
        return None
    a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
    h2 = r1 * r1 - a * a
    if h2 < 0.0:
        return None
    h = math.sqrt(h2)
    u = (c2 - c1) / d
    base = c1 + a * u
    perp = np.array([-u[1], u[0]])
    return base + h * perp, base - h * perp


def envelope_of_circles(
    centers: np.ndarray, radii: np.ndarray, anchor: np.ndarray, closed: bool = False
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Both envelope sheets of a circle family by consecutive intersections.

    Intersections of circles one and two steps apart are Richardson-combined.
    Each intersection pair is split into the sheet nearer `anchor[i]` (the
    mirror contact) and the far sheet. Returns (near, far, valid).
    """
    n = len(radii)
    near = np.full((n, 2), np.nan)
    far = np.full((n, 2), np.nan)
    valid = np.zeros(n, dtype=bool)

    def circle(i):
        j = i % n if closed else i
        return centers[j], abs(radii[j])

    for i in range(n):
        if not closed and (i < 2 or i > n - 3):
            continue
        pair1 = _intersect_circles(*circle(i - 1), *circle(i + 1))
        pair2 = _intersect_circles(*circle(i - 2), *circle(i + 2))
        if pair1 is None or pair2 is None:
            continue
        # match the two sheets across widths by proximity, then extrapolate
        out = []
        for x1 in pair1:
            x2 = min(pair2, key=lambda q: float(np.hypot(*(q - x1))))
            out.append((4.0 * x1 - x2) / 3.0)
        d0 = float(np.hypot(*(out[0] - anchor[i])))
        d1 = float(np.hypot(*(out[1] - anchor[i])))
        near[i], far[i] = (out[0], out[1]) if d0 <= d1 else (out[1], out[0])
        valid[i] = True
    return near, far, valid


# ---------------------------------------------------------------------------
# Closed-form reference curves


def reference_eval(kind: str, params: dict, t) -> np.ndarray:
    """Evaluate a closed-form reference curve at parameter t (scalar/array)."""
    t = np.asarray(t, dtype=float)
    if kind == "epicycloid":
        rb, rr = params["rho_base"], params["rho_roll"]
        phase = params.get("phase", 0.0)
        k = (rb + rr) / rr
        x = (rb + rr) * np.cos(t) - rr * np.cos(k * t + phase)
        y = (rb + rr) * np.sin(t) - rr * np.sin(k * t + phase)
        return np.stack([x, y])
    if kind == "cardioid":
        a = params["scale"]
        return reference_eval(
            "epicycloid", {"rho_base": a, "rho_roll": a, "phase": params.get("phase", 0.0)}, t
        )
    if kind == "astroid":
        a = params["scale"]
        rot = params.get("rotation", 0.0)
        cx, cy = params.get("center", (0.0, 0.0))
        phase = params.get("phase", 0.0)
        u = t + phase
        px = a * np.cos(u) ** 3
        py = a * np.sin(u) ** 3
        cr, sr = math.cos(rot), math.sin(rot)
        return np.stack([cx + cr * px - sr * py, cy + sr * px + cr * py])
    if kind == "deltoid":
        a = params.get("scale", 1.0)
        return np.stack(
            [a * (2.0 * np.cos(t) + np.cos(2.0 * t)), a * (2.0 * np.sin(t) - np.sin(2.0 * t))]
        )
    if kind == "tschirnhausen":
        return np.stack([0.5 * (3.0 * t - 4.0 * t**3), 3.0 * t**2])
    if kind == "circle":
        rho = params.get("radius", 1.0)
        cx, cy = params.get("center", (0.0, 0.0))
        return np.stack([cx + rho * np.cos(t), cy + rho * np.sin(t)])
    raise ValueError(f"unknown reference curve kind {kind!r}")


def tschirnhausen_residual(points: np.ndarray) -> np.ndarray:
    """Implicit-form residual 108 x^2 - y (4y - 9)^2 per point."""
    x, y = points[..., 0], points[..., 1]
    return 108.0 * x**2 - y * (4.0 * y - 9.0) ** 2


# ---------------------------------------------------------------------------
# Direction-angle rate check


def chord_rotation_rate(
    curve: ParametricCurve,
    w: Radiant | Callable[[float], np.ndarray],
    t: float,
    h: float = 1e-4,
) -> tuple[float, float]:
    """(measured, predicted) rotation rate of the chord from alpha(t) to w.

    Measured: central difference of the chord's direction angle against arc
    length. Predicted: cos(phi1)/d with phi1 measured from N_left, valid when
    w is a fixed point or the chord stays tangent to the path of w.
    """

    def chord(tt: float) -> np.ndarray:
        u = np.asarray(evaluate(curve, tt, 0)[0])
        wp = np.asarray(w.point if isinstance(w, Radiant) else w(tt), dtype=float)
        return wp - u

    if isinstance(w, Radiant) and w.at_infinity:
        raise ValueError("rate check needs a finite endpoint")
    c0 = chord(t)
    d = float(np.hypot(*c0))
    if d <= 1e-6:
        raise ValueError("degenerate separation between curve point and endpoint")
    c_m, c_p = chord(t - h), chord(t + h)
    dsigma = math.atan2(
        float(c_m[0] * c_p[1] - c_m[1] * c_p[0]), float(np.dot(c_m, c_p))
    )
    ds = arc_length(curve, t - h, t + h)
    measured = dsigma / ds
    smp = frenet_sample(curve, t, with_arclength=False)
    predicted = float(np.dot(c0 / d, smp.N_left)) / d
    return measured, predicted


# ---------------------------------------------------------------------------
# Set distances and the astroid registration fit


def hausdorff_distance(A: np.ndarray, B: np.ndarray) -> float:
    """Symmetric Hausdorff distance between finite point sets (n, 2)."""
    A = np.asarray(A, dtype=float).reshape(-1, 2)
    B = np.asarray(B, dtype=float).reshape(-1, 2)
    if len(A) == 0 or len(B) == 0:
        raise ValueError("hausdorff_distance needs non-empty point sets")
    d_ab = cKDTree(B).query(A)[0].max()
    d_ba = cKDTree(A).query(B)[0].max()
    return float(max(d_ab, d_ba))


@dataclass
class AstroidFit:
    scale: float
    rotation: float
    center: tuple[float, float]
    phase: float
    max_residual: float

    def eval(self, t) -> np.ndarray:
        return reference_eval(
            "astroid",
            {
                "scale": self.scale,
                "rotation": self.rotation,
                "center": self.center,
                "phase": self.phase,
            },
            t,
        )


def fit_astroid(ts: np.ndarray, points: np.ndarray) -> AstroidFit:
    """Register an astroid onto matched (t_i, point_i) samples by least squares."""
    ts = np.asarray(ts, dtype=float)
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    center0 = points.mean(axis=0)
    radial = np.hypot(*(points - center0).T)
    i_far = int(np.argmax(radial))
    scale0 = float(radial[i_far])
    rot0 = math.atan2(*(points[i_far] - center0)[::-1])

    def residuals(p):
        a, rot, cx, cy, phase = p
        model = reference_eval(
            "astroid", {"scale": a, "rotation": rot, "center": (cx, cy), "phase": phase}, ts
        ).T
        return (model - points).ravel()

    best = None
    for j in range(4):
        phase0 = -ts[i_far] + rot0 + j * 0.5 * math.pi
        sol = least_squares(
            residuals,
            x0=[scale0, rot0, center0[0], center0[1], phase0],
            method="lm",
            xtol=1e-15,
            ftol=1e-15,
        )
        if best is None or sol.cost < best.cost:
            best = sol
    a, rot, cx, cy, phase = best.x
    if a < 0:  # -A(u) = A(u + pi): fold the sign into the phase
        a, phase = -a, phase + math.pi
    rot = (rot + math.pi) % (2.0 * math.pi) - math.pi
    phase = (phase + math.pi) % (2.0 * math.pi) - math.pi
    max_res = float(np.max(np.hypot(*best.fun.reshape(-1, 2).T)))
    return AstroidFit(
        scale=float(a),
        rotation=float(rot),
        center=(float(cx), float(cy)),
        phase=float(phase),
        max_residual=max_res,
    )
