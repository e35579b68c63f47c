"""Per-point reflection geometry and the generalized mirror equation.

Everything is carried in reciprocal diameters u = 1/d of circles tangent to
the mirror at the reflection point, signed along N_left. The mirror equation
is then affine, u1 + u2 = 2*kappa, and both the radiant-at-infinity case
(u1 = 0) and the focus-at-infinity case (u2 = 0) are ordinary numbers.

The incidence angle phi is the signed angle from N_left to the toward-source
direction; only cos(phi) enters any formula, matching the geometry where the
tangent circle through a point at distance D along a chord with cos(phi)
against the normal has diameter d = D / cos(phi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .curves import CurveSample
from .geometry import cross2, dot2

U_FLOOR = 1e-10  # |u2| below this: focus at infinity (caustic component break)


class DegenerateSourceError(ValueError):
    """Finite radiant coincides with the mirror point."""


class FlatSampleError(ValueError):
    """Operation needs |kappa| >= KAPPA_FLOOR but the sample is flat."""


@dataclass(frozen=True)
class Radiant:
    """Point light source: finite point, or at infinity toward theta_src.

    For a source at infinity, theta_src is the direction angle from the
    mirror toward the source; incident rays travel along theta_src + pi.
    """

    point: tuple[float, float] | None = None
    theta_src: float | None = None

    def __post_init__(self):
        if (self.point is None) == (self.theta_src is None):
            raise ValueError("exactly one of point / theta_src must be given")
        if self.theta_src is not None:
            object.__setattr__(self, "theta_src", self.theta_src % (2.0 * math.pi))
        else:
            object.__setattr__(self, "point", (float(self.point[0]), float(self.point[1])))

    @property
    def at_infinity(self) -> bool:
        return self.theta_src is not None

    @staticmethod
    def finite(x: float, y: float) -> "Radiant":
        return Radiant(point=(x, y))

    @staticmethod
    def at_angle(theta_src: float) -> "Radiant":
        return Radiant(theta_src=theta_src)


@dataclass
class RayGeometry:
    """Reflection data at one mirror sample for one radiant."""

    phi: float  # signed incidence angle from N_left to the toward-source direction
    sigma1: float  # direction angle of P -> S
    D1: float | None  # |PS|; None when the radiant is at infinity
    u1: float  # signed reciprocal diameter of the tangent circle through S
    incident_dir: np.ndarray  # unit, direction of light travel before reflection
    reflected_dir: np.ndarray  # unit, direction of light travel after reflection


@dataclass
class FocalCircle:
    """Tangent circle holding the focus of light reflected at one point.

    R is signed along N_left; math.inf marks a focus at infinity. delta and
    R_s are filled by the envelope machinery; standalone construction leaves
    them None.
    """

    u2: float
    R: float
    D2: float
    center: np.ndarray | None
    contact: np.ndarray
    delta: float | None = None
    R_s: float | None = None

    @property
    def focus_at_infinity(self) -> bool:
        return not math.isfinite(self.R)


class RadiantClass(Enum):
    """Radiant position vs the curvature circles, with the implied focus."""

    AT_INFINITY = "at-infinity -> focus on discriminant circle"
    OUTSIDE_CR = "outside C_r -> focus inside C_r"
    ON_CR = "on C_r -> focus on C_r"
    INSIDE_CR = "inside C_r, outside discriminant -> focus outside C_r"
    ON_DISCRIMINANT = "on discriminant circle -> focus at infinity"
    INSIDE_DISCRIMINANT = "inside discriminant circle -> virtual focus on convex side"
    CONVEX_SIDE = "convex side -> focus inside discriminant circle"


def toward_source(sample: CurveSample, radiant: Radiant) -> tuple[np.ndarray, float | None]:
    """Unit vector from the mirror point toward the source, and |PS|."""
    if radiant.at_infinity:
        return np.array([math.cos(radiant.theta_src), math.sin(radiant.theta_src)]), None
    delta = np.asarray(radiant.point, dtype=float) - sample.pos
    dist = float(np.hypot(delta[0], delta[1]))
    if dist < 1e-12:
        raise DegenerateSourceError("degenerate source: radiant coincides with mirror point")
    return delta / dist, dist


def ray_geometry(sample: CurveSample, radiant: Radiant) -> RayGeometry:
    """Incidence angle, reflected direction and u1 at one mirror sample."""
    e, D1 = toward_source(sample, radiant)
    n = sample.N_left
    cos_phi = float(dot2(e, n))
    phi = math.atan2(float(cross2(n, e)), cos_phi)
    # specular reflection of the incident direction -e across the normal line
    reflected = 2.0 * cos_phi * n - e
    sigma1 = radiant.theta_src if radiant.at_infinity else float(math.atan2(e[1], e[0]))
    u1 = 0.0 if radiant.at_infinity else cos_phi / D1
    return RayGeometry(
        phi=phi,
        sigma1=sigma1,
        D1=D1,
        u1=u1,
        incident_dir=-e,
        reflected_dir=reflected,
    )


def mirror_focus(u1: float, kappa: float) -> float:
    """Reciprocal diameter of the focal circle: u2 = 2*kappa - u1."""
    return 2.0 * kappa - u1


def focal_circle(sample: CurveSample, radiant: Radiant) -> FocalCircle:
    """Focal circle for reflection at `sample` from `radiant`."""
    if sample.flat:
        raise FlatSampleError(f"flat sample at t={sample.t}")
    ray = ray_geometry(sample, radiant)
    u2 = mirror_focus(ray.u1, sample.kappa)
    if abs(u2) < U_FLOOR:
        return FocalCircle(
            u2=u2, R=math.inf, D2=math.inf, center=None, contact=sample.pos
        )
    R = 1.0 / (2.0 * u2)
    D2 = math.cos(ray.phi) / u2
    return FocalCircle(
        u2=u2,
        R=R,
        D2=D2,
        center=sample.pos + R * sample.N_left,
        contact=sample.pos,
    )


def discriminant_circle(sample: CurveSample) -> tuple[np.ndarray, float]:
    """Tangent circle of diameter r/2 = 1/(2|kappa|) on the concave side."""
    if sample.flat:
        raise FlatSampleError(f"flat sample at t={sample.t}")
    offset = 1.0 / (4.0 * sample.kappa)  # signed along N_left: lands concave side
    return sample.pos + offset * sample.N_left, abs(offset)


def classify_radiant(sample: CurveSample, radiant: Radiant, rel_tol: float = 1e-9) -> RadiantClass:
    """Position of the radiant against C_r and the discriminant circle.

    The bands are read off w = u1/kappa: w=0 at infinity (or on the tangent
    line), w=1 on C_r, w=2 on the discriminant circle, w<0 on the convex side.
    """
    if sample.flat:
        raise FlatSampleError(f"flat sample at t={sample.t}")
    if radiant.at_infinity:
        return RadiantClass.AT_INFINITY
    u1 = ray_geometry(sample, radiant).u1
    w = u1 / sample.kappa
    if abs(w) <= rel_tol:
        return RadiantClass.AT_INFINITY  # radiant on the tangent line: same focus
    if w < 0.0:
        return RadiantClass.CONVEX_SIDE
    if abs(w - 1.0) <= rel_tol:
        return RadiantClass.ON_CR
    if abs(w - 2.0) <= rel_tol:
        return RadiantClass.ON_DISCRIMINANT
    if w < 1.0:
        return RadiantClass.OUTSIDE_CR
    if w < 2.0:
        return RadiantClass.INSIDE_CR
    return RadiantClass.INSIDE_DISCRIMINANT


def caustic_point(sample: CurveSample, radiant: Radiant) -> np.ndarray | None:
    """Point of tangency of the reflected ray with the caustic, or None when
    the focus is at infinity. Negative D2 extends the reflected line backward
    (virtual focus on the convex side)."""
    if sample.flat:
        raise FlatSampleError(f"flat sample at t={sample.t}")
    ray = ray_geometry(sample, radiant)
    u2 = mirror_focus(ray.u1, sample.kappa)
    if abs(u2) < U_FLOOR:
        return None
    D2 = math.cos(ray.phi) / u2
    return sample.pos + D2 * ray.reflected_dir
