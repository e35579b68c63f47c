"""Second envelope of a family of circles tangent to a curve.

A family of circles C_t tangent to the mirror at alpha(t), with signed radius
R(t) along N_left, always has the mirror itself as one envelope. The other
envelope beta sits across the chord making angle delta with the diameter at
the contact point, where tan(delta) = R'(s) / (R*kappa - 1):

    beta = alpha + R*(1 + cos 2delta)*N_left + R*sin(2delta)*T

delta is always computed with the two-argument arctangent so the osculating
branch R*kappa = 1 (delta = +/-pi/2, beta = alpha) stays regular. Only 2*delta
enters the envelope, so delta is stored reduced to (-pi/2, pi/2].

For a radiant at infinity the focal family has R = 1/(4*kappa) and the chord
angle is minus the angle of aberrancy, giving the closed form

    beta = alpha + (N_left - a*T) / (2*kappa*(1 + a^2)),  a = -kappa'/(3*kappa^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import curves as _curves
from .curves import CurveSample, ParametricCurve, frenet_sample
from .optics import FlatSampleError, Radiant, focal_circle

_FD_CENTERED = ((-2, 1.0), (-1, -8.0), (1, 8.0), (2, -1.0))  # /(12h)
_FD_ONESIDED = ((0, -25.0), (1, 48.0), (2, -36.0), (3, 16.0), (4, -3.0))  # /(12h)


class IndeterminateChordAngleError(ValueError):
    """Osculating circle with stationary radius: chord angle undefined."""


@dataclass
class BetaSample:
    """A point of the second envelope."""

    t: float
    s: float
    beta: np.ndarray
    delta: float
    R: float
    is_alpha_contact: bool


def radius_profile(curve: ParametricCurve, radiant: Radiant, t: float) -> tuple[float, float]:
    """Signed focal radius R and dR/ds at parameter t.

    At infinity both are closed forms of curvature data; for a finite radiant
    R' comes from a 5-point stencil in t divided by the speed.
    """
    sample = frenet_sample(curve, t, with_arclength=False)
    if sample.flat:
        raise FlatSampleError(f"flat sample at t={t}")
    if radiant.at_infinity:
        kappa = sample.kappa
        return 1.0 / (4.0 * kappa), -sample.kappa_s / (4.0 * kappa * kappa)
    R = _finite_radius(curve, radiant, t)
    h = 1e-5 * max(1.0, abs(t))
    # one-sided stencils keep the probes inside an open domain near its ends
    stencil = _FD_CENTERED
    if not curve.closed:
        lo, hi = curve.domain
        if t - 2.0 * h < lo:
            stencil = _FD_ONESIDED
        elif t + 2.0 * h > hi:
            stencil = _FD_ONESIDED
            h = -h
    dR_dt = sum(
        w * _finite_radius(curve, radiant, t + k * h) for k, w in stencil
    ) / (12.0 * h)
    d1 = _curves.evaluate(curve, t, 1)[1]
    return R, dR_dt / float(np.hypot(d1[0], d1[1]))


def _finite_radius(curve: ParametricCurve, radiant: Radiant, t: float) -> float:
    fc = focal_circle(frenet_sample(curve, t, with_arclength=False), radiant)
    if fc.focus_at_infinity:
        raise FlatSampleError(f"focus at infinity at t={t}: no focal radius")
    return fc.R


def chord_angle(R: float, R_s: float, kappa: float) -> float:
    """Chord angle delta = atan2(R', R*kappa - 1), reduced to (-pi/2, pi/2]."""
    x = R * kappa - 1.0
    if abs(x) < 1e-12 and abs(R_s) < 1e-12:
        raise IndeterminateChordAngleError(
            "indeterminate chord angle: osculating circle with stationary radius"
        )
    delta = math.atan2(R_s, x)
    if delta > 0.5 * math.pi:
        delta -= math.pi
    elif delta <= -0.5 * math.pi:
        delta += math.pi
    return delta


def second_envelope(sample: CurveSample, R: float, delta: float) -> BetaSample:
    """Evaluate the envelope formula at one sample for radius R and angle delta."""
    two_delta = 2.0 * delta
    beta = (
        sample.pos
        + R * (1.0 + math.cos(two_delta)) * sample.N_left
        + R * math.sin(two_delta) * sample.T
    )
    # |delta| near pi/2 encodes |R'| >> |R*kappa - 1| (osculating contact)
    is_contact = abs(R * sample.kappa - 1.0) < 1e-8 and abs(delta) > 0.25 * math.pi
    return BetaSample(
        t=sample.t, s=sample.s, beta=beta, delta=delta, R=R, is_alpha_contact=is_contact
    )


def beta_infinity(sample: CurveSample) -> BetaSample:
    """Second envelope of the at-infinity focal family, via aberrancy."""
    if sample.flat:
        raise FlatSampleError(f"flat sample at t={sample.t}")
    a = sample.aberrancy
    factor = 1.0 / (2.0 * sample.kappa * (1.0 + a * a))
    beta = sample.pos + factor * (sample.N_left - a * sample.T)
    return BetaSample(
        t=sample.t,
        s=sample.s,
        beta=beta,
        delta=-math.atan(a),
        R=1.0 / (4.0 * sample.kappa),
        is_alpha_contact=False,
    )


def beta_point(curve: ParametricCurve, radiant: Radiant, t: float) -> BetaSample:
    """Second envelope of the focal family of `radiant` at parameter t."""
    sample = frenet_sample(curve, t, with_arclength=False)
    R, R_s = radius_profile(curve, radiant, t)
    return second_envelope(sample, R, chord_angle(R, R_s, sample.kappa))
