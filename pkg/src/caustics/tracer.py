"""Caustic envelopes end to end: components, asymptotes, cusps, rolling circles.

A caustic sample exists wherever the focal circle is finite. When the radiant
meets the discriminant circle of some mirror point, u2 crosses zero, the
caustic escapes to infinity along the reflected ray there, and the trace
splits into components; the reflected line at the crossing is attached to
both neighbours as an asymptote.

The rolling view of the same geometry: the focal circle C_t rolls on the
second envelope beta, and the point at angle omega = 3*pi/2 + 3*gamma -
2*sigma1 around C_t traces the caustic. Cusps are exactly the contact events
trace == beta, where the no-slip condition makes the trace velocity vanish.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from . import curves as _curves
from .curves import CurveSample, IrregularCurveError, ParametricCurve, frenet_sample, sample_grid
from .envelope import (
    IndeterminateChordAngleError,
    beta_infinity,
    beta_point,
    chord_angle,
    radius_profile,
    second_envelope,
)
from .geometry import wrap_pi
from .optics import (
    U_FLOOR,
    DegenerateSourceError,
    FlatSampleError,
    Radiant,
    caustic_point,
    mirror_focus,
    ray_geometry,
)

_CUSP_ANGLE_TOL = 1e-6
_CUSP_BETA_TOL = 1e-6
_COINCIDENCE_TOL = 1e-4
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass
class Asymptote:
    """Reflected line at a parameter where the focus escapes to infinity."""

    t: float
    point: np.ndarray
    direction: np.ndarray


@dataclass
class CausticSample:
    t: float
    s: float
    E: np.ndarray | None
    component_id: int
    is_cusp: bool = False


@dataclass
class Cusp:
    t: float
    point: np.ndarray


@dataclass
class Component:
    """A maximal finite arc of the caustic, ordered by parameter."""

    id: int
    samples: list[CausticSample]
    closed: bool = False
    asymptote_before: Asymptote | None = None
    asymptote_after: Asymptote | None = None
    cusps: list[Cusp] = field(default_factory=list)


@dataclass
class RollingFrame:
    """One pose of the rolling construction."""

    t: float
    s: float
    center: np.ndarray
    R: float
    contact: np.ndarray
    omega: float
    traces: list[tuple[int, np.ndarray]]
    beta_arclen: float = 0.0


def omega_angle(sample: CurveSample, radiant: Radiant) -> float:
    """Direction angle from the focal-circle center to the caustic point."""
    sigma1 = ray_geometry(sample, radiant).sigma1
    return 1.5 * math.pi + 3.0 * sample.gamma - 2.0 * sigma1


# ---------------------------------------------------------------------------
# Tracing and component splitting


def _u2_function(curve: ParametricCurve, radiant: Radiant) -> Callable[[float], float]:
    def u2(t: float) -> float:
        smp = frenet_sample(curve, t, with_arclength=False)
        return mirror_focus(ray_geometry(smp, radiant).u1, smp.kappa)

    return u2


def trace_caustic(
    curve: ParametricCurve,
    radiant: Radiant,
    ts: Sequence[float],
    closed: bool = False,
    with_cusps: bool = True,
) -> list[Component]:
    """Caustic of one radiant over a parameter grid, split into components."""
    samples = sample_grid(curve, ts)
    n = len(samples)
    period = curve.period

    u2s = np.full(n, np.nan)
    Es: list[np.ndarray | None] = [None] * n
    usable = np.zeros(n, dtype=bool)
    for i, smp in enumerate(samples):
        try:
            ray = ray_geometry(smp, radiant)
        except DegenerateSourceError:
            continue
        if smp.flat:
            continue
        u2s[i] = mirror_focus(ray.u1, smp.kappa)
        if abs(u2s[i]) < U_FLOOR:
            continue
        Es[i] = smp.pos + (math.cos(ray.phi) / u2s[i]) * ray.reflected_dir
        usable[i] = True

    u2_of = _u2_function(curve, radiant)

    def edge_asymptote(i: int, j: int) -> Asymptote | None:
        """Refined reflected line where u2 crosses zero between grid ids."""
        t0 = samples[i].t
        t1 = samples[j].t
        if j < i:  # seam edge of a closed grid
            t1 += period
        try:
            t_star = brentq(u2_of, t0, t1, xtol=1e-13)
        except ValueError:
            return None
        smp = frenet_sample(curve, t_star, with_arclength=False)
        ray = ray_geometry(smp, radiant)
        return Asymptote(t=t_star, point=smp.pos, direction=ray.reflected_dir)

    # break between i and its successor: sign change of u2 across usable pair
    edges = n if closed else n - 1
    breaks: dict[int, Asymptote | None] = {}
    for i in range(edges):
        j = (i + 1) % n
        if usable[i] and usable[j] and u2s[i] * u2s[j] < 0.0:
            breaks[i] = edge_asymptote(i, j)

    runs = _split_runs(list(range(n)), usable, breaks, closed)
    components: list[Component] = []
    for cid, (ids, asym_before, asym_after, is_cyclic) in enumerate(runs):
        comp_samples = [
            CausticSample(t=samples[k].t, s=samples[k].s, E=Es[k], component_id=cid)
            for k in ids
        ]
        components.append(
            Component(
                id=cid,
                samples=comp_samples,
                closed=is_cyclic,
                asymptote_before=asym_before,
                asymptote_after=asym_after,
            )
        )
    if with_cusps:
        for comp in components:
            comp.cusps = find_cusps(curve, radiant, comp, period=period)
            _mark_cusp_samples(comp)
    return components


def _split_runs(ids, usable, breaks, closed):
    """Cut the index circle/segment into maximal usable runs.

    Returns tuples (ids, asymptote_before, asymptote_after, is_cyclic).
    Unusable samples separate runs without an asymptote; sign-change edges
    carry the refined asymptote on both sides.
    """
    n = len(ids)
    cut_after = set(breaks)
    bad = {i for i in ids if not usable[i]}
    if closed and not bad and not cut_after:
        return [(ids, None, None, True)]

    runs = []
    cur: list[int] = []
    cur_before: "Asymptote | None" = None

    def flush(after):
        nonlocal cur, cur_before
        if cur:
            runs.append((cur, cur_before, after, False))
        cur = []
        cur_before = None

    order = ids
    if closed:
        # start just after a cut so no run straddles the seam artificially
        first_cut = next((i for i in ids if i in bad or i in cut_after), None)
        if first_cut is not None:
            start = (first_cut + 1) % n
            order = [(start + k) % n for k in range(n)]
            if first_cut in cut_after:
                cur_before = breaks[first_cut]  # wrap connection

    for idx, i in enumerate(order):
        if i in bad:
            flush(None)
            continue
        cur.append(i)
        last = idx == len(order) - 1
        if i in cut_after and not last:
            a = breaks[i]
            flush(a)
            cur_before = a
        elif i in cut_after and last:
            flush(breaks[i])
    flush(None)

    # components ordered by the parameter at which they start
    runs.sort(key=lambda r: r[0][0])
    return runs


def _mark_cusp_samples(comp: Component) -> None:
    if not comp.cusps or not comp.samples:
        return
    ts = np.array([s.t for s in comp.samples])
    for cusp in comp.cusps:
        k = int(np.argmin(np.abs(ts - cusp.t)))
        comp.samples[k].is_cusp = True


# ---------------------------------------------------------------------------
# Cusp detection


def _fd_window_ok(curve: ParametricCurve, t: float, reach: float) -> bool:
    if curve.closed:
        return True
    return t - reach >= curve.t_min and t + reach <= curve.t_max


def _dE_dt(curve: ParametricCurve, radiant: Radiant, t: float, h: float) -> np.ndarray | None:
    if not _fd_window_ok(curve, t, 2.0 * h):
        return None
    pts = []
    for k in (-2, -1, 1, 2):
        E = caustic_point(frenet_sample(curve, t + k * h, with_arclength=False), radiant)
        if E is None:
            return None
        pts.append(E)
    return (pts[0] - 8.0 * pts[1] + 8.0 * pts[2] - pts[3]) / (12.0 * h)


def _caustic_speed_sq(curve: ParametricCurve, radiant: Radiant) -> Callable[[float], float]:
    def g(t: float) -> float:
        h = 1e-5 * max(1.0, abs(t))
        try:
            dE = _dE_dt(curve, radiant, t, h)
        except (IrregularCurveError, FlatSampleError, DegenerateSourceError):
            return math.inf
        if dE is None:
            return math.inf
        d1 = _curves.evaluate(curve, t, 1)[1]
        v = float(np.hypot(d1[0], d1[1]))
        return float(dE[0] ** 2 + dE[1] ** 2) / (v * v)

    return g


def _golden_min(f: Callable[[float], float], a: float, b: float, xtol: float) -> float:
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > xtol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
    return 0.5 * (a + b)


def _monotonic_ts(ts: Sequence[float], period: float) -> list[float]:
    """Re-label a cyclically ordered parameter list as an increasing one."""
    out = [float(ts[0])]
    for t in ts[1:]:
        step = (float(t) - out[-1]) % period
        if step == 0.0:
            step = period
        out.append(out[-1] + step)
    return out


def find_cusps(
    curve: ParametricCurve,
    radiant: Radiant,
    component: Component,
    period: float | None = None,
) -> list[Cusp]:
    """Cusps of one component: local minima of the caustic speed, refined by
    golden-section, kept only where the rolling contact condition
    omega - gamma = pi/2 - 2*delta holds and the point lies on beta."""
    m = len(component.samples)
    if m < 3:
        return []
    period = period if period is not None else curve.period
    raw_ts = [s.t for s in component.samples]
    ts = _monotonic_ts(raw_ts, period) if component.closed else [float(t) for t in raw_ts]

    g = _caustic_speed_sq(curve, radiant)
    gs = np.array([g(t) for t in ts])

    wrap_step = period - (ts[-1] - ts[0])  # seam cell width for closed components
    candidates = []
    rng = range(m) if component.closed else range(1, m - 1)
    for i in rng:
        gm = gs[(i - 1) % m]
        gp = gs[(i + 1) % m]
        if math.isfinite(gs[i]) and gs[i] <= gm and gs[i] <= gp:
            lo = ts[i - 1] if i > 0 else ts[0] - wrap_step
            hi = ts[i + 1] if i + 1 < m else ts[-1] + wrap_step
            candidates.append((lo, hi))

    def seen(cusp: Cusp, kept: list[Cusp]) -> bool:
        for c in kept:
            dt = abs(cusp.t - c.t)
            if curve.closed:
                dt = min(dt, period - dt)
            if dt < 1e-6 or float(np.hypot(*(cusp.point - c.point))) < 1e-8:
                return True
        return False

    cusps: list[Cusp] = []
    for lo, hi in candidates:
        t_star = _golden_min(g, lo, hi, 1e-10)
        cusp = _gate_cusp(curve, radiant, t_star)
        if cusp is not None and not seen(cusp, cusps):
            cusps.append(cusp)
    return cusps


def _gate_cusp(curve: ParametricCurve, radiant: Radiant, t: float) -> Cusp | None:
    try:
        smp = frenet_sample(curve, t, with_arclength=False)
        E = caustic_point(smp, radiant)
        if E is None:
            return None
        R, R_s = radius_profile(curve, radiant, t)
        delta = chord_angle(R, R_s, smp.kappa)
        beta = second_envelope(smp, R, delta).beta
        omega = omega_angle(smp, radiant)
    except (
        FlatSampleError,
        DegenerateSourceError,
        IndeterminateChordAngleError,
        IrregularCurveError,
        _curves.DomainError,
    ):
        return None
    touch = wrap_pi(omega - smp.gamma - 0.5 * math.pi + 2.0 * delta)
    if abs(touch) > _CUSP_ANGLE_TOL:
        return None
    if float(np.hypot(*(E - beta))) > _CUSP_BETA_TOL:
        return None
    t_report = curve.reduce(t)
    return Cusp(t=t_report, point=E)


# ---------------------------------------------------------------------------
# Rolling frames


def _family_beta_R(curve: ParametricCurve, radiants: Sequence[Radiant]):
    """Shared focal family: returns callables beta(t), (R, R_s)(t).

    All radiants at infinity share the discriminant-circle family; otherwise
    a single finite radiant defines the family.
    """
    if all(r.at_infinity for r in radiants):
        def profile(t: float):
            smp = frenet_sample(curve, t, with_arclength=False)
            kappa = smp.kappa
            return 1.0 / (4.0 * kappa), -smp.kappa_s / (4.0 * kappa * kappa)

        def beta(t: float) -> np.ndarray:
            return beta_infinity(frenet_sample(curve, t, with_arclength=False)).beta

        return beta, profile
    if len(radiants) != 1:
        raise ValueError(
            "mixed finite radiants define distinct focal families; "
            "pass a single finite radiant or only at-infinity radiants"
        )
    finite = radiants[0]

    def profile(t: float):
        return radius_profile(curve, finite, t)

    def beta(t: float) -> np.ndarray:
        return beta_point(curve, finite, t).beta

    return beta, profile


def rolling_frames(
    curve: ParametricCurve, radiants: Sequence[Radiant], ts: Sequence[float]
) -> list[RollingFrame]:
    """Rolling-circle poses over a grid: one trace point per radiant."""
    if not radiants:
        raise ValueError("need at least one radiant")
    _family_beta_R(curve, radiants)  # validates compatibility
    samples = sample_grid(curve, ts)

    sigma1s = []
    for rad in radiants:
        if rad.at_infinity:
            sigma1s.append(np.full(len(samples), rad.theta_src))
        else:
            S = np.asarray(rad.point)
            angles = [
                math.atan2(S[1] - smp.pos[1], S[0] - smp.pos[0]) for smp in samples
            ]
            sigma1s.append(np.unwrap(angles))

    frames: list[RollingFrame] = []
    arclen = 0.0
    prev_contact = None
    for i, smp in enumerate(samples):
        if radiants[0].at_infinity:
            kappa = smp.kappa
            R, R_s = 1.0 / (4.0 * kappa), -smp.kappa_s / (4.0 * kappa * kappa)
        else:
            R, R_s = radius_profile(curve, radiants[0], smp.t)
        contact = second_envelope(smp, R, chord_angle(R, R_s, smp.kappa)).beta
        center = smp.pos + R * smp.N_left
        traces = []
        omega0 = None
        for rid, s1 in enumerate(sigma1s):
            omega = 1.5 * math.pi + 3.0 * smp.gamma - 2.0 * float(s1[i])
            if omega0 is None:
                omega0 = omega
            traces.append(
                (rid, center + R * np.array([math.cos(omega), math.sin(omega)]))
            )
        if prev_contact is not None:
            arclen += float(np.hypot(*(contact - prev_contact)))
        prev_contact = contact
        frames.append(
            RollingFrame(
                t=smp.t,
                s=smp.s,
                center=center,
                R=R,
                contact=contact,
                omega=omega0,
                traces=traces,
                beta_arclen=arclen,
            )
        )
    return frames


def no_slip_report(
    curve: ParametricCurve,
    radiants: Sequence[Radiant],
    frames: list[RollingFrame],
    coincidence_tol: float = _COINCIDENCE_TOL,
) -> list[dict]:
    """Contact coincidences (trace == rolling contact) and the caustic speed
    there. Candidate grid minima of the gap are refined to the true touch
    parameter; the no-slip claim is that the speed residual vanishes."""
    beta_of, _profile = _family_beta_R(curve, radiants)
    report = []
    n = len(frames)
    for rid, rad in enumerate(radiants):
        gaps = np.array(
            [float(np.hypot(*(f.traces[rid][1] - f.contact))) for f in frames]
        )

        def gap_at(t: float) -> float:
            try:
                E = caustic_point(frenet_sample(curve, t, with_arclength=False), rad)
                if E is None:
                    return math.inf
                return float(np.hypot(*(E - beta_of(t))))
            except (
                IrregularCurveError,
                FlatSampleError,
                DegenerateSourceError,
                IndeterminateChordAngleError,
                _curves.DomainError,
            ):
                return math.inf

        for i in range(n):
            gm, gp = gaps[(i - 1) % n], gaps[(i + 1) % n]
            if not (gaps[i] < 0.1 and gaps[i] <= gm and gaps[i] <= gp):
                continue
            if i == 0 or i == n - 1:
                if not _grid_is_cyclic(curve, frames):
                    continue
            t0 = frames[i].t
            dt = frames[(i + 1) % n].t - frames[i].t
            if dt <= 0:
                dt = curve.period / n
            t_star = _golden_min(gap_at, t0 - dt, t0 + dt, 1e-11)
            gap_star = gap_at(t_star)
            if gap_star > coincidence_tol:
                continue
            if _near_singular(curve, t_star, 1e-3):
                # mirror cusp: trace and contact pinch together without rolling
                continue
            h = 1e-5 * max(1.0, abs(t_star))
            dE = _dE_dt(curve, rad, t_star, h)
            if dE is None:
                continue
            d1 = _curves.evaluate(curve, t_star, 1)[1]
            speed = float(np.hypot(dE[0], dE[1])) / float(np.hypot(d1[0], d1[1]))
            if report and any(
                r["radiant_id"] == rid and abs(r["t"] - curve.reduce(t_star)) < 1e-6
                for r in report
            ):
                continue
            report.append(
                {
                    "radiant_id": rid,
                    "t": curve.reduce(t_star),
                    "gap": gap_star,
                    "speed_residual": speed,
                }
            )
    return report


def _grid_is_cyclic(curve: ParametricCurve, frames: list[RollingFrame]) -> bool:
    if not curve.closed:
        return False
    span = frames[-1].t - frames[0].t
    step = span / max(1, len(frames) - 1)
    return abs(span + step - curve.period) < 1e-9


def _near_singular(curve: ParametricCurve, t: float, margin: float) -> bool:
    t = curve.reduce(t)
    for p in curve.singular_params:
        dt = abs(t - p)
        if curve.closed:
            dt = min(dt, abs(curve.period - dt))
        if dt < margin:
            return True
    return False
