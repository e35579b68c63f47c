import math

import numpy as np
import pytest

from caustics import curves, oracles, optics, tracer
from caustics.optics import Radiant


FULL = np.linspace(0.0, 2.0 * math.pi, 512, endpoint=False)


def all_points(comps):
    return np.array([s.E for c in comps for s in c.samples if s.E is not None])


def test_coffee_cup_single_closed_component_with_cusps():
    comps = tracer.trace_caustic(curves.circle(), Radiant.at_angle(math.pi), FULL, closed=True)
    assert len(comps) == 1
    assert comps[0].closed
    assert len(comps[0].samples) == len(FULL)
    cusps = sorted(c.t % (2.0 * math.pi - 1e-12) for c in comps[0].cusps)
    assert len(cusps) == 2
    pts = sorted(np.round(c.point, 9)[0] for c in comps[0].cusps)
    assert pts == pytest.approx([-0.5, 0.5])
    assert any(s.is_cusp for s in comps[0].samples)


def test_circle_interior_radiants_components_and_cusps():
    comps = tracer.trace_caustic(curves.circle(), Radiant.finite(0.25, 0.0), FULL, closed=True)
    assert len(comps) == 1
    assert len(comps[0].cusps) == 4
    # cusps of at-finite scenes still touch beta there (observed numerically)
    comps75 = tracer.trace_caustic(curves.circle(), Radiant.finite(0.75, 0.0), FULL, closed=True)
    assert len(comps75) == 2


def test_component_split_carries_asymptotes():
    comps = tracer.trace_caustic(curves.circle(), Radiant.finite(0.75, 0.0), FULL, closed=True)
    asyms = [a for c in comps for a in (c.asymptote_before, c.asymptote_after)]
    assert all(a is not None for a in asyms)
    # each break is shared by the two adjacent components
    ts = sorted({round(a.t, 9) for a in asyms})
    assert len(ts) == 2
    # the reflected line at the break really is an asymptote: the last finite
    # samples approach it
    comp = comps[0]
    a = comp.asymptote_after
    tail = comp.samples[-1].E
    d = tail - a.point
    dist_along = float(np.dot(d, a.direction))
    dist_perp = abs(float(d[0] * a.direction[1] - d[1] * a.direction[0]))
    assert abs(dist_along) > 1.0  # far along the line
    assert dist_perp / abs(dist_along) < 0.1  # nearly parallel to it


def test_ellipse_radiant_between_envelopes_two_components():
    el = curves.ellipse()
    comps = tracer.trace_caustic(el, Radiant.finite(1.9, 0.0), FULL, closed=True)
    assert len(comps) == 2


def test_parabola_cusp_rules():
    p = curves.parabola(1.0)
    ts = np.linspace(-3.0, 3.0, 257)
    oblique = tracer.trace_caustic(p, Radiant.at_angle(math.radians(75.0)), ts)
    assert sum(len(c.cusps) for c in oblique) == 0
    axis = tracer.trace_caustic(p, Radiant.at_angle(0.5 * math.pi), ts)
    cusps = [q for c in axis for q in c.cusps]
    assert len(cusps) == 1
    assert np.hypot(cusps[0].point[0], cusps[0].point[1] - 0.25) < 1e-9


def test_omega_angle_examples():
    c = curves.circle()
    samples = curves.sample_grid(c, FULL)
    # at-infinity: omega' = 3 kappa; rim radiant: omega' = 2 (both constant here)
    for rad, rate in ((Radiant.at_angle(math.pi), 3.0), (Radiant.finite(1.0, 0.0), 2.0)):
        omegas = []
        for smp in samples[5:60]:
            omegas.append(tracer.omega_angle(smp, rad))
        d = np.diff(np.unwrap(omegas)) / (FULL[1] - FULL[0])
        assert np.allclose(d, rate, atol=1e-9)
    # two at-infinity radiants separated by dtheta: omega differs by 2 dtheta
    for smp in samples[::64]:
        w1 = tracer.omega_angle(smp, Radiant.at_angle(0.4))
        w2 = tracer.omega_angle(smp, Radiant.at_angle(0.9))
        assert (w1 - w2) == pytest.approx(1.0, abs=1e-12)


def test_rolling_frames_coffee_cup_and_invariants():
    c = curves.circle()
    rad = Radiant.at_angle(math.pi)
    frames = tracer.rolling_frames(c, [rad], FULL)
    for f in frames[::17]:
        assert f.R == pytest.approx(0.25, abs=1e-13)
        # contact and trace lie on the circle
        assert abs(float(np.hypot(*(f.contact - f.center))) - abs(f.R)) < 1e-8
        for _, p in f.traces:
            assert abs(float(np.hypot(*(p - f.center))) - abs(f.R)) < 1e-8
        # trace reproduces the epicycloid
        ref = oracles.reference_eval("epicycloid", {"rho_base": 0.5, "rho_roll": 0.25}, f.t)
        assert float(np.hypot(*(f.traces[0][1] - ref))) < 1e-9
    # chord sums of the radius-1/2 circle, open at the seam cell
    assert frames[-1].beta_arclen == pytest.approx(math.pi, abs=0.01)


def test_rolling_frames_parabola_pivot_about_focus():
    p = curves.parabola(0.5)
    ts = np.linspace(-2.5, 2.5, 257)
    frames = tracer.rolling_frames(p, [Radiant.at_angle(1.9)], ts)
    focus = np.array([0.0, 0.5])
    for f in frames[::16]:
        assert abs(float(np.hypot(*(f.center - focus))) - abs(f.R)) < 1e-9


def test_rolling_frames_multi_radiant_rigid_rotation():
    d = curves.deltoid()
    ts = np.linspace(d.t_min, d.t_max, 256, endpoint=False)
    rads = [Radiant.at_angle(-0.3 + 0.1 * k) for k in range(13)]
    frames = tracer.rolling_frames(d, rads, ts)
    seps = []
    for f in frames:
        angs = np.unwrap([math.atan2(*(p - f.center)[::-1]) for _, p in f.traces])
        seps.append(np.diff(angs))
    seps = np.array(seps)
    assert np.abs(seps - seps[0]).max() < 1e-8


def test_rolling_frames_mixed_finite_rejected():
    c = curves.circle()
    with pytest.raises(ValueError):
        tracer.rolling_frames(c, [Radiant.finite(0.2, 0.0), Radiant.finite(0.3, 0.0)], FULL)
    with pytest.raises(ValueError):
        tracer.rolling_frames(c, [Radiant.at_angle(1.0), Radiant.finite(0.3, 0.0)], FULL)


def test_two_route_agreement():
    scenes = [
        (curves.circle(), Radiant.at_angle(math.pi), FULL),
        (curves.ellipse(), Radiant.at_angle(math.radians(75.0)), FULL),
        (curves.circle(), Radiant.finite(0.25, 0.0), FULL),
    ]
    for curve, rad, ts in scenes:
        frames = tracer.rolling_frames(curve, [rad], ts)
        for f in frames:
            smp = curves.frenet_sample(curve, f.t, with_arclength=False)
            E = optics.caustic_point(smp, rad)
            assert float(np.hypot(*(f.traces[0][1] - E))) < 1e-9


def test_no_slip_residuals():
    c = curves.circle()
    rad = Radiant.at_angle(math.pi)
    frames = tracer.rolling_frames(c, [rad], FULL)
    report = tracer.no_slip_report(c, [rad], frames)
    assert len(report) == 2  # the two coffee-cup cusps
    assert all(r["speed_residual"] < 1e-6 for r in report)

    d = curves.deltoid()
    ts = np.linspace(d.t_min, d.t_max, 512, endpoint=False)
    rad = Radiant.at_angle(1.3)
    frames = tracer.rolling_frames(d, [rad], ts)
    report = tracer.no_slip_report(d, [rad], frames)
    assert len(report) == 4  # astroid cusp contacts
    assert all(r["speed_residual"] < 1e-5 for r in report)


def test_cusps_lie_on_beta():
    # the second envelope is the locus of cusps for radiants at infinity
    d = curves.deltoid()
    ts = np.linspace(d.t_min, d.t_max, 512, endpoint=False)
    comps = tracer.trace_caustic(d, Radiant.at_angle(0.9), ts, closed=True)
    from caustics.envelope import beta_infinity

    count = 0
    for comp in comps:
        for q in comp.cusps:
            smp = curves.frenet_sample(d, q.t, with_arclength=False)
            beta = beta_infinity(smp).beta
            assert float(np.hypot(*(q.point - beta))) < 1e-6
            count += 1
    assert count == 4


def test_caustic_samples_lie_on_their_focal_circles():
    el = curves.ellipse()
    rad = Radiant.finite(0.3, 0.2)
    comps = tracer.trace_caustic(el, rad, FULL, closed=True, with_cusps=False)
    checked = 0
    for comp in comps:
        for s in comp.samples:
            if s.E is None:
                continue
            smp = curves.frenet_sample(el, s.t, with_arclength=False)
            fc = optics.focal_circle(smp, rad)
            if fc.focus_at_infinity:
                continue
            assert abs(float(np.hypot(*(s.E - fc.center))) - abs(fc.R)) < 1e-8
            checked += 1
    assert checked > 400


def test_oracle_agreement_windowed_on_break_scene():
    # components that escape to infinity: compare against a 4x-refined
    # line-envelope oracle away from the breaks (|u2| >= 0.3)
    c = curves.circle()
    rad = Radiant.finite(0.75, 0.0)
    n = 1024
    ts = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    comps = tracer.trace_caustic(c, rad, ts, closed=True, with_cusps=False)
    traced = {}
    for comp in comps:
        for s in comp.samples:
            if s.E is not None:
                traced[round(s.t, 12)] = s.E
    refine = 4
    tf = np.linspace(0.0, 2.0 * math.pi, n * refine, endpoint=False)
    fam = oracles.reflected_ray_family(c, rad, tf, closed=True)
    res = oracles.envelope_of_lines(fam)
    A, B = [], []
    for i, t in enumerate(ts):
        j = i * refine
        key = round(float(t), 12)
        if not (res.valid[j] and key in traced):
            continue
        smp = curves.frenet_sample(c, float(t), with_arclength=False)
        u2 = optics.mirror_focus(optics.ray_geometry(smp, rad).u1, smp.kappa)
        if abs(u2) < 0.3:
            continue
        A.append(traced[key])
        B.append(res.points[j])
    assert len(A) > 900
    assert oracles.hausdorff_distance(np.array(A), np.array(B)) < 1e-6


def test_frames_continuous_across_beta_cusps():
    # the interior-radiant circle scene: beta has four cusps, frames roll through
    c = curves.circle()
    rad = Radiant.finite(0.25, 0.0)
    ts = np.linspace(0.0, 2.0 * math.pi, 1024, endpoint=False)
    frames = tracer.rolling_frames(c, [rad], ts)
    step = 2.0 * math.pi / 1024
    for a, b in zip(frames[:-1], frames[1:]):
        assert float(np.hypot(*(b.center - a.center))) < 5.0 * step
        assert float(np.hypot(*(b.contact - a.contact))) < 10.0 * step
        assert abs(b.R - a.R) < 5.0 * step
