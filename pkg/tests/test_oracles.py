import math

import numpy as np
import pytest

from caustics import curves, oracles
from caustics.optics import Radiant


def unit_circle_tangent_family(n=512, closed=True):
    ts = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    pts = np.stack([np.cos(ts), np.sin(ts)], axis=1)
    dirs = np.stack([-np.sin(ts), np.cos(ts)], axis=1)
    return oracles.LineFamily(ts=ts, points=pts, dirs=dirs, closed=closed)


def test_envelope_of_tangent_lines_is_the_circle():
    res = oracles.envelope_of_lines(unit_circle_tangent_family())
    radii = np.hypot(res.points[res.valid, 0], res.points[res.valid, 1])
    assert np.abs(radii - 1.0).max() < 1e-6


def test_envelope_of_reflected_rays_coffee_cup():
    c = curves.circle()
    ts = np.linspace(0.0, 2.0 * math.pi, 1024, endpoint=False)
    fam = oracles.reflected_ray_family(c, Radiant.at_angle(math.pi), ts, closed=True)
    res = oracles.envelope_of_lines(fam)
    ref = oracles.reference_eval("epicycloid", {"rho_base": 0.5, "rho_roll": 0.25}, ts).T
    err = np.hypot(*(res.points[res.valid] - ref[res.valid]).T).max()
    assert err < 1e-6


def test_envelope_of_reflected_rays_tschirnhausen():
    p = curves.parabola(1.0)
    ts = np.linspace(-2.0, 2.0, 1601)
    fam = oracles.reflected_ray_family(p, Radiant.at_angle(math.pi), ts)
    res = oracles.envelope_of_lines(fam)
    resid = np.abs(oracles.tschirnhausen_residual(res.points[res.valid]))
    assert resid.max() < 1e-6


def test_envelope_errors_and_parallel_skip():
    ts = np.linspace(0.0, 1.0, 8)
    pts = np.stack([ts, np.zeros_like(ts)], axis=1)
    dirs = np.tile([0.0, 1.0], (8, 1))
    with pytest.raises(oracles.NoEnvelopeError):
        oracles.envelope_of_lines(oracles.LineFamily(ts=ts, points=pts, dirs=dirs))
    with pytest.raises(ValueError):
        oracles.envelope_of_lines(
            oracles.LineFamily(ts=ts[:2], points=pts[:2], dirs=dirs[:2])
        )
    fam = unit_circle_tangent_family(64)
    fam.dirs[6] = fam.dirs[4]  # parallel pair straddling index 5
    res = oracles.envelope_of_lines(fam)
    assert any("parallel" in note for note in res.notes)
    assert not res.valid[5]
    assert res.valid[20]


def test_richardson_consistency_on_smooth_arc():
    # halving the grid step changes envelope points below 1e-8
    coarse = oracles.envelope_of_lines(unit_circle_tangent_family(1024))
    fine = oracles.envelope_of_lines(unit_circle_tangent_family(2048))
    diff = np.hypot(*(coarse.points[coarse.valid] - fine.points[fine.valid][::2]).T)
    assert diff.max() < 1e-8


def test_envelope_of_circles_recovers_both_envelopes():
    # focal circles of the coffee-cup scene: envelopes are the mirror and beta
    ts = np.linspace(0.0, 2.0 * math.pi, 2048, endpoint=False)
    centers = 0.75 * np.stack([np.cos(ts), np.sin(ts)], axis=1)
    radii = np.full(len(ts), 0.25)
    anchor = np.stack([np.cos(ts), np.sin(ts)], axis=1)
    near, far, valid = oracles.envelope_of_circles(centers, radii, anchor, closed=True)
    err_alpha = np.abs(np.hypot(near[valid, 0], near[valid, 1]) - 1.0).max()
    err_beta = np.abs(np.hypot(far[valid, 0], far[valid, 1]) - 0.5).max()
    assert err_alpha < 1e-5
    assert err_beta < 1e-5


def test_reference_eval():
    E = oracles.reference_eval("epicycloid", {"rho_base": 0.5, "rho_roll": 0.25}, 0.8)
    ref = [0.75 * math.cos(0.8) - 0.25 * math.cos(2.4), 0.75 * math.sin(0.8) - 0.25 * math.sin(2.4)]
    assert np.allclose(E, ref, atol=1e-15)

    T = oracles.reference_eval("tschirnhausen", {}, 1.0)
    assert np.allclose(T, [-0.5, 3.0], atol=1e-15)
    assert oracles.tschirnhausen_residual(np.array([[-0.5, 3.0]]))[0] == pytest.approx(0.0)

    A = oracles.reference_eval("astroid", {"scale": 2.0}, np.array([0.0, math.pi / 2.0]))
    assert np.allclose(A.T, [[2.0, 0.0], [0.0, 2.0]], atol=1e-12)

    card = oracles.reference_eval("cardioid", {"scale": 1.0 / 3.0, "phase": math.pi}, 0.5)
    ref = (2.0 / 3.0) * np.array([math.cos(0.5), math.sin(0.5)]) + (1.0 / 3.0) * np.array(
        [math.cos(1.0), math.sin(1.0)]
    )
    assert np.allclose(card, ref, atol=1e-14)

    with pytest.raises(ValueError):
        oracles.reference_eval("lemniscate", {}, 0.0)


def test_chord_rotation_rate_examples():
    c = curves.circle()
    measured, predicted = oracles.chord_rotation_rate(c, Radiant.finite(0.0, 0.0), 0.9)
    assert predicted == pytest.approx(1.0, abs=1e-12)
    assert measured == pytest.approx(1.0, abs=1e-9)

    measured, predicted = oracles.chord_rotation_rate(c, Radiant.finite(3.0, 0.0), math.pi / 2.0)
    assert abs(measured - predicted) < 1e-5

    el = curves.ellipse()

    def tangent_point(t):
        # tangency point on a radius-1/2 circle about the origin, left branch
        P = np.asarray(curves.evaluate(el, t, 0)[0])
        rho = 0.5
        dd = float(np.hypot(*P))
        base = (rho * rho / (dd * dd)) * P
        hh = rho * math.sqrt(dd * dd - rho * rho) / (dd * dd)
        return base + hh * np.array([-P[1], P[0]])

    measured, predicted = oracles.chord_rotation_rate(el, tangent_point, 0.7)
    assert abs(measured - predicted) < 1e-5


def test_chord_rotation_rate_degenerate():
    c = curves.circle()
    with pytest.raises(ValueError):
        oracles.chord_rotation_rate(c, Radiant.finite(1.0, 0.0), 0.0)
    with pytest.raises(ValueError):
        oracles.chord_rotation_rate(c, Radiant.at_angle(1.0), 0.5)


def test_hausdorff():
    rng = np.random.default_rng(0)
    A = rng.normal(size=(64, 2))
    assert oracles.hausdorff_distance(A, A) == 0.0
    n = 256
    ts = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    circle_pts = np.stack([np.cos(ts), np.sin(ts)], axis=1)
    shift = np.stack([np.cos(ts + 2.0 * math.pi / n), np.sin(ts + 2.0 * math.pi / n)], axis=1)
    chord = 2.0 * math.sin(math.pi / n)
    assert oracles.hausdorff_distance(circle_pts, shift) <= chord + 1e-12
    with pytest.raises(ValueError):
        oracles.hausdorff_distance(np.empty((0, 2)), A)


def test_fit_astroid_recovers_parameters():
    ts = np.linspace(0.0, 2.0 * math.pi, 257)
    truth = {"scale": 3.0, "rotation": 0.4, "center": (0.2, -0.7), "phase": 1.1}
    pts = oracles.reference_eval("astroid", truth, ts).T
    fit = oracles.fit_astroid(ts, pts)
    assert fit.max_residual < 1e-10
    assert fit.scale == pytest.approx(3.0, abs=1e-9)
    model = fit.eval(ts).T
    assert np.hypot(*(model - pts).T).max() < 1e-9
