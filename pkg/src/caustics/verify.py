"""Verification checks against the closed-form and oracle ground truths.

Each check recomputes a known configuration and reports the worst residual
against its pinned tolerance. `run_verify` executes a selection and returns a
machine-readable report; the pytest acceptance suite and the CLI both drive
this module.
"""

from __future__ import annotations

import importlib.resources
import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import curves as _curves
from . import envelope as _envelope
from . import oracles as _oracles
from . import optics as _optics
from . import tracer as _tracer
from .curves import frenet_sample, sample_grid
from .optics import Radiant, mirror_focus, ray_geometry


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: float
    tolerance: float
    detail: str = ""


def _result(name, residual, tolerance, detail="", extra_pass=True) -> CheckResult:
    return CheckResult(
        name=name,
        passed=bool(residual < tolerance) and extra_pass,
        residual=float(residual),
        tolerance=tolerance,
        detail=detail,
    )


def _fixture(name: str) -> dict:
    ref = importlib.resources.files("caustics") / "fixtures" / name
    return json.loads(ref.read_text())


def _trace_points(curve, radiant, ts, closed):
    comps = _tracer.trace_caustic(curve, radiant, ts, closed=closed, with_cusps=False)
    t_list, pts = [], []
    for comp in comps:
        for s in comp.samples:
            if s.E is not None:
                t_list.append(s.t)
                pts.append(s.E)
    return np.array(t_list), np.array(pts)


# ---------------------------------------------------------------------------
# Criterion 1: the coffee-cup configuration


def check_coffee_cup() -> CheckResult:
    curve = _curves.circle()
    rad = Radiant.at_angle(math.pi)
    ts = np.linspace(0.0, 2.0 * math.pi, 1024, endpoint=False)
    t_arr, pts = _trace_points(curve, rad, ts, True)
    ref = np.stack(
        [
            0.75 * np.cos(t_arr) - 0.25 * np.cos(3.0 * t_arr),
            0.75 * np.sin(t_arr) - 0.25 * np.sin(3.0 * t_arr),
        ],
        axis=1,
    )
    err_e = float(np.hypot(*(pts - ref).T).max())
    berr = 0.0
    for t in ts:
        smp = frenet_sample(curve, float(t), with_arclength=False)
        beta = _envelope.beta_infinity(smp).beta
        ref_b = 0.5 * np.array([math.cos(t), math.sin(t)])
        berr = max(berr, float(np.hypot(*(beta - ref_b))))
    return _result(
        "coffee_cup",
        max(err_e, berr),
        1e-9,
        f"caustic {err_e:.2e}, beta {berr:.2e} over {len(t_arr)} samples",
        extra_pass=len(t_arr) == 1024,
    )


# ---------------------------------------------------------------------------
# Criterion 2: mirror-equation numbers


def check_mirror_equation_numbers() -> CheckResult:
    u2_a = mirror_focus(1.0 / (5.0 * math.pi / 4.0), 1.0 / math.pi)
    err_a = abs(1.0 / u2_a - 5.0 * math.pi / 6.0)
    u2_b = mirror_focus(0.5, 1.0)
    err_b = abs(1.0 / u2_b - 2.0 / 3.0)
    return _result(
        "mirror_equation_numbers",
        max(err_a, err_b),
        1e-12,
        f"5pi/6 case {err_a:.2e}, 2/3 case {err_b:.2e}",
    )


# ---------------------------------------------------------------------------
# Criterion 3: parabola


def check_parabola_beta_focus() -> CheckResult:
    worst = 0.0
    rad = Radiant.at_angle(0.5 * math.pi)
    for b in (0.25, 1.0, 2.0):
        curve = _curves.parabola(b)
        focus = np.array([0.0, 1.0 / (4.0 * b)])
        for t in np.linspace(-3.0, 3.0, 241):
            beta = _envelope.beta_point(curve, rad, float(t)).beta
            worst = max(worst, float(np.hypot(*(beta - focus))))
    return _result("parabola_beta_focus", worst, 1e-9, "b in {1/4, 1, 2}, t in [-3, 3]")


def check_parabola_tschirnhausen() -> CheckResult:
    curve = _curves.parabola(1.0)
    rad = Radiant.at_angle(math.pi)  # light travels along +x
    ts = np.linspace(-3.0, 3.0, 1024)
    _, pts = _trace_points(curve, rad, ts, False)
    resid = float(np.abs(_oracles.tschirnhausen_residual(pts)).max())
    return _result("parabola_tschirnhausen", resid, 1e-6, f"{len(pts)} samples")


def check_parabola_axis_collapse() -> CheckResult:
    curve = _curves.parabola(1.0)
    rad = Radiant.at_angle(0.5 * math.pi)  # light parallel to the axis
    ts = np.linspace(-3.0, 3.0, 512)
    _, pts = _trace_points(curve, rad, ts, False)
    err = float(np.hypot(pts[:, 0], pts[:, 1] - 0.25).max())
    return _result("parabola_axis_collapse", err, 1e-9, "E == (0, 1/4)")


# ---------------------------------------------------------------------------
# Criterion 4: deltoid


def check_deltoid_beta() -> CheckResult:
    curve = _curves.deltoid()
    rad = Radiant.at_angle(1.0)
    worst = 0.0
    for t in np.linspace(curve.t_min, curve.t_max, 512, endpoint=False):
        beta = _envelope.beta_point(curve, rad, float(t)).beta
        ref = np.array(
            [4.0 * math.cos(t) - math.cos(4.0 * t), 4.0 * math.sin(t) - math.sin(4.0 * t)]
        )
        worst = max(worst, float(np.hypot(*(beta - ref))))
    return _result("deltoid_beta", worst, 1e-9, "epicycloid form, 512 samples")


def check_deltoid_astroid() -> CheckResult:
    fixture = _fixture("deltoid_astroid_fits.json")
    curve = _curves.deltoid()
    ts = np.linspace(curve.t_min, curve.t_max, fixture["grid_n"], endpoint=False)
    worst_h = 0.0
    worst_fit = 0.0
    for fit in fixture["fits"]:
        worst_fit = max(worst_fit, fit["max_residual"])
        rad = Radiant.at_angle(math.radians(fit["direction_deg"]))
        t_arr, pts = _trace_points(curve, rad, ts, True)
        model = _oracles.reference_eval(
            "astroid",
            {
                "scale": fit["scale"],
                "rotation": fit["rotation"],
                "center": tuple(fit["center"]),
                "phase": fit["phase"],
            },
            t_arr,
        ).T
        worst_h = max(worst_h, _oracles.hausdorff_distance(pts, model))
    return _result(
        "deltoid_astroid",
        worst_h,
        1e-6,
        f"8 directions, worst fit residual {worst_fit:.2e}",
        extra_pass=worst_fit < 1e-8,
    )


# ---------------------------------------------------------------------------
# Criterion 5: circle radiants


def _rim_grid(n=1024):
    return np.linspace(0.003, 2.0 * math.pi + 0.003, n, endpoint=False)


def check_circle_rim_beta() -> CheckResult:
    curve = _curves.circle()
    rim = Radiant.finite(1.0, 0.0)
    worst = 0.0
    for t in _rim_grid(512):
        beta = _envelope.beta_point(curve, rim, float(t)).beta
        worst = max(worst, abs(float(np.hypot(*beta)) - 1.0 / 3.0))
    return _result("circle_rim_beta", worst, 1e-9, "radius-1/3 circle about origin")


def check_circle_rim_oracle() -> CheckResult:
    curve = _curves.circle()
    rim = Radiant.finite(1.0, 0.0)
    ts = _rim_grid(1024)
    t_arr, pts = _trace_points(curve, rim, ts, True)
    fam = _oracles.reflected_ray_family(curve, rim, ts, closed=True)
    res = _oracles.envelope_of_lines(fam)
    traced = {round(float(t), 12): p for t, p in zip(t_arr, pts)}
    A, B = [], []
    for i, t in enumerate(ts):
        key = round(float(t), 12)
        if res.valid[i] and key in traced:
            A.append(traced[key])
            B.append(res.points[i])
    dist = _oracles.hausdorff_distance(np.array(A), np.array(B))
    return _result("circle_rim_oracle", dist, 1e-6, f"{len(A)} matched samples")


def check_circle_interior_components() -> CheckResult:
    curve = _curves.circle()
    ts = np.linspace(0.0, 2.0 * math.pi, 1024, endpoint=False)
    comps_25 = _tracer.trace_caustic(curve, Radiant.finite(0.25, 0.0), ts, closed=True)
    n_cusps = sum(len(c.cusps) for c in comps_25)
    comps_75 = _tracer.trace_caustic(
        curve, Radiant.finite(0.75, 0.0), ts, closed=True, with_cusps=False
    )
    ok = len(comps_25) == 1 and n_cusps == 4 and len(comps_75) == 2
    detail = (
        f"(0.25,0): {len(comps_25)} component(s), {n_cusps} cusps; "
        f"(0.75,0): {len(comps_75)} component(s)"
    )
    return _result("circle_interior_components", 0.0, 1.0, detail, extra_pass=ok)


# ---------------------------------------------------------------------------
# Criterion 6: randomized oracle equivalence


def _random_scene(rng, idx):
    if idx % 2 == 0:
        curve = _curves.ellipse()
        ts = np.linspace(0.0, 2.0 * math.pi, 1024, endpoint=False)
        closed = True
        box = 4.0
    else:
        curve = _curves.involute_spiral()
        ts = np.linspace(curve.t_min, curve.t_max, 1024)
        closed = False
        box = 12.0
    samples = sample_grid(curve, ts)
    while True:
        if rng.random() < 0.5:
            rad = Radiant.at_angle(float(rng.uniform(0.0, 2.0 * math.pi)))
        else:
            rad = Radiant.finite(float(rng.uniform(-box, box)), float(rng.uniform(-box, box)))
            dmin = min(float(np.hypot(*(np.array(rad.point) - s.pos))) for s in samples)
            if dmin < 0.35:
                continue
        u2s = []
        try:
            for s in samples:
                u2s.append(mirror_focus(ray_geometry(s, rad).u1, s.kappa))
        except _optics.DegenerateSourceError:
            continue
        if min(abs(u) for u in u2s) < 0.05:
            continue  # caustic breaks inside the window: resample
        return curve, rad, ts, closed


def check_randomized_oracle_equivalence() -> CheckResult:
    rng = np.random.default_rng(20260809)
    worst = 0.0
    for idx in range(10):
        curve, rad, ts, closed = _random_scene(rng, idx)
        t_arr, pts = _trace_points(curve, rad, ts, closed)
        fam = _oracles.reflected_ray_family(curve, rad, ts, closed=closed)
        res = _oracles.envelope_of_lines(fam)
        traced = {round(float(t), 12): p for t, p in zip(t_arr, pts)}
        A, B = [], []
        for i, t in enumerate(ts):
            key = round(float(t), 12)
            if res.valid[i] and key in traced:
                A.append(traced[key])
                B.append(res.points[i])
        worst = max(worst, _oracles.hausdorff_distance(np.array(A), np.array(B)))
    return _result("randomized_oracle_equivalence", worst, 1e-5, "10 seeded scenes")


# ---------------------------------------------------------------------------
# Criterion 7: rolling construction invariants


_ROLLING_SCENES = None


def _rolling_scenes():
    global _ROLLING_SCENES
    if _ROLLING_SCENES is None:
        circle = _curves.circle()
        ellipse = _curves.ellipse()
        deltoid = _curves.deltoid()
        full = np.linspace(0.0, 2.0 * math.pi, 1024, endpoint=False)
        _ROLLING_SCENES = [
            ("circle/at-inf", circle, Radiant.at_angle(math.pi), full),
            ("ellipse/75deg", ellipse, Radiant.at_angle(math.radians(75.0)), full),
            (
                "deltoid/1.3rad",
                deltoid,
                Radiant.at_angle(1.3),
                np.linspace(deltoid.t_min, deltoid.t_max, 1024, endpoint=False),
            ),
            ("circle/rim", circle, Radiant.finite(1.0, 0.0), _rim_grid(1024)),
            ("circle/interior", circle, Radiant.finite(0.25, 0.0), full),
        ]
    return _ROLLING_SCENES


def check_rolling_two_route() -> CheckResult:
    worst = 0.0
    for name, curve, rad, ts in _rolling_scenes():
        frames = _tracer.rolling_frames(curve, [rad], ts)
        for f in frames:
            smp = frenet_sample(curve, f.t, with_arclength=False)
            E = _optics.caustic_point(smp, rad)
            if E is None:
                continue
            worst = max(worst, float(np.hypot(*(f.traces[0][1] - E))))
    return _result("rolling_two_route", worst, 1e-9, "rolling trace vs direct caustic point")


def check_rolling_no_slip() -> CheckResult:
    worst = 0.0
    total = 0
    for name, curve, rad, ts in _rolling_scenes():
        if not rad.at_infinity and rad.point == (0.25, 0.0):
            continue  # beta cusps make the finite interior case a separate study
        frames = _tracer.rolling_frames(curve, [rad], ts)
        report = _tracer.no_slip_report(curve, [rad], frames)
        total += len(report)
        for row in report:
            worst = max(worst, row["speed_residual"])
    return _result(
        "rolling_no_slip",
        worst,
        1e-5,
        f"{total} contact coincidences",
        extra_pass=total >= 8,
    )


def check_omega_rate_identity() -> CheckResult:
    worst = 0.0
    for name, curve, rad, ts in _rolling_scenes():
        samples = sample_grid(curve, ts)
        omegas = []
        u1s, kappas, speeds = [], [], []
        usable = []
        for smp in samples:
            try:
                ray = ray_geometry(smp, rad)
            except _optics.DegenerateSourceError:
                omegas.append(np.nan)
                u1s.append(np.nan)
                kappas.append(np.nan)
                speeds.append(np.nan)
                usable.append(False)
                continue
            omegas.append(_tracer.omega_angle(smp, rad))
            u1s.append(ray.u1)
            kappas.append(smp.kappa)
            d1 = _curves.evaluate(curve, smp.t, 1)[1]
            speeds.append(float(np.hypot(d1[0], d1[1])))
            usable.append(True)
        omegas = np.array(omegas)
        h = float(ts[1] - ts[0])
        for i in range(2, len(ts) - 2):
            if not all(usable[i + k] for k in (-2, -1, 0, 1, 2)):
                continue
            if _tracer._near_singular(curve, float(ts[i]), 3.0 * h):
                continue  # tangent branch jumps at mirror cusps; identity is per-arc
            window = np.unwrap(omegas[i - 2 : i + 3])
            dom_dt = (window[0] - 8 * window[1] + 8 * window[3] - window[4]) / (12.0 * h)
            predicted = 3.0 * kappas[i] - 2.0 * u1s[i]
            worst = max(worst, abs(dom_dt / speeds[i] - predicted))
    return _result("omega_rate_identity", worst, 1e-5, "5-point grid stencil vs 3k-2u1")


# ---------------------------------------------------------------------------
# Criterion 8: chord rotation rates and envelope special cases


def check_chord_rotation_rate_random() -> CheckResult:
    rng = np.random.default_rng(7)
    catalog = [
        _curves.circle(),
        _curves.ellipse(),
        _curves.parabola(1.0),
        _curves.involute_spiral(),
    ]
    worst = 0.0
    count = 0
    while count < 100:
        curve = catalog[int(rng.integers(len(catalog)))]
        lo, hi = curve.t_min, curve.t_max
        t = float(rng.uniform(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo)))
        pos = np.asarray(_curves.evaluate(curve, t, 0)[0])
        if count % 5 == 4:
            # moving endpoint: tangency point on a circle, chord tangent at w
            c0 = pos + np.array([float(rng.uniform(1.5, 3.0)), float(rng.uniform(-1.0, 1.0))])
            rho = float(rng.uniform(0.2, 0.8))

            def w(tt, c0=c0, rho=rho, crv=curve):
                P = np.asarray(_curves.evaluate(crv, tt, 0)[0])
                rel = P - c0
                dd = float(np.hypot(*rel))
                base = c0 + (rho * rho / (dd * dd)) * rel
                hh = rho * math.sqrt(dd * dd - rho * rho) / (dd * dd)
                return base + hh * np.array([-rel[1], rel[0]])

        else:
            offset = rng.uniform(-4.0, 4.0, size=2)
            if float(np.hypot(*offset)) < 0.3:
                continue
            w = Radiant.finite(float(pos[0] + offset[0]), float(pos[1] + offset[1]))
        try:
            measured, predicted = _oracles.chord_rotation_rate(curve, w, t)
        except ValueError:
            continue
        worst = max(worst, abs(measured - predicted))
        count += 1
    return _result("chord_rotation_rate_random", worst, 1e-5, "100 seeded configurations")


def check_constant_radius_bertrand() -> CheckResult:
    worst = 0.0
    for curve, R in (
        (_curves.ellipse(), 0.3),
        (_curves.circle(), -0.2),
        (_curves.involute_spiral(), 1.5),
    ):
        ts = np.linspace(curve.t_min, curve.t_max, 128, endpoint=not curve.closed)
        for t in ts:
            smp = frenet_sample(curve, float(t), with_arclength=False)
            delta = _envelope.chord_angle(R, 0.0, smp.kappa)
            beta = _envelope.second_envelope(smp, R, delta).beta
            worst = max(
                worst, float(np.hypot(*(beta - smp.pos - 2.0 * R * smp.N_left)))
            )
    return _result("constant_radius_bertrand", worst, 1e-9, "beta = alpha + 2RN")


def check_osculating_single_envelope() -> CheckResult:
    curve = _curves.ellipse()
    worst = 0.0
    for t in np.linspace(0.0, 2.0 * math.pi, 256, endpoint=False):
        smp = frenet_sample(curve, float(t), with_arclength=False)
        if abs(smp.kappa_s) < 1e-6:
            continue  # vertices: stationary curvature, single-envelope family
        R = 1.0 / smp.kappa
        R_s = -smp.kappa_s / smp.kappa**2
        delta = _envelope.chord_angle(R, R_s, smp.kappa)
        beta = _envelope.second_envelope(smp, R, delta).beta
        worst = max(worst, float(np.hypot(*(beta - smp.pos))))
    return _result("osculating_single_envelope", worst, 1e-8, "osculating family: beta = alpha")


def check_double_angle_identities() -> CheckResult:
    worst = 0.0
    rad = Radiant.at_angle(2.0)
    for curve in (_curves.ellipse(), _curves.deltoid(), _curves.involute_spiral()):
        ts = np.linspace(curve.t_min, curve.t_max, 128, endpoint=not curve.closed)
        for t in ts:
            smp = frenet_sample(curve, float(t), with_arclength=False)
            a = smp.aberrancy
            R, R_s = _envelope.radius_profile(curve, rad, float(t))
            delta = _envelope.chord_angle(R, R_s, smp.kappa)
            worst = max(
                worst,
                abs(math.cos(2 * delta) - (1 - a * a) / (1 + a * a)),
                abs(math.sin(2 * delta) - (-2 * a) / (1 + a * a)),
                abs(delta - (-math.atan(a))),
            )
    return _result("double_angle_identities", worst, 1e-10, "cos/sin double angle and delta = -atan(a)")


# ---------------------------------------------------------------------------
# Registry


CHECKS = {
    fn.__name__.removeprefix("check_"): fn
    for fn in (
        check_coffee_cup,
        check_mirror_equation_numbers,
        check_parabola_beta_focus,
        check_parabola_tschirnhausen,
        check_parabola_axis_collapse,
        check_deltoid_beta,
        check_deltoid_astroid,
        check_circle_rim_beta,
        check_circle_rim_oracle,
        check_circle_interior_components,
        check_randomized_oracle_equivalence,
        check_rolling_two_route,
        check_rolling_no_slip,
        check_omega_rate_identity,
        check_chord_rotation_rate_random,
        check_constant_radius_bertrand,
        check_osculating_single_envelope,
        check_double_angle_identities,
    )
}

CRITERIA = {
    "1-coffee-cup": ["coffee_cup"],
    "2-mirror-equation": ["mirror_equation_numbers"],
    "3-parabola": ["parabola_beta_focus", "parabola_tschirnhausen", "parabola_axis_collapse"],
    "4-deltoid": ["deltoid_beta", "deltoid_astroid"],
    "5-circle-radiants": ["circle_rim_beta", "circle_rim_oracle", "circle_interior_components"],
    "6-oracle-equivalence": ["randomized_oracle_equivalence"],
    "7-rolling-invariants": ["rolling_two_route", "rolling_no_slip", "omega_rate_identity"],
    "8-rates-and-identities": [
        "chord_rotation_rate_random",
        "constant_radius_bertrand",
        "osculating_single_envelope",
        "double_angle_identities",
    ],
}


def run_verify(names: list[str] | None = None) -> dict:
    """Run a selection of checks (all by default); report pass/fail + residuals."""
    if names is None:
        names = list(CHECKS)
    if not names:
        raise ValueError("nothing to verify: empty check selection")
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}")
    results = [CHECKS[n]() for n in names]
    return {
        "checks": [asdict(r) for r in results],
        "all_passed": all(r.passed for r in results),
    }
