#!/usr/bin/env python3
"""Regenerate the frozen oracle fixtures shipped with the package.

Each fixture is produced by an independent method (symbolic differentiation,
brute-force quadrature, least-squares registration) and frozen as JSON under
src/caustics/fixtures/. Run from the repository root:

    python tools/gen_fixtures.py
"""

import json
import math
from pathlib import Path

import numpy as np
import sympy as sp

import caustics.curves as curves
import caustics.optics as optics
import caustics.tracer as tracer
from caustics.oracles import fit_astroid

OUT = Path(__file__).resolve().parents[1] / "src" / "caustics" / "fixtures"


def deltoid_third_derivative():
    t = sp.Symbol("t")
    x = 2 * sp.cos(t) + sp.cos(2 * t)
    y = 2 * sp.sin(t) - sp.sin(2 * t)
    t0 = sp.Integer(1)
    out = {}
    for order in (1, 2, 3):
        dx = sp.diff(x, t, order)
        dy = sp.diff(y, t, order)
        out[f"order{order}"] = [
            float(sp.N(dx.subs(t, t0), 30)),
            float(sp.N(dy.subs(t, t0), 30)),
        ]
    return {"curve": "deltoid", "t": 1.0, "derivatives": out}


def ellipse_quarter_arclength(panels=1_000_000):
    # composite Simpson on speed of (2 cos t, sin t) over [0, pi/2]
    a, b = 2.0, 1.0
    lo, hi = 0.0, math.pi / 2
    ts = np.linspace(lo, hi, 2 * panels + 1)
    speeds = np.hypot(a * np.sin(ts), b * np.cos(ts))
    h = (hi - lo) / (2 * panels)
    val = (
        speeds[0]
        + speeds[-1]
        + 4.0 * speeds[1:-1:2].sum()
        + 2.0 * speeds[2:-1:2].sum()
    ) * h / 3.0
    return {"a": a, "b": b, "t_range": [lo, hi], "panels": panels, "length": val}


def deltoid_astroid_fits(n_grid=2048):
    d = curves.deltoid()
    ts = np.linspace(d.t_min, d.t_max, n_grid, endpoint=False)
    fits = []
    for deg in (10.0, 55.0, 100.0, 145.0, 190.0, 235.0, 280.0, 325.0):
        rad = optics.Radiant.at_angle(math.radians(deg))
        comps = tracer.trace_caustic(d, rad, ts, closed=True)
        pts, tts = [], []
        for cp in comps:
            for s in cp.samples:
                if s.E is not None:
                    pts.append(s.E)
                    tts.append(s.t)
        fit = fit_astroid(np.array(tts), np.array(pts))
        fits.append(
            {
                "direction_deg": deg,
                "scale": fit.scale,
                "rotation": fit.rotation,
                "center": list(fit.center),
                "phase": fit.phase,
                "max_residual": fit.max_residual,
            }
        )
        print(f"  {deg:6.1f} deg: scale={fit.scale:.12f} residual={fit.max_residual:.3e}")
    return {"grid_n": n_grid, "fits": fits}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    jobs = {
        "deltoid_derivatives.json": deltoid_third_derivative,
        "ellipse_arclength.json": ellipse_quarter_arclength,
        "deltoid_astroid_fits.json": deltoid_astroid_fits,
    }
    for name, fn in jobs.items():
        print(f"generating {name} ...")
        path = OUT / name
        path.write_text(json.dumps(fn(), indent=2, sort_keys=True) + "\n")
        print(f"  wrote {path}")


if __name__ == "__main__":
    main()
