"""Optical caustics of plane mirror curves.

Compute focal circles of reflected light, the second envelope of the
focal-circle family, full caustic envelopes with cusps and asymptotes, and
the rolling-circle construction that traces every caustic of a mirror as a
point on circles rolling without slipping on the second envelope.
"""

from .curves import (
    CurveSample,
    ParametricCurve,
    arc_length,
    catalog_curve,
    circle,
    deltoid,
    ellipse,
    evaluate,
    frenet_sample,
    from_expressions,
    involute_spiral,
    parabola,
    sample_grid,
    t_at_arclength,
)
from .envelope import (
    BetaSample,
    beta_infinity,
    beta_point,
    chord_angle,
    radius_profile,
    second_envelope,
)
from .optics import (
    FocalCircle,
    Radiant,
    RadiantClass,
    RayGeometry,
    caustic_point,
    classify_radiant,
    discriminant_circle,
    focal_circle,
    mirror_focus,
    ray_geometry,
)
from .oracles import (
    LineFamily,
    envelope_of_lines,
    fit_astroid,
    hausdorff_distance,
    chord_rotation_rate,
    reference_eval,
)
from .scene import Scene, compute_scene, load_scene
from .tracer import (
    CausticSample,
    Component,
    RollingFrame,
    find_cusps,
    no_slip_report,
    omega_angle,
    rolling_frames,
    trace_caustic,
)
from .verify import run_verify

__version__ = "0.1.0"

__all__ = [
    "BetaSample",
    "CausticSample",
    "Component",
    "CurveSample",
    "FocalCircle",
    "LineFamily",
    "ParametricCurve",
    "Radiant",
    "RadiantClass",
    "RayGeometry",
    "RollingFrame",
    "Scene",
    "arc_length",
    "beta_infinity",
    "beta_point",
    "catalog_curve",
    "caustic_point",
    "chord_angle",
    "circle",
    "classify_radiant",
    "compute_scene",
    "deltoid",
    "discriminant_circle",
    "ellipse",
    "envelope_of_lines",
    "evaluate",
    "find_cusps",
    "fit_astroid",
    "focal_circle",
    "frenet_sample",
    "from_expressions",
    "hausdorff_distance",
    "involute_spiral",
    "chord_rotation_rate",
    "load_scene",
    "mirror_focus",
    "no_slip_report",
    "omega_angle",
    "parabola",
    "radius_profile",
    "ray_geometry",
    "reference_eval",
    "rolling_frames",
    "run_verify",
    "sample_grid",
    "second_envelope",
    "t_at_arclength",
    "trace_caustic",
]
