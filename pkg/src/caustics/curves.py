"""Regular plane curves: evaluation, Frenet data, curvature, arc length.

A curve is a map t -> (x, y) on a closed parameter interval, with optional
analytic derivatives through order 3. Signed curvature follows the leftward
normal: N_left is the unit tangent rotated by +pi/2 and T'(s) = kappa * N_left,
so kappa > 0 where the curve bends toward N_left. All downstream circle radii
and diameters are signed along N_left under the same convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from . import expressions
from .geometry import rot90

KAPPA_FLOOR = 1e-8  # below this |kappa|, curvature-derived quantities are undefined
SPEED_FLOOR = 1e-8

# Finite-difference steps by derivative order. Larger steps for higher orders:
# roundoff grows like eps/h^order, so a uniform tiny step is useless past
# order 1 (order 3 at h=1e-5 would lose essentially all digits). Orders 1-2
# scale the step with |t|; order 3 keeps it fixed, where scaling inflates the
# truncation term faster than it helps roundoff.
_FD_STEP = {1: 1e-5, 2: 1e-4, 3: 8e-3}


class DomainError(ValueError):
    """Parameter outside the curve's domain."""


class IrregularCurveError(ValueError):
    """Curve has a sampled point with vanishing speed."""


@dataclass(frozen=True)
class CurveSource:
    """Where a curve came from: a catalog entry or a pair of expressions."""

    kind: str  # catalog name or "expression"
    params: dict = field(default_factory=dict)
    x_text: str | None = None
    y_text: str | None = None


@dataclass(frozen=True)
class ParametricCurve:
    """A regular plane curve t -> position(t) on [t_min, t_max]."""

    domain: tuple[float, float]
    position: Callable
    derivatives: tuple[Callable, Callable, Callable] | None
    closed: bool
    source: CurveSource
    singular_params: tuple[float, ...] = ()

    @property
    def t_min(self) -> float:
        return self.domain[0]

    @property
    def t_max(self) -> float:
        return self.domain[1]

    @property
    def period(self) -> float:
        return self.domain[1] - self.domain[0]

    def reduce(self, t: float) -> float:
        """Map t into the domain (mod period for closed curves)."""
        t_min, t_max = self.domain
        if self.closed:
            if t_min <= t <= t_max:
                return t
            return t_min + math.fmod(t - t_min, self.period) % self.period
        if t < t_min - 1e-12 or t > t_max + 1e-12:
            raise DomainError(f"t={t} outside domain [{t_min}, {t_max}]")
        return min(max(t, t_min), t_max)


@dataclass
class CurveSample:
    """Frenet data at one parameter.

    gamma is the principal direction angle of T in (-pi, pi]; grid samplers
    unwrap it along the grid. aberrancy is None when the sample is flat
    (|kappa| < KAPPA_FLOOR).
    """

    t: float
    s: float
    pos: np.ndarray
    T: np.ndarray
    N_left: np.ndarray
    kappa: float
    kappa_s: float
    gamma: float
    aberrancy: float | None
    flat: bool = False


# ---------------------------------------------------------------------------
# Evaluation


def evaluate(curve: ParametricCurve, t: float, order: int = 0) -> list[np.ndarray]:
    """Position and derivatives w.r.t. t at a parameter, orders 0..order.

    Analytic derivative maps are used when the curve has them; otherwise
    central finite differences (5-point for orders 1-2, 7-point for order 3).
    """
    if not 0 <= order <= 3:
        raise ValueError(f"order must be 0..3, got {order}")
    t = curve.reduce(t)
    out = [np.asarray(curve.position(t), dtype=float)]
    for k in range(1, order + 1):
        out.append(_derivative(curve, t, k))
    return out


def _derivative(curve: ParametricCurve, t: float, order: int) -> np.ndarray:
    if curve.derivatives is not None:
        return np.asarray(curve.derivatives[order - 1](t), dtype=float)
    return _fd_derivative(curve.position, t, order)


def _fd_derivative(f: Callable, t: float, order: int) -> np.ndarray:
    # Stencils probe slightly past open-curve endpoints; the raw position
    # callable is expected to extrapolate smoothly there.
    h = _FD_STEP[order] * (max(1.0, abs(t)) if order < 3 else 1.0)
    if order == 1:
        return (
            -f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)
        ) / (12 * h)
    if order == 2:
        return (
            -f(t + 2 * h) + 16 * f(t + h) - 30 * f(t) + 16 * f(t - h) - f(t - 2 * h)
        ) / (12 * h * h)
    # third derivative: coefficients (1, -8, 13, 0, -13, 8, -1)/(8 h^3) on
    # offsets -3h..+3h; O(h^4) truncation (the h^5 term cancels too)
    return (
        f(t - 3 * h)
        - 8 * f(t - 2 * h)
        + 13 * f(t - h)
        - 13 * f(t + h)
        + 8 * f(t + 2 * h)
        - f(t + 3 * h)
    ) / (8 * h * h * h)


# ---------------------------------------------------------------------------
# Frenet data


def _frenet_at(curve: ParametricCurve, t: float) -> CurveSample:
    """Frenet sample with principal gamma and s left at 0."""
    pos, d1, d2, d3 = evaluate(curve, t, order=3)
    speed = float(np.hypot(d1[0], d1[1]))
    if speed < SPEED_FLOOR:
        raise IrregularCurveError(f"vanishing speed at t={t}")
    T = d1 / speed
    kappa = float(d1[0] * d2[1] - d1[1] * d2[0]) / speed**3
    # d(kappa)/dt = (x'y''' - y'x''')/v^3 - 3 kappa (a'.a'')/v^2
    cross3 = float(d1[0] * d3[1] - d1[1] * d3[0])
    dkappa_dt = cross3 / speed**3 - 3.0 * kappa * float(np.dot(d1, d2)) / speed**2
    kappa_s = dkappa_dt / speed
    flat = abs(kappa) < KAPPA_FLOOR
    return CurveSample(
        t=t,
        s=0.0,
        pos=pos,
        T=T,
        N_left=rot90(T),
        kappa=kappa,
        kappa_s=kappa_s,
        gamma=float(math.atan2(T[1], T[0])),
        aberrancy=None if flat else -kappa_s / (3.0 * kappa * kappa),
        flat=flat,
    )


def frenet_sample(curve: ParametricCurve, t: float, with_arclength: bool = True) -> CurveSample:
    """Frenet frame, signed curvature, dkappa/ds and aberrancy at t."""
    sample = _frenet_at(curve, float(t))
    if with_arclength:
        sample.s = arc_length(curve, curve.t_min, curve.reduce(float(t)))
    return sample


def check_regular(curve: ParametricCurve, ts: Sequence[float]) -> None:
    """Raise IrregularCurveError if speed vanishes at any sampled parameter."""
    for t in ts:
        d1 = evaluate(curve, float(t), 1)[1]
        if float(np.hypot(d1[0], d1[1])) < SPEED_FLOOR:
            raise IrregularCurveError(
                f"curve is irregular at sampled t={float(t)}; "
                "offset the grid away from singular parameters"
            )
    if curve.closed:
        p0 = np.asarray(curve.position(curve.t_min), dtype=float)
        p1 = np.asarray(curve.position(curve.t_max), dtype=float)
        if float(np.hypot(*(p0 - p1))) >= 1e-9:
            raise IrregularCurveError("curve marked closed but endpoints differ")


# ---------------------------------------------------------------------------
# Arc length


def _speed_func(curve: ParametricCurve):
    def speed(t):
        d1 = _derivative(curve, t, 1)
        return math.hypot(float(d1[0]), float(d1[1]))

    return speed


def _split_points(curve: ParametricCurve, t0: float, t1: float) -> list[float]:
    inner = [p for p in curve.singular_params if t0 < p < t1]
    return [t0, *sorted(inner), t1]


def arc_length(curve: ParametricCurve, t0: float, t1: float) -> float:
    """Arc length between parameters, by adaptive quadrature (abs tol 1e-10)."""
    if t1 < t0:
        raise DomainError(f"t0={t0} must not exceed t1={t1}")
    speed = _speed_func(curve)
    pieces = _split_points(curve, t0, t1)
    total = 0.0
    for a, b in zip(pieces[:-1], pieces[1:]):
        if b - a < 1e-15:
            continue
        val, _ = integrate.quad(speed, a, b, epsabs=1e-10, epsrel=1e-12, limit=200)
        total += val
    return total


def total_length(curve: ParametricCurve) -> float:
    return arc_length(curve, curve.t_min, curve.t_max)


def t_at_arclength(curve: ParametricCurve, s: float) -> float:
    """Inverse of arc_length from t_min: Newton with bisection fallback."""
    L = total_length(curve)
    if s < -1e-12 or s > L + 1e-12:
        raise DomainError(f"arc length {s} outside [0, {L}]")
    s = min(max(s, 0.0), L)
    if s == 0.0:
        return curve.t_min
    if s == L:
        return curve.t_max
    speed = _speed_func(curve)
    lo, hi = curve.t_min, curve.t_max
    t = curve.t_min + (s / L) * curve.period
    f_t = arc_length(curve, curve.t_min, t) - s
    for _ in range(100):
        if abs(f_t) < 1e-9:
            return t
        if f_t > 0:
            hi = t
        else:
            lo = t
        v = speed(t)
        t_newton = t - f_t / v if v > SPEED_FLOOR else None
        t = t_newton if t_newton is not None and lo < t_newton < hi else 0.5 * (lo + hi)
        f_t = arc_length(curve, curve.t_min, t) - s
    raise RuntimeError(f"arc-length inversion did not converge for s={s}")


# ---------------------------------------------------------------------------
# Grid sampling


def grid_parameters(t_min: float, t_max: float, n: int, closed: bool) -> np.ndarray:
    """n sample parameters: endpoint excluded for a full closed period."""
    if closed:
        return np.linspace(t_min, t_max, n, endpoint=False)
    return np.linspace(t_min, t_max, n)


def _cell_lengths(curve: ParametricCurve, edges: np.ndarray) -> np.ndarray:
    """Arc length of each grid cell by 16-point Gauss-Legendre, split at
    declared singular parameters so speed cusps do not spoil the rule."""
    nodes, weights = np.polynomial.legendre.leggauss(16)
    lengths = np.zeros(len(edges) - 1)
    for i, (a, b) in enumerate(zip(edges[:-1], edges[1:])):
        acc = 0.0
        pieces = _split_points(curve, a, b)
        for a2, b2 in zip(pieces[:-1], pieces[1:]):
            half = 0.5 * (b2 - a2)
            mid = 0.5 * (a2 + b2)
            d1 = _derivative_many(curve, mid + half * nodes)
            acc += half * float(np.dot(weights, np.hypot(d1[0], d1[1])))
        lengths[i] = acc
    return lengths


def _derivative_many(curve: ParametricCurve, ts: np.ndarray) -> np.ndarray:
    if curve.derivatives is not None:
        out = np.asarray(curve.derivatives[0](ts), dtype=float)
        if out.shape == (2, len(ts)):
            return out
    return np.stack([_derivative(curve, float(t), 1) for t in ts], axis=1)


def sample_grid(curve: ParametricCurve, ts: Sequence[float]) -> list[CurveSample]:
    """Frenet samples over an increasing parameter grid.

    gamma is unwrapped along the grid and s accumulates from the first grid
    parameter.
    """
    ts = np.asarray(ts, dtype=float)
    samples = [_frenet_at(curve, float(t)) for t in ts]
    gammas = np.unwrap([smp.gamma for smp in samples])
    for smp, g in zip(samples, gammas):
        smp.gamma = float(g)
    if len(ts) > 1:
        s_acc = np.concatenate([[0.0], np.cumsum(_cell_lengths(curve, ts))])
        for smp, s in zip(samples, s_acc):
            smp.s = float(s)
    return samples


# ---------------------------------------------------------------------------
# Catalog


def circle(radius: float = 1.0) -> ParametricCurve:
    r = float(radius)
    return ParametricCurve(
        domain=(0.0, 2.0 * math.pi),
        position=lambda t: np.stack([r * np.cos(t), r * np.sin(t)]),
        derivatives=(
            lambda t: np.stack([-r * np.sin(t), r * np.cos(t)]),
            lambda t: np.stack([-r * np.cos(t), -r * np.sin(t)]),
            lambda t: np.stack([r * np.sin(t), -r * np.cos(t)]),
        ),
        closed=True,
        source=CurveSource("circle", {"radius": r}),
    )


def ellipse(a: float = 2.0, b: float = 1.0) -> ParametricCurve:
    a, b = float(a), float(b)
    return ParametricCurve(
        domain=(0.0, 2.0 * math.pi),
        position=lambda t: np.stack([a * np.cos(t), b * np.sin(t)]),
        derivatives=(
            lambda t: np.stack([-a * np.sin(t), b * np.cos(t)]),
            lambda t: np.stack([-a * np.cos(t), -b * np.sin(t)]),
            lambda t: np.stack([a * np.sin(t), -b * np.cos(t)]),
        ),
        closed=True,
        source=CurveSource("ellipse", {"a": a, "b": b}),
    )


def parabola(b: float = 1.0) -> ParametricCurve:
    b = float(b)

    def _arr(t):
        return np.asarray(t, dtype=float)

    return ParametricCurve(
        domain=(-3.0, 3.0),
        position=lambda t: np.stack([_arr(t), b * _arr(t) ** 2]),
        derivatives=(
            lambda t: np.stack([np.ones_like(_arr(t)), 2.0 * b * _arr(t)]),
            lambda t: np.stack([np.zeros_like(_arr(t)), 2.0 * b * np.ones_like(_arr(t))]),
            lambda t: np.stack([np.zeros_like(_arr(t)), np.zeros_like(_arr(t))]),
        ),
        closed=False,
        source=CurveSource("parabola", {"b": b}),
    )


# The deltoid's cusps sit at t = 0, 2pi/3, 4pi/3 (mod 2pi); the default domain
# is phase-shifted so uniform grids do not land on them.
_DELTOID_OFFSET = 0.01


def deltoid() -> ParametricCurve:
    cusps = tuple(2.0 * math.pi * k / 3.0 for k in range(4))
    return ParametricCurve(
        domain=(_DELTOID_OFFSET, 2.0 * math.pi + _DELTOID_OFFSET),
        position=lambda t: np.stack(
            [2.0 * np.cos(t) + np.cos(2.0 * t), 2.0 * np.sin(t) - np.sin(2.0 * t)]
        ),
        derivatives=(
            lambda t: np.stack(
                [-2.0 * np.sin(t) - 2.0 * np.sin(2.0 * t), 2.0 * np.cos(t) - 2.0 * np.cos(2.0 * t)]
            ),
            lambda t: np.stack(
                [-2.0 * np.cos(t) - 4.0 * np.cos(2.0 * t), -2.0 * np.sin(t) + 4.0 * np.sin(2.0 * t)]
            ),
            lambda t: np.stack(
                [2.0 * np.sin(t) + 8.0 * np.sin(2.0 * t), -2.0 * np.cos(t) + 8.0 * np.cos(2.0 * t)]
            ),
        ),
        closed=True,
        source=CurveSource("deltoid", {}),
        singular_params=cusps,
    )


def involute_spiral() -> ParametricCurve:
    """Involute of the unit circle; speed is t, so the domain stays off t=0."""
    return ParametricCurve(
        domain=(0.5, 3.0 * math.pi),
        position=lambda t: np.stack([np.cos(t) + t * np.sin(t), np.sin(t) - t * np.cos(t)]),
        derivatives=(
            lambda t: np.stack([t * np.cos(t), t * np.sin(t)]),
            lambda t: np.stack([np.cos(t) - t * np.sin(t), np.sin(t) + t * np.cos(t)]),
            lambda t: np.stack([-2.0 * np.sin(t) - t * np.cos(t), 2.0 * np.cos(t) - t * np.sin(t)]),
        ),
        closed=False,
        source=CurveSource("involute_spiral", {}),
        singular_params=(0.0,),
    )


def from_expressions(
    x_text: str,
    y_text: str,
    domain: tuple[float, float],
    closed: bool | None = None,
) -> ParametricCurve:
    """Curve from coordinate expressions in t, with symbolic derivatives."""
    xs = [expressions.parse_expression(x_text)]
    ys = [expressions.parse_expression(y_text)]
    for _ in range(3):
        xs.append(expressions.derivative(xs[-1]))
        ys.append(expressions.derivative(ys[-1]))

    def make(k):
        def f(t):
            t = np.asarray(t, dtype=float)
            x = np.broadcast_to(expressions.evaluate(xs[k], t), t.shape)
            y = np.broadcast_to(expressions.evaluate(ys[k], t), t.shape)
            return np.stack([x, y]).astype(float)

        return f

    pos = make(0)
    if closed is None:
        closed = float(np.hypot(*(pos(float(domain[0])) - pos(float(domain[1]))))) < 1e-9
    return ParametricCurve(
        domain=(float(domain[0]), float(domain[1])),
        position=pos,
        derivatives=(make(1), make(2), make(3)),
        closed=closed,
        source=CurveSource("expression", {}, x_text=x_text, y_text=y_text),
    )


_CATALOG_BUILDERS = {
    "circle": circle,
    "ellipse": ellipse,
    "parabola": parabola,
    "deltoid": deltoid,
    "involute_spiral": involute_spiral,
}


def catalog_curve(kind: str, **params) -> ParametricCurve:
    if kind not in _CATALOG_BUILDERS:
        raise ValueError(f"unknown catalog curve {kind!r}")
    return _CATALOG_BUILDERS[kind](**params)
