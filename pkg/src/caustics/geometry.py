"""Small planar-vector helpers shared across modules."""

from __future__ import annotations

import math

import numpy as np


def rot90(v: np.ndarray) -> np.ndarray:
    """Rotate by +pi/2: (x, y) -> (-y, x). Works on (2,) and (2, n) arrays."""
    return np.stack([-v[1], v[0]])


def angle_of(v: np.ndarray) -> float | np.ndarray:
    """Direction angle atan2(y, x) in (-pi, pi]."""
    return np.arctan2(v[1], v[0])


def unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v, axis=0)


def wrap_pi(x):
    """Reduce an angle (or array) to (-pi, pi]."""
    y = np.remainder(np.asarray(x) + math.pi, 2.0 * math.pi) - math.pi
    y = np.where(y == -math.pi, math.pi, y)
    return float(y) if np.ndim(x) == 0 else y


def cross2(a: np.ndarray, b: np.ndarray):
    """Scalar cross product a_x b_y - a_y b_x."""
    return a[0] * b[1] - a[1] * b[0]


def dot2(a: np.ndarray, b: np.ndarray):
    return a[0] * b[0] + a[1] * b[1]
