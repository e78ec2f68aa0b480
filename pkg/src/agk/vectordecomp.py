"""Writing a short vector as a sum of two sphere points.

Any ``x`` with ``|x| <= 2`` (n >= 2) splits as ``y + z`` with
``|y| = |z| = 1``: take ``y, z = (x +- a v) / 2`` with ``v`` a unit vector
orthogonal to ``x`` and ``a = sqrt(4 - |x|^2)``.  Scaling gives the same for
the ball of radius ``delta`` and the sphere of radius ``delta / 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from agk.core import as_vector
from agk.factorization import PreconditionError


@dataclass
class SphereSumWitness:
    y: np.ndarray
    z: np.ndarray
    radius: float
    v: np.ndarray
    a: float

    def residuals(self, x) -> dict[str, float]:
        x = np.asarray(x, dtype=float)
        return {
            "norm_y": abs(float(np.linalg.norm(self.y)) - self.radius),
            "norm_z": abs(float(np.linalg.norm(self.z)) - self.radius),
            "sum": float(np.linalg.norm(self.y + self.z - x)),
        }

    def to_json(self, x) -> dict:
        return {
            "y": [float(t) for t in self.y],
            "z": [float(t) for t in self.z],
            "radius": self.radius,
            "residuals": self.residuals(x),
        }


def orthogonal_unit_vector(x: np.ndarray) -> np.ndarray:
    """Unit ``v`` with ``<v, x> = 0``: the least-aligned basis vector, orthogonalized."""
    n = len(x)
    k = int(np.argmin(np.abs(x)))
    v = np.zeros(n)
    v[k] = 1.0
    xx = float(x @ x)
    if xx == 0.0:
        e1 = np.zeros(n)
        e1[0] = 1.0
        return e1
    for _ in range(2):  # second pass mops up rounding
        v = v - (v @ x) / xx * x
        v = v / np.linalg.norm(v)
    return v


def unit_sum_decompose(x, tol: float = 1e-12) -> SphereSumWitness:
    x = as_vector(x)
    if len(x) < 2:
        raise PreconditionError("need n >= 2 for an orthogonal direction")
    norm = float(np.linalg.norm(x))
    if norm > 2.0 + tol:
        raise PreconditionError(f"|x| = {norm!r} exceeds 2")
    v = orthogonal_unit_vector(x)
    a = math.sqrt(max(0.0, 4.0 - norm * norm))
    y = (x + a * v) / 2.0
    z = (x - a * v) / 2.0
    return SphereSumWitness(y=y, z=z, radius=1.0, v=v, a=a)


def ball_sum_decompose(x, delta: float, tol: float = 1e-12) -> SphereSumWitness:
    """``x = y + z`` with ``|y| = |z| = delta / 2`` for ``|x| <= delta``."""
    x = as_vector(x)
    if not delta > 0:
        raise PreconditionError("delta must be positive")
    norm = float(np.linalg.norm(x))
    if norm > delta + tol:
        raise PreconditionError(f"|x| = {norm!r} exceeds delta = {delta!r}")
    half = delta / 2.0
    w = unit_sum_decompose(x / half, tol / half)
    return SphereSumWitness(y=w.y * half, z=w.z * half, radius=half, v=w.v, a=w.a * half)
