"""Random matrices and affine elements in a requested class."""

from __future__ import annotations

import numpy as np

from agk.core import AffineElement, DetClass

ORTHOGONAL = "ORTHOGONAL"
SPECIAL_ORTHOGONAL = "SPECIAL_ORTHOGONAL"

# resample when the inverse has an entry larger than this
INVERSE_GUARD = 1e6


def as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def parse_kind(kind):
    if isinstance(kind, DetClass):
        return kind
    key = str(kind).strip().upper().replace("-", "_")
    if key in (ORTHOGONAL, "O"):
        return ORTHOGONAL
    if key in (SPECIAL_ORTHOGONAL, "SO"):
        return SPECIAL_ORTHOGONAL
    return DetClass.parse(key)


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed O(n) via QR with the diagonal of R made positive."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def _guarded_gaussian(n: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        g = rng.standard_normal((n, n))
        if abs(np.linalg.det(g)) > 1e-8 and np.max(np.abs(np.linalg.inv(g))) <= INVERSE_GUARD:
            return g


def random_element(kind, n: int, seed=None) -> np.ndarray:
    """A random ``n x n`` matrix in the given class.

    ``kind`` is a :class:`DetClass` or one of ``ORTHOGONAL`` and
    ``SPECIAL_ORTHOGONAL``.  ``seed`` may be an int, ``None`` or a
    ``numpy.random.Generator``.
    """
    kind = parse_kind(kind)
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = as_rng(seed)
    if kind == ORTHOGONAL:
        return random_orthogonal(n, rng)
    if kind == SPECIAL_ORTHOGONAL:
        if n < 2:
            raise ValueError("SPECIAL_ORTHOGONAL sampling needs n >= 2")
        q = random_orthogonal(n, rng)
        if np.linalg.det(q) < 0:
            q[:, 0] = -q[:, 0]
        return q
    if kind is DetClass.SL and n == 1:
        return np.ones((1, 1))

    while True:
        g = _guarded_gaussian(n, rng)
        if kind is DetClass.GL:
            return g
        if kind is DetClass.GL_PLUS:
            if np.linalg.det(g) < 0:
                g[0] = -g[0]
            return g
        g = g / abs(np.linalg.det(g)) ** (1.0 / n)
        g[0] = g[0] / np.linalg.det(g)
        if kind is DetClass.ABS_SL and rng.random() < 0.5:
            g[0] = -g[0]
        if np.max(np.abs(np.linalg.inv(g))) <= INVERSE_GUARD:
            return g


def random_affine(kind, n: int, seed=None, translation_scale: float = 1.0) -> AffineElement:
    if translation_scale < 0:
        raise ValueError("translation_scale must be non-negative")
    rng = as_rng(seed)
    linear = random_element(kind, n, rng)
    translation = rng.uniform(-translation_scale, translation_scale, size=n)
    return AffineElement(translation, linear)


def random_conditioned(kind, n: int, seed=None, spread: float = 2.0) -> np.ndarray:
    """A random matrix in ``kind`` with singular values in ``[1/spread, spread]``.

    Built as ``U diag(s) V`` with Haar ``U, V``; the condition number is at
    most ``spread**2``.  Determinant classes are met exactly up to rounding.
    """
    kind = parse_kind(kind)
    if not isinstance(kind, DetClass):
        return random_element(kind, n, seed)
    if spread < 1.0:
        raise ValueError("spread must be at least 1")
    rng = as_rng(seed)
    u = random_orthogonal(n, rng)
    v = random_orthogonal(n, rng)
    s = np.exp(rng.uniform(-np.log(spread), np.log(spread), size=n))
    if kind in (DetClass.SL, DetClass.ABS_SL):
        s = s / np.exp(np.mean(np.log(s)))
    m = (u * s) @ v
    d = np.linalg.det(m)
    if kind is DetClass.SL or kind is DetClass.GL_PLUS:
        flip = d < 0
    else:
        flip = rng.random() < 0.5
    if flip:
        m[0] = -m[0]
    return m
