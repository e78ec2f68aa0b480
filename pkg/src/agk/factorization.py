"""Generator factorizations.

* SO(n) as a product of planar (Givens) rotations.
* SL(n) as a product of embedded blocks ``diag(B, 1)`` and ``diag(1, B)``
  with ``B`` in SL(n-1).
* GL+(n) as a positive scalar times an SL(n) matrix.

Reconstruction words evaluate left to right (``GeneratorWord.matrix``).
Reduction words (``givens_reduce``, ``sphere_transitivity_witness``) list
letters in application order; their map is ``GeneratorWord.reducer``.
"""

from __future__ import annotations

import math

import numpy as np

from agk.core import as_matrix, as_vector, det
from agk.words import (
    BlockGenerator,
    BlockPosition,
    GeneratorWord,
    PlanarRotation,
    normalize_angle,
)


class PreconditionError(ValueError):
    """Input is outside the group or set the operation is defined on."""


def _reduction_rotations(v: np.ndarray, tol: float, offset: int = 0) -> tuple[list[PlanarRotation], np.ndarray]:
    """Rotations zeroing ``v[-1], v[-2], ..., v[1]`` in turn.

    Plane indices are shifted by ``offset``.  Returns the letters in
    application order and the reduced vector.
    """
    v = np.array(v, dtype=float)
    letters = []
    for k in range(len(v) - 1, 0, -1):
        a, b = v[k - 1], v[k]
        r = math.hypot(a, b)
        if r <= tol or (a > 0 and abs(b) <= tol):
            continue
        theta = normalize_angle(-math.atan2(b, a))
        letters.append(PlanarRotation(offset + k, offset + k + 1, theta))
        v[k - 1], v[k] = r, 0.0
    return letters, v


def _rotate_rows(m: np.ndarray, rot: PlanarRotation) -> None:
    p, q = rot.i - 1, rot.j - 1
    c, s = math.cos(rot.theta), math.sin(rot.theta)
    rp, rq = m[p].copy(), m[q].copy()
    m[p] = c * rp - s * rq
    m[q] = s * rp + c * rq


def givens_reduce(x, tol: float = 1e-12) -> GeneratorWord:
    """Planar rotations carrying the unit vector ``x`` to ``e_1``.

    The first letter acts in the plane ``(n-1, n)``, the next in
    ``(n-2, n-1)``, and so on down to ``(1, 2)``.  ``word.apply(x)`` (or
    ``word.reducer() @ x``) is ``e_1``.
    """
    x = as_vector(x)
    norm = float(np.linalg.norm(x))
    if norm == 0.0:
        raise PreconditionError("cannot reduce the zero vector")
    if abs(norm - 1.0) > tol:
        raise PreconditionError(f"expected a unit vector, got norm {norm!r}")
    letters, _ = _reduction_rotations(x, tol)
    return GeneratorWord(len(x), letters)


def _check_special_orthogonal(r: np.ndarray, tol: float) -> None:
    n = r.shape[0]
    ortho = float(np.max(np.abs(r.T @ r - np.eye(n))))
    if ortho > tol:
        raise PreconditionError(f"matrix is not orthogonal (max |R^T R - I| = {ortho:.3e})")
    d = det(r)
    if abs(d - 1.0) > tol:
        raise PreconditionError(f"orthogonal matrix has determinant {d:.6g}, not 1")


def so_factorize(r, tol: float = 1e-10) -> GeneratorWord:
    """Write a special orthogonal matrix as a product of planar rotations.

    Column by column, the current first column is rotated to ``e_1``; what
    remains fixes ``e_1`` and is handled on the trailing block.  The word has
    at most ``n(n-1)/2`` letters and ``word.matrix()`` reproduces ``r``.
    """
    r = as_matrix(r)
    _check_special_orthogonal(r, tol)
    n = r.shape[0]
    work = r.copy()
    letters: list[PlanarRotation] = []
    for c in range(n - 1):
        rots, _ = _reduction_rotations(work[c:, c], tol, offset=c)
        for rot in rots:
            _rotate_rows(work, rot)
        letters.extend(rot.inverse() for rot in rots)
    return GeneratorWord(n, letters)


def sphere_orbit_witness(x0, x1, tol: float = 1e-12) -> np.ndarray:
    """A rotation ``R`` in SO(n) with ``R @ x0 == x1``."""
    x0, x1 = as_vector(x0), as_vector(x1)
    if x0.shape != x1.shape:
        raise PreconditionError("vectors differ in length")
    if len(x0) < 2:
        raise PreconditionError("need n >= 2")
    r0, r1 = float(np.linalg.norm(x0)), float(np.linalg.norm(x1))
    if r0 <= tol or r1 <= tol:
        raise PreconditionError("vectors must be nonzero")
    if abs(r0 - r1) > tol:
        raise PreconditionError(f"norms differ: {r0!r} vs {r1!r}")
    q0 = givens_reduce(x0 / r0, tol).reducer()
    q1 = givens_reduce(x1 / r1, tol).reducer()
    return q1.T @ q0


def _shear_block(size: int, row: int, col: int, value: float) -> np.ndarray:
    b = np.eye(size)
    b[row, col] = value
    return b


def _stabilizer_letters(a: np.ndarray, tol: float) -> list[BlockGenerator]:
    # a = diag(1, A) . [[1, r, 0], [0, I]] . E_1n(c), first column taken as e_1
    n = a.shape[0]
    letters: list[BlockGenerator] = []
    lower = a[1:, 1:]
    if np.max(np.abs(lower - np.eye(n - 1))) > tol:
        letters.append(BlockGenerator(BlockPosition.LOWER, lower))
    row = a[0, 1 : n - 1]
    if np.max(np.abs(row), initial=0.0) > tol:
        upper = np.eye(n - 1)
        upper[0, 1:] = row
        letters.append(BlockGenerator(BlockPosition.UPPER, upper))
    c = float(a[0, n - 1])
    if abs(c) > tol:
        lam2 = math.sqrt(abs(c))
        lam1 = math.copysign(lam2, c)
        # [E_{1,n-1}(lam1), E_{n-1,n}(lam2)] = E_{1n}(lam1 lam2)
        letters += [
            BlockGenerator(BlockPosition.UPPER, _shear_block(n - 1, 0, n - 2, lam1)),
            BlockGenerator(BlockPosition.LOWER, _shear_block(n - 1, n - 3, n - 2, lam2)),
            BlockGenerator(BlockPosition.UPPER, _shear_block(n - 1, 0, n - 2, -lam1)),
            BlockGenerator(BlockPosition.LOWER, _shear_block(n - 1, n - 3, n - 2, -lam2)),
        ]
    return letters


def _check_sl(m: np.ndarray, tol: float) -> None:
    d = det(m)
    if abs(d - 1.0) > tol:
        raise PreconditionError(f"matrix is not in SL(n): det = {d:.12g}")


def stabilizer_factorize(a, tol: float = 1e-10) -> GeneratorWord:
    """Block-generator word for an SL(n) matrix fixing ``e_1`` (n >= 3)."""
    a = as_matrix(a)
    n = a.shape[0]
    if n < 3:
        raise PreconditionError("stabilizer factorization needs n >= 3")
    _check_sl(a, tol)
    e1 = np.zeros(n)
    e1[0] = 1.0
    if np.linalg.norm(a[:, 0] - e1) > tol:
        raise PreconditionError("matrix does not fix e_1")
    return GeneratorWord(n, _stabilizer_letters(a, tol))


def sphere_transitivity_witness(x, tol: float = 1e-12) -> GeneratorWord:
    """At most two block letters carrying ``x != 0`` to ``e_1``.

    First a LOWER letter ``diag(1, B)`` folds ``(x_2, ..., x_n)`` onto the
    second axis, then an UPPER letter ``diag(B', 1)`` sends
    ``(x_1, x_2', 0, ...)`` to ``e_1``.  Letters are in application order.
    """
    x = as_vector(x)
    n = len(x)
    if n < 3:
        raise PreconditionError("transitivity witness needs n >= 3")
    if np.linalg.norm(x) <= tol:
        raise PreconditionError("cannot move the zero vector")
    letters: list[BlockGenerator] = []

    rots, tail = _reduction_rotations(x[1:], tol)
    if rots:
        b = GeneratorWord(n - 1, rots).reducer()
        letters.append(BlockGenerator(BlockPosition.LOWER, b))
    x1, x2 = float(x[0]), float(tail[0])

    rots, head = _reduction_rotations(np.array([x1, x2]), tol)
    rho = float(head[0])
    b = np.eye(n - 1)
    if rots:
        b[:2, :2] = GeneratorWord(2, rots).reducer()
    if rots or abs(rho - 1.0) > tol:
        # determinant-preserving rescale of the plane
        b[0, :] /= rho
        b[1, :] *= rho
        letters.append(BlockGenerator(BlockPosition.UPPER, b))
    return GeneratorWord(n, letters)


def sl_block_factorize(m, tol: float = 1e-10) -> GeneratorWord:
    """Write ``m`` in SL(n), n >= 3, as a product of embedded SL(n-1) blocks."""
    m = as_matrix(m)
    n = m.shape[0]
    if n < 3:
        raise PreconditionError("block factorization needs n >= 3")
    _check_sl(m, tol)
    witness = sphere_transitivity_witness(m[:, 0], tol=min(tol, 1e-12))
    s = witness.reducer() @ m
    letters = [letter.inverse() for letter in witness.letters]
    letters += _stabilizer_letters(s, min(tol, 1e-12))
    return GeneratorWord(n, letters)


def glplus_split(t, tol: float = 1e-10) -> tuple[float, np.ndarray]:
    """``t = (lam I) @ s`` with ``lam = det(t)**(1/n) > 0`` and ``det(s) = 1``."""
    t = as_matrix(t)
    d = det(t)
    if d <= tol:
        raise PreconditionError(f"matrix is not in GL+(n): det = {d:.6g}")
    lam = d ** (1.0 / t.shape[0])
    return lam, t / lam
