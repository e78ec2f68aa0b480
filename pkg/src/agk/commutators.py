"""Commutator witnesses for SL(n) and for the sign-flip centralizer.

Every SL(n) matrix is a product of transvections, and every transvection is
an explicit commutator, so SL(n) = [GL(n), GL(n)] becomes a concrete list of
pairs.  On the affine side, elements

    ((x, 0, ..., 0), diag(lam, A))

form the centralizer of ``(0, diag(1, -I))``; their commutators have the
closed form implemented by :func:`commutator_in_A`.
"""

from __future__ import annotations

import numpy as np

from agk.centralizers import CentralizerSpec, LemmaId, membership
from agk.core import AffineElement, DetClass, as_matrix, det
from agk.factorization import PreconditionError
from agk.words import CommutatorPair, Transvection


def _check_sl(m: np.ndarray, tol: float) -> None:
    d = det(m)
    if abs(d - 1.0) > tol:
        raise PreconditionError(f"matrix is not in SL(n): det = {d:.12g}")


def transvection_factorize(m, tol: float = 1e-10) -> list[Transvection]:
    """Transvections whose left-to-right product is ``m`` in SL(n).

    Gaussian elimination using row additions only.  Each column's pivot is set
    to 1 by adding a multiple of the largest eligible row below it; a column
    with nothing usable below is repaired by adding the pivot row to the next
    one first.
    """
    m = as_matrix(m)
    n = m.shape[0]
    if n < 2:
        raise PreconditionError("transvection factorization needs n >= 2")
    _check_sl(m, tol)
    work = m.copy()
    scale = float(np.max(np.abs(work)))
    ops: list[Transvection] = []  # applied on the left, in order

    def add_row(dst: int, src: int, lam: float) -> None:
        if lam == 0.0:
            return
        work[dst] += lam * work[src]
        ops.append(Transvection(dst + 1, src + 1, float(lam)))

    for j in range(n - 1):
        if work[j, j] != 1.0:
            below = np.abs(work[j + 1 :, j])
            if below.max() <= 1e-14 * scale:
                add_row(j + 1, j, 1.0)
                below = np.abs(work[j + 1 :, j])
            p = j + 1 + int(np.argmax(below))
            add_row(j, p, (1.0 - work[j, j]) / work[p, j])
            work[j, j] = 1.0
        for k in range(n):
            if k != j:
                add_row(k, j, -work[k, j])
                work[k, j] = 0.0
    # last column: only the entries above the final pivot remain
    for k in range(n - 1):
        add_row(k, n - 1, -work[k, n - 1])
        work[k, n - 1] = 0.0
    # ops_r ... ops_1 m = I  =>  m = ops_1^-1 ... ops_r^-1
    return [t.inverse() for t in ops]


def commutator_witness_transvection(i: int, j: int, lam: float, n: int) -> CommutatorPair:
    """A pair ``(g, h)`` in SL(n) with ``[g, h] = I + lam E_ij``.

    For n >= 3, ``[E_ik(lam), E_kj(1)] = E_ij(lam)`` with ``k`` the smallest
    free index.  For n = 2, conjugation by ``diag(2, 1/2)`` scales ``E_12``
    by 4 (``E_21`` by 1/4, so ``diag(1/2, 2)`` is used there), hence
    ``[D, E(lam/3)] = E(4 lam/3 - lam/3)``.
    """
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"need distinct indices in 1..{n}, got ({i}, {j})")
    if n >= 3:
        k = next(t for t in range(1, n + 1) if t not in (i, j))
        return CommutatorPair(Transvection(i, k, lam).matrix(n), Transvection(k, j, 1.0).matrix(n))
    d = np.diag([2.0, 0.5]) if (i, j) == (1, 2) else np.diag([0.5, 2.0])
    return CommutatorPair(d, Transvection(i, j, lam / 3.0).matrix(2))


def sl_commutator_factorize(m, tol: float = 1e-10) -> list[CommutatorPair]:
    """Commutator pairs whose commutators multiply (left to right) to ``m``."""
    m = as_matrix(m)
    n = m.shape[0]
    return [commutator_witness_transvection(t.i, t.j, t.lam, n) for t in transvection_factorize(m, tol)]


def _a_parts(g: AffineElement) -> tuple[float, float, np.ndarray]:
    return float(g.translation[0]), float(g.linear[0, 0]), g.linear[1:, 1:]


def commutator_in_A(g: AffineElement, h: AffineElement, tol: float = 1e-9,
                    det_class: DetClass = DetClass.GL) -> AffineElement:
    """Closed-form ``[g, h]`` for two sign-flip centralizer elements.

    With ``g = (x' e_1, diag(lam', A'))`` and ``h = (x e_1, diag(lam, A))``
    the commutator is ``(x_1 e_1, diag(1, A' A A'^-1 A^-1))`` where
    ``x_1 = (lam' - 1) x + (1 - lam) x'``.
    """
    spec = CentralizerSpec(LemmaId.SIGN_FLIP, g.n, DetClass.parse(det_class))
    for name, el in (("g", g), ("h", h)):
        if not membership(spec, el, tol):
            raise PreconditionError(f"{name} is not in the sign-flip centralizer")
    xp, lamp, ap = _a_parts(g)
    x, lam, a = _a_parts(h)
    x1 = (lamp - 1.0) * x + (1.0 - lam) * xp
    d = ap @ a @ np.linalg.inv(ap) @ np.linalg.inv(a)
    n = g.n
    translation = np.zeros(n)
    translation[0] = x1
    linear = np.eye(n)
    linear[1:, 1:] = d
    return AffineElement._trusted(translation, linear)


def _a_element(x1: float, lam: float, block: np.ndarray) -> AffineElement:
    n = block.shape[0] + 1
    translation = np.zeros(n)
    translation[0] = x1
    linear = np.zeros((n, n))
    linear[0, 0] = lam
    linear[1:, 1:] = block
    # block is invertible by construction (SL factor or a fixed diagonal)
    return AffineElement._trusted(translation, linear)


def express_D_element(x1: float, d, tol: float = 1e-10) -> list[CommutatorPair]:
    """Commutators of sign-flip centralizer elements multiplying to
    ``((x1, 0, ..., 0), diag(1, d))`` with ``d`` in SL(n-1), n >= 3.

    The translation comes from one pair with ``lam = lam' = 1/2`` and
    ``A = A' = diag(2, 1, ..., 1)``; the linear part from the SL(n-1)
    commutator factorization of ``d`` lifted as ``(0, diag(1, .))``.
    """
    d = as_matrix(d)
    m = d.shape[0]
    if m + 1 < 3:
        raise PreconditionError("need n >= 3, i.e. d at least 2x2")
    _check_sl(d, tol)
    pairs: list[CommutatorPair] = []
    if x1 != 0.0:
        diag = np.eye(m)
        diag[0, 0] = 2.0
        pairs.append(CommutatorPair(_a_element(x1, 0.5, diag), _a_element(-x1, 0.5, diag)))
    for p in sl_commutator_factorize(d, tol):
        pairs.append(CommutatorPair(_a_element(0.0, 1.0, p.g), _a_element(0.0, 1.0, p.h)))
    return pairs
