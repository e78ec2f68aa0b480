"""Closed-form centralizers in R^n x| G(n) and a linear commutant oracle.

Five characterized cases:

NEG_IDENTITY
    centralizer of ``(0, -I)``: the pure linear elements ``(0, A)``.
SIGN_FLIP
    centralizer of ``(0, diag(1, -I_{n-1}))``, n odd >= 3:
    ``((x_1, 0, ..., 0), diag(lam, A))``.
SCALAR
    centralizer of SL(n): ``(0, lam I)``.
J_SL2
    centralizer of ``(0, J)`` with ``J = [[0, -1], [1, 0]]``:
    ``(0, [[a, -c], [c, a]])``, i.e. SO(2) inside SL(2).
BLOCK_M
    centralizer of ``{diag(I_2, S) : S in SL(n-2)}``, n >= 4:
    ``((x_1, x_2, 0, ...), diag(A, lam I_{n-2}))``.

In every case the linear part must also satisfy the determinant condition of
the ambient class.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from agk.core import AffineElement, DetClass, as_matrix, classify, det
from agk.sampling import as_rng, random_conditioned, random_element


class LemmaId(enum.Enum):
    NEG_IDENTITY = "NEG_IDENTITY"
    SIGN_FLIP = "SIGN_FLIP"
    SCALAR = "SCALAR"
    J_SL2 = "J_SL2"
    BLOCK_M = "BLOCK_M"

    @classmethod
    def parse(cls, value: "LemmaId | str") -> "LemmaId":
        if isinstance(value, cls):
            return value
        try:
            return cls[str(value).strip().upper().replace("-", "_")]
        except KeyError:
            raise ValueError(f"unknown centralizer case {value!r}") from None


J = np.array([[0.0, -1.0], [1.0, 0.0]])


@dataclass(frozen=True)
class CentralizerSpec:
    lemma_id: LemmaId
    n: int
    det_class: DetClass = DetClass.SL

    def __post_init__(self):
        object.__setattr__(self, "lemma_id", LemmaId.parse(self.lemma_id))
        object.__setattr__(self, "det_class", DetClass.parse(self.det_class))
        n, lemma = self.n, self.lemma_id
        if lemma is LemmaId.NEG_IDENTITY:
            if n < 1 or not (n % 2 == 0 or self.det_class in (DetClass.GL, DetClass.ABS_SL)):
                raise ValueError(f"-I is not in {self.det_class.value}({n})")
        elif lemma is LemmaId.SIGN_FLIP:
            if n < 3 or n % 2 == 0:
                raise ValueError("SIGN_FLIP needs odd n >= 3")
        elif lemma is LemmaId.SCALAR:
            if n < 2:
                raise ValueError("SCALAR needs n >= 2")
        elif lemma is LemmaId.J_SL2:
            if n != 2:
                raise ValueError("J_SL2 needs n = 2")
        elif lemma is LemmaId.BLOCK_M:
            if n < 4:
                raise ValueError("BLOCK_M needs n >= 4")


@dataclass
class CommutantBasis:
    dim: int
    basis: list


def transvection_set(n: int) -> list[np.ndarray]:
    """``{I + E_ij : i != j}``, a finite generating set of SL(n)."""
    out = []
    for i, j in permutations(range(n), 2):
        m = np.eye(n)
        m[i, j] = 1.0
        out.append(m)
    return out


def defining_elements(spec: CentralizerSpec) -> list[AffineElement]:
    """The elements whose common centralizer ``spec`` characterizes."""
    n = spec.n
    lemma = spec.lemma_id
    if lemma is LemmaId.NEG_IDENTITY:
        return [AffineElement.pure_linear(-np.eye(n))]
    if lemma is LemmaId.SIGN_FLIP:
        return [AffineElement.pure_linear(np.diag([1.0] + [-1.0] * (n - 1)))]
    if lemma is LemmaId.SCALAR:
        return [AffineElement.pure_linear(t) for t in transvection_set(n)]
    if lemma is LemmaId.J_SL2:
        return [AffineElement.pure_linear(J)]
    out = []
    for s in transvection_set(n - 2):
        m = np.eye(n)
        m[2:, 2:] = s
        out.append(AffineElement.pure_linear(m))
    return out


def residuals(spec: CentralizerSpec, g: AffineElement) -> dict[str, float]:
    """Structural deviations of ``g`` from the closed form (all zero for members)."""
    if g.n != spec.n:
        raise ValueError(f"element has dimension {g.n}, spec expects {spec.n}")
    x, a = g.translation, g.linear
    norm = np.linalg.norm
    lemma = spec.lemma_id
    if lemma is LemmaId.NEG_IDENTITY:
        return {"translation": float(norm(x))}
    if lemma is LemmaId.SIGN_FLIP:
        return {
            "translation_tail": float(norm(x[1:])),
            "beta": float(norm(a[1:, 0])),
            "gamma": float(norm(a[0, 1:])),
        }
    if lemma is LemmaId.SCALAR:
        lam = np.trace(a) / spec.n
        return {"translation": float(norm(x)), "non_scalar": float(norm(a - lam * np.eye(spec.n)))}
    if lemma is LemmaId.J_SL2:
        return {
            "translation": float(norm(x)),
            "diagonal_gap": float(abs(a[0, 0] - a[1, 1])),
            "antisymmetry_gap": float(abs(a[0, 1] + a[1, 0])),
        }
    lam = np.trace(a[2:, 2:]) / (spec.n - 2)
    return {
        "translation_tail": float(norm(x[2:])),
        "upper_right": float(norm(a[:2, 2:])),
        "lower_left": float(norm(a[2:, :2])),
        "non_scalar_block": float(norm(a[2:, 2:] - lam * np.eye(spec.n - 2))),
    }


def membership(spec: CentralizerSpec, g: AffineElement, tol: float = 1e-9) -> bool:
    """True iff ``g`` has the closed form of ``spec`` and its class condition."""
    res = residuals(spec, g)
    if any(v > tol for v in res.values()):
        return False
    return spec.det_class in classify(g.linear, tol)


def _positive(rng: np.random.Generator) -> float:
    return float(rng.uniform(0.5, 2.0))


def _signed(rng: np.random.Generator) -> float:
    return _positive(rng) * (1.0 if rng.random() < 0.5 else -1.0)


def _lam_for_block(d: float, cls: DetClass, rng) -> float:
    """A scalar ``lam`` such that ``lam * d`` meets ``cls``."""
    if cls is DetClass.SL:
        return 1.0 / d
    if cls is DetClass.ABS_SL:
        return math.copysign(1.0 / abs(d), _signed(rng))
    if cls is DetClass.GL_PLUS:
        return math.copysign(_positive(rng), d)
    return _signed(rng)


def _block_for_rest(size: int, rest: float, cls: DetClass, rng) -> np.ndarray:
    """A well-conditioned block ``B`` such that ``det(B) * rest`` meets ``cls``."""
    block = random_conditioned(DetClass.SL, size, rng)
    if cls in (DetClass.SL, DetClass.ABS_SL):
        block = block * abs(1.0 / rest) ** (1.0 / size)
    else:
        block = block * _positive(rng)
    if cls in (DetClass.SL, DetClass.GL_PLUS):
        flip = rest * det(block) < 0
    else:
        flip = rng.random() < 0.5
    if flip:
        block[0] = -block[0]
    return block


def sample(spec: CentralizerSpec, params: dict | None = None, seed=None) -> AffineElement:
    """A member of the characterized centralizer.

    ``params`` fixes any of the free parameters; missing ones are drawn from
    ``seed``.  Parameters by case:

    * NEG_IDENTITY: ``A``
    * SIGN_FLIP: ``x1``, ``lam``, ``A`` (``(n-1) x (n-1)``)
    * SCALAR: ``lam``
    * J_SL2: ``theta``, ``scale`` (the element is ``scale * R(theta)``)
    * BLOCK_M: ``x1``, ``x2``, ``A`` (2 x 2), ``lam``

    Raises ``ValueError`` if the given parameters violate the class condition.
    """
    params = dict(params or {})
    rng = as_rng(seed)
    n, cls = spec.n, spec.det_class
    lemma = spec.lemma_id
    x = np.zeros(n)

    if lemma is LemmaId.NEG_IDENTITY:
        a = as_matrix(params["A"], n) if "A" in params else random_element(cls, n, rng)

    elif lemma is LemmaId.SIGN_FLIP:
        x[0] = float(params.get("x1", rng.uniform(-1.0, 1.0)))
        if "A" in params:
            block = as_matrix(params["A"], n - 1)
            lam = float(params["lam"]) if "lam" in params else _lam_for_block(det(block), cls, rng)
        else:
            lam = float(params["lam"]) if "lam" in params else _signed(rng)
            block = _block_for_rest(n - 1, lam, cls, rng)
        a = np.zeros((n, n))
        a[0, 0] = lam
        a[1:, 1:] = block

    elif lemma is LemmaId.SCALAR:
        if "lam" in params:
            lam = float(params["lam"])
        elif cls in (DetClass.SL, DetClass.ABS_SL):
            even = n % 2 == 0
            lam = -1.0 if (rng.random() < 0.5 and (even or cls is DetClass.ABS_SL)) else 1.0
        elif cls is DetClass.GL_PLUS and n % 2 == 1:
            lam = _positive(rng)
        else:
            lam = _signed(rng)
        a = lam * np.eye(n)

    elif lemma is LemmaId.J_SL2:
        theta = float(params.get("theta", rng.uniform(-math.pi, math.pi)))
        default_scale = 1.0 if cls in (DetClass.SL, DetClass.ABS_SL) else _positive(rng)
        scale = float(params.get("scale", default_scale))
        c, s = math.cos(theta), math.sin(theta)
        a = scale * np.array([[c, -s], [s, c]])

    else:
        x[0] = float(params.get("x1", rng.uniform(-1.0, 1.0)))
        x[1] = float(params.get("x2", rng.uniform(-1.0, 1.0)))
        lam = float(params["lam"]) if "lam" in params else _signed(rng)
        if "A" in params:
            block = as_matrix(params["A"], 2)
        else:
            block = _block_for_rest(2, lam ** (n - 2), cls, rng)
        a = np.zeros((n, n))
        a[:2, :2] = block
        a[2:, 2:] = lam * np.eye(n - 2)

    g = AffineElement(x, a)
    if cls not in classify(a):
        raise ValueError(
            f"parameters give det = {det(a):.6g}, violating the {cls.value} condition"
        )
    return g


def commutant_basis(generators, tol: float = 1e-10) -> CommutantBasis:
    """Basis of ``{X : X S = S X for every S in generators}``.

    Solves the stacked homogeneous system ``(I kron S^T - S kron I) vec(X) = 0``
    (row-major ``vec``); singular values at most ``tol * sigma_max`` count as
    zero.
    """
    mats = [as_matrix(s) for s in generators]
    if not mats:
        raise ValueError("need at least one generator")
    n = mats[0].shape[0]
    if any(m.shape[0] != n for m in mats):
        raise ValueError("generators differ in dimension")
    eye = np.eye(n)
    system = np.vstack([np.kron(eye, s.T) - np.kron(s, eye) for s in mats])
    _, sv, vt = np.linalg.svd(system)
    sigma_max = sv[0] if sv.size else 0.0
    if sigma_max == 0.0:
        rank = 0
    else:
        rank = int(np.sum(sv > tol * sigma_max))
    basis = [vt[k].reshape(n, n) for k in range(rank, n * n)]
    return CommutantBasis(dim=len(basis), basis=basis)


def noncommuting_translation_witness(a, tol: float = 1e-10) -> np.ndarray:
    """A direction ``y`` with ``A y != y``, so ``(y, I)`` fails to commute with ``(x, A)``.

    Picks the standard basis vector for the column of ``A - I`` of largest norm.
    """
    a = as_matrix(a)
    gap = a - np.eye(a.shape[0])
    if np.linalg.norm(gap) <= tol:
        raise ValueError("A is the identity within tol; pure translations commute with (x, A)")
    j = int(np.argmax(np.linalg.norm(gap, axis=0)))
    y = np.zeros(a.shape[0])
    y[j] = 1.0
    return y
