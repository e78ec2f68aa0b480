"""Randomized property checks for every construction in the package.

Each :class:`PropertyId` names one registered check.  A check receives the
dimension, a per-trial random generator and the tolerance, and returns a
:class:`TrialResult`.  :func:`verify` runs one property for many trials;
:func:`run_all` sweeps every applicable (property, n) pair.

Per-trial generators are seeded from ``(seed, property, n, trial)`` through
``numpy.random.SeedSequence``, so results do not depend on execution order.
"""

from __future__ import annotations

import enum
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from agk.centralizers import (
    J,
    CentralizerSpec,
    LemmaId,
    commutant_basis,
    defining_elements,
    membership,
    noncommuting_translation_witness,
    sample,
    transvection_set,
)
from agk.commutators import (
    commutator_in_A,
    express_D_element,
    sl_commutator_factorize,
    transvection_factorize,
)
from agk.core import (
    AffineElement,
    DetClass,
    act,
    commutator,
    commutes,
    det,
    inv,
    matrix_to_json,
    mul,
    vector_to_json,
)
from agk.factorization import (
    givens_reduce,
    glplus_split,
    sl_block_factorize,
    so_factorize,
    sphere_orbit_witness,
    sphere_transitivity_witness,
    stabilizer_factorize,
)
from agk.sampling import (
    SPECIAL_ORTHOGONAL,
    random_affine,
    random_conditioned,
    random_element,
)
from agk.vectordecomp import ball_sum_decompose, unit_sum_decompose
from agk.words import PlanarRotation, product_of_commutators, rotation_2x2

MAX_WITNESSES = 5


class PropertyId(enum.Enum):
    GROUP_AXIOMS = "GROUP_AXIOMS"
    BAG_MAXIMAL_ABELIAN = "BAG_MAXIMAL_ABELIAN"
    COW_CENTRALIZER = "COW_CENTRALIZER"
    XON_CENTRALIZER = "XON_CENTRALIZER"
    ZON_FORMULA = "ZON_FORMULA"
    ZON_D_WITNESS = "ZON_D_WITNESS"
    NUR_B_FORMULA = "NUR_B_FORMULA"
    HEY_STABILIZER = "HEY_STABILIZER"
    WHO_TRANSITIVITY = "WHO_TRANSITIVITY"
    DAR_BLOCKS = "DAR_BLOCKS"
    SWING_SCALAR = "SWING_SCALAR"
    TDR_SO2 = "TDR_SO2"
    WOLF_BLOCK = "WOLF_BLOCK"
    TON_REDUCTION = "TON_REDUCTION"
    CAR_SO_FACTOR = "CAR_SO_FACTOR"
    FOX_STABILIZER = "FOX_STABILIZER"
    LAR_CONJUGATES = "LAR_CONJUGATES"
    KEY_DECOMPOSE = "KEY_DECOMPOSE"
    FAT_BALL = "FAT_BALL"
    GLPLUS_SPLIT = "GLPLUS_SPLIT"
    SL_COMMUTATORS = "SL_COMMUTATORS"

    @classmethod
    def parse(cls, value: "PropertyId | str") -> "PropertyId":
        if isinstance(value, cls):
            return value
        try:
            return cls[str(value).strip().upper().replace("-", "_")]
        except KeyError:
            raise ValueError(f"unknown property {value!r}") from None


@dataclass
class TrialResult:
    error: float
    ok: bool = True
    inputs: dict = field(default_factory=dict)


def _finite_or_none(x: float):
    return x if math.isfinite(x) else None


@dataclass
class VerificationReport:
    property: PropertyId
    n: int
    trials: int
    failures: int
    max_error: float
    witnesses: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {
            "property": self.property.value,
            "n": self.n,
            "trials": self.trials,
            "failures": self.failures,
            "max_error": _finite_or_none(self.max_error),
            "witnesses": self.witnesses,
        }


@dataclass(frozen=True)
class Check:
    fn: Callable[[int, np.random.Generator, float], TrialResult]
    applies: Callable[[int], bool]
    requirement: str


REGISTRY: dict[PropertyId, Check] = {}


def register(prop: PropertyId, applies: Callable[[int], bool], requirement: str):
    def deco(fn):
        REGISTRY[prop] = Check(fn, applies, requirement)
        return fn

    return deco


def _jsonable(value):
    if isinstance(value, AffineElement):
        return value.to_json()
    if isinstance(value, np.ndarray):
        return matrix_to_json(value) if value.ndim == 2 else vector_to_json(value)
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _rel(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a - b) / max(1.0, np.linalg.norm(b)))


def _classes_with_neg_identity(n: int) -> list[DetClass]:
    if n % 2 == 0:
        return list(DetClass)
    return [DetClass.GL, DetClass.ABS_SL]


def _pick(rng: np.random.Generator, options):
    return options[int(rng.integers(len(options)))]


def _random_unit(n: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(n)
    return v / np.linalg.norm(v)


# ---------------------------------------------------------------- core group


@register(PropertyId.GROUP_AXIOMS, lambda n: n >= 1, "n >= 1")
def _check_group_axioms(n, rng, tol):
    g, h, k = (random_affine(DetClass.GL, n, rng) for _ in range(3))
    e = AffineElement.identity(n)
    p = rng.standard_normal(n)
    errors = [
        mul(mul(g, h), k).distance(mul(g, mul(h, k))),
        mul(e, g).distance(g),
        mul(g, e).distance(g),
        mul(g, inv(g)).distance(e),
        mul(inv(g), g).distance(e),
        float(np.linalg.norm(act(mul(g, h), p) - act(g, act(h, p)))),
    ]
    return TrialResult(max(errors), inputs={"g": g, "h": h, "k": k, "p": p})


@register(PropertyId.BAG_MAXIMAL_ABELIAN, lambda n: n >= 1, "n >= 1")
def _check_bag(n, rng, tol):
    cls = _pick(rng, [DetClass.GL, DetClass.SL, DetClass.GL_PLUS, SPECIAL_ORTHOGONAL] if n >= 2
                else [DetClass.GL, DetClass.GL_PLUS])
    a = random_element(cls, n, rng)
    if np.linalg.norm(a - np.eye(n)) <= 1e-8:
        a = 2.0 * a
    g = AffineElement(rng.uniform(-1, 1, n), a)
    s = AffineElement.pure_translation(rng.uniform(-1, 1, n))
    t = AffineElement.pure_translation(rng.uniform(-1, 1, n))
    abelian_gap = mul(s, t).distance(mul(t, s))
    y = noncommuting_translation_witness(a, tol)
    w = AffineElement.pure_translation(y)
    deviation = mul(w, g).distance(mul(g, w))
    return TrialResult(abelian_gap, ok=deviation > tol, inputs={"g": g, "s": s, "t": t, "witness": y})


# ---------------------------------------------------- centralizer agreement


def _perturb_forbidden(spec: CentralizerSpec, g: AffineElement, rng, eps=1e-3) -> AffineElement:
    """Nudge one coordinate that the closed form pins down."""
    n = spec.n
    x, a = g.translation.copy(), g.linear.copy()
    lemma = spec.lemma_id
    if lemma is LemmaId.NEG_IDENTITY:
        x[int(rng.integers(n))] += eps
    elif lemma is LemmaId.SIGN_FLIP:
        choice = int(rng.integers(3))
        k = 1 + int(rng.integers(n - 1))
        if choice == 0:
            x[k] += eps
        elif choice == 1:
            a[k, 0] += eps
        else:
            a[0, k] += eps
    elif lemma is LemmaId.SCALAR:
        if rng.random() < 0.5:
            x[int(rng.integers(n))] += eps
        else:
            i, j = rng.choice(n, size=2, replace=False)
            a[i, j] += eps
    elif lemma is LemmaId.J_SL2:
        if rng.random() < 0.5:
            x[int(rng.integers(2))] += eps
        else:
            a[0, 0] += eps
    else:
        choice = int(rng.integers(4))
        k = 2 + int(rng.integers(n - 2))
        if choice == 0:
            x[k] += eps
        elif choice == 1:
            a[int(rng.integers(2)), k] += eps
        elif choice == 2:
            a[k, int(rng.integers(2))] += eps
        else:
            a[2, 2] += eps
    return AffineElement(x, a)


def _agreement_trial(spec: CentralizerSpec, rng, tol) -> TrialResult:
    kind = int(rng.integers(3))
    if kind == 0:
        g = sample(spec, seed=rng)
    elif kind == 1:
        g = _perturb_forbidden(spec, sample(spec, seed=rng), rng)
    else:
        g = random_affine(spec.det_class, spec.n, rng)
    member = membership(spec, g, tol)
    commuting = all(commutes(g, d, tol) for d in defining_elements(spec))
    expected_member = kind == 0
    ok = member == commuting and (kind == 2 or member == expected_member)
    return TrialResult(
        0.0 if ok else 1.0,
        inputs={"spec": [spec.lemma_id, spec.n, spec.det_class], "g": g,
                "member": member, "commutes": commuting},
    )


@register(PropertyId.COW_CENTRALIZER, lambda n: n >= 2, "n >= 2")
def _check_cow(n, rng, tol):
    spec = CentralizerSpec(LemmaId.NEG_IDENTITY, n, _pick(rng, _classes_with_neg_identity(n)))
    return _agreement_trial(spec, rng, tol)


@register(PropertyId.XON_CENTRALIZER, lambda n: n >= 3 and n % 2 == 1, "odd n >= 3")
def _check_xon(n, rng, tol):
    spec = CentralizerSpec(LemmaId.SIGN_FLIP, n, _pick(rng, list(DetClass)))
    return _agreement_trial(spec, rng, tol)


def _commutant_gap(generators, expected_dim: int, tol: float) -> float:
    basis = commutant_basis(generators, tol=1e-10)
    if basis.dim != expected_dim:
        return 1.0
    return max(
        float(np.linalg.norm(x @ s - s @ x)) for x in basis.basis for s in generators
    )


@register(PropertyId.SWING_SCALAR, lambda n: n >= 2, "n >= 2")
def _check_swing(n, rng, tol):
    spec = CentralizerSpec(LemmaId.SCALAR, n, _pick(rng, list(DetClass)))
    res = _agreement_trial(spec, rng, tol)
    res.error = max(res.error, _commutant_gap(transvection_set(n), 1, tol))
    return res


@register(PropertyId.TDR_SO2, lambda n: n == 2, "n = 2")
def _check_tdr(n, rng, tol):
    spec = CentralizerSpec(LemmaId.J_SL2, 2, DetClass.SL)
    res = _agreement_trial(spec, rng, tol)
    theta = float(rng.uniform(-math.pi, math.pi))
    rot = sample(spec, {"theta": theta}).linear
    res.error = max(
        res.error,
        float(np.linalg.norm(rot - rotation_2x2(theta))),
        _commutant_gap([J], 2, tol),
    )
    return res


@register(PropertyId.WOLF_BLOCK, lambda n: n >= 4, "n >= 4")
def _check_wolf(n, rng, tol):
    spec = CentralizerSpec(LemmaId.BLOCK_M, n, _pick(rng, list(DetClass)))
    res = _agreement_trial(spec, rng, tol)
    gens = [e.linear for e in defining_elements(spec)]
    res.error = max(res.error, _commutant_gap(gens, 5, tol))
    return res


# ----------------------------------------------------- sign-flip commutators


def _random_a_member(n, rng, cls=None):
    spec = CentralizerSpec(LemmaId.SIGN_FLIP, n, cls or _pick(rng, list(DetClass)))
    return sample(spec, seed=rng), spec.det_class


@register(PropertyId.ZON_FORMULA, lambda n: n >= 3 and n % 2 == 1, "odd n >= 3")
def _check_zon(n, rng, tol):
    g, cls = _random_a_member(n, rng)
    h, _ = _random_a_member(n, rng, cls)
    closed = commutator_in_A(g, h, det_class=cls)
    direct = commutator(g, h)
    gap = closed.distance(direct)

    # lam = lam' = 1/2 with equal diagonal blocks yields the translation c
    c = float(rng.uniform(-5, 5))
    diag = np.eye(n - 1)
    diag[0, 0] = 2.0
    gp = sample(CentralizerSpec(LemmaId.SIGN_FLIP, n, DetClass.SL), {"x1": c, "lam": 0.5, "A": diag})
    hp = sample(CentralizerSpec(LemmaId.SIGN_FLIP, n, DetClass.SL), {"x1": -c, "lam": 0.5, "A": diag})
    target = AffineElement.pure_translation(np.eye(n)[0] * c)
    gap = max(gap, commutator(gp, hp).distance(target), commutator_in_A(gp, hp).distance(target))
    return TrialResult(gap, inputs={"g": g, "h": h, "c": c})


@register(PropertyId.ZON_D_WITNESS, lambda n: n >= 3 and n % 2 == 1, "odd n >= 3")
def _check_zon_d(n, rng, tol):
    x1 = float(rng.uniform(-2, 2))
    d = random_conditioned(DetClass.SL, n - 1, rng)
    pairs = express_D_element(x1, d)
    target_lin = np.eye(n)
    target_lin[1:, 1:] = d
    target = AffineElement(np.eye(n)[0] * x1, target_lin)
    got = product_of_commutators(pairs, n, affine=True)
    err = got.distance(target) / max(1.0, float(np.linalg.norm(target_lin)))
    spec = CentralizerSpec(LemmaId.SIGN_FLIP, n, DetClass.SL)
    in_a = all(membership(spec, p.g, 1e-10) and membership(spec, p.h, 1e-10) for p in pairs)
    return TrialResult(err, ok=in_a, inputs={"x1": x1, "D": d})


def _d_element(x1: float, d: np.ndarray) -> AffineElement:
    n = d.shape[0] + 1
    lin = np.eye(n)
    lin[1:, 1:] = d
    return AffineElement(np.eye(n)[0] * x1, lin)


@register(PropertyId.NUR_B_FORMULA, lambda n: n >= 3 and n % 2 == 1, "odd n >= 3")
def _check_nur(n, rng, tol):
    d, dp = (random_conditioned(DetClass.SL, n - 1, rng) for _ in range(2))
    g = _d_element(float(rng.uniform(-2, 2)), d)
    h = _d_element(float(rng.uniform(-2, 2)), dp)
    c = commutator(g, h)
    b = d @ dp @ np.linalg.inv(d) @ np.linalg.inv(dp)
    errors = [
        float(np.linalg.norm(c.translation)),
        float(np.linalg.norm(c.linear[0] - np.eye(n)[0])),
        float(np.linalg.norm(c.linear[1:, 0])),
        abs(det(c.linear[1:, 1:]) - 1.0),
        _rel(c.linear[1:, 1:], b),
    ]
    # mirrored family (top-left blocks, translation in the last slot) via index reversal
    p = AffineElement.pure_linear(np.eye(n)[::-1])
    gm, hm = mul(mul(p, g), p), mul(mul(p, h), p)
    cm = commutator(gm, hm)
    errors += [
        float(np.linalg.norm(gm.translation[:-1])),
        float(np.linalg.norm(cm.translation)),
        float(np.linalg.norm(cm.linear[-1] - np.eye(n)[-1])),
        float(np.linalg.norm(cm.linear[:-1, -1])),
        abs(det(cm.linear[:-1, :-1]) - 1.0),
    ]
    return TrialResult(max(errors), inputs={"g": g, "h": h})


# -------------------------------------------------------- SL block generation


def _letter_det_gap(word) -> float:
    return max((abs(det(letter.block) - 1.0) for letter in word), default=0.0)


@register(PropertyId.HEY_STABILIZER, lambda n: n >= 3, "n >= 3")
def _check_hey(n, rng, tol):
    a = np.eye(n)
    a[0, 1:] = rng.uniform(-2, 2, n - 1)
    a[1:, 1:] = random_element(DetClass.SL, n - 1, rng)
    word = stabilizer_factorize(a)
    err = max(_rel(word.matrix(), a), _letter_det_gap(word))
    return TrialResult(err, inputs={"a": a})


@register(PropertyId.WHO_TRANSITIVITY, lambda n: n >= 3, "n >= 3")
def _check_who(n, rng, tol):
    x = rng.standard_normal(n) * float(rng.uniform(0.1, 3))
    if rng.random() < 0.2:
        # sparse vectors exercise skipped letters
        x[rng.random(n) < 0.5] = 0.0
        if not x.any():
            x[-1] = 1.0
    word = sphere_transitivity_witness(x)
    e1 = np.eye(n)[0]
    err = max(float(np.linalg.norm(word.reducer() @ x - e1)), _letter_det_gap(word))
    return TrialResult(err, ok=len(word) <= 2, inputs={"x": x})


@register(PropertyId.DAR_BLOCKS, lambda n: n >= 3, "n >= 3")
def _check_dar(n, rng, tol):
    m = random_element(DetClass.SL, n, rng)
    word = sl_block_factorize(m)
    err = max(_rel(word.matrix(), m), _letter_det_gap(word))
    return TrialResult(err, inputs={"M": m})


# ---------------------------------------------------------- SO generation


def _rotation_letter_gap(word) -> float:
    gaps = [0.0]
    for letter in word:
        r = letter.matrix(word.target_dim)
        gaps.append(float(np.max(np.abs(r.T @ r - np.eye(word.target_dim)))))
        gaps.append(abs(det(r) - 1.0))
    return max(gaps)


@register(PropertyId.TON_REDUCTION, lambda n: n >= 2, "n >= 2")
def _check_ton(n, rng, tol):
    x = _random_unit(n, rng)
    word = givens_reduce(x)
    err = float(np.linalg.norm(word.reducer() @ x - np.eye(n)[0]))
    planes = [(r.i, r.j) for r in word]
    ordered = all(j == i + 1 for i, j in planes) and planes == sorted(planes, reverse=True)
    return TrialResult(max(err, _rotation_letter_gap(word)), ok=len(word) <= n - 1 and ordered,
                       inputs={"x": x})


@register(PropertyId.CAR_SO_FACTOR, lambda n: n >= 2, "n >= 2")
def _check_car(n, rng, tol):
    r = random_element(SPECIAL_ORTHOGONAL, n, rng)
    word = so_factorize(r)
    err = max(float(np.linalg.norm(word.matrix() - r)), _rotation_letter_gap(word))
    return TrialResult(err, ok=len(word) <= n * (n - 1) // 2, inputs={"R": r})


@register(PropertyId.FOX_STABILIZER, lambda n: n >= 2, "n >= 2")
def _check_fox(n, rng, tol):
    r = np.eye(n)
    if n >= 3:
        r[1:, 1:] = random_element(SPECIAL_ORTHOGONAL, n - 1, rng)
    word = so_factorize(r)
    errors = [float(np.linalg.norm(word.matrix() - r))]

    full = random_element(SPECIAL_ORTHOGONAL, n, rng)
    reduced = givens_reduce(full[:, 0]).reducer() @ full
    rest = reduced[1:, 1:]
    errors += [
        abs(reduced[0, 0] - 1.0),
        float(np.linalg.norm(reduced[0, 1:])),
        float(np.linalg.norm(reduced[1:, 0])),
        float(np.max(np.abs(rest.T @ rest - np.eye(n - 1)))),
        abs(det(rest) - 1.0),
    ]
    return TrialResult(max(errors), inputs={"stabilizer": r, "R": full})


def _swap(n: int, i: int, j: int) -> np.ndarray:
    p = np.eye(n)
    p[[i, j]] = p[[j, i]]
    return p


def _planar_gap(c: np.ndarray) -> float:
    """Distance of ``c`` from being a planar rotation."""
    n = c.shape[0]
    moved = [k for k in range(n) if np.linalg.norm(c[k] - np.eye(n)[k]) > 1e-12
             or np.linalg.norm(c[:, k] - np.eye(n)[:, k]) > 1e-12]
    if len(moved) > 2:
        return 1.0
    moved += [k for k in range(n) if k not in moved][: 2 - len(moved)]
    moved.sort()
    block = c[np.ix_(moved, moved)]
    return max(float(np.max(np.abs(block.T @ block - np.eye(2)))), abs(det(block) - 1.0))


@register(PropertyId.LAR_CONJUGATES, lambda n: n >= 2, "n >= 2")
def _check_lar(n, rng, tol):
    theta = float(rng.uniform(-math.pi, math.pi))
    base = PlanarRotation(1, 2, theta).matrix(n)
    swaps = list(itertools.combinations(range(n), 2))
    s1, s2 = _pick(rng, swaps), _pick(rng, swaps)
    p = _swap(n, *s1) @ _swap(n, *s2)
    errors = [_planar_gap(p @ base @ p.T), abs(det(p) - 1.0)]

    # every planar generator is a conjugate of the (1, 2) family by a swap pair
    i, j = sorted(int(t) for t in rng.choice(n, size=2, replace=False))
    target = PlanarRotation(i + 1, j + 1, theta).matrix(n)
    found = False
    for s1, s2 in itertools.product(swaps, repeat=2):
        perm = list(range(n))
        for a, b in (s2, s1):  # apply s2 first, then s1
            perm = [b if t == a else a if t == b else t for t in perm]
        if {perm[0], perm[1]} != {i, j}:
            continue
        q = _swap(n, *s1) @ _swap(n, *s2)
        sign = 1.0 if (perm[0], perm[1]) == (i, j) else -1.0
        conj = q @ PlanarRotation(1, 2, sign * theta).matrix(n) @ q.T
        errors.append(float(np.linalg.norm(conj - target)))
        found = True
        break
    return TrialResult(max(errors), ok=found, inputs={"theta": theta, "swaps": [s1, s2]})


# ---------------------------------------------------- sphere decompositions


def _random_in_ball(n: int, radius: float, rng) -> np.ndarray:
    u = float(rng.random())
    if u < 0.05:
        return np.zeros(n)
    if u < 0.15:
        return _random_unit(n, rng) * radius
    return _random_unit(n, rng) * radius * float(rng.random()) ** (1.0 / n)


@register(PropertyId.KEY_DECOMPOSE, lambda n: n >= 2, "n >= 2")
def _check_key(n, rng, tol):
    x = _random_in_ball(n, 2.0, rng)
    w = unit_sum_decompose(x)
    errors = list(w.residuals(x).values())
    nx = float(np.linalg.norm(x))
    if nx > 0:
        errors.append(abs(float(w.v @ x)) / nx)
    return TrialResult(max(errors), inputs={"x": x})


@register(PropertyId.FAT_BALL, lambda n: n >= 2, "n >= 2")
def _check_fat(n, rng, tol):
    delta = _pick(rng, [0.1, 1.0, 10.0])
    half = delta / 2.0
    x = _random_in_ball(n, delta, rng)
    w = ball_sum_decompose(x, delta)
    errors = [v / half for v in w.residuals(x).values()]
    x0 = np.eye(n)[0] * half
    for target in (w.y, w.z):
        r = sphere_orbit_witness(x0, target, tol=1e-10)
        errors += [
            float(np.linalg.norm(r @ x0 - target)),
            float(np.max(np.abs(r.T @ r - np.eye(n)))),
            abs(det(r) - 1.0),
        ]
    return TrialResult(max(errors), inputs={"x": x, "delta": delta})


@register(PropertyId.GLPLUS_SPLIT, lambda n: n >= 1, "n >= 1")
def _check_glplus(n, rng, tol):
    t = random_element(DetClass.GL_PLUS, n, rng)
    lam, s = glplus_split(t)
    d = det(t)
    errors = [abs(det(s) - 1.0), _rel(lam * s, t), abs(lam**n - d) / d]
    return TrialResult(max(errors), ok=lam > 0, inputs={"T": t})


@register(PropertyId.SL_COMMUTATORS, lambda n: n >= 2, "n >= 2")
def _check_sl_commutators(n, rng, tol):
    m = random_element(DetClass.SL, n, rng)
    pairs = sl_commutator_factorize(m)
    err = _rel(product_of_commutators(pairs, n), m)
    factor_gap = max((abs(det(f) - 1.0) for p in pairs for f in (p.g, p.h)), default=0.0)
    short = len(transvection_factorize(m)) <= n * n + 4
    return TrialResult(max(err, factor_gap), ok=short, inputs={"M": m})


# Which property certifies each labelled result.
COVERAGE: dict[str, PropertyId] = {
    "group law": PropertyId.GROUP_AXIOMS,
    "bag": PropertyId.BAG_MAXIMAL_ABELIAN,
    "cow": PropertyId.COW_CENTRALIZER,
    "xon": PropertyId.XON_CENTRALIZER,
    "zon": PropertyId.ZON_FORMULA,
    "nur": PropertyId.NUR_B_FORMULA,
    "hey": PropertyId.HEY_STABILIZER,
    "how": PropertyId.WHO_TRANSITIVITY,
    "who": PropertyId.WHO_TRANSITIVITY,
    "dar": PropertyId.DAR_BLOCKS,
    "swing": PropertyId.SWING_SCALAR,
    "2dr": PropertyId.TDR_SO2,
    "bar": PropertyId.TDR_SO2,
    "wolf": PropertyId.WOLF_BLOCK,
    "ton": PropertyId.TON_REDUCTION,
    "car": PropertyId.CAR_SO_FACTOR,
    "fox": PropertyId.FOX_STABILIZER,
    "lar": PropertyId.LAR_CONJUGATES,
    "key": PropertyId.KEY_DECOMPOSE,
    "fat": PropertyId.FAT_BALL,
    "glplus": PropertyId.GLPLUS_SPLIT,
    "rat": PropertyId.GLPLUS_SPLIT,
    "jacobson": PropertyId.SL_COMMUTATORS,
}


def trial_rng(seed: int, prop: PropertyId, n: int, trial: int) -> np.random.Generator:
    index = list(PropertyId).index(prop)
    return np.random.default_rng([int(seed) % 2**63, index, n, trial])


def applicable(prop, n: int) -> bool:
    return REGISTRY[PropertyId.parse(prop)].applies(n)


def verify(prop, n: int, trials: int, tol: float = 1e-8, seed: int = 0,
           workers: int = 1) -> VerificationReport:
    """Run one registered check on ``trials`` independent random inputs."""
    prop = PropertyId.parse(prop)
    check = REGISTRY[prop]
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if not check.applies(n):
        raise ValueError(f"{prop.value} requires {check.requirement}, got n = {n}")

    def run(t: int) -> TrialResult:
        try:
            return check.fn(n, trial_rng(seed, prop, n, t), tol)
        except (ValueError, np.linalg.LinAlgError) as exc:
            return TrialResult(math.inf, ok=False, inputs={"trial": t, "exception": repr(exc)})

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, range(trials)))
    else:
        results = [run(t) for t in range(trials)]

    failures, max_error, witnesses = 0, 0.0, []
    for t, res in enumerate(results):
        max_error = max(max_error, res.error)
        if not res.ok or not res.error <= tol:
            failures += 1
            if len(witnesses) < MAX_WITNESSES:
                payload = {k: _jsonable(v) for k, v in res.inputs.items()}
                witnesses.append({"trial": t, "error": _finite_or_none(res.error), **payload})
    return VerificationReport(prop, n, trials, failures, max_error, witnesses)


def run_all(n_list, trials: int = 200, tol: float = 1e-8, seed: int = 0,
            workers: int = 1) -> list[VerificationReport]:
    n_list = list(n_list)
    if not n_list:
        raise ValueError("n_list must be nonempty")
    reports = []
    for prop in PropertyId:
        for n in n_list:
            if REGISTRY[prop].applies(n):
                reports.append(verify(prop, n, trials, tol, seed, workers))
    return reports
