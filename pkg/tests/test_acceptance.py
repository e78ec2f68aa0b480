"""Acceptance criteria, one test per criterion, each at its stated tolerance.

Every test prints a single ``ACCEPTANCE <k> PASS|FAIL`` line; the lines are
also collected and repeated in the pytest terminal summary.  Run directly
with ``python tests/test_acceptance.py`` for the lines alone.
"""

from __future__ import annotations

import math
import subprocess
import sys
import time
from functools import reduce

import numpy as np
import pytest

from agk.centralizers import (
    J,
    CentralizerSpec,
    LemmaId,
    commutant_basis,
    noncommuting_translation_witness,
    sample,
    transvection_set,
)
from agk.commutators import commutator_in_A, sl_commutator_factorize
from agk.core import AffineElement, DetClass, commutator, mul
from agk.factorization import (
    givens_reduce,
    sl_block_factorize,
    so_factorize,
    sphere_orbit_witness,
    sphere_transitivity_witness,
)
from agk.sampling import SPECIAL_ORTHOGONAL, random_conditioned, random_element
from agk.vectordecomp import ball_sum_decompose, unit_sum_decompose
from agk.words import BlockPosition

RESULTS: dict[int, str] = {}


def report(k: int, ok: bool, detail: str) -> None:
    line = f"ACCEPTANCE {k:2d} {'PASS' if ok else 'FAIL'}: {detail}"
    RESULTS[k] = line
    print(line)
    assert ok, line


def rot(n, i, j, theta):
    m = np.eye(n)
    c, s = math.cos(theta), math.sin(theta)
    m[i - 1, i - 1], m[i - 1, j - 1], m[j - 1, i - 1], m[j - 1, j - 1] = c, -s, s, c
    return m


def block(n, letter):
    m = np.eye(n)
    if letter.position is BlockPosition.UPPER:
        m[:-1, :-1] = letter.block
    else:
        m[1:, 1:] = letter.block
    return m


def bracket(g, h):
    return g @ h @ np.linalg.inv(g) @ np.linalg.inv(h)


def test_1_so_factorization():
    start = time.perf_counter()
    worst_err, length_ok = 0.0, True
    for n in range(2, 9):
        for trial in range(200):
            r = random_element(SPECIAL_ORTHOGONAL, n, [1, n, trial])
            w = so_factorize(r)
            length_ok &= len(w) <= n * (n - 1) // 2
            prod = reduce(np.matmul, [rot(n, l.i, l.j, l.theta) for l in w], np.eye(n))
            worst_err = max(worst_err, float(np.linalg.norm(prod - r)))
    elapsed = time.perf_counter() - start
    ok = length_ok and worst_err < 1e-10 and elapsed < 10.0
    report(1, ok, f"SO(n) n=2..8 x200: max recon {worst_err:.2e} (<1e-10), "
                  f"lengths ok={length_ok}, {elapsed:.2f}s (<10s)")


def test_2_givens_reduction():
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(10_000):
        n = int(rng.integers(2, 9))
        x = rng.standard_normal(n)
        x /= np.linalg.norm(x)
        w = givens_reduce(x)
        v = x.copy()
        for l in w:
            v = rot(n, l.i, l.j, l.theta) @ v
        worst = max(worst, float(np.linalg.norm(v - np.eye(n)[0])))
    report(2, worst < 1e-12, f"10^4 unit vectors n<=8: max |word x - e1| {worst:.2e} (<1e-12)")


def test_3_sl_block_generation():
    rng = np.random.default_rng(3)
    worst_rel = worst_det = worst_move = 0.0
    for n in (3, 5, 7):
        for _ in range(200):
            m = random_element(DetClass.SL, n, rng)
            w = sl_block_factorize(m)
            prod = reduce(np.matmul, [block(n, l) for l in w], np.eye(n))
            worst_rel = max(worst_rel, float(np.linalg.norm(prod - m) / np.linalg.norm(m)))
            for l in w:
                worst_det = max(worst_det, abs(float(np.linalg.det(l.block)) - 1.0))
            x = rng.standard_normal(n)
            t = sphere_transitivity_witness(x)
            assert len(t) <= 2
            v = x
            for l in t:
                v = block(n, l) @ v
            worst_move = max(worst_move, float(np.linalg.norm(v - np.eye(n)[0])))
    ok = worst_rel < 1e-8 and worst_det < 1e-10 and worst_move < 1e-11
    report(3, ok, f"SL blocks n=3,5,7 x200: rel recon {worst_rel:.2e} (<1e-8), "
                  f"letter det {worst_det:.2e} (<1e-10), witness {worst_move:.2e} (<1e-11)")


def test_4_commutator_realization():
    rng = np.random.default_rng(4)
    worst_rel = worst_det = 0.0
    for n in (2, 3, 5):
        for _ in range(200):
            m = random_element(DetClass.SL, n, rng)
            pairs = sl_commutator_factorize(m)
            prod = np.eye(n)
            for p in pairs:
                prod = prod @ bracket(p.g, p.h)
                for f in (p.g, p.h):
                    worst_det = max(worst_det, abs(float(np.linalg.det(f)) - 1.0))
            worst_rel = max(worst_rel, float(np.linalg.norm(prod - m) / np.linalg.norm(m)))
    ok = worst_rel < 1e-8 and worst_det < 1e-10
    report(4, ok, f"SL = [GL,GL] n=2,3,5 x200: rel recon {worst_rel:.2e} (<1e-8), "
                  f"factor det {worst_det:.2e} (<1e-10)")


def test_5_sign_flip_commutator_closed_form():
    rng = np.random.default_rng(5)
    classes = list(DetClass)
    worst = worst_translation = 0.0
    for n in (3, 5, 7):
        for _ in range(1000):
            cls = classes[int(rng.integers(len(classes)))]
            spec = CentralizerSpec(LemmaId.SIGN_FLIP, n, cls)
            g, h = sample(spec, seed=rng), sample(spec, seed=rng)
            worst = max(worst, commutator_in_A(g, h, det_class=cls).distance(commutator(g, h)))
            c = float(rng.uniform(-5, 5))
            a = np.eye(n)
            a[0, 0], a[1, 1] = 0.5, 2.0
            gp = AffineElement(np.eye(n)[0] * c, a)
            hp = AffineElement(np.eye(n)[0] * -c, a)
            target = AffineElement.pure_translation(np.eye(n)[0] * c)
            worst_translation = max(worst_translation, commutator(gp, hp).distance(target),
                                    commutator_in_A(gp, hp).distance(target))
    ok = worst < 1e-11 and worst_translation < 1e-12
    report(5, ok, f"closed form vs direct, 10^3 pairs n=3,5,7: {worst:.2e} (<1e-11); "
                  f"half-scaling translation {worst_translation:.2e} (<1e-12)")


def test_6_d_pair_commutators():
    rng = np.random.default_rng(6)
    worst_t = worst_det = worst_shape = 0.0
    for n in (3, 5, 7):
        for _ in range(1000):
            factors = []
            for _ in range(2):
                a = np.eye(n)
                a[1:, 1:] = random_conditioned(DetClass.SL, n - 1, rng)
                factors.append(AffineElement(np.eye(n)[0] * rng.uniform(-2, 2), a))
            c = commutator(*factors)
            worst_t = max(worst_t, float(np.linalg.norm(c.translation)))
            worst_shape = max(worst_shape, float(np.linalg.norm(c.linear[0] - np.eye(n)[0])),
                              float(np.linalg.norm(c.linear[1:, 0])))
            worst_det = max(worst_det, abs(float(np.linalg.det(c.linear[1:, 1:])) - 1.0))
    ok = worst_t < 1e-12 and worst_det < 1e-10 and worst_shape < 1e-12
    report(6, ok, f"D-pair commutators 10^3 per n=3,5,7: translation {worst_t:.2e} (<1e-12), "
                  f"|det B - 1| {worst_det:.2e} (<1e-10), diag(1,B) shape {worst_shape:.2e}")


def test_7_commutant_dimensions():
    got, want = [], []
    for n in range(2, 7):
        got.append(commutant_basis([np.eye(n)]).dim)
        want.append(n * n)
        got.append(commutant_basis(transvection_set(n)).dim)
        want.append(1)
        if n == 2:
            got.append(commutant_basis([J]).dim)
            want.append(2)
        if n >= 4:
            gens = []
            for s in transvection_set(n - 2):
                m = np.eye(n)
                m[2:, 2:] = s
                gens.append(m)
            got.append(commutant_basis(gens).dim)
            want.append(5)
    report(7, got == want, f"commutant dims n=2..6: got {got}, predicted {want}")


def test_8_sphere_sums():
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(100_000):
        n = int(rng.integers(2, 9))
        x = rng.standard_normal(n)
        x *= 2.0 * rng.random() ** (1.0 / n) / np.linalg.norm(x)
        w = unit_sum_decompose(x)
        worst = max(worst, *w.residuals(x).values())

    worst_ball = worst_orbit = 0.0
    for delta in (0.1, 1.0, 10.0):
        half = delta / 2.0
        for _ in range(2_000):
            n = int(rng.integers(2, 9))
            x = rng.standard_normal(n)
            x *= delta * rng.random() ** (1.0 / n) / np.linalg.norm(x)
            w = ball_sum_decompose(x, delta)
            worst_ball = max(worst_ball, max(w.residuals(x).values()) / half)
            x0 = np.zeros(n)
            x0[0] = half
            for target in (w.y, w.z):
                r = sphere_orbit_witness(x0, target)
                worst_orbit = max(worst_orbit, float(np.linalg.norm(r @ x0 - target)))
    ok = worst < 1e-12 and worst_ball < 1e-12 and worst_orbit < 1e-10
    report(8, ok, f"10^5 unit sums: {worst:.2e} (<1e-12); ball sums scaled by delta/2: "
                  f"{worst_ball:.2e} (<1e-12); orbit witness {worst_orbit:.2e} (<1e-10)")


def test_9_translations_maximal_abelian():
    rng = np.random.default_rng(9)
    min_dev = math.inf
    max_tt = 0.0
    for _ in range(1000):
        n = int(rng.integers(1, 7))
        a = random_element(DetClass.GL, n, rng)
        if np.linalg.norm(a - np.eye(n)) <= 1e-8:
            continue
        g = AffineElement(rng.uniform(-1, 1, n), a)
        y = noncommuting_translation_witness(a)
        t = AffineElement.pure_translation(y)
        min_dev = min(min_dev, mul(g, t).distance(mul(t, g)))
        s = AffineElement.pure_translation(rng.uniform(-10, 10, n))
        u = AffineElement.pure_translation(rng.uniform(-10, 10, n))
        max_tt = max(max_tt, mul(s, u).distance(mul(u, s)))
    ok = min_dev > 1e-8 and max_tt <= 1e-14
    report(9, ok, f"10^3 elements: min witness deviation {min_dev:.2e} (>1e-8); "
                  f"translation pairs {max_tt:.2e} (<=1e-14)")


def test_10_full_suite_cli():
    argv = [sys.executable, "-m", "agk.cli", "verify", "--all", "--n", "2,3,4,5",
            "--trials", "200", "--seed", "42"]
    start = time.perf_counter()
    first = subprocess.run(argv, capture_output=True, check=False)
    elapsed = time.perf_counter() - start
    second = subprocess.run(argv, capture_output=True, check=False)
    identical = first.stdout == second.stdout and len(first.stdout) > 0
    ok = first.returncode == 0 and second.returncode == 0 and elapsed < 60.0 and identical
    report(10, ok, f"verify --all --n 2,3,4,5 --trials 200 --seed 42: exit {first.returncode}, "
                   f"{elapsed:.1f}s (<60s), byte-identical rerun={identical}")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(
        ((k, v) for k, v in globals().items() if k.startswith("test_")),
        key=lambda kv: int(kv[0].split("_")[1]),
    ):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
