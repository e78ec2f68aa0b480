import numpy as np
import pytest

from agk.centralizers import CentralizerSpec, LemmaId, membership, sample
from agk.commutators import (
    commutator_in_A,
    commutator_witness_transvection,
    express_D_element,
    sl_commutator_factorize,
    transvection_factorize,
)
from agk.core import AffineElement, DetClass, commutator
from agk.factorization import PreconditionError
from agk.sampling import random_element
from conftest import brute_affine, from_homogeneous


def shear(n, i, j, lam):
    m = np.eye(n)
    m[i - 1, j - 1] = lam
    return m


def bracket(g, h):
    return g @ h @ np.linalg.inv(g) @ np.linalg.inv(h)


def shear_product(n, letters):
    out = np.eye(n)
    for t in letters:
        out = out @ shear(n, t.i, t.j, t.lam)
    return out


# transvection_factorize

def test_transvections_identity_empty():
    assert transvection_factorize(np.eye(3)) == []


def test_transvections_single_shear():
    (t,) = transvection_factorize(np.array([[1.0, 1.0], [0.0, 1.0]]))
    assert (t.i, t.j, t.lam) == (1, 2, 1.0)


def test_transvections_quarter_turn():
    got = transvection_factorize(np.array([[0.0, -1.0], [1.0, 0.0]]))
    assert [(t.i, t.j, t.lam) for t in got] == [(1, 2, -1.0), (2, 1, 1.0), (1, 2, -1.0)]
    assert np.array_equal(shear_product(2, got), [[0.0, -1.0], [1.0, 0.0]])


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_transvections_random(n):
    for seed in range(40):
        m = random_element("SL", n, seed)
        got = transvection_factorize(m)
        assert len(got) <= n * n + 4
        assert np.linalg.norm(shear_product(n, got) - m) / np.linalg.norm(m) < 1e-8


def test_transvections_zero_pivot_column():
    # first column has a zero on the diagonal and needs a row swap substitute
    m = np.array([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    got = transvection_factorize(m)
    assert np.linalg.norm(shear_product(3, got) - m) < 1e-12


def test_transvections_reject_non_sl():
    with pytest.raises(PreconditionError):
        transvection_factorize(np.diag([2.0, 1.0]))


# commutator witnesses

def test_witness_zero_shear():
    p = commutator_witness_transvection(1, 2, 0.0, 3)
    assert np.allclose(bracket(p.g, p.h), np.eye(3), atol=1e-15)


def test_witness_n3():
    p = commutator_witness_transvection(1, 2, 5.0, 3)
    assert np.array_equal(p.g, shear(3, 1, 3, 5.0))
    assert np.array_equal(p.h, shear(3, 3, 2, 1.0))
    assert np.linalg.norm(bracket(p.g, p.h) - shear(3, 1, 2, 5.0)) < 1e-12


def test_witness_n2_upper():
    p = commutator_witness_transvection(1, 2, 3.0, 2)
    assert np.array_equal(p.g, np.diag([2.0, 0.5]))
    assert np.array_equal(p.h, shear(2, 1, 2, 1.0))
    assert np.linalg.norm(bracket(p.g, p.h) - shear(2, 1, 2, 3.0)) < 1e-12


def test_witness_n2_lower():
    p = commutator_witness_transvection(2, 1, 3.0, 2)
    assert np.linalg.norm(bracket(p.g, p.h) - shear(2, 2, 1, 3.0)) < 1e-12


@pytest.mark.parametrize("n", [2, 3, 5])
def test_witness_all_positions(n, rng):
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            lam = float(rng.uniform(-10, 10))
            p = commutator_witness_transvection(i, j, lam, n)
            assert np.linalg.norm(bracket(p.g, p.h) - shear(n, i, j, lam)) < 1e-12 * (1 + abs(lam))


def test_witness_rejects_diagonal_index():
    with pytest.raises(ValueError):
        commutator_witness_transvection(2, 2, 1.0, 3)


# sl_commutator_factorize

def test_sl_commutators_identity_empty():
    assert sl_commutator_factorize(np.eye(4)) == []


def test_sl_commutators_single_shear():
    (p,) = sl_commutator_factorize(np.array([[1.0, 1.0], [0.0, 1.0]]))
    assert np.linalg.norm(bracket(p.g, p.h) - shear(2, 1, 2, 1.0)) < 1e-15


@pytest.mark.parametrize("n", [2, 3, 5])
def test_sl_commutators_random(n):
    for seed in range(30):
        m = random_element("SL", n, seed)
        pairs = sl_commutator_factorize(m)
        prod = np.eye(n)
        for p in pairs:
            prod = prod @ bracket(p.g, p.h)
            assert abs(np.linalg.det(p.g) - 1.0) < 1e-10 or n == 2
        assert np.linalg.norm(prod - m) / np.linalg.norm(m) < 1e-8


# closed form in the sign-flip centralizer

def test_closed_form_same_element():
    g = sample(CentralizerSpec(LemmaId.SIGN_FLIP, 3, DetClass.SL), seed=1)
    assert commutator_in_A(g, g).distance(AffineElement.identity(3)) < 1e-12


def test_closed_form_translation_construction():
    c = 2.5
    a = np.diag([0.5, 2.0, 1.0])
    g = AffineElement(np.array([c, 0, 0]), a)
    h = AffineElement(np.array([-c, 0, 0]), a)
    out = commutator_in_A(g, h)
    assert np.array_equal(out.translation, [c, 0.0, 0.0])
    assert np.array_equal(out.linear, np.eye(3))


@pytest.mark.parametrize("n", [3, 5, 7])
@pytest.mark.parametrize("cls", list(DetClass))
def test_closed_form_vs_homogeneous(n, cls):
    spec = CentralizerSpec(LemmaId.SIGN_FLIP, n, cls)
    for seed in range(20):
        g = sample(spec, seed=2 * seed)
        h = sample(spec, seed=2 * seed + 1)
        G = brute_affine(g.translation, g.linear)
        H = brute_affine(h.translation, h.linear)
        x, lin = from_homogeneous(bracket(G, H))
        got = commutator_in_A(g, h, det_class=cls)
        assert np.linalg.norm(got.translation - x) < 1e-12
        assert np.linalg.norm(got.linear - lin) < 1e-12


def test_closed_form_rejects_non_member():
    g = AffineElement.pure_translation([0.0, 1.0, 0.0])
    with pytest.raises(PreconditionError):
        commutator_in_A(g, AffineElement.identity(3))


# D-element words

def product(pairs, n):
    out = np.eye(n + 1)
    for p in pairs:
        G = brute_affine(p.g.translation, p.g.linear)
        H = brute_affine(p.h.translation, p.h.linear)
        out = out @ bracket(G, H)
    return from_homogeneous(out)


def test_d_element_trivial():
    assert express_D_element(0.0, np.eye(2)) == []


def test_d_element_translation_only():
    (p,) = express_D_element(1.5, np.eye(2))
    x, lin = product([p], 3)
    assert np.allclose(x, [1.5, 0, 0], atol=1e-15)
    assert np.allclose(lin, np.eye(3), atol=1e-15)


def test_d_element_shear():
    d = np.array([[1.0, 1.0], [0.0, 1.0]])
    pairs = express_D_element(1.0, d)
    x, lin = product(pairs, 3)
    target = np.eye(3)
    target[1:, 1:] = d
    assert np.linalg.norm(x - [1.0, 0.0, 0.0]) < 1e-10
    assert np.linalg.norm(lin - target) < 1e-10


@pytest.mark.parametrize("n", [3, 5])
def test_d_element_factors_are_members(n, rng):
    spec = CentralizerSpec(LemmaId.SIGN_FLIP, n, DetClass.SL)
    d = random_element("SL", n - 1, rng)
    x1 = float(rng.uniform(-3, 3))
    pairs = express_D_element(x1, d)
    for p in pairs:
        assert membership(spec, p.g, 1e-10) and membership(spec, p.h, 1e-10)
    x, lin = product(pairs, n)
    target = np.eye(n)
    target[1:, 1:] = d
    assert np.linalg.norm(lin - target) / np.linalg.norm(target) < 1e-8
    assert abs(x[0] - x1) < 1e-8 and np.linalg.norm(x[1:]) < 1e-8


def test_d_element_rejects_non_sl():
    with pytest.raises(PreconditionError):
        express_D_element(1.0, np.diag([2.0, 1.0]))


@pytest.mark.parametrize("n", [3, 5, 7])
def test_d_pairs_commute_into_b(n, rng):
    for _ in range(50):
        d, dp = random_element("SL", n - 1, rng), random_element("SL", n - 1, rng)
        g = AffineElement(np.eye(n)[0] * rng.uniform(-2, 2), np.block([[np.eye(1), np.zeros((1, n - 1))], [np.zeros((n - 1, 1)), d]]))
        h = AffineElement(np.eye(n)[0] * rng.uniform(-2, 2), np.block([[np.eye(1), np.zeros((1, n - 1))], [np.zeros((n - 1, 1)), dp]]))
        c = commutator(g, h)
        assert np.linalg.norm(c.translation) < 1e-12
        assert np.array_equal(c.linear[0], np.eye(n)[0])
        assert abs(np.linalg.det(c.linear[1:, 1:]) - 1.0) < 1e-8
