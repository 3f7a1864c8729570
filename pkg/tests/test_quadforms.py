from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from smfp.quadforms import (
    HalfIntegralForm,
    UnimodularMatrix,
    act,
    det_int,
    enumerate_forms,
    is_psd,
    reduce_g2,
)


def form(m, d=1):
    return HalfIntegralForm.from_matrix(m, d)


def is_reduced(t: HalfIntegralForm) -> bool:
    (a, b), (_, c) = t.matrix
    return 0 <= 2 * b <= a <= c


def brute_forms(g, bound, d):
    """All even-diagonal symmetric M with trace <= 2dB and nonnegative eigenvalues."""
    top = 2 * d * bound
    out = set()
    pairs = [(i, j) for i in range(g) for j in range(i, g)]
    for vals in itertools.product(range(-top, top + 1), repeat=len(pairs)):
        m = np.zeros((g, g), dtype=int)
        for (i, j), v in zip(pairs, vals):
            m[i, j] = m[j, i] = v
        if any(m[i, i] % 2 or m[i, i] < 0 for i in range(g)) or np.trace(m) > top:
            continue
        if np.linalg.eigvalsh(m.astype(float)).min() >= -1e-9:
            out.add(tuple(vals))
    return out


def test_form_basics():
    t = form([[2, 1], [1, 2]])
    assert t.T == [[1, Fraction(1, 2)], [Fraction(1, 2), 1]]
    assert t.det == Fraction(3, 4) and t.trace == 2
    assert HalfIntegralForm.parse(t.render()) == t
    with pytest.raises(ValueError):
        form([[1, 0], [0, 2]])  # odd diagonal of M
    assert t.rescale(2).m == (4, 2, 4) and t.rescale(2).rescale(1) == t


def test_psd_examples():
    assert is_psd(form([[2, 1], [1, 2]]))
    assert not is_psd(form([[2, 3], [3, 2]]))
    assert is_psd(form([[0, 0], [0, 0]]))


def test_act_examples():
    t = form([[0, 0], [0, 2]])
    assert act(UnimodularMatrix.identity(2), t) == t
    assert act(UnimodularMatrix.of([[1, 0], [1, 1]]), t).matrix == [[2, 2], [2, 2]]


def test_unimodular_validation_and_inverse():
    with pytest.raises(ValueError):
        UnimodularMatrix.of([[2, 0], [0, 1]])
    u = UnimodularMatrix.of([[2, 1], [1, 1]])
    assert (u @ u.inverse()).entries == UnimodularMatrix.identity(2).entries


def test_det_int_against_numpy():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 4)
        m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert det_int(m) == round(np.linalg.det(np.array(m, dtype=float)))


def test_act_preserves_det():
    rng = random.Random(5)
    for _ in range(50):
        a, c = 2 * rng.randint(0, 5), 2 * rng.randint(0, 5)
        t = form([[a, 1], [1, c + 2]])
        u = random_unimodular(rng)
        assert act(u, t).det == t.det


def random_unimodular(rng, size=2):
    while True:
        e = [[rng.randint(-size, size) for _ in range(2)] for _ in range(2)]
        if abs(e[0][0] * e[1][1] - e[0][1] * e[1][0]) == 1:
            return UnimodularMatrix.of(e)


def test_reduce_examples():
    red, u = reduce_g2(form([[2, 4], [4, 10]]))
    assert red.matrix == [[2, 0], [0, 2]]
    assert act(u, form([[2, 4], [4, 10]])) == red
    t = form([[2, 1], [1, 4]])
    assert reduce_g2(t) == (t, UnimodularMatrix.identity(2))
    assert reduce_g2(form([[2, 2], [2, 2]]))[0].matrix == [[0, 0], [0, 2]]


def test_reduce_recovers_planted_reduced_form():
    # oracle: plant a reduced form, move it by a random unimodular matrix
    rng = random.Random(11)
    for _ in range(300):
        a = 2 * rng.randint(1, 6)
        b = rng.randint(0, a // 2)
        c = 2 * rng.randint(a // 2, 8)
        t0 = form([[a, b], [b, c]])
        assert is_reduced(t0)
        t = act(random_unimodular(rng), t0)
        red, u = reduce_g2(t)
        assert red == t0
        assert act(u, t) == red


def test_reduce_rank_one_and_zero():
    rng = random.Random(2)
    for _ in range(50):
        c = 2 * rng.randint(1, 5)
        t = act(random_unimodular(rng), form([[0, 0], [0, c]]))
        assert reduce_g2(t)[0].matrix == [[0, 0], [0, c]]
    assert reduce_g2(form([[0, 0], [0, 0]]))[0].is_zero()


def test_reduced_form_is_unique_in_orbit_box():
    # brute force over all small unimodular U: only one reduced image
    t = form([[6, 5], [5, 8]])
    images = set()
    for e in itertools.product(range(-3, 4), repeat=4):
        if abs(e[0] * e[3] - e[1] * e[2]) != 1:
            continue
        img = act(UnimodularMatrix.of([[e[0], e[1]], [e[2], e[3]]]), t)
        if is_reduced(img):
            images.add(img)
    assert images == {reduce_g2(t)[0]}


@pytest.mark.parametrize("g,bound,d,count", [(2, 2, 1, 10), (1, 5, 1, 6), (2, 0, 1, 1)])
def test_enumerate_counts(g, bound, d, count):
    assert len(enumerate_forms(g, bound, d)) == count


@pytest.mark.parametrize("g,bound,d", [(1, 4, 1), (2, 2, 1), (2, 3, 1), (2, 2, 2)])
def test_enumerate_against_brute_force(g, bound, d):
    got = {t.m for t in enumerate_forms(g, bound, d)}
    assert got == brute_forms(g, bound, d)
    keys = [t.sort_key() for t in enumerate_forms(g, bound, d)]
    assert keys == sorted(keys)
