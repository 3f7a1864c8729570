from __future__ import annotations

import cmath
import itertools
import random
from fractions import Fraction

import pytest

from smfp import _dense
from smfp.coeffdomain import GF, QQ
from smfp.errors import OddCharacteristic
from smfp.generators import (
    ThetaCharacteristic,
    _theta_raw,
    chi10_prop,
    delta_g1,
    eisenstein_g1,
    even_characteristics,
    hasse_series,
    psi4_prop,
    sigma,
    theta_constant_g2,
)
from smfp.operators import op_phi
from smfp.quadforms import UnimodularMatrix, transform_key
from smfp.qseries import QSeries, eq_upto, mul, power, sub


def test_sigma():
    assert [sigma(n, 1) for n in range(1, 7)] == [1, 3, 4, 7, 6, 12]
    assert sigma(2, 3) == 9 and sigma(2, 5) == 33


def test_eisenstein_coefficients():
    e4, e6, e10 = eisenstein_g1(4, 5), eisenstein_g1(6, 5), eisenstein_g1(10, 5)
    assert e4.coefficient_list()[:3] == [1, 240, 2160]
    assert e6.coefficient_list()[:3] == [1, -504, -16632]
    assert e10[1] == -264
    with pytest.raises(ValueError):
        eisenstein_g1(5, 3)


def tau_oracle(n_max: int) -> list[int]:
    """tau(n) from (E4^3 - E6^2)/1728 with plain integer list convolution."""
    def eis(c, k):
        return [1] + [c * sum(d ** (k - 1) for d in range(1, n + 1) if n % d == 0)
                      for n in range(1, n_max + 1)]

    def conv(a, b):
        return [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(n_max + 1)]

    e4, e6 = eis(240, 4), eis(-504, 6)
    num = [x - y for x, y in zip(conv(conv(e4, e4), e4), conv(e6, e6))]
    assert all(x % 1728 == 0 for x in num)
    return [x // 1728 for x in num]


def test_delta_against_eisenstein_identity():
    d = delta_g1(25)
    assert d.coefficient_list() == tau_oracle(25)
    assert d[1] == 1 and d[2] == -24 and d.weight == 12
    lhs = sub(power(eisenstein_g1(4, 25), 3), power(eisenstein_g1(6, 25), 2))
    assert eq_upto(lhs.with_weight(12), d.scale(1728), 25)


def test_hasse():
    a = hasse_series(2, 5, 6)
    assert a.weight == 4 and a.raw() == {(0, 0, 0): 1}
    f = QSeries(2, GF(5), 2, 6, 1, {(2, 1, 2): 3})
    prod = mul(a, f)
    assert prod.raw() == f.raw() and prod.weight == 6


def test_characteristics():
    evens = even_characteristics(2)
    assert len(evens) == 10
    assert len({m.bits for m in evens}) == 10
    with pytest.raises(OddCharacteristic):
        theta_constant_g2(ThetaCharacteristic.from_bits("1010"), 2)


def theta_oracle(m: ThetaCharacteristic, bound: int, box: int = 12) -> dict:
    """Lattice sum over a generous box, sign from the complex exponential."""
    out: dict = {}
    for x in itertools.product(range(-box, box + 1), repeat=2):
        n = [Fraction(x[i]) + Fraction(m.mprime[i], 2) for i in range(2)]
        # M = 16 T with T = n n^t / 2
        key = (int(8 * n[0] ** 2), int(8 * n[0] * n[1]), int(8 * n[1] ** 2))
        if key[0] + key[2] > 16 * bound:
            continue
        phase = cmath.exp(2j * cmath.pi * sum(float(n[i]) * m.mdoubleprime[i] / 2
                                               for i in range(2)))
        sign = round(phase.real)
        assert abs(phase - sign) < 1e-9
        out[key] = out.get(key, 0) + sign
    return {k: v for k, v in out.items() if v}


@pytest.mark.parametrize("m", even_characteristics(2), ids=lambda m: m.bits)
def test_theta_against_lattice_oracle(m):
    th = theta_constant_g2(m, 4)
    assert th.d == 8 and th.weight == Fraction(1, 2)
    assert th.raw() == {k: Fraction(v) for k, v in theta_oracle(m, 4).items()}
    const = th.raw().get((0, 0, 0), 0)
    assert const == (1 if m.mprime == (0, 0) else 0)


def test_theta_invariance():
    # theta[0000] is invariant under every unimodular substitution
    th = theta_constant_g2(ThetaCharacteristic.from_bits("0000"), 4)
    lim = 16 * 4
    for rows in ([[1, 1], [0, 1]], [[0, 1], [1, 0]], [[1, 0], [-2, 1]]):
        u = UnimodularMatrix.of(rows).entries
        for k, v in th.raw().items():
            k2 = transform_key(u, k, 2)
            if k2[0] + k2[2] <= lim:
                assert th.raw().get(k2) == v


def test_dense_engine_matches_sparse_products():
    rng = random.Random(1)
    keys = [(2 * a, b, 2 * c) for a in range(4) for c in range(4) for b in range(-3, 4)
            if 4 * a * c >= b * b and a + c <= 3]
    for _ in range(5):
        chains = []
        for _ in range(rng.randint(1, 3)):
            chain = [{k: rng.randint(-3, 3) for k in rng.sample(keys, 6)} for _ in range(3)]
            chains.append([{k: v for k, v in f.items() if v} for f in chain])
        limit = 6
        got = _dense.sum_of_products(chains, limit)
        total = QSeries.zero(2, QQ, 0, 3)
        for chain in chains:
            acc = QSeries.constant(2, QQ, 1, 0, 3)
            for f in chain:
                acc = mul(acc, QSeries(2, QQ, 0, 3, 1, f))
            total = total + acc
        assert got == {k: int(v) for k, v in total.raw().items()}


def test_chi10_small_bound_against_sparse_product():
    bound = 2
    thetas = [theta_constant_g2(m, bound) for m in even_characteristics(2)]
    prod = QSeries.constant(2, QQ, 1, 0, bound, 8)
    for t in thetas:
        prod = mul(prod, mul(t, t))
    lead = prod.raw()[prod.sorted_keys()[0]]
    expected = prod.scale(1 / lead).at_minimal_scale()
    got = chi10_prop(bound)
    assert got.weight == 10
    assert eq_upto(got, expected.with_weight(10), bound)


def test_phi_of_genus_two_generators():
    assert op_phi(chi10_prop(4)).is_zero()
    f = op_phi(psi4_prop(4))
    assert f[0] == 1
    assert eq_upto(f.with_weight(4), eisenstein_g1(4, 4), 4)
