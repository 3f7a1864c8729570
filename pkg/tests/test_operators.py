from __future__ import annotations

import random
from fractions import Fraction

import pytest

from smfp.coeffdomain import GF, QQ
from smfp.errors import (
    DomainMismatch,
    NonIntegralAtP,
    NotThetaDecomposable,
    ScaleModulusClash,
)
from smfp.generators import chi10_prop, delta_g1, eisenstein_g1, hasse_series
from smfp.operators import (
    cartier,
    embed_slice,
    embed_theta_components,
    fourier_jacobi,
    hecke_Tl_g1,
    op_phi,
    op_theta_det,
    op_theta_matrix,
    op_U,
    op_V,
    theta_decompose,
    theta_fa,
    verify_theta_identity,
)
from smfp.qseries import JacobiSlice, MatrixQSeries, QSeries, eq_upto, power, reduce_series
from smfp.sampling import random_matrix_series, random_qseries


def g1(coeffs, bound, domain=QQ, weight=0):
    return QSeries(1, domain, weight, bound, 1, {n: c for n, c in enumerate(coeffs) if c})


def test_U_examples():
    f = g1([1, 0, 0, 0, 0, 2, 3], 6, GF(5))
    assert op_U(f).raw() == g1([1, 2], 1, GF(5)).raw()
    f = QSeries(2, GF(3), 2, 3, 1, {(6, 0, 0): 2, (2, 0, 0): 1})
    assert op_U(f)[(2, 0, 0)] == 2
    with pytest.raises(DomainMismatch):
        op_U(eisenstein_g1(4, 4))


def test_V_examples_and_weights():
    log = []
    f = g1([1, 2], 1, GF(5), weight=2)
    v = op_V(f, log=log)
    assert v.raw() == g1([1, 0, 0, 0, 0, 2], 5, GF(5)).raw()
    assert v.weight == 10 and v.bound == 5
    u = op_U(v, log=log)
    assert u.weight == 10 and eq_upto(u.with_weight(2), f, 1)
    assert [(e.name, e.weight_in, e.weight_out) for e in log] == [("V", 2, 10), ("U", 10, 10)]


def test_UV_roundtrip_and_frobenius():
    rng = random.Random(7)
    for p in (3, 5, 7):
        for g in (1, 2):
            f = random_qseries(rng, g, p, 3 if g == 1 else 2)
            assert eq_upto(op_U(op_V(f)), f, f.bound)
            wide = f._new(dict(f.raw()), bound=p * f.bound)
            assert eq_upto(op_V(f), power(wide, p), p * f.bound)


def test_V_commutes_with_phi():
    rng = random.Random(8)
    for _ in range(10):
        f = random_qseries(rng, 2, 5, 2)
        assert eq_upto(op_phi(op_V(f)), op_V(op_phi(f)), 10)


def test_phi_examples():
    f = QSeries(2, QQ, 4, 2, 1, {(2, 0, 0): 1, (2, 2, 2): 5})
    assert op_phi(f).raw() == {(2,): 1}
    assert op_phi(chi10_prop(3)).is_zero()


def test_hecke_on_delta():
    d = delta_g1(30)
    t2 = hecke_Tl_g1(d, 2)
    assert t2[1] == -24
    assert eq_upto(t2, d.scale(-24).truncate(15), 15)
    t3 = hecke_Tl_g1(d, 3)
    assert eq_upto(t3, d.scale(252).truncate(10), 10)
    c = hecke_Tl_g1(QSeries.constant(1, QQ, 1, 4, 6), 2)
    assert c[0] == 1 + 2 ** 3


def test_hecke_mod_p_commutes_with_hasse():
    rng = random.Random(9)
    for _ in range(10):
        f = random_qseries(rng, 1, 7, 12, weight=rng.randint(2, 10))
        a = hasse_series(1, 7, 12)
        lhs = hecke_Tl_g1(a * f, 2)
        rhs = a * hecke_Tl_g1(f, 2)
        assert eq_upto(lhs, rhs, 6)


def test_cartier():
    eta = MatrixQSeries(2, 3, 6, 1, {(6, 0, 6): [[1, 2], [2, 0]], (2, 0, 0): [[1, 0], [0, 0]]})
    c = cartier(eta)
    assert c.raw() == {(2, 0, 2): (1, 2, 0)}
    assert cartier(MatrixQSeries(2, 3, 2, 1, {(2, 1, 2): [[1, 0], [0, 1]]})).raw() == {}


def test_cartier_terminates():
    rng = random.Random(4)
    for p in (3, 5):
        eta = random_matrix_series(rng, p, 12, g=1, density=1.0)
        steps = 0
        while any(any(k) for k in eta.raw()):
            eta, steps = cartier(eta), steps + 1
        assert steps <= 3


def test_theta_det():
    f = g1([0, 1, 1, 1], 3)
    assert op_theta_det(f).coefficient_list() == [0, 1, 2, 3]
    h = QSeries(2, QQ, 2, 2, 1, {(2, 0, 2): 5, (0, 0, 0): 1, (2, 1, 2): 1})
    out = op_theta_det(h)
    assert out[(2, 0, 2)] == 5 and out[(2, 1, 2)] == Fraction(3, 4) and (0, 0, 0) not in out
    with pytest.raises(NonIntegralAtP):
        op_theta_det(QSeries(2, GF(3), 2, 2, 3, {(6, 1, 6): 1}))


def test_theta_matrix():
    f = QSeries(2, GF(5), 2, 2, 1, {(2, 1, 2): 3, (0, 0, 0): 1})
    m = op_theta_matrix(f)
    assert m[(2, 1, 2)] == [[3, 4], [4, 3]]   # T = [[1,1/2],[1/2,1]] times 3 mod 5
    assert (0, 0, 0) not in m
    with pytest.raises(ScaleModulusClash):
        op_theta_matrix(QSeries(1, GF(3), 2, 2, 3, {(6,): 1}))


def test_fourier_jacobi_examples():
    f = QSeries(2, QQ, 4, 3, 1, {(2, 1, 2): 1})
    s = fourier_jacobi(f, 1)
    assert s.coeffs == {(1, Fraction(1, 2)): 1}
    assert fourier_jacobi(f, 2).coeffs == {}
    comps = theta_decompose(s)
    assert comps.components == {1: {3: 1}}


def test_fourier_jacobi_reassembly():
    rng = random.Random(2)
    f = random_qseries(rng, 2, None, 3)
    total = QSeries(2, QQ, None, 3, 1, {k: v for k, v in f.raw().items() if k[2] == 0})
    for nu in range(1, 4):
        total = total + embed_slice(fourier_jacobi(f, nu), bound=3)
    assert eq_upto(total, f.with_weight(None), 3)


def test_theta_decomposition_of_chi10():
    f = chi10_prop(6)
    for nu in (1, 2):
        s = fourier_jacobi(f, nu)
        comps = theta_decompose(s)
        back = embed_theta_components(comps, s.bound, d=f.d)
        assert {k: v for k, v in back.coeffs.items()} == s.coeffs


def test_theta_decompose_collision():
    s = JacobiSlice(1, 1, 4, {(1, 0): 1, (2, 1): 2})   # same (r, D) = (0, 4)
    with pytest.raises(NotThetaDecomposable):
        theta_decompose(s)


def test_theta_fa():
    f0 = theta_fa(1, 0, 0, 4)
    # g^2 <= B - nu leaves g in {-1, 0, 1}
    assert len(f0) == 3 and all(v == 1 for v in f0.raw().values())
    f1 = theta_fa(1, 0, 1, 4)
    assert (0, 0, 32) not in f1.raw()
    assert sum(f1.raw().values()) == 0
    f2 = theta_fa(2, 1, 2, 9)
    for (a, b, c), v in f2.raw().items():
        assert v >= 0


@pytest.mark.parametrize("A", [[[0, 0], [0, 0]], [[1, 0], [0, 0]], [[0, 0], [0, 1]],
                               [[2, -1], [-1, 1]]])
def test_theta_identity_examples(A):
    assert verify_theta_identity(A, 0, 1, 8)
    assert verify_theta_identity(A, 1, 2, 8)
