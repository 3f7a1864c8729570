from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from smfp.coeffdomain import GF, QQ, CoeffDomain, FpElement, bernoulli, is_prime, reduce_mod_p
from smfp.errors import NonIntegralAtP


def akiyama_tanigawa(n: int) -> Fraction:
    # independent algorithm; it yields B_1 = +1/2, which is never compared
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0]


def test_bernoulli_known_values():
    assert bernoulli(0) == 1
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(10) == Fraction(5, 66)


@pytest.mark.parametrize("n", [0, *range(2, 41, 2)])
def test_bernoulli_against_independent_algorithm(n):
    assert bernoulli(n) == akiyama_tanigawa(n)


@pytest.mark.parametrize("n", [2, 12, 30, 60])
def test_bernoulli_against_sympy(n):
    b = sympy.bernoulli(n)
    assert bernoulli(n) == Fraction(int(b.p), int(b.q))


def test_odd_bernoulli_rejected():
    with pytest.raises(ValueError):
        bernoulli(3)


def test_reduce_examples():
    assert reduce_mod_p(Fraction(5, 66), 5) == 0
    assert reduce_mod_p(1, 11) == 1
    assert reduce_mod_p(Fraction(-1, 30), 7) == 3
    with pytest.raises(NonIntegralAtP):
        reduce_mod_p(Fraction(1, 5), 5)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_field_axioms_exhaustive(p):
    els = [FpElement(r, p) for r in range(p)]
    zero, one = FpElement(0, p), FpElement(1, p)
    for a, b, c in itertools.product(els, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    for a, b in itertools.product(els, repeat=2):
        assert a + b == b + a and a * b == b * a
        assert a - b + b == a
    for a in els:
        assert a + zero == a and a * one == a
        if a != 0:
            assert a * a.inverse() == one
            assert a ** (p - 1) == one


@given(st.fractions(), st.fractions(), st.sampled_from([3, 5, 7, 11, 13]))
def test_reduction_is_a_ring_map(x, y, p):
    if x.denominator % p == 0 or y.denominator % p == 0:
        return
    assert reduce_mod_p(x + y, p) == reduce_mod_p(x, p) + reduce_mod_p(y, p)
    assert reduce_mod_p(x * y, p) == reduce_mod_p(x, p) * reduce_mod_p(y, p)


def test_is_prime_matches_sympy():
    assert [n for n in range(500) if is_prime(n)] == list(sympy.primerange(0, 500))
    assert is_prime(2**31 - 1) and not is_prime(2**32 + 1)


def test_domain_render_parse_roundtrip():
    assert QQ.render(Fraction(3)) == "3/1"
    assert QQ.parse("-5/66") == Fraction(-5, 66)
    F = GF(7)
    assert F.tag == "Fp:7" and CoeffDomain.from_tag("Fp:7") == F
    assert F.parse(F.render(5)) == 5
    for bad in ("2/4", "3", "1/0"):
        with pytest.raises(ValueError):
            QQ.parse(bad)
    with pytest.raises(ValueError):
        F.parse("7")


def test_domain_rejects_bad_primes():
    for p in (2, 9, 1):
        with pytest.raises(ValueError):
            CoeffDomain(p)
