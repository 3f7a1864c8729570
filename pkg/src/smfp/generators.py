"""
Concrete modular forms as truncated expansions.

Genus 1: Eisenstein series E_k, the discriminant Delta.  Any genus: the
Hasse invariant, whose expansion is the constant 1.  Genus 2: theta
constants with characteristics and two combinations of them, a cusp form
of weight 10 (product of the squares of the ten even theta constants) and
a form of weight 4 (sum of their eighth powers).  The genus-2 combinations
are normalized to have leading coefficient 1 rather than matched against
classical normalizations.

Theta sign convention: for n = x + m' (x in Z^2),

    theta[m] = sum_x exp(2 pi i n.m'') q^{n n^t / 2}

and exp(2 pi i n.m'') is a sign for even characteristics.  The exponents
n n^t / 2 lie on the scale-8 lattice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import _dense
from .coeffdomain import QQ, CoeffDomain, bernoulli
from .errors import OddCharacteristic
from .qseries import QSeries

__all__ = [
    "ThetaCharacteristic",
    "chi10_prop",
    "delta_g1",
    "eisenstein_g1",
    "even_characteristics",
    "hasse_series",
    "psi4_prop",
    "sigma",
    "theta_constant_g2",
]


def sigma(n: int, k: int) -> int:
    """Divisor power sum sigma_k(n)."""
    total = 0
    for e in range(1, isqrt(n) + 1):
        if n % e == 0:
            total += e ** k
            f = n // e
            if f != e:
                total += f ** k
    return total


def eisenstein_g1(k: int, bound: int) -> QSeries:
    """E_k = 1 - (2k / B_k) sum_{n>=1} sigma_{k-1}(n) q^n  (k >= 4 even)."""
    if k < 4 or k % 2:
        raise ValueError(f"Eisenstein series needs even weight k >= 4, got {k}")
    c = Fraction(-2 * k) / bernoulli(k)
    coeffs = {(0,): Fraction(1)}
    for n in range(1, bound + 1):
        coeffs[(2 * n,)] = c * sigma(n, k - 1)
    return QSeries(1, QQ, k, bound, 1, coeffs, _trusted=True)


def delta_g1(bound: int) -> QSeries:
    """Delta = q prod_{n>=1} (1 - q^n)^24, expanded with integer arithmetic."""
    # power series of prod (1 - q^n)^24 to degree bound - 1
    n_terms = max(bound, 1)
    poly = [0] * n_terms
    poly[0] = 1
    for n in range(1, n_terms):
        for _ in range(24):
            for i in range(n_terms - 1, n - 1, -1):
                poly[i] -= poly[i - n]
    coeffs = {(2 * (i + 1),): Fraction(c) for i, c in enumerate(poly) if c and i + 1 <= bound}
    return QSeries(1, QQ, 12, bound, 1, coeffs, _trusted=True)


def hasse_series(g: int, p: int, bound: int) -> QSeries:
    """The Hasse invariant: weight p - 1, expansion identically 1."""
    return QSeries.constant(g, CoeffDomain(p), 1, p - 1, bound)


@dataclass(frozen=True)
class ThetaCharacteristic:
    """A characteristic (m', m'') in {0, 1/2}^g x {0, 1/2}^g stored as bits."""

    g: int
    mprime: tuple[int, ...]
    mdoubleprime: tuple[int, ...]

    def __post_init__(self):
        if len(self.mprime) != self.g or len(self.mdoubleprime) != self.g:
            raise ValueError("characteristic vectors must have length g")
        if any(b not in (0, 1) for b in self.mprime + self.mdoubleprime):
            raise ValueError("characteristic entries are bits (0 or 1 for 0 or 1/2)")

    @classmethod
    def from_bits(cls, bits: str) -> ThetaCharacteristic:
        """``"abcd"`` -> m' = (a, b)/2, m'' = (c, d)/2."""
        if len(bits) % 2 or any(ch not in "01" for ch in bits):
            raise ValueError(f"bad characteristic string {bits!r}")
        g = len(bits) // 2
        b = tuple(int(ch) for ch in bits)
        return cls(g, b[:g], b[g:])

    @property
    def bits(self) -> str:
        return "".join(str(b) for b in self.mprime + self.mdoubleprime)

    @property
    def parity(self) -> int:
        """e(m) = (-1)^{4 m'.m''}."""
        return -1 if sum(a * b for a, b in zip(self.mprime, self.mdoubleprime)) % 2 else 1

    @property
    def is_even(self) -> bool:
        return self.parity == 1


def even_characteristics(g: int = 2) -> list[ThetaCharacteristic]:
    out = []
    for bits in itertools.product((0, 1), repeat=2 * g):
        m = ThetaCharacteristic(g, bits[:g], bits[g:])
        if m.is_even:
            out.append(m)
    return out


def _theta_raw(m: ThetaCharacteristic, bound) -> dict:
    """Integer coefficients of theta[m] at scale 8, keys with trace <= bound.

    With n = k/2, k in 2x + m'-bits, the exponent n n^t / 2 has
    M = 16 T = 2 k k^t.
    """
    limit = 16 * Fraction(bound)          # trace(M) = 2 |k|^2 <= 16 B
    r = isqrt(int(limit // 2)) + 2
    b1, b2 = m.mprime
    c1, c2 = m.mdoubleprime
    out: dict = {}
    for k1 in range(-r, r + 1):
        if (k1 - b1) % 2:
            continue
        for k2 in range(-r, r + 1):
            if (k2 - b2) % 2:
                continue
            if 2 * (k1 * k1 + k2 * k2) > limit:
                continue
            # exp(2 pi i n.m'') = i^e; e is even because m is even
            e = k1 * c1 + k2 * c2
            sign = -1 if (e // 2) % 2 else 1
            key = (2 * k1 * k1, 2 * k1 * k2, 2 * k2 * k2)
            out[key] = out.get(key, 0) + sign
    return {k: v for k, v in out.items() if v}


def theta_constant_g2(m: ThetaCharacteristic, bound: int) -> QSeries:
    """The genus-2 theta constant theta[m] (weight 1/2, scale 8)."""
    if m.g != 2:
        raise ValueError("theta_constant_g2 needs a genus-2 characteristic")
    if not m.is_even:
        raise OddCharacteristic(f"characteristic {m.bits} is odd; theta[m] vanishes")
    coeffs = {k: Fraction(v) for k, v in _theta_raw(m, bound).items()}
    return QSeries(2, QQ, Fraction(1, 2), bound, 8, coeffs, _trusted=True)


def _normalized(coeffs: dict, weight, bound: int) -> QSeries:
    f = QSeries(2, QQ, weight, bound, 8, {k: Fraction(v) for k, v in coeffs.items()},
                _trusted=True)
    keys = f.sorted_keys()
    if keys:
        f = f.scale(1 / f.raw()[keys[0]])
    return f.at_minimal_scale()


def chi10_prop(bound: int) -> QSeries:
    """Product of the squares of the ten even theta constants, leading coefficient 1.

    A cusp form of weight 10, proportional to Igusa's chi_10.
    """
    thetas = [_theta_raw(m, bound) for m in even_characteristics(2)]
    chain = [t for t in thetas for _ in range(2)]
    raw = _dense.sum_of_products([chain], 16 * bound)
    return _normalized(raw, 10, bound)


def psi4_prop(bound: int) -> QSeries:
    """Sum of the eighth powers of the ten even theta constants, constant term 1."""
    thetas = [_theta_raw(m, bound) for m in even_characteristics(2)]
    raw = _dense.sum_of_products([[t] * 8 for t in thetas], 16 * bound)
    return _normalized(raw, 4, bound)
