"""
Exact coefficient arithmetic.

Two coefficient domains are supported: the rationals (backed by
:class:`fractions.Fraction`, arbitrary precision) and prime fields F_p for
odd primes p.  Inside series, F_p coefficients are stored as plain residues
``0 <= r < p``; :class:`FpElement` is the value type handed out by the
scalar API.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import NonIntegralAtP

__all__ = [
    "BigRational",
    "CoeffDomain",
    "FpElement",
    "QQ",
    "GF",
    "bernoulli",
    "is_prime",
    "reduce_mod_p",
]

BigRational = Fraction

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _check_odd_prime(p: int) -> None:
    if not isinstance(p, int) or p == 2 or not is_prime(p):
        raise ValueError(f"modulus must be an odd prime, got {p!r}")


_BERNOULLI = [Fraction(1)]


def _extend_bernoulli(n: int) -> None:
    # sum_{k=0}^{m} C(m+1, k) B_k = 0 for m >= 1
    table = _BERNOULLI
    for m in range(len(table), n + 1):
        s = sum(comb(m + 1, k) * table[k] for k in range(m))
        table.append(-s / (m + 1))


def bernoulli(n: int) -> Fraction:
    """Return the Bernoulli number B_n with the convention B_1 = -1/2.

    Odd ``n > 1`` is rejected rather than answered with 0: downstream code
    only ever needs even indices, and a request for an odd one is almost
    always an indexing bug.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > 1 and n % 2 == 1:
        raise ValueError(
            f"B_{n}: zero by convention, request rejected to avoid convention bugs"
        )
    _extend_bernoulli(n)
    return _BERNOULLI[n]


@dataclass(frozen=True)
class FpElement:
    residue: int
    p: int

    def __post_init__(self):
        _check_odd_prime(self.p)
        if not 0 <= self.residue < self.p:
            object.__setattr__(self, "residue", self.residue % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValueError("elements of different prime fields")
            return other.residue
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement((self.residue + o) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement((self.residue - o) % self.p, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement((o - self.residue) % self.p, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.residue * o % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.residue % self.p, self.p)

    def inverse(self) -> FpElement:
        if self.residue == 0:
            raise ZeroDivisionError("zero has no inverse in F_p")
        return FpElement(pow(self.residue, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FpElement(o, self.p).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FpElement(pow(self.residue, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.p))

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"FpElement({self.residue}, p={self.p})"


def reduce_mod_p(x, p: int) -> FpElement:
    """Image of a rational number in F_p.

    Raises :class:`NonIntegralAtP` when p divides the reduced denominator.
    """
    _check_odd_prime(p)
    x = Fraction(x)
    if x.denominator % p == 0:
        raise NonIntegralAtP(f"{x} is not p-integral for p={p}")
    return FpElement(x.numerator * pow(x.denominator, -1, p) % p, p)


@dataclass(frozen=True)
class CoeffDomain:
    """Either the rationals (``p is None``) or the prime field F_p.

    The domain object owns the conversion, arithmetic and text rendering
    of raw coefficients as they are stored inside series.
    """

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            _check_odd_prime(self.p)

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def tag(self) -> str:
        return "Q" if self.p is None else f"Fp:{self.p}"

    def __str__(self):
        return self.tag

    @classmethod
    def from_tag(cls, tag: str) -> CoeffDomain:
        if tag == "Q":
            return QQ
        if tag.startswith("Fp:"):
            return cls(int(tag[3:]))
        raise ValueError(f"unknown domain tag {tag!r}")

    # raw coefficient arithmetic ------------------------------------------

    def convert(self, x):
        """Coerce an int, Fraction or FpElement into a stored coefficient."""
        if self.p is None:
            if isinstance(x, FpElement):
                raise TypeError("cannot lift an F_p element to Q")
            return Fraction(x)
        if isinstance(x, FpElement):
            if x.p != self.p:
                raise ValueError("elements of different prime fields")
            return x.residue
        if isinstance(x, int):
            return x % self.p
        return reduce_mod_p(x, self.p).residue

    def zero(self):
        return Fraction(0) if self.p is None else 0

    def one(self):
        return Fraction(1) if self.p is None else 1

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def neg(self, a):
        return -a if self.p is None else -a % self.p

    def mul(self, a, b):
        return a * b if self.p is None else a * b % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("division by zero coefficient")
        return 1 / Fraction(a) if self.p is None else pow(a, -1, self.p)

    def render(self, a) -> str:
        if self.p is None:
            return f"{a.numerator}/{a.denominator}"
        return str(a)

    def parse(self, text: str):
        if self.p is None:
            num, den = (int(x) for x in text.split("/"))
            if den <= 0:
                raise ValueError(f"rational {text!r} needs a positive denominator")
            value = Fraction(num, den)
            if value.denominator != den:
                raise ValueError(f"rational {text!r} not in lowest terms")
            return value
        value = int(text)
        if not 0 <= value < self.p:
            raise ValueError(f"residue {text!r} out of range for p={self.p}")
        return value

    def element(self, a):
        """Public view of a stored coefficient (Fraction or FpElement)."""
        return a if self.p is None else FpElement(a, self.p)


QQ = CoeffDomain()


def GF(p: int) -> CoeffDomain:
    return CoeffDomain(p)
