"""
Half-integral symmetric matrices: the exponents of all expansions.

A form T of genus g at scale d is stored through the integer matrix
``M = 2*d*T``.  M has even diagonal, so at d = 1 the forms are exactly the
classical half-integral matrices (integral diagonal, half-integral
off-diagonal) and at scale d they are ``1/d`` times those.  Entries are kept
as the upper triangle of M in row-major order, which is also the order of
the text rendering ``"g;d;M11,M12,...,Mgg"``.

With the exponent convention q^T = prod q_ii^{T_ii} prod_{i<j} q_ij^{2 T_ij},
the upper-triangle entries of M are (up to the factor d on the diagonal)
the exponents of the q_ij, and addition of forms is the product of
monomials.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

__all__ = [
    "HalfIntegralForm",
    "UnimodularMatrix",
    "act",
    "canonical_key",
    "enumerate_forms",
    "is_psd",
    "reduce_g2",
]


@lru_cache(maxsize=None)
def tri_index(g: int) -> tuple[tuple[int, ...], ...]:
    """``tri_index(g)[i][j]`` is the position of M_ij in the upper triangle."""
    idx = [[0] * g for _ in range(g)]
    pos = 0
    for i in range(g):
        for j in range(i, g):
            idx[i][j] = idx[j][i] = pos
            pos += 1
    return tuple(tuple(r) for r in idx)


@lru_cache(maxsize=None)
def diag_positions(g: int) -> tuple[int, ...]:
    t = tri_index(g)
    return tuple(t[i][i] for i in range(g))


def genus_of_length(n: int) -> int:
    g = (isqrt(8 * n + 1) - 1) // 2
    if g * (g + 1) // 2 != n:
        raise ValueError(f"{n} is not a triangular number")
    return g


def key_trace(key: tuple[int, ...], g: int) -> int:
    """Trace of M for an upper-triangle key."""
    return sum(key[i] for i in diag_positions(g))


def key_to_matrix(key: tuple[int, ...], g: int) -> list[list[int]]:
    t = tri_index(g)
    return [[key[t[i][j]] for j in range(g)] for i in range(g)]


def matrix_to_key(m) -> tuple[int, ...]:
    g = len(m)
    for i in range(g):
        for j in range(i + 1, g):
            if m[i][j] != m[j][i]:
                raise ValueError("matrix is not symmetric")
    return tuple(int(m[i][j]) for i in range(g) for j in range(i, g))


def canonical_key(key: tuple[int, ...], g: int) -> tuple:
    """Sort key of the canonical order: trace of M, then M lexicographically."""
    return (key_trace(key, g), key)


def det_int(m) -> int:
    """Exact determinant of a small integer matrix (Bareiss elimination)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _matmul(a, b):
    return [
        [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def _transpose(a):
    return [list(r) for r in zip(*a)]


@dataclass(frozen=True, order=False)
class HalfIntegralForm:
    """Symmetric g x g exponent matrix T = M / (2d)."""

    g: int
    d: int
    m: tuple[int, ...]

    def __post_init__(self):
        if self.g < 1 or self.d < 1:
            raise ValueError("genus and scale must be positive")
        if len(self.m) != self.g * (self.g + 1) // 2:
            raise ValueError("wrong number of upper-triangle entries")
        if any(self.m[i] % 2 for i in diag_positions(self.g)):
            raise ValueError(f"diagonal of M must be even: {self.m}")

    @classmethod
    def from_matrix(cls, m, d: int = 1) -> HalfIntegralForm:
        """Build from the scaled integer matrix M = 2 d T."""
        return cls(len(m), d, matrix_to_key(m))

    @classmethod
    def from_T(cls, t, d: int = 1) -> HalfIntegralForm:
        """Build from the rational matrix T itself."""
        m = [[Fraction(x) * 2 * d for x in row] for row in t]
        if any(x.denominator != 1 for row in m for x in row):
            raise ValueError(f"{t} is not representable at scale {d}")
        return cls.from_matrix([[int(x) for x in row] for row in m], d)

    @classmethod
    def zero(cls, g: int, d: int = 1) -> HalfIntegralForm:
        return cls(g, d, (0,) * (g * (g + 1) // 2))

    @property
    def matrix(self) -> list[list[int]]:
        return key_to_matrix(self.m, self.g)

    @property
    def T(self) -> list[list[Fraction]]:
        return [[Fraction(x, 2 * self.d) for x in row] for row in self.matrix]

    def entry(self, i: int, j: int) -> Fraction:
        return Fraction(self.m[tri_index(self.g)[i][j]], 2 * self.d)

    @property
    def trace_M(self) -> int:
        return key_trace(self.m, self.g)

    @property
    def trace(self) -> Fraction:
        return Fraction(self.trace_M, 2 * self.d)

    @property
    def det_M(self) -> int:
        return det_int(self.matrix)

    @property
    def det(self) -> Fraction:
        return Fraction(self.det_M, (2 * self.d) ** self.g)

    def is_zero(self) -> bool:
        return not any(self.m)

    def __add__(self, other: HalfIntegralForm) -> HalfIntegralForm:
        if (self.g, self.d) != (other.g, other.d):
            raise ValueError("forms of different genus or scale")
        return HalfIntegralForm(self.g, self.d, tuple(a + b for a, b in zip(self.m, other.m)))

    def scaled(self, n: int) -> HalfIntegralForm:
        """n * T at the same scale."""
        return HalfIntegralForm(self.g, self.d, tuple(n * a for a in self.m))

    def rescale(self, d: int) -> HalfIntegralForm:
        """The same T expressed at scale ``d``."""
        if d == self.d:
            return self
        if d % self.d == 0:
            f = d // self.d
            return HalfIntegralForm(self.g, d, tuple(a * f for a in self.m))
        if self.d % d == 0:
            f = self.d // d
            if all(a % f == 0 for a in self.m):
                m = tuple(a // f for a in self.m)
                if all(m[i] % 2 == 0 for i in diag_positions(self.g)):
                    return HalfIntegralForm(self.g, d, m)
        raise ValueError(f"{self.render()} is not representable at scale {d}")

    def sort_key(self) -> tuple:
        return canonical_key(self.m, self.g)

    def render(self) -> str:
        return f"{self.g};{self.d};" + ",".join(str(a) for a in self.m)

    @classmethod
    def parse(cls, text: str) -> HalfIntegralForm:
        g, d, body = text.strip().split(";")
        m = tuple(int(a) for a in body.split(","))
        return cls(int(g), int(d), m)

    def __str__(self):
        rows = ["[" + ", ".join(str(x) for x in row) + "]" for row in self.T]
        return "[" + ", ".join(rows) + "]"


@dataclass(frozen=True)
class UnimodularMatrix:
    g: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        ent = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", ent)
        if len(ent) != self.g or any(len(r) != self.g for r in ent):
            raise ValueError("shape does not match genus")
        if det_int(ent) not in (1, -1):
            raise ValueError(f"matrix {ent} is not unimodular")

    @classmethod
    def of(cls, rows) -> UnimodularMatrix:
        return cls(len(rows), tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, g: int) -> UnimodularMatrix:
        return cls(g, tuple(tuple(int(i == j) for j in range(g)) for i in range(g)))

    @property
    def det(self) -> int:
        return det_int(self.entries)

    def __matmul__(self, other: UnimodularMatrix) -> UnimodularMatrix:
        return UnimodularMatrix(self.g, tuple(map(tuple, _matmul(self.entries, other.entries))))

    def inverse(self) -> UnimodularMatrix:
        if self.g == 1:
            return self
        if self.g == 2:
            (a, b), (c, d) = self.entries
            s = self.det
            return UnimodularMatrix(2, ((s * d, -s * b), (-s * c, s * a)))
        # adjugate via cofactors; det is +-1 so it is exact
        n, s = self.g, self.det
        cof = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [r[:j] + r[j + 1:] for k, r in enumerate(self.entries) if k != i]
                cof[j][i] = s * (-1) ** (i + j) * det_int(minor)
        return UnimodularMatrix(n, tuple(map(tuple, cof)))

    def mod(self, p: int) -> list[list[int]]:
        return [[x % p for x in row] for row in self.entries]


def transform_key(u, key: tuple[int, ...], g: int) -> tuple[int, ...]:
    """Upper triangle of U^t M U for a plain integer matrix U."""
    m = key_to_matrix(key, g)
    return matrix_to_key(_matmul(_matmul(_transpose(u), m), u))


def is_psd(t: HalfIntegralForm) -> bool:
    """True iff every principal minor of M is nonnegative."""
    m = t.matrix
    for r in range(1, t.g + 1):
        for idx in itertools.combinations(range(t.g), r):
            if det_int([[m[i][j] for j in idx] for i in idx]) < 0:
                return False
    return True


def act(u: UnimodularMatrix, t: HalfIntegralForm) -> HalfIntegralForm:
    """The form U^t T U, at the same scale."""
    if u.g != t.g:
        raise ValueError("genus mismatch")
    return HalfIntegralForm(t.g, t.d, transform_key(u.entries, t.m, t.g))


def reduce_g2(t: HalfIntegralForm) -> tuple[HalfIntegralForm, UnimodularMatrix]:
    """Gauss reduction of a positive semidefinite binary form.

    Returns ``(T_red, U)`` with ``act(U, T) == T_red`` and
    ``0 <= 2*M12 <= M11 <= M22``.  The reduced form is the unique such
    representative of the GL(2, Z)-orbit.
    """
    if t.g != 2:
        raise ValueError("reduce_g2 needs genus 2")
    if not is_psd(t):
        raise ValueError(f"{t.render()} is not positive semidefinite")
    a, b, c = t.m
    u = [[1, 0], [0, 1]]

    def apply(v):
        nonlocal a, b, c, u
        a, b, c = transform_key(v, (a, b, c), 2)
        u = _matmul(u, v)

    while True:
        if a > c:
            apply([[0, 1], [1, 0]])
        if a == 0:
            # psd forces b == 0 here
            break
        if 2 * abs(b) > a:
            # x -> x - k y with k the nearest integer to b / a
            k = (2 * b + a) // (2 * a)
            apply([[1, -k], [0, 1]])
            continue
        if a <= c:
            break
    if b < 0:
        apply([[1, 0], [0, -1]])
    return HalfIntegralForm(2, t.d, (a, b, c)), UnimodularMatrix(2, tuple(map(tuple, u)))


def enumerate_forms(g: int, bound, d: int = 1) -> list[HalfIntegralForm]:
    """All psd forms at scale ``d`` with trace(T) <= bound, in canonical order."""
    return [HalfIntegralForm(g, d, k) for k in enumerate_keys(g, bound, d)]


def enumerate_keys(g: int, bound, d: int = 1) -> list[tuple[int, ...]]:
    if g not in (1, 2):
        raise ValueError("enumeration is implemented for genus 1 and 2")
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    limit = int(Fraction(bound) * 2 * d)
    keys = []
    if g == 1:
        keys = [(a,) for a in range(0, limit + 1, 2)]
    else:
        for a in range(0, limit + 1, 2):
            for c in range(0, limit - a + 1, 2):
                r = isqrt(a * c)
                for b in range(-r, r + 1):
                    keys.append((a, b, c))
    keys.sort(key=lambda k: canonical_key(k, g))
    return keys
