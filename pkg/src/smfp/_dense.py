"""
Dense genus-2 products for long chains of sparse factors.

Used by the theta-constant generators, where a product of 20 (or a sum
of 10 eighth powers) theta constants has to be expanded to trace 8 at
scale 8.  Keys ``(m11, m12, m22)`` are mapped linearly to nonnegative
array coordinates ``(m11, m22, 2*m12 + m11 + m22)`` (divided by a common
step), so a product becomes a sum of shifted copies of a dense array.

Arithmetic is exact: the product is computed modulo several primes
below 2**31 in int64 and recovered by CRT.  The number of primes comes
from a float64 pass over the absolute values, which bounds every output
coefficient.
"""

from __future__ import annotations

from functools import reduce
from math import gcd, prod

import numpy as np

from .coeffdomain import is_prime

_PRIME_TOP = 1 << 31
# |v| < 2**20 and residues < 2**31: 2**11 accumulated terms stay below 2**63
_FLUSH = 1 << 11


def _primes(n: int) -> list[int]:
    out, c = [], _PRIME_TOP - 1
    while len(out) < n:
        if is_prime(c):
            out.append(c)
        c -= 2
    return out


_PRIME_CACHE = _primes(8)


class _Layout:
    def __init__(self, factors: list[dict], limit: int):
        step = 0
        for f in factors:
            for k in f:
                step = reduce(gcd, k, step)
        self.step = step or 1
        self.n = limit // self.step
        self.shape = (self.n + 1, self.n + 1, 2 * self.n + 1)
        i, j, _ = np.ogrid[: self.n + 1, : self.n + 1, : 2 * self.n + 1]
        self.mask = (i + j) <= self.n

    def coord(self, key):
        a, b, c = (x // self.step for x in key)
        return a, c, 2 * b + a + c

    def sparse(self, f: dict):
        out = []
        for k, v in f.items():
            i, j, k3 = self.coord(k)
            if i + j <= self.n:
                out.append((i, j, k3, v))
        return out

    def key(self, i, j, k3):
        s = self.step
        return (i * s, (k3 - i - j) // 2 * s, j * s)


def _mul_sparse(dense: np.ndarray, terms, n: int, reduce_mod=None) -> np.ndarray:
    out = np.zeros_like(dense)
    I, J, K = dense.shape
    for count, (i, j, k, v) in enumerate(terms, start=1):
        if i + j > n:
            continue
        out[i:, j:, k:] += v * dense[: I - i, : J - j, : K - k]
        if reduce_mod is not None and count % _FLUSH == 0:
            np.remainder(out, reduce_mod, out=out)
    if reduce_mod is not None:
        np.remainder(out, reduce_mod, out=out)
    return out


def _chain(layout: _Layout, chains, dtype, transform, modulus=None) -> np.ndarray:
    """sum over chains of the product of the factors in each chain."""
    total = np.zeros(layout.shape, dtype=dtype)
    outside = ~np.broadcast_to(layout.mask, layout.shape)
    for chain in chains:
        acc = np.zeros(layout.shape, dtype=dtype)
        acc[0, 0, 0] = 1
        for f in chain:
            terms = [(i, j, k, transform(v)) for i, j, k, v in layout.sparse(f)]
            acc = _mul_sparse(acc, terms, layout.n, modulus)
            acc[outside] = 0
        total += acc
        if modulus is not None:
            np.remainder(total, modulus, out=total)
    return total


def sum_of_products(chains: list[list[dict]], limit: int) -> dict:
    """Exact ``sum_c prod_{f in c} f`` for integer-valued genus-2 key maps.

    ``limit`` bounds the trace of M (m11 + m22) of the output keys.  Factor
    coefficients must be small integers (|v| < 2**20).
    """
    factors = [f for c in chains for f in c]
    layout = _Layout(factors, limit)
    if any(abs(v) >= 1 << 20 for f in factors for v in f.values()):
        raise ValueError("factor coefficients too large for the dense engine")

    bound = _chain(layout, chains, np.float64, lambda v: float(abs(v)))
    top = float(bound.max()) if bound.size else 0.0
    need = 2 * top * (1 + 1e-9) + 2
    primes = []
    while prod(primes) < need:
        if len(primes) == len(_PRIME_CACHE):
            _PRIME_CACHE.extend(_primes(len(_PRIME_CACHE) + 4)[len(_PRIME_CACHE):])
        primes.append(_PRIME_CACHE[len(primes)])

    residues = [_chain(layout, chains, np.int64, int, P) for P in primes]
    nz = np.argwhere(np.logical_or.reduce([r != 0 for r in residues]))
    modulus = prod(primes)
    out = {}
    for i, j, k3 in nz:
        # CRT, then lift to the symmetric residue range
        x, m = 0, 1
        for P, r in zip(primes, residues):
            ri = int(r[i, j, k3])
            t = (ri - x) * pow(m, -1, P) % P
            x += m * t
            m *= P
        if x > modulus // 2:
            x -= modulus
        if x:
            out[layout.key(int(i), int(j), int(k3))] = x
    return out
