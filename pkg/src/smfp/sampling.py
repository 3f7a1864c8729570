"""Seeded random expansions for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .coeffdomain import QQ, CoeffDomain
from .quadforms import enumerate_keys
from .qseries import MatrixQSeries, QSeries


def random_qseries(rng: random.Random, g: int, p: int | None, bound: int, *, d: int = 1,
                   weight=0, density: float = 0.6, height: int = 9) -> QSeries:
    """Random series on all forms of trace <= bound; rational entries when p is None."""
    dom = QQ if p is None else CoeffDomain(p)
    coeffs = {}
    for key in enumerate_keys(g, bound, d):
        if rng.random() > density:
            continue
        if p is None:
            v = Fraction(rng.randint(-height, height), rng.randint(1, 3))
        else:
            v = rng.randrange(p)
        if v:
            coeffs[key] = v
    return QSeries(g, dom, weight, bound, d, coeffs)


def random_matrix_series(rng: random.Random, p: int, bound: int, *, g: int = 2, d: int = 1,
                         density: float = 0.6) -> MatrixQSeries:
    n = g * (g + 1) // 2
    coeffs = {}
    for key in enumerate_keys(g, bound, d):
        if rng.random() > density:
            continue
        val = tuple(rng.randrange(p) for _ in range(n))
        if any(val):
            coeffs[key] = val
    return MatrixQSeries(g, p, bound, d, coeffs)
