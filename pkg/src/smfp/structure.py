"""
Verification algorithms on expansions.

* p-singularity and p-th roots of expansions (``f = A^r h^p``),
* weight bookkeeping for forms with equal expansions,
* genus-1 structure: expressing a form in E4, E6 and an exhaustive search
  for factorizations of A - 1 in the graded ring F_p[E4, E6],
* the linear constraints on the matrix coefficients a(T) of a 1-form
  (vanishing along v^t a(T) v when v^t T v != 0), the rank-one forms over
  F_p, the equivariance law a(U^t T U) = U^t a(T) U, and p-singularity of
  theta components.

"p divides T" is read as: p divides every entry of M = 2dT, i.e. T/p is
again a form at the same scale.  This needs p coprime to 2d.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .coeffdomain import QQ, CoeffDomain
from .errors import (
    DomainMismatch,
    InsufficientPrecision,
    NonIntegralAtP,
    NoSolution,
    ScaleModulusClash,
    WeightInfeasible,
)
from .generators import eisenstein_g1
from .linalg import nullspace, solve
from .operators import op_U, op_V
from .quadforms import (
    HalfIntegralForm,
    enumerate_keys,
    key_trace,
    reduce_g2,
    transform_key,
)
from .qseries import MatrixQSeries, QSeries, ThetaComponents, eq_upto, mul, power, reduce_series

__all__ = [
    "Factorization",
    "Irreducible",
    "PRoot",
    "equivariance_check",
    "equivariant_one_form",
    "express_in_generators_g1",
    "irreducibility_search_g1",
    "is_p_singular",
    "p_root",
    "rank1_classify",
    "section_p_singularity_check",
    "star_star_solver",
    "tp_equals_v_check",
    "weight_congruence",
]


def _prime_of(f) -> int:
    p = f.p
    if p is None:
        raise DomainMismatch("needs a series over F_p")
    return p


def is_p_singular(f: QSeries) -> bool:
    """True iff every nonzero coefficient sits at some T = p T'."""
    p = _prime_of(f)
    if (2 * f.d) % p == 0:
        raise ScaleModulusClash(f"p={p} divides 2d={2 * f.d}")
    return all(all(a % p == 0 for a in k) for k in f.raw())


class PRoot(NamedTuple):
    r: int
    kprime: int
    h: QSeries


def p_root(f: QSeries, k: int) -> PRoot:
    """Write a p-singular expansion of weight k as A^r h^p.

    Since the Hasse invariant A has expansion 1 and Frobenius is the
    identity on F_p, the expansion of h is U(f).  The weights satisfy
    k = r (p - 1) + p k' with 0 <= r <= p - 1; no such pair with k' >= 0
    means the weight is infeasible (only the zero form could live there).
    """
    p = _prime_of(f)
    if not is_p_singular(f):
        raise ValueError("expansion is not totally p-singular")
    if k < 0:
        raise ValueError("weight must be nonnegative")
    r = -k % p
    rest = k - r * (p - 1)
    if rest < 0:
        raise WeightInfeasible(
            f"weight {k} admits no decomposition r(p-1) + p k' with k' >= 0 at p={p}")
    kprime = rest // p
    h = op_U(f).with_weight(kprime)
    # internal postcondition: h^p reproduces f.  In characteristic p the
    # truncation of h raised to the p-th power is exact up to p * bound(h).
    top = (f.bound // p) * p
    lifted = h._new(dict(h.raw()), bound=top)
    if not eq_upto(power(lifted, p), f, top):
        raise AssertionError("p-th root does not reproduce the input")
    return PRoot(r, kprime, h)


def weight_congruence(k1: int, k2: int, p: int) -> bool:
    """Equal expansions force k1 = k2 mod (p - 1)."""
    return (k1 - k2) % (p - 1) == 0


# ---------------------------------------------------------------------------
# genus 1: the graded ring F[E4, E6]


def monomials(k: int) -> list[tuple[int, int]]:
    """Exponents (a, b) with 4a + 6b = k, a descending."""
    if k < 0 or k % 2:
        return []
    return [(a, (k - 4 * a) // 6) for a in range(k // 4, -1, -1) if (k - 4 * a) % 6 == 0]


def _monomial_series(a: int, b: int, bound: int, domain: CoeffDomain) -> QSeries:
    one = QSeries.constant(1, QQ, 1, 0, bound)
    f = one
    if a:
        f = mul(f, power(eisenstein_g1(4, bound), a))
    if b:
        f = mul(f, power(eisenstein_g1(6, bound), b))
    return f if domain.p is None else reduce_series(f, domain.p)


def express_in_generators_g1(f: QSeries, k: int | None = None) -> dict:
    """Coefficients c_ab with f = sum c_ab E4^a E6^b (genus 1, weight k)."""
    if f.g != 1:
        raise ValueError("genus-1 series expected")
    k = int(f.weight if k is None else k)
    mons = monomials(k)
    if not mons:
        raise NoSolution(f"no monomials E4^a E6^b of weight {k}")
    bound = f.bound
    if bound + 1 < len(mons):
        raise InsufficientPrecision(
            f"{len(mons)} monomials need coefficients up to q^{len(mons) - 1}")
    dom = f.domain
    cols = [_monomial_series(a, b, bound, dom).coefficient_list() for a, b in mons]
    target = f.coefficient_list()
    rows = [[c[n] for c in cols] for n in range(bound + 1)]
    try:
        x = solve(rows, target, dom)
    except ValueError:
        raise InsufficientPrecision("coefficients do not determine the combination") from None
    if x is None:
        raise NoSolution("expansion is not a combination of E4^a E6^b")
    return {m: v for m, v in zip(mons, x) if v}


# homogeneous elements of F_p[x4, x6] are dicts {(a, b): c}


def _poly_mul(f: dict, g: dict, p: int) -> dict:
    out: dict = {}
    for (a1, b1), c1 in f.items():
        for (a2, b2), c2 in g.items():
            key = (a1 + a2, b1 + b2)
            out[key] = (out.get(key, 0) + c1 * c2) % p
    return {k: v for k, v in out.items() if v}


def _poly_add(f: dict, g: dict, p: int) -> dict:
    out = dict(f)
    for k, v in g.items():
        out[k] = (out.get(k, 0) + v) % p
    return {k: v for k, v in out.items() if v}


@dataclass
class Irreducible:
    p: int
    hasse: dict
    splits: list
    assignments: int

    def __bool__(self):
        return True


@dataclass
class Factorization:
    p: int
    hasse: dict
    F: dict = field(default_factory=dict)
    G: dict = field(default_factory=dict)

    def __bool__(self):
        return False


def hasse_polynomial(p: int) -> dict:
    """E_{p-1} mod p as a polynomial in x4 = E4, x6 = E6."""
    k = p - 1
    bound = len(monomials(k)) + 2
    coeffs = express_in_generators_g1(eisenstein_g1(k, bound), k)
    out = {}
    for m, c in coeffs.items():
        if c.denominator % p == 0:
            raise NonIntegralAtP(f"coefficient {c} of E_{k} is not {p}-integral")
        v = c.numerator * pow(c.denominator, -1, p) % p
        if v:
            out[m] = v
    return out


def irreducibility_search_g1(p: int, hasse: dict | None = None):
    """Exhaustive search for A - 1 = F G in F_p[E4, E6].

    F = F_0 + ... + F_s and G = G_0 + ... + G_t with homogeneous F_i, G_j of
    weight i, j; s + t = p - 1 and s, t > 0 weights that carry forms.  Units
    are normalized by F_0 = 1, G_0 = -1.  Degree by degree every
    assignment of the new components is tried against the graded equation
    sum_{i+j=n} F_i G_j = (A - 1)_n, so the search is exhaustive over all
    coefficient vectors while discarding inconsistent prefixes early.

    ``hasse`` replaces the image of E_{p-1} by another homogeneous
    polynomial of weight p - 1 (used to test the search itself).
    """
    if p < 5:
        raise ValueError("needs p >= 5")
    top = p - 1
    A = hasse_polynomial(p) if hasse is None else hasse
    if any(4 * a + 6 * b != top for a, b in A):
        raise ValueError(f"target must be homogeneous of weight {top}")
    weights = [w for w in range(2, top) if monomials(w)]
    splits = [(s, top - s) for s in weights if monomials(top - s)]
    count = 0

    def vectors(n):
        basis = monomials(n)
        for coeffs in itertools.product(range(p), repeat=len(basis)):
            yield {m: c for m, c in zip(basis, coeffs) if c}

    for s, t in splits:
        F = {0: {(0, 0): 1}}
        G = {0: {(0, 0): p - 1}}

        def known(n):
            acc: dict = {}
            for i in range(0, n + 1):
                j = n - i
                if i in F and j in G:
                    acc = _poly_add(acc, _poly_mul(F[i], G[j], p), p)
            return acc

        def search(n):
            nonlocal count
            if n > top:
                return True
            target = A if n == top else {}
            f_opts = list(vectors(n)) if (0 < n <= s and monomials(n)) else [None]
            g_opts_all = list(vectors(n)) if (0 < n <= t and monomials(n)) else [None]
            for fv in f_opts:
                if fv is not None:
                    F[n] = fv
                for gv in g_opts_all:
                    count += 1
                    if gv is not None:
                        G[n] = gv
                    if known(n) == target and search(n + 1):
                        return True
                    G.pop(n, None) if gv is not None else None
                F.pop(n, None) if fv is not None else None
            return False

        if search(1):
            strip = lambda h: {w: c for w, c in h.items() if c}  # noqa: E731
            return Factorization(p, A, strip(F), strip(G))
    return Irreducible(p, A, splits, count)


# ---------------------------------------------------------------------------
# constraints on the matrix coefficients of a 1-form


def _quad(v, m, p) -> int:
    g = len(v)
    return sum(v[i] * m[i][j] * v[j] for i in range(g) for j in range(g)) % p


def star_star_solver(p: int, tbar) -> list[list[list[int]]]:
    """Basis of symmetric S over F_p with v^t S v = 0 whenever v^t Tbar v != 0."""
    CoeffDomain(p)
    g = len(tbar)
    pairs = [(i, j) for i in range(g) for j in range(i, g)]
    rows = []
    for v in itertools.product(range(p), repeat=g):
        if _quad(v, tbar, p):
            rows.append([(v[i] * v[j] * (1 if i == j else 2)) % p for i, j in pairs])
    basis = nullspace(rows, len(pairs), CoeffDomain(p))
    out = []
    for vec in basis:
        s = [[0] * g for _ in range(g)]
        for (i, j), x in zip(pairs, vec):
            s[i][j] = s[j][i] = x
        out.append(s)
    return out


def rank1_classify(p: int, nu: int) -> list[list[list[int]]]:
    """All symmetric 2x2 Tbar over F_p of rank <= 1 with Tbar_22 = nu."""
    CoeffDomain(p)
    nu %= p
    if not nu:
        raise ValueError("nu must be nonzero mod p")
    found = []
    for t11, t12 in itertools.product(range(p), repeat=2):
        if (t11 * nu - t12 * t12) % p == 0:
            found.append([[t11, t12], [t12, nu]])
    expected = sorted(([[x * x * nu % p, x * nu % p], [x * nu % p, nu]] for x in range(p)))
    if sorted(found) != expected or len(found) != p:
        raise AssertionError("rank-one forms do not match x -> [[x^2 nu, x nu], [x nu, nu]]")
    return found


def _conj(u, a, p):
    """U^t a U mod p for 2d lists."""
    g = len(u)
    ut_a = [[sum(u[k][i] * a[k][j] for k in range(g)) for j in range(g)] for i in range(g)]
    return [[sum(ut_a[i][k] * u[k][j] for k in range(g)) % p for j in range(g)]
            for i in range(g)]


def equivariance_check(eta: MatrixQSeries, us) -> bool:
    """a(U^t T U) = U^t a(T) U for all in-bound pairs, and a(0) = 0."""
    p, g = eta.p, eta.g
    zero_key = (0,) * (g * (g + 1) // 2)
    if zero_key in eta.raw():
        return False
    limit = 2 * eta.d * eta.bound
    for u in us:
        mats = [u.entries, u.inverse().entries]
        for k in list(eta.raw()):
            for uu, direction in zip(mats, (1, -1)):
                k2 = transform_key(uu, k, g)
                if key_trace(k2, g) > limit:
                    continue
                if direction == 1:
                    src, dst, w = k, k2, uu
                else:
                    # k = act(U, k2): check a(k) = U^t a(k2) U
                    src, dst, w = k2, k, u.entries
                if _conj(w, eta[src], p) != eta[dst]:
                    return False
    return True


def _stabilizer(key, g=2):
    out = []
    for e in itertools.product((-1, 0, 1), repeat=4):
        u = [[e[0], e[1]], [e[2], e[3]]]
        if abs(u[0][0] * u[1][1] - u[0][1] * u[1][0]) != 1:
            continue
        if transform_key(u, key, g) == key:
            out.append(u)
    return out


def equivariant_one_form(p: int, seeds, bound: int, d: int = 1) -> MatrixQSeries:
    """Genus-2 1-form expansion satisfying the equivariance law by construction.

    ``seeds`` maps positive definite forms T to symmetric matrices S; each
    seed is averaged over the stabilizer of its reduced form and then
    transported to every form of its GL(2, Z)-orbit within the bound.
    """
    coeffs: dict = {}
    all_keys = enumerate_keys(2, bound, d)
    for t, s in seeds.items():
        t = t if isinstance(t, HalfIntegralForm) else HalfIntegralForm(2, d, tuple(t))
        if t.det_M <= 0:
            raise ValueError("seed forms must be positive definite")
        t_red, u0 = reduce_g2(t)
        s = _conj(u0.entries, s, p)              # a(T_red) = U0^t S U0
        avg = [[0, 0], [0, 0]]
        for u in _stabilizer(t_red.m):
            c = _conj(u, s, p)
            avg = [[(avg[i][j] + c[i][j]) % p for j in range(2)] for i in range(2)]
        for key in all_keys:
            red, u1 = reduce_g2(HalfIntegralForm(2, d, key))
            if red != t_red:
                continue
            # key = act(U1^{-1}, T_red)
            w = u1.inverse().entries
            val = _conj(w, avg, p)
            coeffs[key] = tuple(val[i][j] for i in range(2) for j in range(i, 2))
    return MatrixQSeries(2, p, bound, d, coeffs)


def section_p_singularity_check(components: ThetaComponents, p: int, M: int) -> bool:
    """Every component h_r is supported on exponents n/M with p | n.

    The component attached to (r, D) carries q11^{D / (4 nu)}; its index in
    the 1/M-scaled variable is n = M D / (4 nu).
    """
    if M % p == 0:
        raise ValueError("p must not divide M")
    for comp in components.components.values():
        for D, v in comp.items():
            if not (any(v) if isinstance(v, tuple) else v):
                continue
            n = Fraction(D) * M / (4 * components.nu)
            if n.denominator != 1:
                raise ValueError(f"exponent {Fraction(D, 4 * components.nu)} is not in (1/{M})Z")
            if n.numerator % p:
                return False
    return True


def tp_image_mod_p(lift: QSeries, p: int, k: int | None = None) -> QSeries:
    """Classical T(p) on an integral genus-1 lift, then reduced mod p."""
    if lift.g != 1 or lift.domain != QQ:
        raise ValueError("needs a rational genus-1 lift")
    k = int(lift.weight if k is None else k)
    a = lift.rescale(1).raw()
    zero = Fraction(0)
    bound = lift.bound // p
    out = {}
    for n in range(bound + 1):
        v = a.get((2 * p * n,), zero)
        if n % p == 0:
            v += p ** (k - 1) * a.get((2 * (n // p),), zero)
        if v:
            out[(2 * n,)] = v
    image = QSeries(1, QQ, k, bound, 1, out)
    return reduce_series(image, p)


def tp_equals_v_check(lift: QSeries, p: int, k: int | None = None) -> bool:
    """Compare (T(p) lift) mod p with V(lift mod p) up to the common bound."""
    k = int(lift.weight if k is None else k)
    if k < lift.g + 1:
        raise ValueError(f"weight {k} < g + 1 = {lift.g + 1}")
    tp = tp_image_mod_p(lift, p, k)
    v = op_V(reduce_series(lift, p))
    return eq_upto(tp.with_weight(None), v.with_weight(None), min(tp.bound, v.bound))
