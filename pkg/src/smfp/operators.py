"""
Operators on expansions.

U, V, the Siegel Phi operator, genus-1 Hecke operators T(l), the Cartier
operator on matrix-valued 1-form expansions, the two theta-type operators
``a(T) -> det(T) a(T)`` and ``a(T) -> T a(T)``, Fourier-Jacobi extraction
and theta decomposition of Jacobi slices.

Every operator accepts an optional ``log`` list; when given, an
:class:`OperatorLog` entry recording weights and bounds is appended.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .coeffdomain import QQ, is_prime
from .errors import (
    DomainMismatch,
    NonIntegralAtP,
    NotThetaDecomposable,
    ScaleModulusClash,
)
from .quadforms import det_int, key_to_matrix, key_trace, tri_index
from .qseries import JacobiSlice, MatrixQSeries, QSeries, ThetaComponents

__all__ = [
    "OperatorLog",
    "cartier",
    "embed_slice",
    "embed_theta_components",
    "fourier_jacobi",
    "hecke_Tl_g1",
    "op_U",
    "op_V",
    "op_phi",
    "op_theta_det",
    "op_theta_matrix",
    "theta_decompose",
    "theta_fa",
    "theta_matrix_sum",
    "verify_theta_identity",
]


@dataclass(frozen=True)
class OperatorLog:
    name: str
    weight_in: Fraction | None
    weight_out: Fraction | None
    bound_in: int
    bound_out: int

    def as_dict(self) -> dict:
        w = lambda k: None if k is None else str(k)  # noqa: E731
        return {"name": self.name, "weight_in": w(self.weight_in),
                "weight_out": w(self.weight_out), "bound_in": self.bound_in,
                "bound_out": self.bound_out}


def _record(log, name, src, out):
    if log is not None:
        log.append(OperatorLog(name, getattr(src, "weight", None),
                               getattr(out, "weight", None), src.bound, out.bound))
    return out


def _require_fp(f) -> int:
    p = f.p
    if p is None:
        raise DomainMismatch("operator needs a series over F_p")
    return p


def op_U(f: QSeries, *, log=None) -> QSeries:
    """a(T) -> a(pT).  The bound drops to floor(B/p); the weight label is kept."""
    p = _require_fp(f)
    out = {}
    for k, v in f.raw().items():
        if all(a % p == 0 for a in k):
            out[tuple(a // p for a in k)] = v
    return _record(log, "U", f, f._new(out, bound=f.bound // p))


def op_V(f: QSeries, *, cap: int | None = None, log=None) -> QSeries:
    """Support dilation T -> pT; weight is multiplied by p.

    The result is exact up to p*B, optionally truncated to ``cap``.
    """
    p = _require_fp(f)
    bound = p * f.bound if cap is None else min(p * f.bound, cap)
    limit = 2 * f.d * bound
    out = {}
    for k, v in f.raw().items():
        nk = tuple(p * a for a in k)
        if key_trace(nk, f.g) <= limit:
            out[nk] = v
    weight = None if f.weight is None else p * f.weight
    return _record(log, "V", f, f._new(out, weight=weight, bound=bound))


def op_phi(f: QSeries, *, log=None) -> QSeries:
    """Siegel Phi: keep keys with vanishing last row/column, drop the genus by one."""
    g = f.g
    if g < 2:
        raise ValueError("Phi needs genus >= 2")
    idx = tri_index(g)
    last = {idx[i][g - 1] for i in range(g)}
    keep = [idx[i][j] for i in range(g - 1) for j in range(i, g - 1)]
    out = {}
    for k, v in f.raw().items():
        if all(k[i] == 0 for i in last):
            out[tuple(k[i] for i in keep)] = v
    return _record(log, "phi", f, f._new(out, g=g - 1))


def hecke_Tl_g1(f: QSeries, l: int, k=None, *, log=None) -> QSeries:
    """Classical genus-1 Hecke operator: a(n) -> a(ln) + l^(k-1) a(n/l)."""
    if f.g != 1:
        raise ValueError("hecke_Tl_g1 needs a genus-1 series")
    if not is_prime(l):
        raise ValueError(f"l={l} is not prime")
    k = f.weight if k is None else Fraction(k)
    if k is None or k.denominator != 1 or k < 1:
        raise ValueError(f"weight {k} is not a positive integer")
    if f.weight is not None and k != f.weight:
        raise ValueError(f"weight {k} does not match the series weight {f.weight}")
    p = f.p
    if p is not None and l == p:
        raise ValueError("T(p) is not available on F_p series; its reduction is compared "
                         "against V by tp_equals_v_check")
    dom = f.domain
    g1 = f.rescale(1)
    a = g1.raw()
    zero = dom.zero()
    factor = dom.convert(l ** (int(k) - 1))
    bound = f.bound // l
    out = {}
    for n in range(bound + 1):
        v = a.get((2 * l * n,), zero)
        if n % l == 0:
            v = dom.add(v, dom.mul(factor, a.get((2 * (n // l),), zero)))
        if v:
            out[(2 * n,)] = v
    return _record(log, f"T({l})", f, g1._new(out, bound=bound, d=1))


def cartier(eta: MatrixQSeries, *, log=None) -> MatrixQSeries:
    """Keep the p-divisible support and divide it by p.

    The p-th root of a coefficient is the identity on F_p, so entries are
    copied unchanged.
    """
    p = eta.p
    out = {}
    for k, v in eta.raw().items():
        if all(a % p == 0 for a in k):
            out[tuple(a // p for a in k)] = v
    return _record(log, "cartier", eta, eta._new(out, bound=eta.bound // p))


def op_theta_det(f: QSeries, *, log=None) -> QSeries:
    """a(T) -> det(T) a(T) with the exact rational determinant of T."""
    dom = f.domain
    den = (2 * f.d) ** f.g
    out = {}
    for k, v in f.raw().items():
        det = Fraction(det_int(key_to_matrix(k, f.g)), den)
        if not det:
            continue
        if dom.p is not None and det.denominator % dom.p == 0:
            raise NonIntegralAtP(
                f"det(T)={det} at T={f.form(k).render()} is not {dom.p}-integral",
                key=f.form(k))
        w = dom.mul(v, dom.convert(det))
        if w:
            out[k] = w
    return _record(log, "thetadet", f, f._new(out, weight=None))


def op_theta_matrix(f: QSeries, *, log=None) -> MatrixQSeries:
    """a(T) -> T a(T), a symmetric-matrix valued series over F_p."""
    p = _require_fp(f)
    if (2 * f.d) % p == 0:
        raise ScaleModulusClash(f"p={p} divides 2d={2 * f.d}")
    inv = pow(2 * f.d, -1, p)
    out = {}
    for k, v in f.raw().items():
        val = tuple(a * inv * v % p for a in k)
        if any(val):
            out[k] = val
    res = MatrixQSeries(f.g, p, f.bound, f.d, out, _trusted=True)
    return _record(log, "thetamatrix", f, res)


# ---------------------------------------------------------------------------
# Fourier-Jacobi expansion along q22 and theta decomposition


def fourier_jacobi(f, nu: int) -> JacobiSlice:
    """Slice of a genus-2 series (scalar or matrix) at q22-exponent nu."""
    if f.g != 2:
        raise ValueError("fourier_jacobi needs genus 2")
    if nu < 1:
        raise ValueError("nu must be positive")
    two_d = 2 * f.d
    target = two_d * nu
    coeffs = {}
    for (a, b, c), v in f.raw().items():
        if c == target:
            coeffs[(Fraction(a, two_d), Fraction(b, two_d))] = v
    bound = max(f.bound - nu, 0)
    if isinstance(f, MatrixQSeries):
        return JacobiSlice(nu, f.d, bound, coeffs, domain=None, p=f.p)
    return JacobiSlice(nu, f.d, bound, coeffs, domain=f.domain, p=f.p)


def embed_slice(s: JacobiSlice, bound: int | None = None):
    """Inverse of :func:`fourier_jacobi`: the genus-2 series carrying one slice."""
    two_d = 2 * s.d
    bound = s.bound + s.nu if bound is None else bound
    coeffs = {}
    for (t0, t1), v in s.coeffs.items():
        m11, m12 = Fraction(t0) * two_d, Fraction(t1) * two_d
        if m11.denominator != 1 or m12.denominator != 1:
            raise ValueError(f"slice key ({t0}, {t1}) is not on the scale-{s.d} lattice")
        coeffs[(int(m11), int(m12), two_d * s.nu)] = v
    if s.domain is None:
        return MatrixQSeries(2, s.p, bound, s.d, coeffs)
    return QSeries(2, s.domain, None, bound, s.d, coeffs)


def _residue(x: Fraction, modulus: int):
    r = Fraction(x) % modulus
    return int(r) if r.denominator == 1 else r


def theta_decompose(s: JacobiSlice) -> ThetaComponents:
    """Group slice coefficients by r = 2 t1 mod 2 nu and D = 4 nu t0 - (2 t1)^2.

    Keys in the same class must carry equal coefficients (they are related
    by T -> U^t T U with U = [[1, 0], [g, 1]]); otherwise the slice cannot
    come from an invariant form and :class:`NotThetaDecomposable` is raised.
    """
    nu = s.nu
    comps: dict = {}
    seen: dict = {}
    for (t0, t1), v in s.coeffs.items():
        two_t1 = 2 * Fraction(t1)
        r = _residue(two_t1, 2 * nu)
        D = 4 * nu * Fraction(t0) - two_t1 ** 2
        D = int(D) if D.denominator == 1 else D
        slot = comps.setdefault(r, {})
        if D in slot:
            if slot[D] != v:
                raise NotThetaDecomposable(
                    f"keys {seen[(r, D)]} and {(t0, t1)} share (r, D) = ({r}, {D}) "
                    f"but carry different coefficients")
            continue
        slot[D] = v
        seen[(r, D)] = (t0, t1)
    return ThetaComponents(nu, comps, domain=s.domain, p=s.p)


def embed_theta_components(c: ThetaComponents, bound: int, d: int = 1) -> JacobiSlice:
    """All slice keys with t0 <= bound represented by the given components."""
    nu = c.nu
    two_nu = 2 * nu
    coeffs = {}
    for r, comp in c.components.items():
        r = Fraction(r)
        for D, v in comp.items():
            D = Fraction(D)
            room = 4 * nu * bound - D          # need (2 t1)^2 <= room
            if room < 0:
                continue
            xmax = isqrt(int(room)) + 1
            j0 = int((-xmax - r) // two_nu) - 1
            j1 = int((xmax - r) // two_nu) + 1
            for j in range(j0, j1 + 1):
                x = r + two_nu * j          # x = 2 t1
                if x * x > room:
                    continue
                t0 = (D + x * x) / (4 * nu)
                m11, m12 = t0 * 2 * d, x * d
                if m11.denominator == 1 and m12.denominator == 1 and m11 % 2 == 0:
                    coeffs[(t0, x / 2)] = v
    return JacobiSlice(nu, d, bound, coeffs, domain=c.domain, p=c.p)


# ---------------------------------------------------------------------------
# theta series f_a^(i) and the matrix identity for theta_a^A


def _theta_terms(nu: int, a_num: int, bound):
    """Yield (g, key) for the lattice sum, keys at scale d = 4 nu.

    The exponent attached to g is T = [[nu y^2, nu y], [nu y, nu]] with
    y = g + a/nu and a = a_num/2, i.e. q11^{nu y^2} q12^{2 nu y} q22^nu.
    """
    room = 4 * nu * (Fraction(bound) - nu)      # need (2 nu y)^2 <= room
    if room < 0:
        return
    smax = isqrt(int(room))
    lo = (-smax - a_num) // (2 * nu) - 1
    hi = (smax - a_num) // (2 * nu) + 1
    for g in range(lo, hi + 1):
        s = 2 * nu * g + a_num          # s = 2 nu y
        if s * s > room:
            continue
        # M = 2 d T with d = 4 nu
        yield g, (2 * s * s, 4 * nu * s, 8 * nu * nu)


def theta_fa(nu: int, a_num: int, i: int, bound) -> QSeries:
    """sum_g g^i q11^{nu (g + a/nu)^2} q12^{2 nu (g + a/nu)} q22^nu, a = a_num/2.

    Returned as a genus-2 rational series at scale 4*nu.  The q22^nu factor
    is kept so that every exponent is a semidefinite form.
    """
    if nu < 1:
        raise ValueError("nu must be positive")
    if i not in (0, 1, 2):
        raise ValueError("i must be 0, 1 or 2")
    a_num %= 2 * nu
    coeffs = {}
    d = 4 * nu
    for g, key in _theta_terms(nu, a_num, bound):
        if g ** i:
            coeffs[key] = Fraction(g ** i)
    return QSeries(2, QQ, None, int(bound), d, coeffs, _trusted=True)


def theta_matrix_sum(A, nu: int, a_num: int, bound) -> dict:
    """Direct evaluation of sum_g [[1,g],[0,1]] A [[1,0],[g,1]] q^{T(g)}.

    Returns ``{key: 2x2 integer matrix as upper triangle}`` at scale 4*nu.
    """
    (a0, a1), (a1b, a2) = A
    if a1 != a1b:
        raise ValueError("A must be symmetric")
    out = {}
    for g, key in _theta_terms(nu, a_num % (2 * nu), bound):
        left = [[1, g], [0, 1]]
        right = [[1, 0], [g, 1]]
        prod = [[sum(left[i][k] * A[k][j] for k in range(2)) for j in range(2)]
                for i in range(2)]
        prod = [[sum(prod[i][k] * right[k][j] for k in range(2)) for j in range(2)]
                for i in range(2)]
        val = (prod[0][0], prod[0][1], prod[1][1])
        if any(val):
            out[key] = val
    return out


def verify_theta_identity(A, a_num: int, nu: int, bound) -> bool:
    """Check theta_a^A = A f_a + [[2a1,a2],[a2,0]] f_a' + [[a2,0],[0,0]] f_a''."""
    (a0, a1), (_, a2) = A
    lhs = theta_matrix_sum(A, nu, a_num, bound)
    fs = [theta_fa(nu, a_num, i, bound).raw() for i in range(3)]
    mats = [(a0, a1, a2), (2 * a1, a2, 0), (a2, 0, 0)]
    rhs: dict = {}
    for f, m in zip(fs, mats):
        for key, c in f.items():
            c = int(c)
            cur = rhs.get(key, (0, 0, 0))
            rhs[key] = tuple(x + c * y for x, y in zip(cur, m))
    rhs = {k: v for k, v in rhs.items() if any(v)}
    return lhs == rhs
