"""
Truncated Fourier expansions indexed by half-integral forms.

A :class:`QSeries` is a finite map from forms T (stored as upper-triangle
keys of M = 2dT, see :mod:`smfp.quadforms`) to coefficients, together with
the trace bound B below which the expansion is known exactly.  Zero
coefficients are never stored.  Multiplication truncates by trace, which is
additive, so every coefficient of a product with trace <= min(B_f, B_g) is
exact.

:class:`MatrixQSeries` carries symmetric-matrix coefficients over F_p and
models the 1-forms  sum_T Trace(a(T) dlog q) q^T.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .coeffdomain import QQ, CoeffDomain
from .errors import (
    DomainMismatch,
    InsufficientPrecision,
    NonIntegralAtP,
    ParseError,
    WeightMismatch,
)
from .quadforms import (
    HalfIntegralForm,
    canonical_key,
    diag_positions,
    is_psd,
    key_to_matrix,
    key_trace,
)

__all__ = [
    "GradedForm",
    "JacobiSlice",
    "MatrixQSeries",
    "QSeries",
    "ThetaComponents",
    "add",
    "add_inhomogeneous",
    "deserialize",
    "eq_upto",
    "mul",
    "power",
    "reduce_series",
    "serialize",
    "sub",
]

MAGIC = "SMFP v1"


def _as_key(t, g: int, d: int) -> tuple[int, ...]:
    if isinstance(t, HalfIntegralForm):
        if t.g != g:
            raise ValueError(f"form of genus {t.g} in a genus-{g} series")
        return t.rescale(d).m
    if isinstance(t, (int, Fraction)):
        # genus 1 shorthand: the exponent n of q^n
        if g != 1:
            raise ValueError("scalar exponents are only meaningful in genus 1")
        m = 2 * d * Fraction(t)
        if m.denominator != 1:
            raise ValueError(f"q^{t} is not on the scale-{d} lattice")
        return (int(m),)
    return tuple(t)


def _as_weight(k):
    if k is None:
        return None
    k = Fraction(k)
    if k.denominator not in (1, 2):
        raise ValueError(f"weight {k} is not half-integral")
    return k


def _common_scale(*series) -> int:
    return lcm(*(s.d for s in series))


class _Expansion:
    """Shared bookkeeping of scalar and matrix series."""

    __slots__ = ("g", "bound", "d", "_c")

    def _limit(self) -> int:
        return 2 * self.d * self.bound

    def _validate_key(self, key: tuple[int, ...]) -> None:
        if len(key) != self.g * (self.g + 1) // 2:
            raise ValueError(f"key {key} does not have genus {self.g}")
        t = HalfIntegralForm(self.g, self.d, key)
        if not is_psd(t):
            raise ValueError(f"key {t.render()} is not positive semidefinite")
        if key_trace(key, self.g) > self._limit():
            raise ValueError(f"key {t.render()} exceeds the trace bound {self.bound}")

    def form(self, key: tuple[int, ...]) -> HalfIntegralForm:
        return HalfIntegralForm(self.g, self.d, key)

    def sorted_keys(self) -> list[tuple[int, ...]]:
        g = self.g
        return sorted(self._c, key=lambda k: canonical_key(k, g))

    def keys(self) -> list[HalfIntegralForm]:
        return [self.form(k) for k in self.sorted_keys()]

    def raw(self) -> dict:
        """The underlying ``{upper-triangle key: coefficient}`` map (read-only use)."""
        return self._c

    def __len__(self) -> int:
        return len(self._c)

    def __contains__(self, t) -> bool:
        return _as_key(t, self.g, self.d) in self._c

    def is_zero(self) -> bool:
        return not self._c

    def _rescaled_coeffs(self, d: int) -> dict:
        if d == self.d:
            return self._c
        if d % self.d == 0:
            f = d // self.d
            return {tuple(a * f for a in k): v for k, v in self._c.items()}
        out = {}
        for k, v in self._c.items():
            out[HalfIntegralForm(self.g, self.d, k).rescale(d).m] = v
        return out

    def minimal_scale(self) -> int:
        """Smallest divisor of d at which every stored key is representable."""
        best = self.d
        for e in range(1, self.d + 1):
            if self.d % e:
                continue
            f = self.d // e
            ok = True
            for k in self._c:
                if any(a % f for a in k) or any((k[i] // f) % 2 for i in diag_positions(self.g)):
                    ok = False
                    break
            if ok:
                best = e
                break
        return best


class QSeries(_Expansion):
    """Truncated scalar expansion sum_T a(T) q^T.

    ``weight`` is metadata: it is added by products and scaled by V but is
    otherwise not enforced.  ``weight=None`` marks an ungraded expansion
    (for instance the image of an inhomogeneous element such as A - 1).
    """

    __slots__ = ("domain", "weight")

    def __init__(self, g: int, domain: CoeffDomain, weight, bound: int, d: int = 1,
                 coeffs=None, *, _trusted: bool = False):
        if bound < 0:
            raise ValueError("bound must be nonnegative")
        self.g = g
        self.domain = domain
        self.weight = _as_weight(weight)
        self.bound = int(bound)
        self.d = d
        if _trusted:
            self._c = coeffs if coeffs is not None else {}
            return
        c = {}
        for t, v in (coeffs or {}).items():
            key = _as_key(t, g, d)
            self._validate_key(key)
            v = domain.convert(v)
            if v:
                c[key] = v
        self._c = c

    # construction helpers ---------------------------------------------------

    @classmethod
    def constant(cls, g: int, domain: CoeffDomain, value, weight, bound: int, d: int = 1):
        return cls(g, domain, weight, bound, d, {(0,) * (g * (g + 1) // 2): value})

    @classmethod
    def zero(cls, g: int, domain: CoeffDomain, weight, bound: int, d: int = 1):
        return cls(g, domain, weight, bound, d)

    def _new(self, coeffs: dict, *, weight=..., bound=None, d=None, domain=None, g=None):
        return QSeries(
            self.g if g is None else g,
            self.domain if domain is None else domain,
            self.weight if weight is ... else weight,
            self.bound if bound is None else bound,
            self.d if d is None else d,
            coeffs,
            _trusted=True,
        )

    # access -------------------------------------------------------------------

    def __getitem__(self, t):
        """Raw coefficient at T (Fraction over Q, residue int over F_p)."""
        return self._c.get(_as_key(t, self.g, self.d), self.domain.zero())

    def items(self):
        for k in self.sorted_keys():
            yield self.form(k), self._c[k]

    def coefficient_list(self) -> list:
        """Genus-1 coefficients a(0), ..., a(B) at scale 1."""
        if self.g != 1:
            raise ValueError("coefficient_list is for genus 1")
        f = self.rescale(1)
        return [f._c.get((2 * n,), self.domain.zero()) for n in range(self.bound + 1)]

    @property
    def p(self):
        return self.domain.p

    # metadata transforms --------------------------------------------------------

    def rescale(self, d: int) -> QSeries:
        if d == self.d:
            return self
        return self._new(self._rescaled_coeffs(d), d=d)

    def at_minimal_scale(self) -> QSeries:
        return self.rescale(self.minimal_scale())

    def truncate(self, bound: int) -> QSeries:
        if bound > self.bound:
            raise InsufficientPrecision(f"cannot raise bound {self.bound} to {bound}")
        limit = 2 * self.d * bound
        g = self.g
        return self._new({k: v for k, v in self._c.items() if key_trace(k, g) <= limit},
                         bound=bound)

    def with_weight(self, weight) -> QSeries:
        return self._new(dict(self._c), weight=_as_weight(weight))

    def scale(self, c) -> QSeries:
        """Multiply every coefficient by the scalar c."""
        dom = self.domain
        c = dom.convert(c)
        if not c:
            return self._new({})
        return self._new({k: dom.mul(v, c) for k, v in self._c.items()})

    def map_coefficients(self, fn) -> QSeries:
        out = {}
        for k, v in self._c.items():
            w = fn(self.form(k), v)
            w = self.domain.convert(w)
            if w:
                out[k] = w
        return self._new(out)

    # arithmetic sugar -------------------------------------------------------------

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return power(self, n)

    def __eq__(self, other):
        # structural identity; use eq_upto for mathematical comparisons
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.g, self.domain, self.weight, self.bound, self.d, self._c) == (
            other.g, other.domain, other.weight, other.bound, other.d, other._c)

    __hash__ = None

    def __repr__(self):
        head = ", ".join(
            f"{self.form(k)}: {self.domain.render(self._c[k])}" for k in self.sorted_keys()[:4])
        more = ", ..." if len(self) > 4 else ""
        return (f"QSeries(g={self.g}, {self.domain}, k={self.weight}, B={self.bound}, "
                f"d={self.d}, {{{head}{more}}})")


def _check_compatible(f: QSeries, g: QSeries) -> None:
    if f.g != g.g:
        raise ValueError(f"genus mismatch: {f.g} vs {g.g}")
    if f.domain != g.domain:
        raise DomainMismatch(f"domain mismatch: {f.domain} vs {g.domain}")


def _combine(f: QSeries, g: QSeries, op, weight) -> QSeries:
    _check_compatible(f, g)
    d = _common_scale(f, g)
    bound = min(f.bound, g.bound)
    limit = 2 * d * bound
    a, b = f._rescaled_coeffs(d), g._rescaled_coeffs(d)
    dom, gen = f.domain, f.g
    out = {}
    for k in a.keys() | b.keys():
        if key_trace(k, gen) > limit:
            continue
        v = op(a.get(k, 0), b.get(k, 0))
        if dom.p is not None:
            v %= dom.p
        if v:
            out[k] = v
    return f._new(out, weight=weight, bound=bound, d=d)


def add(f: QSeries, g: QSeries) -> QSeries:
    """Coefficient-wise sum of two series of equal weight."""
    if f.weight != g.weight:
        raise WeightMismatch(f"cannot add weight {f.weight} to weight {g.weight}")
    return _combine(f, g, operator.add, f.weight)


def sub(f: QSeries, g: QSeries) -> QSeries:
    if f.weight != g.weight:
        raise WeightMismatch(f"cannot subtract weight {g.weight} from weight {f.weight}")
    return _combine(f, g, operator.sub, f.weight)


@dataclass
class GradedForm:
    """An inhomogeneous element kept as its homogeneous components."""

    components: dict = field(default_factory=dict)

    def expansion(self) -> QSeries:
        """The ungraded q-expansion (sum of all components)."""
        parts = list(self.components.values())
        if not parts:
            raise ValueError("empty graded form")
        acc = parts[0].with_weight(None)
        for s in parts[1:]:
            acc = _combine(acc, s, operator.add, None)
        return acc


def add_inhomogeneous(*series: QSeries) -> GradedForm:
    """Collect series of possibly different weights into a graded element."""
    comps: dict = {}
    for s in series:
        if s.weight in comps:
            comps[s.weight] = add(comps[s.weight], s)
        else:
            comps[s.weight] = s
    return GradedForm(comps)


def _denominator_lcm(c: dict) -> int:
    den = 1
    for v in c.values():
        den = lcm(den, v.denominator)
    return den


def _convolve(a: dict, b: dict, g: int, limit: int) -> dict:
    """Truncated convolution of integer-valued maps (trace of keys <= limit)."""
    diag = diag_positions(g)

    def by_trace(c):
        return sorted(((sum(k[i] for i in diag), k, v) for k, v in c.items()),
                      key=operator.itemgetter(0))

    la, lb = by_trace(a), by_trace(b)
    if len(la) > len(lb):
        la, lb = lb, la
    out: dict = {}
    get = out.get
    if g == 1:
        for t1, (x,), v1 in la:
            rem = limit - t1
            if rem < 0:
                break
            for t2, (y,), v2 in lb:
                if t2 > rem:
                    break
                k = (x + y,)
                out[k] = get(k, 0) + v1 * v2
    elif g == 2:
        for t1, (x0, x1, x2), v1 in la:
            rem = limit - t1
            if rem < 0:
                break
            for t2, (y0, y1, y2), v2 in lb:
                if t2 > rem:
                    break
                k = (x0 + y0, x1 + y1, x2 + y2)
                out[k] = get(k, 0) + v1 * v2
    else:
        add_ = operator.add
        for t1, k1, v1 in la:
            rem = limit - t1
            if rem < 0:
                break
            for t2, k2, v2 in lb:
                if t2 > rem:
                    break
                k = tuple(map(add_, k1, k2))
                out[k] = get(k, 0) + v1 * v2
    return out


def mul(f: QSeries, g: QSeries) -> QSeries:
    """Truncated product; exact for every key of trace <= min(B_f, B_g)."""
    _check_compatible(f, g)
    d = _common_scale(f, g)
    bound = min(f.bound, g.bound)
    limit = 2 * d * bound
    a, b = f._rescaled_coeffs(d), g._rescaled_coeffs(d)
    weight = None if f.weight is None or g.weight is None else f.weight + g.weight
    p = f.domain.p
    if p is not None:
        raw = _convolve(a, b, f.g, limit)
        out = {k: v % p for k, v in raw.items() if v % p}
    else:
        # clear denominators so the inner loop runs on ints
        da, db = _denominator_lcm(a), _denominator_lcm(b)
        ia = {k: int(v * da) for k, v in a.items()}
        ib = {k: int(v * db) for k, v in b.items()}
        raw = _convolve(ia, ib, f.g, limit)
        den = da * db
        out = {k: Fraction(v, den) for k, v in raw.items() if v}
    return f._new(out, weight=weight, bound=bound, d=d)


def power(f: QSeries, n: int) -> QSeries:
    """f**n by binary exponentiation; weights add up to n * weight."""
    if n < 0:
        raise ValueError("negative powers are not supported")
    weight = None if f.weight is None else n * f.weight
    result = None
    base = f
    while n:
        if n & 1:
            result = base if result is None else mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    if result is None:
        return QSeries.constant(f.g, f.domain, 1, 0, f.bound, f.d)
    return result.with_weight(weight)


def reduce_series(f: QSeries, p: int) -> QSeries:
    """Coefficient-wise reduction of a rational series modulo p."""
    if f.domain.p is not None:
        raise DomainMismatch("series is already over a prime field")
    dom = CoeffDomain(p)
    out = {}
    for k, v in f._c.items():
        if v.denominator % p == 0:
            t = f.form(k)
            raise NonIntegralAtP(
                f"coefficient {v} at T={t.render()} is not {p}-integral", key=t)
        r = v.numerator * pow(v.denominator, -1, p) % p
        if r:
            out[k] = r
    return f._new(out, domain=dom)


def eq_upto(f, g, bound) -> bool:
    """Do the expansions agree on every key of trace <= bound?

    Works for scalar and matrix series alike, comparing at the common scale.
    """
    if bound > min(f.bound, g.bound):
        raise InsufficientPrecision(
            f"bound {bound} exceeds available precision {min(f.bound, g.bound)}")
    if f.g != g.g:
        raise ValueError("genus mismatch")
    if type(f) is not type(g):
        raise TypeError("cannot compare scalar and matrix series")
    if isinstance(f, QSeries) and f.domain != g.domain:
        raise DomainMismatch(f"domain mismatch: {f.domain} vs {g.domain}")
    if isinstance(f, MatrixQSeries) and f.p != g.p:
        raise DomainMismatch("prime mismatch")
    d = _common_scale(f, g)
    limit = 2 * d * Fraction(bound)
    a, b = f._rescaled_coeffs(d), g._rescaled_coeffs(d)
    gen = f.g
    for k in a.keys() | b.keys():
        if key_trace(k, gen) <= limit and a.get(k) != b.get(k):
            return False
    return True


# ---------------------------------------------------------------------------
# matrix-valued series


def _sym_entries(m, g: int, p: int) -> tuple[int, ...]:
    if isinstance(m, tuple) and m and not isinstance(m[0], (tuple, list)):
        if len(m) != g * (g + 1) // 2:
            raise ValueError("wrong number of upper-triangle entries")
        return tuple(x % p for x in m)
    for i in range(g):
        for j in range(g):
            if (m[i][j] - m[j][i]) % p:
                raise ValueError("matrix coefficient is not symmetric")
    return tuple(m[i][j] % p for i in range(g) for j in range(i, g))


class MatrixQSeries(_Expansion):
    """Series sum_T a(T) q^T with a(T) a symmetric g x g matrix over F_p.

    Values are stored as upper-triangle tuples of residues; all-zero
    matrices are dropped.
    """

    __slots__ = ("p",)
    role = "one-form"

    def __init__(self, g: int, p: int, bound: int, d: int = 1, coeffs=None,
                 *, _trusted: bool = False):
        CoeffDomain(p)
        if bound < 0:
            raise ValueError("bound must be nonnegative")
        self.g, self.p, self.bound, self.d = g, p, int(bound), d
        if _trusted:
            self._c = coeffs if coeffs is not None else {}
            return
        c = {}
        for t, m in (coeffs or {}).items():
            key = _as_key(t, g, d)
            self._validate_key(key)
            v = _sym_entries(m, g, p)
            if any(v):
                c[key] = v
        self._c = c

    def _new(self, coeffs: dict, *, bound=None, d=None):
        return MatrixQSeries(self.g, self.p, self.bound if bound is None else bound,
                             self.d if d is None else d, coeffs, _trusted=True)

    def __getitem__(self, t) -> list[list[int]]:
        v = self._c.get(_as_key(t, self.g, self.d))
        if v is None:
            return [[0] * self.g for _ in range(self.g)]
        return key_to_matrix(v, self.g)

    def items(self):
        for k in self.sorted_keys():
            yield self.form(k), key_to_matrix(self._c[k], self.g)

    def rescale(self, d: int) -> MatrixQSeries:
        if d == self.d:
            return self
        return self._new(self._rescaled_coeffs(d), d=d)

    def __add__(self, other: MatrixQSeries) -> MatrixQSeries:
        if (self.g, self.p) != (other.g, other.p):
            raise ValueError("incompatible matrix series")
        d = _common_scale(self, other)
        bound = min(self.bound, other.bound)
        limit = 2 * d * bound
        a, b = self._rescaled_coeffs(d), other._rescaled_coeffs(d)
        zero = (0,) * (self.g * (self.g + 1) // 2)
        out = {}
        for k in a.keys() | b.keys():
            if key_trace(k, self.g) > limit:
                continue
            v = tuple((x + y) % self.p for x, y in zip(a.get(k, zero), b.get(k, zero)))
            if any(v):
                out[k] = v
        return self._new(out, bound=bound, d=d)

    def __eq__(self, other):
        if not isinstance(other, MatrixQSeries):
            return NotImplemented
        return (self.g, self.p, self.bound, self.d, self._c) == (
            other.g, other.p, other.bound, other.d, other._c)

    __hash__ = None

    def __repr__(self):
        return (f"MatrixQSeries(g={self.g}, p={self.p}, B={self.bound}, d={self.d}, "
                f"{len(self)} terms)")


# ---------------------------------------------------------------------------
# Fourier-Jacobi slices and theta components


def _normalize_number(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


@dataclass
class JacobiSlice:
    """Coefficients c(t0, t1) = a([[t0, t1], [t1, nu]]) of one q22-power.

    Keys are pairs of rationals (ints when integral); values are whatever
    the parent series stores (scalar coefficients or matrix tuples).
    """

    nu: int
    d: int
    bound: int
    coeffs: dict
    domain: CoeffDomain | None = QQ
    p: int | None = None

    def __post_init__(self):
        if self.nu <= 0:
            raise ValueError("index nu must be positive")
        norm = {}
        for (t0, t1), v in self.coeffs.items():
            t0, t1 = _normalize_number(t0), _normalize_number(t1)
            if 4 * self.nu * Fraction(t0) < (2 * Fraction(t1)) ** 2:
                raise ValueError(f"({t0}, {t1}) is not semidefinite at index {self.nu}")
            norm[(t0, t1)] = v
        self.coeffs = norm


@dataclass
class ThetaComponents:
    """Components h_r of a theta decomposition.

    ``components[r][D]`` is the coefficient of the component attached to
    the residue r = 2 t1 mod 2 nu at discriminant D = 4 nu t0 - (2 t1)^2.
    """

    nu: int
    components: dict
    domain: CoeffDomain | None = QQ
    p: int | None = None

    def __post_init__(self):
        four_nu = 4 * self.nu
        for r, comp in self.components.items():
            for D in comp:
                if Fraction(D) < 0:
                    raise ValueError(f"negative discriminant {D}")
                if (Fraction(D) + Fraction(r) ** 2) % four_nu:
                    raise ValueError(f"D={D} is inconsistent with residue r={r}")

    def __eq__(self, other):
        if not isinstance(other, ThetaComponents):
            return NotImplemented
        strip = lambda c: {r: dict(v) for r, v in c.items() if v}  # noqa: E731
        return self.nu == other.nu and strip(self.components) == strip(other.components)


# ---------------------------------------------------------------------------
# text format


def _render_weight(k) -> str:
    if k is None:
        return "none"
    return f"{k.numerator}/{k.denominator}"


def serialize(f) -> str:
    """Render a series in the line-oriented ``SMFP v1`` format."""
    if isinstance(f, QSeries):
        header = (f"{MAGIC} kind=scalar g={f.g} domain={f.domain.tag} "
                  f"k={_render_weight(f.weight)} B={f.bound} d={f.d}")
        rows = [f"{f.form(k).render()} ; {f.domain.render(f._c[k])}" for k in f.sorted_keys()]
    elif isinstance(f, MatrixQSeries):
        header = (f"{MAGIC} kind=matrix g={f.g} domain=Fp:{f.p} k={f.role} "
                  f"B={f.bound} d={f.d}")
        rows = [f"{f.form(k).render()} ; " + ",".join(str(x) for x in f._c[k])
                for k in f.sorted_keys()]
    else:
        raise TypeError(f"cannot serialize {type(f).__name__}")
    return "\n".join([header, *rows]) + "\n"


_HEADER_FIELDS = ("kind", "g", "domain", "k", "B", "d")


def _parse_header(line: str) -> dict:
    if not line.startswith(MAGIC + " "):
        raise ParseError(f"missing magic string {MAGIC!r}", 1)
    tokens = line[len(MAGIC) + 1:].split(" ")
    if len(tokens) != len(_HEADER_FIELDS):
        raise ParseError("malformed header", 1)
    out = {}
    for name, tok in zip(_HEADER_FIELDS, tokens):
        key, sep, value = tok.partition("=")
        if key != name or not sep or not value:
            raise ParseError(f"expected header field {name!r}, got {tok!r}", 1)
        out[name] = value
    return out


def deserialize(text: str):
    """Parse the ``SMFP v1`` format back into a QSeries or MatrixQSeries."""
    if "\r" in text:
        raise ParseError("CR characters are not allowed", 1)
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("empty input", 1)
    h = _parse_header(lines[0])
    try:
        g, bound, d = int(h["g"]), int(h["B"]), int(h["d"])
        domain = CoeffDomain.from_tag(h["domain"])
    except ValueError as exc:
        raise ParseError(f"bad header value: {exc}", 1) from None
    kind = h["kind"]
    if kind == "scalar":
        if h["k"] == "none":
            weight = None
        else:
            try:
                num, den = h["k"].split("/")
                weight = Fraction(int(num), int(den))
            except ValueError:
                raise ParseError(f"bad weight {h['k']!r}", 1) from None
        series = QSeries(g, domain, weight, bound, d)
    elif kind == "matrix":
        if h["k"] != MatrixQSeries.role or domain.p is None:
            raise ParseError("matrix series need k=one-form and an F_p domain", 1)
        series = MatrixQSeries(g, domain.p, bound, d)
    else:
        raise ParseError(f"unknown kind {kind!r}", 1)

    coeffs = series._c
    prev = None
    for lineno, line in enumerate(lines[1:], start=2):
        if line != line.strip() or not line:
            raise ParseError("blank line or stray whitespace", lineno)
        left, sep, right = line.partition(" ; ")
        if not sep:
            raise ParseError("expected '<form> ; <coefficient>'", lineno)
        try:
            t = HalfIntegralForm.parse(left)
        except ValueError as exc:
            raise ParseError(f"bad form: {exc}", lineno) from None
        if t.g != g or t.d != d:
            raise ParseError("form genus/scale disagrees with header", lineno)
        try:
            series._validate_key(t.m)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        order = canonical_key(t.m, g)
        if prev is not None and order <= prev:
            raise ParseError("rows out of canonical order", lineno)
        prev = order
        try:
            if kind == "scalar":
                v = domain.parse(right)
                if not v:
                    raise ValueError("explicit zero coefficient")
            else:
                v = tuple(int(x) for x in right.split(","))
                if len(v) != g * (g + 1) // 2 or not all(0 <= x < domain.p for x in v):
                    raise ValueError("bad matrix entries")
                if not any(v):
                    raise ValueError("explicit zero matrix")
        except ValueError as exc:
            raise ParseError(f"bad coefficient: {exc}", lineno) from None
        coeffs[t.m] = v
    return series


def integer_content(f: QSeries) -> int:
    """gcd of the numerators of a rational series (0 for the zero series)."""
    c = 0
    for v in f._c.values():
        c = gcd(c, Fraction(v).numerator)
    return c

