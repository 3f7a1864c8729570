"""
Verification suites.

Each suite yields :class:`Check` records; ``Check.line()`` renders the
report format ``CHECK <name> <params> PASS|FAIL|REPORT <data>``.  All
randomness flows from the explicit seed, so a given configuration always
produces the same report.  REPORT lines record experiments whose outcome
is not asserted either way.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from math import ceil, log

from .coeffdomain import QQ, CoeffDomain
from .errors import WeightInfeasible
from .generators import (
    chi10_prop,
    delta_g1,
    eisenstein_g1,
    hasse_series,
    psi4_prop,
)
from .operators import cartier, hecke_Tl_g1, op_phi, op_theta_det, op_U, op_V, verify_theta_identity
from .quadforms import UnimodularMatrix
from .qseries import (
    QSeries,
    add,
    deserialize,
    eq_upto,
    mul,
    power,
    reduce_series,
    serialize,
    sub,
)
from .sampling import random_matrix_series, random_qseries
from .structure import (
    equivariance_check,
    equivariant_one_form,
    express_in_generators_g1,
    irreducibility_search_g1,
    is_p_singular,
    p_root,
    rank1_classify,
    star_star_solver,
    tp_equals_v_check,
    tp_image_mod_p,
)

DEFAULT_SEED = 20240607
READING = "# p|T read as: p divides every entry of M = 2dT (requires p coprime to 2d)"


@dataclass
class Check:
    name: str
    params: dict
    status: str
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        fmt = lambda d: " ".join(f"{k}={v}" for k, v in d.items())  # noqa: E731
        parts = ["CHECK", self.name, fmt(self.params), self.status, fmt(self.data)]
        return " ".join(p for p in parts if p)


def _status(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _primes(cfg_p, default):
    return [cfg_p] if cfg_p is not None else list(default)


def _rng(seed: int, tag: str) -> random.Random:
    return random.Random(f"{seed}/{tag}")


# ---------------------------------------------------------------------------


def ring_laws(seed: int = DEFAULT_SEED, p: int | None = None, B: int | None = None,
              cases: int = 200):
    rng = _rng(seed, "ring-laws")
    bound = 4 if B is None else B
    primes = _primes(p, (5, 7))
    fails = dict.fromkeys(
        ["add-assoc", "add-comm", "mul-assoc", "mul-comm", "distributive", "identities",
         "reduce-hom", "serialization"], 0)
    for i in range(cases):
        q = primes[i % len(primes)]
        g = 1 + i % 2
        b = min(bound, 3) if g == 2 else bound
        xs = [random_qseries(rng, g, None, b, weight=rng.randint(0, 6), height=4)
              for _ in range(3)]
        f, h, k = xs
        ok = lambda a, c: eq_upto(a, c, b)  # noqa: E731
        # addition needs equal weights
        h1, k1 = h.with_weight(f.weight), k.with_weight(f.weight)
        fails["add-assoc"] += not ok(add(add(f, h1), k1), add(f, add(h1, k1)))
        fails["add-comm"] += not ok(add(f, h1), add(h1, f))
        fails["mul-assoc"] += not ok(mul(mul(f, h), k), mul(f, mul(h, k)))
        fails["mul-comm"] += not ok(mul(f, h), mul(h, f))
        k2 = k.with_weight(h.weight)
        fails["distributive"] += not ok(mul(f, add(h, k2)), add(mul(f, h), mul(f, k2)))
        one = QSeries.constant(g, QQ, 1, 0, b)
        zero = QSeries.zero(g, QQ, f.weight, b)
        fails["identities"] += not (ok(mul(f, one), f) and ok(add(f, zero), f)
                                    and ok(sub(f, f), zero))
        rf, rh = reduce_series(f, q), reduce_series(h, q)
        fails["reduce-hom"] += not (ok(reduce_series(mul(f, h), q), mul(rf, rh))
                                    and ok(reduce_series(add(f, h1), q),
                                           add(rf, rh.with_weight(rf.weight))))
        fails["serialization"] += not all(
            deserialize(serialize(x)) == x for x in (f, rf, random_matrix_series(rng, q, b, g=g)))
    params = {"seed": seed, "p": ",".join(map(str, primes)), "B": bound}
    for law, n in fails.items():
        yield Check("ring-laws", {**params, "law": law}, _status(n == 0),
                    {"cases": cases, "failures": n})


def frobenius(seed: int = DEFAULT_SEED, p: int | None = None, B: int | None = None,
              cases: int = 100):
    rng = _rng(seed, "frobenius")
    primes = _primes(p, (3, 5, 7))
    combos = [(q, g) for q in primes for g in (1, 2)]
    fails = dict.fromkeys(combos, 0)
    counts = dict.fromkeys(combos, 0)
    for i in range(cases):
        q, g = combos[i % len(combos)]
        b = rng.randint(0, 6 if B is None else B)
        if g == 2:
            b = min(b, 2 if q > 3 else 3)
        f = random_qseries(rng, g, q, b, weight=rng.randint(0, 8))
        # the truncation of f to the bound is a polynomial, so f^p is exact up to p*b
        wide = f._new(dict(f.raw()), bound=q * b)
        counts[q, g] += 1
        fails[q, g] += not eq_upto(op_V(f), power(wide, q), q * b)
    for (q, g), n in fails.items():
        yield Check("frobenius", {"seed": seed, "p": q, "g": g}, _status(n == 0),
                    {"cases": counts[q, g], "failures": n})


def hasse_lift(seed: int = DEFAULT_SEED, p: int | None = None, B: int | None = None):
    bound = 30 if B is None else B
    for q in _primes(p, (5, 7, 11, 13)):
        t = time.perf_counter()
        lhs = reduce_series(eisenstein_g1(q - 1, bound), q)
        ok = lhs == hasse_series(1, q, bound).with_weight(q - 1)
        yield Check("hasse-lift", {"seed": seed, "p": q, "B": bound, "g": 1}, _status(ok),
                    {"seconds": f"{time.perf_counter() - t:.3f}"})
    # genus 2: psi4 has weight 4 = p - 1 at p = 5
    if p in (None, 5):
        b2 = min(bound, 4)
        f = reduce_series(psi4_prop(b2), 5)
        one = hasse_series(2, 5, b2)
        yield Check("hasse-lift", {"seed": seed, "p": 5, "B": b2, "g": 2, "form": "psi4"},
                    "REPORT", {"equals_one": eq_upto(f, one, b2), "keys": len(f)})


def corollary(seed: int = DEFAULT_SEED, p: int | None = None, B: int | None = None,
              cases: int = 100):
    rng = _rng(seed, "corollary")
    primes = _primes(p, (3, 5, 7))
    fails = 0
    for i in range(cases):
        q = primes[i % len(primes)]
        g = 1 + (i // len(primes)) % 2
        b = rng.randint(0, 3 if g == 1 else 1) if B is None else B
        kh = rng.randint(0, 6)
        r = rng.randint(0, q - 1)
        h = random_qseries(rng, g, q, b, weight=kh)
        hasse = hasse_series(g, q, q * b)
        f = mul(power(hasse, r), power(h._new(dict(h.raw()), bound=q * b), q))
        k = r * (q - 1) + q * kh
        root = p_root(f, k)
        ok = (is_p_singular(f) and f.weight == k and root.r == r and root.kprime == kh
              and eq_upto(root.h, h, b))
        fails += not ok
    yield Check("corollary", {"seed": seed, "p": ",".join(map(str, primes))},
                _status(fails == 0), {"cases": cases, "failures": fails})
    # weights 0 < k < p - 1 admit no root of a nonzero p-singular expansion
    for q in primes:
        if q - 1 <= 1:
            continue
        f = op_V(QSeries(1, CoeffDomain(q), 1, 1, 1, {(0,): 1, (2,): 1}))
        raised = all(_raises(lambda k=k: p_root(f, k), WeightInfeasible)
                     for k in range(1, q - 1))
        yield Check("corollary", {"seed": seed, "p": q, "case": "k<p-1"}, _status(raised),
                    {"weights": f"1..{q - 2}"})


def _raises(fn, exc) -> bool:
    try:
        fn()
    except exc:
        return True
    return False


def irreducibility(seed: int = DEFAULT_SEED, p: int | None = None, B: int | None = None):
    for q in _primes(p, (5, 7, 11, 13)):
        t = time.perf_counter()
        res = irreducibility_search_g1(q)
        hasse = "+".join(f"{c}*x4^{a}*x6^{b}" for (a, b), c in sorted(res.hasse.items()))
        data = {"A": hasse, "seconds": f"{time.perf_counter() - t:.3f}"}
        if res:
            data.update(splits=len(res.splits), assignments=res.assignments)
        yield Check("irreducibility", {"seed": seed, "p": q}, _status(bool(res)), data)


def _symmetric(q):
    for a, b, c in itertools.product(range(q), repeat=3):
        yield [[a, b], [b, c]]


def starstar(seed: int = DEFAULT_SEED, p: int | None = None, B: int | None = None):
    for q in _primes(p, (3, 5, 7)):
        nondeg = bad = 0
        example = None
        rank1: dict = {}
        full = len(star_star_solver(q, [[0, 0], [0, 0]])) == 3
        for t in _symmetric(q):
            det = (t[0][0] * t[1][1] - t[0][1] ** 2) % q
            if det:
                nondeg += 1
                sol = star_star_solver(q, t)
                if sol:
                    bad += 1
                    if example is None:
                        example = (t, sol[0])
            elif any(any(r) for r in t):
                dim = len(star_star_solver(q, t))
                rank1[dim] = rank1.get(dim, 0) + 1
        data = {"forms": nondeg, "nonzero_solutions": bad}
        if example:
            flat = lambda m: f"{m[0][0]},{m[0][1]},{m[1][1]}"  # noqa: E731
            data.update(first_T=flat(example[0]), S=flat(example[1]))
        yield Check("starstar", {"seed": seed, "p": q, "case": "nondegenerate"},
                    _status(bad == 0 and full), data)
        dims = ",".join(f"{d}:{n}" for d, n in sorted(rank1.items()))
        yield Check("starstar", {"seed": seed, "p": q, "case": "rank1"}, "REPORT",
                    {"forms": sum(rank1.values()), "dims": dims})
        counts = {nu: len(rank1_classify(q, nu)) for nu in range(1, q)}
        yield Check("starstar", {"seed": seed, "p": q, "case": "rank1-classify"},
                    _status(all(c == q for c in counts.values())),
                    {"counts": ",".join(str(c) for c in counts.values())})


def theta_identity(seed: int = DEFAULT_SEED, p: int | None = None, B: int | None = None):
    bound = 8 if B is None else B
    entries = range(-2, 3)
    for nu in (1, 2, 3):
        n = fails = 0
        for a0, a1, a2 in itertools.product(entries, repeat=3):
            for a_num in range(2 * nu):
                n += 1
                fails += not verify_theta_identity([[a0, a1], [a1, a2]], a_num, nu, bound)
        yield Check("theta-identity", {"seed": seed, "nu": nu, "B": bound}, _status(fails == 0),
                    {"cases": n, "failures": fails})


def phi_tower(seed: int = DEFAULT_SEED, p: int | None = None, B: int | None = None):
    bound = 8 if B is None else B
    f = op_phi(psi4_prop(bound)).rescale(1)
    e4 = eisenstein_g1(4, bound)
    c = f[(0,)] / e4[(0,)]
    ok = eq_upto(f.with_weight(4), e4.scale(c), bound)
    combo = express_in_generators_g1(f.with_weight(4), 4)
    yield Check("phi-tower", {"seed": seed, "B": bound, "form": "psi4"}, _status(ok),
                {"ratio": str(c), "E4E6": ",".join(f"{a}.{b}:{v}" for (a, b), v in combo.items())})
    z = op_phi(chi10_prop(bound))
    yield Check("phi-tower", {"seed": seed, "B": bound, "form": "chi10"}, _status(z.is_zero()),
                {"nonzero_keys": len(z)})


def hecke(seed: int = DEFAULT_SEED, p: int | None = None, B: int | None = None):
    rng = _rng(seed, "hecke")
    bound = 15 if B is None else B
    q = 7 if p is None else p
    d = reduce_series(delta_g1(2 * bound), q)
    lhs = hecke_Tl_g1(d, 2)
    ok = eq_upto(lhs, reduce_series(delta_g1(bound), q).scale(-24), bound)
    yield Check("hecke", {"seed": seed, "p": q, "B": bound, "l": 2}, _status(ok))
    fails = 0
    for i in range(20):
        qq = (5, 7)[i % 2] if p is None else p
        ls = [x for x in (2, 3, 5) if x != qq]
        l = ls[i % len(ls)]
        f = random_qseries(rng, 1, qq, 12, weight=rng.randint(2, 12))
        A = hasse_series(1, qq, 12)
        fails += not eq_upto(hecke_Tl_g1(mul(A, f), l), mul(A, hecke_Tl_g1(f, l)), 12 // l)
    yield Check("hecke", {"seed": seed, "case": "hasse-commutation"}, _status(fails == 0),
                {"cases": 20, "failures": fails})


def cartier_termination(seed: int = DEFAULT_SEED, p: int | None = None, B: int | None = None):
    rng = _rng(seed, "cartier")
    fails = 0
    n = 30
    for i in range(n):
        q = _primes(p, (3, 5, 7))[i % len(_primes(p, (3, 5, 7)))]
        b = rng.randint(1, 12 if B is None else B)
        eta = random_matrix_series(rng, q, b, g=1 + i % 2, density=0.8)
        limit = ceil(log(max(b, 1), q)) + 1
        steps = 0
        while any(any(k) for k in eta.raw()):
            nxt = cartier(eta)
            expected = {tuple(a // q for a in k) for k in eta.raw() if all(a % q == 0 for a in k)}
            if set(nxt.raw()) != expected:
                fails += 1
                break
            eta, steps = nxt, steps + 1
            if steps > limit:
                fails += 1
                break
    yield Check("cartier", {"seed": seed}, _status(fails == 0), {"cases": n, "failures": fails})


def equivariance(seed: int = DEFAULT_SEED, p: int | None = None, B: int | None = None):
    rng = _rng(seed, "equivariance")
    q = 5 if p is None else p
    bound = 6 if B is None else B
    seeds = {}
    for key in ((2, 1, 2), (2, 0, 4), (4, 2, 6)):
        s = [rng.randrange(q) for _ in range(3)]
        seeds[key] = [[s[0], s[1]], [s[1], s[2]]]
    eta = equivariant_one_form(q, seeds, bound)
    us = [UnimodularMatrix.of([[1, 1], [0, 1]]), UnimodularMatrix.of([[0, 1], [1, 0]]),
          UnimodularMatrix.of([[1, 0], [-1, 1]]), UnimodularMatrix.of([[-1, 0], [0, 1]])]
    ok = equivariance_check(eta, us)
    raw = dict(eta.raw())
    raw[(0, 0, 0)] = (1, 0, 0)
    broken = eta._new(raw)
    yield Check("equivariance", {"seed": seed, "p": q, "B": bound}, _status(
        ok and not equivariance_check(broken, us)), {"keys": len(eta)})


def question(seed: int = DEFAULT_SEED, p: int | None = None, B: int | None = None):
    """Do a(T) -> det(T) a(T) and a(T) -> T a(T) keep a series cuspidal?"""
    bound = 4 if B is None else B
    for q in _primes(p, (5, 7)):
        f = reduce_series(chi10_prop(bound), q)
        img = op_theta_det(f)
        yield Check("question", {"seed": seed, "p": q, "B": bound, "op": "thetadet",
                                 "input": "chi10"}, "REPORT",
                    {"nonzero_keys": len(img), "phi_zero": op_phi(img).is_zero()})
        g = hasse_series(2, q, bound)
        e = op_theta_det(g)
        yield Check("question", {"seed": seed, "p": q, "B": bound, "op": "thetadet",
                                 "input": "hasse"}, "REPORT", {"nonzero_keys": len(e)})


def tp_v(seed: int = DEFAULT_SEED, p: int | None = None, B: int | None = None):
    for q in _primes(p, (5, 7)):
        bound = 8 * q if B is None else B
        lift = delta_g1(bound)
        tp = tp_image_mod_p(lift, q, 12)
        u = op_U(reduce_series(lift, q))
        yield Check("tp-v", {"seed": seed, "p": q, "B": bound, "form": "delta"}, "REPORT", {
            "equals_V": tp_equals_v_check(lift, q, 12),
            "equals_U": eq_upto(tp.with_weight(None), u.with_weight(None), tp.bound)})


SUITES = {
    "ring-laws": ring_laws,
    "frobenius": frobenius,
    "hasse-lift": hasse_lift,
    "corollary": corollary,
    "irreducibility": irreducibility,
    "starstar": starstar,
    "theta-identity": theta_identity,
    "phi-tower": phi_tower,
    "hecke": hecke,
    "cartier": cartier_termination,
    "equivariance": equivariance,
    "question": question,
    "tp-v": tp_v,
}


def run_suite(name: str, seed: int = DEFAULT_SEED, p: int | None = None,
              B: int | None = None) -> list[Check]:
    if name == "all":
        return [c for n in SUITES for c in run_suite(n, seed, p, B)]
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}") from None
    return list(fn(seed=seed, p=p, B=B))
