"""Row reduction over Q or F_p (small dense systems)."""

from __future__ import annotations

from .coeffdomain import CoeffDomain


def rref(rows: list[list], domain: CoeffDomain) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns; entries are converted first."""
    a = [[domain.convert(x) for x in r] for r in rows]
    pivots: list[int] = []
    if not a:
        return a, pivots
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = domain.inv(a[r][c])
        a[r] = [domain.mul(x, inv) for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [domain.sub(x, domain.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def nullspace(rows: list[list], ncols: int, domain: CoeffDomain) -> list[list]:
    """Basis of {x : A x = 0}."""
    if not rows:
        return [[domain.one() if i == j else domain.zero() for i in range(ncols)]
                for j in range(ncols)]
    red, pivots = rref(rows, domain)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [domain.zero()] * ncols
        v[fcol] = domain.one()
        for row, pc in zip(red, pivots):
            v[pc] = domain.neg(row[fcol])
        basis.append(v)
    return basis


def solve(rows: list[list], rhs: list, domain: CoeffDomain):
    """Unique solution of A x = b, or None if inconsistent; raises if underdetermined."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, domain)
    if ncols in pivots:
        return None
    if len(pivots) < ncols:
        raise ValueError("system is underdetermined")
    x = [domain.zero()] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[-1]
    return x

