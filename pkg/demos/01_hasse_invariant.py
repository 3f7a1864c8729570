"""
The Hasse invariant has q-expansion 1.

In genus 1 it lifts to the Eisenstein series E_{p-1}: every coefficient
-2(p-1)/B_{p-1} * sigma(n) is divisible by p (von Staudt-Clausen puts p in
the denominator of B_{p-1}).  In genus 2, the sum of eighth powers of the
even theta constants has weight 4 and reduces to 1 mod 5.
"""

from smfp import eisenstein_g1, hasse_series, psi4_prop, reduce_series
from smfp.qseries import eq_upto

B = 30
for p in (5, 7, 11, 13):
    e = eisenstein_g1(p - 1, B)
    print(f"E_{p - 1}:", " ".join(str(c) for c in e.coefficient_list()[:4]), "...")
    print(f"  mod {p}:", reduce_series(e, p).coefficient_list()[:8])
    assert reduce_series(e, p) == hasse_series(1, p, B).with_weight(p - 1)

f = reduce_series(psi4_prop(4), 5)
print("psi4 mod 5 equals 1 up to trace 4:", eq_upto(f, hasse_series(2, 5, 4), 4))
