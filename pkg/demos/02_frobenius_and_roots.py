"""
Over F_p the operator V (T -> pT on the support) is the p-th power map,
and a totally p-singular form is A^r times a p-th power.  The exponent r
and the weight of the root are read off from k = r(p-1) + p k'.
"""

import random

from smfp import hasse_series, is_p_singular, mul, op_V, p_root, power
from smfp.qseries import eq_upto
from smfp.sampling import random_qseries

rng = random.Random(1)
p = 5
h = random_qseries(rng, 2, p, 1, weight=2)
print("h =", h)

wide = h._new(dict(h.raw()), bound=p * h.bound)
print("V(h) == h^p:", eq_upto(op_V(h), power(wide, p), p * h.bound))

r = 3
f = mul(power(hasse_series(2, p, p), r), power(wide, p))
print("f = A^3 h^5 has weight", f.weight, "and is p-singular:", is_p_singular(f))

root = p_root(f, int(f.weight))
print(f"recovered r={root.r}, k'={root.kprime}, h matches: {eq_upto(root.h, h, 1)}")
