"""
Matrix coefficients S = a(T) of a 1-form must satisfy v^t S v = 0 whenever
v^t T v != 0 (over F_p).  For p = 5, 7 a nondegenerate T forces S = 0; at
p = 3 the isotropic forms leave a line of solutions.  Rank-one T with
T_22 = nu are exactly [[x^2 nu, x nu], [x nu, nu]].
"""

import itertools

from smfp import rank1_classify, star_star_solver

for p in (3, 5, 7):
    nonzero = [((a, b, c), star_star_solver(p, [[a, b], [b, c]]))
               for a, b, c in itertools.product(range(p), repeat=3)
               if (a * c - b * b) % p]
    survivors = [(t, s) for t, s in nonzero if s]
    print(f"p={p}: {len(nonzero)} nondegenerate forms, {len(survivors)} with S != 0")
    for t, s in survivors[:3]:
        print("   T =", t, " S basis:", s)

print("rank one, p=5, nu=2:", rank1_classify(5, 2))
