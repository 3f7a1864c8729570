"""
Genus-1 structure over F_p: the image of E_{p-1} in F_p[E4, E6] and an
exhaustive search for factorizations A - 1 = F G.
"""

import time

from smfp import delta_g1, express_in_generators_g1, irreducibility_search_g1

coeffs = express_in_generators_g1(delta_g1(6))
print("Delta =", " + ".join(f"({c}) E4^{a} E6^{b}" for (a, b), c in coeffs.items()))

for p in (5, 7, 11, 13):
    t = time.perf_counter()
    res = irreducibility_search_g1(p)
    print(f"p={p:2d}  A={res.hasse}  {type(res).__name__}  "
          f"({getattr(res, 'assignments', 0)} assignments, {time.perf_counter() - t:.3f}s)")
