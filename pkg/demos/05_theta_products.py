"""
Genus-2 theta constants and the two products built from them.  chi10 is a
cusp form (Phi kills it); Phi of psi4 is the genus-1 Eisenstein series E4.
"""

from smfp import ThetaCharacteristic, chi10_prop, op_phi, psi4_prop, theta_constant_g2
from smfp.generators import even_characteristics

print("even characteristics:", [m.bits for m in even_characteristics(2)])
th = theta_constant_g2(ThetaCharacteristic.from_bits("0000"), 2)
for t, c in list(th.items())[:6]:
    print(f"  theta[0000] at M=16T={t.matrix}: {c}")

B = 6
chi = chi10_prop(B)
print(f"chi10: {len(chi)} coefficients up to trace {B}, Phi(chi10) zero: {op_phi(chi).is_zero()}")
print("Phi(psi4):", " ".join(str(c) for c in op_phi(psi4_prop(B)).coefficient_list()))
