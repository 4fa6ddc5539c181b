"""
Theta series over the real cyclotomic subfield
==============================================

D_4 sits in Q(zeta_8) and E_6 in Q(zeta_9).  Coset theta series are
truncated expansions whose exponents live in K = Q(zeta + zeta^-1).
"""

from adelattice import hilbert as hb
from adelattice.fixtures import load

# the coset of 1 and 1+u are rotations of each other
t1 = hb.theta_coset("zeta8", 1, 8)
print("theta_1 == theta_(1+u):", t1 == hb.theta_coset("zeta8", 3, 8))
for exponent, count in t1.sorted_items()[:6]:
    print(hb.format_k(exponent), count)

# collapsing exponents to their trace gives the ordinary theta series
print(hb.theta_coset("zeta8", 0, 6).by_trace())

# lattice side vs weight-enumerator side
print(hb.verify_theta_identity("zeta8", load("f2u_11"), 6))
print(hb.verify_theta_identity("zeta9", load("tetracode"), 4))

# level ideals, as HNF bases in the basis 1, eta, eta^2, ...
for field in hb.FIELDS:
    print(field, hb.level_ideal(field).rows, hb.level_matches_expected(field))
