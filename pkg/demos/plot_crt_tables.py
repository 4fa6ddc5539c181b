"""
Codes over F2 x F2 on D_n
=========================

Pair a binary code with its dual coordinatewise and build the lattice
on D_4, D_8, D_12 and D_24.  Then regenerate every table row that has a code.
"""

from adelattice import build_gamma_c, root_system
from adelattice.cli import table_lines
from adelattice.fixtures import crt_pair
from adelattice.rootlattices import RootLatticeSpec

for n, names in [(4, ["c6_1", "c6_2", "c6_3", "c6_4"]), (8, ["c3_1", "c3_2", "c3_3"]),
                 (12, ["c2"]), (24, ["c1"])]:
    spec = RootLatticeSpec("D", n, "F2xF2")
    for name in names:
        code = crt_pair(name)
        print(spec, name, root_system(build_gamma_c(spec, code)))

# on D_8 the vector class (1,1) has norm 1 and the two spinor classes have norm 2,
# so a length-3 code only reaches 3E8, D16+E8 or 3D8

lines, bad = table_lines()
print("\n".join(lines))
print(bad, "mismatching row(s)")
