"""
Golay code to a Niemeier lattice
================================

Build Gamma_C from the extended binary Golay code on A_1 and read off
its root system.
"""

from adelattice import build_gamma_c, is_even, is_unimodular, root_system, verify_main_theorem
from adelattice.fixtures import load
from adelattice.rootlattices import RootLatticeSpec

# A_1 has discriminant group Z/2, so binary codes act on it
spec = RootLatticeSpec("A", 1)
golay = load("golay24")
print(golay, "size", golay.size)

lat = build_gamma_c(spec, golay)
print("rank", lat.rank, "det", lat.determinant)
print("even", is_even(lat), "unimodular", is_unimodular(lat))

# every clause compares a lattice property with a code property
print(verify_main_theorem(spec, golay))

# 48 roots, all orthogonal
print("root system:", root_system(lat))

# a single extended Hamming code already gives E8
lat3 = build_gamma_c(spec, load("hamming8"))
print("hamming8 ->", root_system(lat3))
