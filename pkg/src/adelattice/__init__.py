"""Lattices from codes over finite rings via Construction A on ADE root lattices."""

from .codes import Code, crt_combine, dual_code, parse_code, read_code, type_II, type_IV
from .construction import (
    CodeLattice,
    build_gamma_c,
    coset_oracle,
    dual_lattice,
    is_even,
    is_integral,
    is_unimodular,
    lattices_equal,
    verify_main_theorem,
)
from .rings import F2U, F4, F2xF2, RingSpec, ZMod
from .rootlattices import RootLatticeSpec, ambient_basis, discriminant_group, gram_e
from .theta import RootSystemLabel, root_system, short_vectors, theta_coefficients

__all__ = [
    "Code", "crt_combine", "dual_code", "parse_code", "read_code", "type_II", "type_IV",
    "CodeLattice", "build_gamma_c", "coset_oracle", "dual_lattice", "is_even", "is_integral",
    "is_unimodular", "lattices_equal", "verify_main_theorem",
    "F2U", "F4", "F2xF2", "RingSpec", "ZMod",
    "RootLatticeSpec", "ambient_basis", "discriminant_group", "gram_e",
    "RootSystemLabel", "root_system", "short_vectors", "theta_coefficients",
]

__version__ = "0.1.0"
