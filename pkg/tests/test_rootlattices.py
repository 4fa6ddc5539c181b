from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from adelattice import exactlinear as xl
from adelattice.rootlattices import (
    RootLatticeError, RootLatticeSpec, all_specs, ambient_basis, discriminant_group, gram_e, lift,
    rho, rho_block, rho_block_array,
)
from adelattice.theta import short_vectors

SPECS = all_specs(12)


def _disc_order(spec):
    # classical discriminant orders
    return {"A": spec.n + 1, "D": 4, "E": 9 - spec.n}[spec.family]


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_dual_bases(spec):
    ab = ambient_basis(spec)
    n = spec.n
    # f*_j in e-coordinates is Fstar @ F; pair against f_i through gram_e
    fstar_e = ab.Fstar @ xl.RatMatrix.from_int(ab.F)
    pairing = xl.RatMatrix.from_int(ab.F) @ xl.RatMatrix.from_int(ab.gram_e) @ fstar_e.transpose()
    assert pairing == xl.RatMatrix.identity(n)
    assert ab.gram_fstar == xl.inverse(xl.RatMatrix.from_int(ab.gram_f))
    assert xl.det(ab.gram_e) == _disc_order(spec)
    assert discriminant_group(spec)[1] == _disc_order(spec)


@pytest.mark.parametrize("family,n", [("A", 5), ("D", 7), ("E", 6), ("E", 7), ("E", 8)])
def test_gram_e_is_cartan(family, n):
    g = gram_e(family, n).rows
    assert all(g[i][i] == 2 for i in range(n))
    # simply laced tree: n - 1 edges
    edges = sum(1 for i in range(n) for j in range(i) if g[i][j])
    assert edges == n - 1
    assert all(g[i][j] in (0, -1) for i in range(n) for j in range(n) if i != j)


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_rho_kernel_is_lambda(spec):
    ab = ambient_basis(spec)
    for row in ab.gram_f.rows:
        assert rho_block(spec, row) == 0
    images = {rho_block(spec, lift(spec, c)) for c in range(spec.ring.size)}
    assert images == set(range(spec.ring.size))
    for c in range(spec.ring.size):
        assert rho_block(spec, lift(spec, c)) == c


@pytest.mark.parametrize("spec", [s for s in SPECS if s.n <= 8], ids=str)
@given(data=st.data())
def test_rho_additive(spec, data):
    vec = st.lists(st.integers(-5, 5), min_size=spec.n, max_size=spec.n)
    x, y = data.draw(vec), data.draw(vec)
    R = spec.ring
    s = [a + b for a, b in zip(x, y)]
    assert rho_block(spec, s) == R.add(rho_block(spec, x), rho_block(spec, y))
    assert rho_block_array(spec, np.array([x, y])).tolist() == [rho_block(spec, x), rho_block(spec, y)]


@pytest.mark.parametrize("n", [4, 6, 8])
@pytest.mark.parametrize("ring", ["F2U", "F4", "F2xF2"])
def test_vector_class_is_self_paired_element(n, ring):
    # the norm-1 class of D_n is the element counted by N2
    spec = RootLatticeSpec("D", n, ring)
    ab = ambient_basis(spec)
    offset = (xl.RatMatrix.from_fractions([lift(spec, spec.ring.n2_element)]) @ ab.gram_fstar).to_fractions()[0]
    rep = short_vectors(xl.RatMatrix.from_int(ab.gram_f), 1, offset=offset)
    assert rep.counts == {Fraction(1): 2 * n}


def test_rho_length_checks():
    spec = RootLatticeSpec("A", 2)
    with pytest.raises(RootLatticeError):
        rho(spec, [1, 2, 3])
    with pytest.raises(RootLatticeError):
        rho(spec, [Fraction(1, 2), 0])
    assert rho(spec, [1, 1, 2, 0]) == [2, 2]


@pytest.mark.parametrize("args", [("D", 3), ("E", 9), ("A", 0), ("B", 3), ("D", 5, "F4"), ("E", 6, "Z3"), ("D", 6, "GF4")])
def test_invalid_specs(args):
    with pytest.raises(RootLatticeError):
        RootLatticeSpec(*args)


def test_ring_choice_aliases():
    assert RootLatticeSpec("D", 6, "F2u") == RootLatticeSpec("D", 6)
    assert str(RootLatticeSpec("D", 8, "F2xF2")) == "D8/F2xF2"
