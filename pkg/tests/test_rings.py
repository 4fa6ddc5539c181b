import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from adelattice.rings import (
    F2U, F4, F2xF2, RingError, RingSpec, ZMod, conjugate, euclidean_weight, inner_product,
    lee_composition, ring_ops, weights_from_composition,
)

RINGS = [ZMod(2), ZMod(3), ZMod(4), ZMod(9), F2U, F4, F2xF2]


def test_f2u_table():
    u = 2
    assert F2U.mul(u, u) == 0
    assert F2U.mul(3, 3) == 1  # (1+u)^2 = 1
    assert F2U.add(1, u) == 3


def test_f4_table():
    w, wb = 2, 3
    assert F4.mul(w, w) == wb
    assert F4.mul(w, wb) == 1
    assert F4.add(w, 1) == wb
    assert F4.conj(w) == wb and F4.conj(1) == 1


def test_f2xf2_componentwise():
    # (a, b) packed as a + 2b
    for x, y in itertools.product(range(4), repeat=2):
        assert F2xF2.mul(x, y) == ((x & 1) * (y & 1)) | (((x >> 1) * (y >> 1)) << 1)
    assert F2xF2.conj(1) == 2 and F2xF2.conj(3) == 3


@pytest.mark.parametrize("R", RINGS, ids=str)
def test_ring_axioms_exhaustive(R):
    el = [int(x) for x in R.elements]
    one = 3 if R == F2xF2 else 1  # (1, 1)
    for a, b, c in itertools.product(el, repeat=3):
        assert R.mul(a, R.mul(b, c)) == R.mul(R.mul(a, b), c)
        assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    for a, b in itertools.product(el, repeat=2):
        assert R.add(a, b) == R.add(b, a)
        assert R.mul(a, b) == R.mul(b, a)
        assert R.conj(R.mul(a, b)) == R.mul(R.conj(a), R.conj(b))
        assert R.conj(R.add(a, b)) == R.add(R.conj(a), R.conj(b))
    for a in el:
        assert R.add(a, R.neg(a)) == 0
        assert R.mul(a, one) == a
        assert R.conj(R.conj(a)) == a


@pytest.mark.parametrize("R", RINGS, ids=str)
@given(data=st.data())
def test_hermitian_dot_is_sesquilinear(R, data):
    n = data.draw(st.integers(1, 6))
    vec = st.lists(st.integers(0, R.size - 1), min_size=n, max_size=n)
    x, y = data.draw(vec), data.draw(vec)
    a = data.draw(st.integers(0, R.size - 1))
    ax = R.mul(a, np.array(x))
    assert R.dot(ax, y, hermitian=True) == R.mul(a, R.dot(x, y, hermitian=True))
    assert R.dot(y, ax, hermitian=True) == R.mul(R.conj(a), R.dot(y, x, hermitian=True))
    assert inner_product(R, x, y) == inner_product(R, y, x)


@pytest.mark.parametrize("R", RINGS, ids=str)
def test_tokens_round_trip(R):
    for a in range(R.size):
        assert R.parse_token(R.token(a)) == a
    assert RingSpec.parse(R.name) == R


def test_token_errors():
    with pytest.raises(RingError):
        ZMod(3).parse_token("3")
    with pytest.raises(RingError):
        F2xF2.parse_token("2")
    with pytest.raises(RingError):
        RingSpec.parse("GF9")


def test_check_rejects_out_of_range():
    with pytest.raises(RingError):
        ring_ops(ZMod(5), 5, 1)
    with pytest.raises(RingError):
        conjugate(F4, 4)


def test_euclidean_weight_residues():
    assert euclidean_weight(5, [1, 2, 3, 4]) == 1 + 4 + 9 + 16
    assert euclidean_weight(4, [-1]) == 9


@pytest.mark.parametrize("R,n2", [(F2U, 2), (F4, 1), (F2xF2, 3)], ids=str)
def test_lee_composition(R, n2):
    x = [0, 0, n2] + [a for a in range(1, 4) if a != n2]
    assert lee_composition(R, x) == (2, 2, 1)
    assert weights_from_composition(2, 2, 1) == {"wt_H": 3, "wt_L": 4, "wt_B": 5}


def test_lee_composition_undefined_over_zmod():
    with pytest.raises(RingError):
        lee_composition(ZMod(4), [1])
