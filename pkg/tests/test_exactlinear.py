from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from adelattice import exactlinear as xl


def square(n, lo=-4, hi=4):
    return st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)


def _det_fraction(rows):
    # Laplace expansion oracle
    if len(rows) == 1:
        return Fraction(rows[0][0])
    return sum(
        (-1) ** j * rows[0][j] * _det_fraction([r[:j] + r[j + 1 :] for r in rows[1:]])
        for j in range(len(rows))
    )


@given(st.integers(1, 4).flatmap(square))
def test_det_matches_laplace(rows):
    assert xl.det(xl.IntMatrix(rows)) == _det_fraction(rows)


@given(st.integers(1, 4).flatmap(square))
def test_inverse(rows):
    M = xl.RatMatrix.from_int(rows)
    if xl.det(M) == 0:
        return
    n = len(rows)
    assert M @ xl.inverse(M) == xl.RatMatrix.identity(n)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=1, max_size=6)))
def test_hnf_same_lattice_and_shape(rows):
    H = xl.hnf(rows)
    assert xl.same_row_lattice(H, rows)
    # echelon with positive pivots, entries above pivots reduced
    piv = []
    for r in H.rows:
        j = next(i for i, x in enumerate(r) if x)
        assert r[j] > 0
        assert not piv or j > piv[-1]
        piv.append(j)
    for i, j in enumerate(piv):
        for k in range(i):
            assert 0 <= H.rows[k][j] < H.rows[i][j]
    assert xl.hnf(H) == H


def test_hnf_drops_zero_rows():
    assert xl.hnf([[2, 4], [1, 2], [0, 0]]).rows == [[1, 2]]


def test_ratmatrix_normalized():
    M = xl.RatMatrix.from_fractions([[Fraction(1, 2), Fraction(1, 3)]])
    assert M.den == 6 and M.num.rows == [[3, 2]]
    assert M[0, 1] == Fraction(1, 3)
    assert not M.is_integral()
    assert (M.scale(6)).to_int().rows == [[3, 2]]


def test_solve_left():
    B = xl.RatMatrix.from_int([[2, 0], [1, 1]])
    assert xl.solve_left(B, [3, 1]) == [Fraction(1), Fraction(1)]
    assert xl.row_lattice_contains([[2, 0], [1, 1]], [[3, 1]])
    assert not xl.row_lattice_contains([[2, 0], [1, 1]], [[1, 0]])


def test_lattice_text_round_trip():
    den, basis = 3, xl.IntMatrix([[1, 2], [0, 3]])
    assert xl.parse_lattice(xl.format_lattice(den, basis)) == (den, basis)


def test_singular_inverse_raises():
    with pytest.raises(Exception):
        xl.inverse(xl.RatMatrix.from_int([[1, 2], [2, 4]]))
