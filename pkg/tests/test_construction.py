from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from adelattice import codes as cd
from adelattice import construction as cs
from adelattice import exactlinear as xl
from adelattice.fixtures import available, crt_pair, load
from adelattice.rings import euclidean_weights
from adelattice.rootlattices import RootLatticeSpec, ambient_basis, rho

SMALL_SPECS = [
    RootLatticeSpec("A", 1), RootLatticeSpec("A", 2), RootLatticeSpec("A", 3), RootLatticeSpec("A", 4),
    RootLatticeSpec("D", 5),
    RootLatticeSpec("D", 4, "F2U"), RootLatticeSpec("D", 4, "F4"), RootLatticeSpec("D", 4, "F2xF2"),
    RootLatticeSpec("D", 6, "F2U"), RootLatticeSpec("D", 6, "F4"), RootLatticeSpec("D", 6, "F2xF2"),
    RootLatticeSpec("D", 8, "F2U"), RootLatticeSpec("D", 8, "F4"), RootLatticeSpec("D", 8, "F2xF2"),
    RootLatticeSpec("E", 6), RootLatticeSpec("E", 7), RootLatticeSpec("E", 8),
]


@st.composite
def spec_and_code(draw, max_m=3):
    spec = draw(st.sampled_from(SMALL_SPECS))
    R = spec.ring
    m = draw(st.integers(1, max_m))
    k = draw(st.integers(0, 3))
    gens = draw(st.lists(st.lists(st.integers(0, R.size - 1), min_size=m, max_size=m), min_size=k, max_size=k))
    return spec, cd.Code(R, m, np.array(gens, dtype=np.int64).reshape(k, m))


@given(spec_and_code())
def test_gamma_c_structure(sc):
    spec, code = sc
    lat = cs.build_gamma_c(spec, code)
    R = spec.ring
    # Gram determinant of Gamma_C: det(Lambda)^m / [Gamma_C : Lambda^m]^2
    assert lat.determinant == Fraction(R.size**code.length, code.size**2)
    assert lat.basis.is_integral()
    words = {tuple(rho(spec, row)) for row in lat.basis.to_int().rows}
    assert words <= {tuple(w) for w in code.codewords().tolist()}
    lam = cs.root_lattice_sum(spec, code.length)
    assert xl.row_lattice_contains(lat.basis.to_int(), lam.basis.to_int())


@given(spec_and_code())
def test_main_theorem_random_codes(sc):
    spec, code = sc
    rep = cs.verify_main_theorem(spec, code)
    assert rep.passed, str(rep)


@given(spec_and_code(max_m=2))
def test_dual_lattice_is_lattice_of_dual_code(sc):
    spec, code = sc
    lat = cs.build_gamma_c(spec, code)
    expected = cs.build_gamma_c(spec, cs.gamma_dual_expected(spec, code))
    assert cs.lattices_equal(cs.dual_lattice(lat), expected)


def test_named_instances():
    A1, E6 = RootLatticeSpec("A", 1), RootLatticeSpec("E", 6)
    rep = cs.verify_main_theorem(A1, load("golay24"))
    assert rep.passed and rep.clauses[3].lattice_value and rep.clauses[3].code_value
    rep = cs.verify_main_theorem(A1, load("repetition2"))
    assert rep.passed and rep.clauses[1].lattice_value and not rep.clauses[2].lattice_value
    rep = cs.verify_main_theorem(E6, load("tetracode"))
    assert rep.passed and rep.clauses[3].lattice_value
    D5 = RootLatticeSpec("D", 5)
    two = cd.Code(D5.ring, 1, np.array([[2]]))
    rep = cs.verify_main_theorem(D5, two)
    assert rep.passed and rep.clauses[1].lattice_value and not rep.clauses[3].lattice_value
    assert "agree" in str(rep) and "DISAGREE" not in str(rep)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_crt_codes_d4(k):
    rep = cs.verify_main_theorem(RootLatticeSpec("D", 4, "F2xF2"), crt_pair(f"c6_{k}"))
    assert rep.passed and all(c.lattice_value for c in rep.clauses)


@pytest.mark.parametrize(
    "spec,m",
    [(RootLatticeSpec(*a), m) for a, m in [
        (("A", 1), 2), (("A", 2), 2), (("A", 3), 2), (("A", 4), 2), (("D", 5), 1), (("D", 7), 1),
        (("D", 4, "F2U"), 2), (("D", 4, "F4"), 2), (("D", 4, "F2xF2"), 2),
        (("D", 6, "F2U"), 2), (("D", 6, "F4"), 2), (("D", 6, "F2xF2"), 2),
        (("D", 8, "F2U"), 1), (("D", 8, "F4"), 1), (("D", 8, "F2xF2"), 1),
        (("D", 10, "F4"), 1), (("D", 12, "F2xF2"), 1), (("E", 6), 2), (("E", 7), 2),
    ]],
    ids=str,
)
def test_coset_oracle(spec, m):
    rep = cs.coset_oracle(spec, m)
    assert rep.passed, str(rep)
    assert rep.pairs_checked == spec.ring.size ** (2 * m)


_original = cs._coset_conditions


def _mutant_euclidean_f4(spec, words):
    # wrong: Euclidean instead of Hermitian pairing for F4 with n in 4Z
    integral, even = _original(spec, words)
    if spec.ring_choice == "F4" and spec.n % 4 == 0:
        e = np.asarray(spec.ring.dot(words[:, None, :], words[None, :, :]))
        integral = np.isin(e, (0, 1))
    return integral, even


def _mutant_modulus(spec, words):
    # wrong: wt_E in 2nZ instead of 2(n+1)Z for A_n, n odd
    integral, even = _original(spec, words)
    if spec.family == "A" and spec.n % 2:
        even = euclidean_weights(spec.ring.k, words) % (2 * spec.n) == 0
    return integral, even


@pytest.mark.parametrize(
    "mutant,spec",
    [(_mutant_euclidean_f4, RootLatticeSpec("D", 4, "F4")), (_mutant_modulus, RootLatticeSpec("A", 3))],
)
def test_oracle_detects_wrong_conditions(monkeypatch, mutant, spec):
    monkeypatch.setattr(cs, "_coset_conditions", mutant)
    rep = cs.coset_oracle(spec, 2)
    assert not rep.passed


def test_oracle_guard():
    with pytest.raises(cd.GuardError):
        cs.coset_oracle(RootLatticeSpec("A", 24), 3)


def test_zmod_corpus_corollary():
    # Type II (n odd) or self-dual (n even) codes over Z/(n+1) have m n in 8Z
    checked = 0
    for name in available():
        c = load(name)
        if not c.spec.is_zmod or c.spec.k < 2:
            continue
        n = c.spec.k - 1
        good = cd.type_II(c) if n % 2 else cd.is_self_dual(c)
        if good:
            checked += 1
            assert (c.length * n) % 8 == 0, name
    assert checked >= 6


def test_dump_round_trip():
    lat = cs.build_gamma_c(RootLatticeSpec("E", 6), load("tetracode"))
    den, basis = xl.parse_lattice(lat.dump())
    assert xl.RatMatrix(basis, den) == lat.basis
    assert cs.is_unimodular(lat) and cs.is_even(lat)


def test_wrong_ring_rejected():
    with pytest.raises(Exception):
        cs.build_gamma_c(RootLatticeSpec("A", 2), load("golay24"))


def test_root_lattice_sum():
    spec = RootLatticeSpec("D", 5)
    lam = cs.root_lattice_sum(spec, 2)
    gf = ambient_basis(spec).gram_f.rows
    rows = [r + [0] * 5 for r in gf] + [[0] * 5 + r for r in gf]
    assert xl.same_row_lattice(lam.basis.to_int(), rows)
    assert lam.determinant == 16
    assert cs.is_even(lam) and not cs.is_unimodular(lam)
