"""Generalized Construction A: Gamma_C = rho^{-1}(C) inside (Lambda*)^m, and its predicates."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import codes as cd
from . import exactlinear as xl
from .rings import euclidean_weights, lee_compositions
from .rootlattices import (
    RootLatticeSpec,
    ambient_basis,
    lift_table,
    rho_block_array,
)


class ConstructionError(ValueError):
    pass


def _block_diag_rows(block: list[list[int]], m: int) -> list[list[int]]:
    n = len(block)
    rows = []
    for b in range(m):
        for r in block:
            row = [0] * (n * m)
            row[b * n : (b + 1) * n] = r
            rows.append(row)
    return rows


@dataclass(eq=False)
class CodeLattice:
    """A full-rank lattice in (Q f*)^m: basis rows in f*-coordinates plus exact Gram."""

    spec: RootLatticeSpec
    m: int
    basis: xl.RatMatrix
    code: cd.Code | None = None
    name: str = ""
    _gram: xl.RatMatrix | None = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return self.spec.n * self.m

    @property
    def gram(self) -> xl.RatMatrix:
        if self._gram is None:
            self._gram = ambient_gram(self.spec, self.m, self.basis)
        return self._gram

    @cached_property
    def determinant(self) -> Fraction:
        return xl.det(self.gram)

    def dump(self) -> str:
        return xl.format_lattice(self.basis.den, self.basis.num)


def ambient_gram(spec: RootLatticeSpec, m: int, basis: xl.RatMatrix) -> xl.RatMatrix:
    """B(row_i, row_j) = sum over blocks of b(., .), from the f*-Gram."""
    ab = ambient_basis(spec)
    n = spec.n
    d, g = ab.gram_fstar_scaled
    num = np.array(basis.num.rows, dtype=object).reshape(-1, n * m)
    total = np.zeros((num.shape[0], num.shape[0]), dtype=object)
    for b in range(m):
        blk = num[:, b * n : (b + 1) * n]
        total = total + blk.dot(g).dot(blk.T)
    return xl.RatMatrix(xl.IntMatrix(total.tolist()), d * basis.den**2)


def root_lattice_sum(spec: RootLatticeSpec, m: int = 1) -> CodeLattice:
    """Lambda^m, i.e. Gamma of the zero code."""
    ab = ambient_basis(spec)
    rows = _block_diag_rows(ab.gram_f.rows, m)
    return CodeLattice(spec, m, xl.RatMatrix.from_int(xl.hnf(rows)), name=f"{m}x{spec}")


def lift_words(spec: RootLatticeSpec, words: np.ndarray) -> np.ndarray:
    """Blockwise fixed lifts of codewords, shape (N, n*m)."""
    table = lift_table(spec)
    words = np.asarray(words, dtype=np.int64)
    return table[words].reshape(len(words), -1)


def rho_words(spec: RootLatticeSpec, x: np.ndarray) -> np.ndarray:
    """Blockwise reduction of integer f*-coordinate rows, shape (N, m)."""
    x = np.asarray(x, dtype=np.int64)
    n = spec.n
    return rho_block_array(spec, x.reshape(x.shape[0], -1, n))


def build_gamma_c(spec: RootLatticeSpec, code: cd.Code, check: bool = True) -> CodeLattice:
    """Basis of rho^{-1}(C): HNF of the lifts of r*g (all scalars r, generators g) and Lambda^m."""
    if code.spec != spec.ring:
        raise ConstructionError(f"code is over {code.spec.name}, but {spec} needs {spec.ring.name}")
    m = code.length
    ring = code.spec
    ab = ambient_basis(spec)
    rows = _block_diag_rows(ab.gram_f.rows, m)
    for g in code.generators:
        for r in ring.elements[1:]:
            w = np.asarray(ring.mul(int(r), g), dtype=np.int64).reshape(1, m)
            rows.append([int(v) for v in lift_words(spec, w)[0]])
    basis = xl.hnf(rows)
    if len(basis.rows) != spec.n * m:
        raise AssertionError("Gamma_C basis is not of full rank")
    lat = CodeLattice(spec, m, xl.RatMatrix.from_int(basis), code=code, name=code.name)
    if check:
        images = rho_words(spec, np.array(basis.rows, dtype=np.int64))
        keys = code.keyset()
        if any(np.ascontiguousarray(w, dtype=np.int64).tobytes() not in keys for w in images):
            raise AssertionError("a basis row of Gamma_C reduces outside C")
        index = ring.size**m // code.size
        if xl.det(basis) != index:
            raise AssertionError(f"[(Lambda*)^m : Gamma_C] = {xl.det(basis)}, expected {index}")
    return lat


def is_integral(lat: CodeLattice) -> bool:
    return lat.gram.is_integral()


def is_even(lat: CodeLattice) -> bool:
    g = lat.gram
    return g.is_integral() and all(g.num[i, i] % 2 == 0 for i in range(g.shape[0]))


def is_unimodular(lat: CodeLattice) -> bool:
    return is_integral(lat) and abs(lat.determinant) == 1


def dual_lattice(lat: CodeLattice) -> CodeLattice:
    """Rows gram^{-1} * basis: the basis dual to ``lat.basis`` under B."""
    basis = xl.inverse(lat.gram) @ lat.basis
    num = xl.hnf(basis.num)
    return CodeLattice(lat.spec, lat.m, xl.RatMatrix(num, basis.den), name=f"dual({lat.name})")


def _canonical(lat: CodeLattice) -> tuple[int, xl.IntMatrix]:
    return lat.basis.den, xl.hnf(lat.basis.num)


def lattices_equal(a: CodeLattice, b: CodeLattice) -> bool:
    if a.spec != b.spec or a.m != b.m:
        raise ConstructionError("lattices live in different ambient spaces")
    return _canonical(a) == _canonical(b)


# -- theorem clauses --

@dataclass(frozen=True)
class Clause:
    name: str
    lattice_value: bool
    code_condition: str
    code_value: bool

    @property
    def agree(self) -> bool:
        return self.lattice_value == self.code_value

    def __str__(self):
        flag = "agree" if self.agree else "DISAGREE"
        return (
            f"{self.name}: {str(self.lattice_value).lower()}; "
            f"{self.code_condition}: {str(self.code_value).lower()}; {flag}"
        )


@dataclass
class TheoremReport:
    spec: RootLatticeSpec
    code_name: str
    branch: str
    clauses: list[Clause]

    @property
    def passed(self) -> bool:
        return all(c.agree for c in self.clauses)

    def __str__(self):
        head = f"{self.spec} / {self.code_name or 'code'} [{self.branch}]"
        return "\n".join([head] + [f"  {c}" for c in self.clauses])


def _code_predicates(code: cd.Code):
    """Lazily evaluated code-side conditions keyed by short names."""
    cache = {}

    def get(key):
        if key not in cache:
            cache[key] = _PRED[key][1](code)
        return cache[key]

    return get


_PRED = {
    "SO": ("C in C^perp", lambda c: cd.is_self_orthogonal(c, False)),
    "SD": ("Euclidean self-dual", lambda c: cd.is_self_dual(c, False)),
    "SOH": ("C in conj(C)^perp", lambda c: cd.is_self_orthogonal(c, True)),
    "SDH": ("Hermitian self-dual", lambda c: cd.is_self_dual(c, True)),
    "wtL4": ("wt_L in 4Z", cd.lee_weights_divisible_by_4),
    "wtH2": ("wt_H in 2Z", cd.hamming_weights_even),
    "wtB2": ("wt_B in 2Z", cd.bachoc_weights_even),
    "II": ("Type II", cd.type_II),
    "IV": ("Type IV", cd.type_IV),
}


def theorem_branch(spec: RootLatticeSpec) -> tuple[str, tuple[str, str, str, str]]:
    """Branch name and the code-side keys for (integral, unimodular, even, even unimodular)."""
    fam, n = spec.family, spec.n
    if fam == "A":
        if n % 2:
            return "A, n odd", ("SO", "SD", f"wtE{2 * (n + 1)}", "II")
        return "A, n even", ("SO", "SD", "SO", "SD")
    if fam == "D" and n % 2:
        return "D, n odd", ("SO", "SD", "wtE8", "II")
    if fam == "D":
        kind = spec.ring_choice
        if n % 4:
            return f"D/{kind}, n = 2 mod 4", ("SO", "SD", "wtL4", "II")
        mod8 = "n = 4 mod 8" if n % 8 else "n = 0 mod 8"
        if kind == "F2U":
            return f"D/F2U, {mod8}", ("SO", "SD", "wtH2" if n % 8 else "wtB2", "IV")
        if kind == "F4":
            if n % 8:
                return f"D/F4, {mod8}", ("SOH", "SDH", "wtH2", "SDH")
            return f"D/F4, {mod8}", ("SOH", "SDH", "wtB2", "SDH&wtB2")
        if n % 8:
            return f"D/F2xF2, {mod8}", ("SOH", "SDH", "wtH2", "IV")
        return f"D/F2xF2, {mod8}", ("SOH", "SDH", "SOH", "SDH")
    if n == 6:
        return "E6", ("SO", "SD", "SO", "SD")
    if n == 7:
        return "E7", ("SO", "SD", "wtE4", "II")
    return "E8", ("TRUE", "TRUE", "TRUE", "TRUE")


def _evaluate(key: str, code: cd.Code, get) -> tuple[str, bool]:
    if "&" in key:
        parts = [_evaluate(k, code, get) for k in key.split("&")]
        return " and ".join(p[0] for p in parts), all(p[1] for p in parts)
    if key == "TRUE":
        return "always", True
    if key.startswith("wtE"):
        mod = int(key[3:])
        return f"wt_E in {mod}Z", cd.euclidean_weights_divisible(code, mod)
    return _PRED[key][0], get(key)


def verify_main_theorem(spec: RootLatticeSpec, code: cd.Code, lat: CodeLattice | None = None) -> TheoremReport:
    """Evaluate both sides of each clause of the applicable theorem."""
    if lat is None:
        lat = build_gamma_c(spec, code)
    branch, keys = theorem_branch(spec)
    integral, unimod, even = is_integral(lat), is_unimodular(lat), is_even(lat)
    lattice_side = (
        ("integral", integral),
        ("unimodular", unimod),
        ("even", even),
        ("even unimodular", even and unimod),
    )
    get = _code_predicates(code)
    clauses = []
    for (name, lv), key in zip(lattice_side, keys):
        text, cv = _evaluate(key, code, get)
        clauses.append(Clause(name, lv, text, cv))
    return TheoremReport(spec, code.name, branch, clauses)


# -- coset oracle --

def _coset_conditions(spec: RootLatticeSpec, words: np.ndarray):
    """Code-side integrality matrix (pairs) and evenness vector (singles) read off the code."""
    ring = spec.ring
    fam, n = spec.family, spec.n
    W = words
    euclid = np.asarray(ring.dot(W[:, None, :], W[None, :, :]))
    herm = np.asarray(ring.dot(W[:, None, :], W[None, :, :], hermitian=True)) if ring.order_four else euclid
    diag = np.arange(len(W))
    if fam in ("A", "E") or (fam == "D" and n % 2):
        integral = euclid == 0
        if fam == "A" and n % 2 == 0:
            even = euclid[diag, diag] == 0
        elif fam == "A":
            even = euclidean_weights(ring.k, W) % (2 * (n + 1)) == 0
        elif fam == "D":
            even = euclidean_weights(4, W) % 8 == 0
        elif n == 6:
            even = euclid[diag, diag] == 0
        elif n == 7:
            even = euclidean_weights(2, W) % 4 == 0
        else:
            even = np.ones(len(W), dtype=bool)
        return integral, even
    kind = ring.kind
    comp = lee_compositions(ring, W)
    wt_h = comp[:, 1] + comp[:, 2]
    wt_l = comp[:, 1] + 2 * comp[:, 2]
    wt_b = 2 * comp[:, 1] + comp[:, 2]
    # allowed values of the pairing for B(x, y) in Z
    allowed = {
        ("F2U", False): (0, 3), ("F2U", True): (0, 1),
        ("F4", False): (0, 1), ("F4", True): (0, 1),
        ("F2xF2", False): (0, 3), ("F2xF2", True): (0, 3),
    }[(kind, n % 4 == 0)]
    pairing = euclid if (kind == "F2U" or n % 4) else herm
    integral = np.isin(pairing, allowed)
    if n % 4:
        even = wt_l % 4 == 0
    elif n % 8:
        even = {"F2U": wt_h % 2 == 0, "F4": herm[diag, diag] == 0, "F2xF2": wt_h % 2 == 0}[kind]
    else:
        even = {"F2U": wt_b % 2 == 0, "F4": wt_b % 2 == 0, "F2xF2": herm[diag, diag] == 0}[kind]
    return integral, even


@dataclass
class OracleReport:
    spec: RootLatticeSpec
    m: int
    pairs_checked: int
    counterexamples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def __str__(self):
        status = "pass" if self.passed else f"{len(self.counterexamples)} counterexample(s)"
        lines = [f"{self.spec} m={self.m}: {self.pairs_checked} coset pairs, {status}"]
        lines += [f"  {c}" for c in self.counterexamples[:10]]
        return "\n".join(lines)


def coset_oracle(spec: RootLatticeSpec, m: int = 1, seed: int = 0, guard: int = 2**16) -> OracleReport:
    """Exhaustive check of the integrality/evenness criteria on (Lambda*/Lambda)^m."""
    ring = spec.ring
    if ring.size ** (2 * m) > guard:
        raise cd.GuardError(f"{ring.size}^{2 * m} coset pairs exceed guard {guard}")
    n = spec.n
    words = cd._all_vectors(ring, m)
    X = lift_words(spec, words)
    report = OracleReport(spec, m, len(words) ** 2)
    if not np.array_equal(rho_words(spec, X), words):
        report.counterexamples.append("fixed lifts do not reduce to their words")
        return report
    ab = ambient_basis(spec)
    d, g = ab.gram_fstar_scaled
    G = np.zeros((n * m, n * m), dtype=object)
    for b in range(m):
        G[b * n : (b + 1) * n, b * n : (b + 1) * n] = g
    Xo = X.astype(object)
    bxy = Xo.dot(G).dot(Xo.T)   # d * B(x, y)

    # independence of the chosen lifts: shift by random vectors of Lambda^m
    rng = np.random.default_rng(seed)
    lam_rows = np.array(_block_diag_rows(ab.gram_f.rows, m), dtype=object)
    coeffs = rng.integers(-3, 4, size=(len(words), n * m)).astype(object)
    Xs = Xo + coeffs.dot(lam_rows)
    shifted = Xs.dot(G).dot(Xo.T)
    qs = np.array([Xs[i].dot(G).dot(Xs[i]) for i in range(len(words))], dtype=object)
    for i in range(len(words)):
        if any((shifted[i] - bxy[i]) % d):
            report.counterexamples.append(f"B(x+lambda, y) - B(x, y) not integral at x={words[i].tolist()}")
        if (qs[i] - bxy[i, i]) % (2 * d):
            report.counterexamples.append(f"B(x+lambda, x+lambda) - B(x, x) not even at x={words[i].tolist()}")

    integral_code, even_code = _coset_conditions(spec, words)
    integral_lat = (bxy % d == 0).astype(bool)
    even_lat = np.array([bxy[i, i] % (2 * d) == 0 for i in range(len(words))])
    for i, j in zip(*np.nonzero(integral_lat != integral_code)):
        report.counterexamples.append(
            f"integrality mismatch at {words[i].tolist()}, {words[j].tolist()}: "
            f"lattice {bool(integral_lat[i, j])}, code {bool(integral_code[i, j])}"
        )
    for i in np.nonzero(even_lat != even_code)[0]:
        report.counterexamples.append(
            f"evenness mismatch at {words[i].tolist()}: lattice {bool(even_lat[i])}, code {bool(even_code[i])}"
        )
    return report


def gamma_dual_expected(spec: RootLatticeSpec, code: cd.Code) -> cd.Code:
    """The code whose lattice should equal dual(Gamma_C): C^perp, or conj(C)^perp for F4/F2xF2 with n in 4Z."""
    hermitian = spec.d_even and spec.ring_choice in ("F4", "F2xF2") and spec.n % 4 == 0
    return cd.dual_code(code, hermitian=hermitian)
