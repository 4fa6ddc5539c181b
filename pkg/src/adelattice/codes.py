"""Linear codes over the coefficient rings: spans, duals, types, enumerators."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .rings import (
    F2xF2,
    RingError,
    RingSpec,
    euclidean_weights,
    lee_compositions,
)

DEFAULT_GUARD = 2**26
BRUTE_FORCE_GUARD = 2**20


class GuardError(RuntimeError):
    """Enumeration would exceed the configured size guard."""


class CodeFormatError(ValueError):
    """Malformed code file."""


def _keys(words: np.ndarray) -> list[bytes]:
    words = np.ascontiguousarray(words, dtype=np.int64)
    return [w.tobytes() for w in words]


def _unique_rows(words: np.ndarray) -> np.ndarray:
    if len(words) == 0:
        return words
    return np.unique(words, axis=0)


def _scalar_multiples(spec: RingSpec, g: np.ndarray) -> np.ndarray:
    """Rows r*g for every r in the ring, shape (|R|, m)."""
    r = spec.elements[:, None]
    return np.asarray(spec.mul(r, g[None, :]), dtype=np.int64)


def span(spec: RingSpec, generators: np.ndarray, length: int, guard: int = DEFAULT_GUARD) -> np.ndarray:
    """All R-linear combinations of the generator rows, sorted and unique."""
    words = np.zeros((1, length), dtype=np.int64)
    for g in np.asarray(generators, dtype=np.int64).reshape(-1, length):
        if not g.any():
            continue
        mults = _unique_rows(_scalar_multiples(spec, g))
        if len(words) * len(mults) > guard:
            raise GuardError(
                f"span enumeration needs {len(words) * len(mults)} combinations (guard {guard})"
            )
        combos = spec.add(words[:, None, :], mults[None, :, :]).reshape(-1, length)
        words = _unique_rows(combos)
    return words


@dataclass(eq=False)
class Code:
    """An R-submodule of R^m given by generator rows."""

    spec: RingSpec
    length: int
    generators: np.ndarray = field(default=None)
    name: str = ""

    def __post_init__(self):
        if self.length < 1:
            raise CodeFormatError("code length must be at least 1")
        gens = self.generators
        if gens is None:
            gens = np.zeros((0, self.length), dtype=np.int64)
        gens = np.asarray(gens, dtype=np.int64)
        if gens.size == 0:
            gens = gens.reshape(0, self.length)
        if gens.ndim != 2 or gens.shape[1] != self.length:
            raise CodeFormatError(
                f"generators must have length {self.length}, got shape {gens.shape}"
            )
        self.spec.check(gens)
        self.generators = gens
        self._words = None

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"Code({self.spec.name}, m={self.length}, {len(self.generators)} gens{label})"

    def codewords(self, guard: int = DEFAULT_GUARD) -> np.ndarray:
        if self._words is None:
            self._words = span(self.spec, self.generators, self.length, guard)
        return self._words

    @property
    def size(self) -> int:
        return len(self.codewords())

    def keyset(self) -> set[bytes]:
        return set(_keys(self.codewords()))

    def __contains__(self, word) -> bool:
        w = np.asarray(word, dtype=np.int64).reshape(self.length)
        return w.tobytes() in self.keyset()

    def same_code(self, other: "Code") -> bool:
        return (
            self.spec == other.spec
            and self.length == other.length
            and np.array_equal(self.codewords(), other.codewords())
        )

    def conjugate(self) -> "Code":
        return Code(self.spec, self.length, self.spec.conj(self.generators), self.name)


def enumerate_codewords(code: Code, guard: int = DEFAULT_GUARD) -> tuple[np.ndarray, int]:
    words = code.codewords(guard)
    return words, len(words)


def minimal_generators(spec: RingSpec, words: np.ndarray, length: int) -> np.ndarray:
    """Greedy generating set for the code whose codewords are ``words``."""
    target = len(words)
    chosen: list[np.ndarray] = []
    current = {np.zeros(length, dtype=np.int64).tobytes()}
    for w in words:
        if len(current) == target:
            break
        if w.tobytes() in current:
            continue
        chosen.append(w)
        current = set(_keys(span(spec, np.array(chosen), length)))
    if not chosen:
        return np.zeros((0, length), dtype=np.int64)
    return np.array(chosen, dtype=np.int64)


def _all_vectors(spec: RingSpec, length: int) -> np.ndarray:
    grids = np.indices((spec.size,) * length).reshape(length, -1).T
    return grids.astype(np.int64)


def _dual_brute(code: Code, hermitian: bool) -> Code:
    spec, m = code.spec, code.length
    everything = _all_vectors(spec, m)
    ok = np.ones(len(everything), dtype=bool)
    for g in code.generators:
        ok &= spec.dot(everything, g[None, :], hermitian=hermitian) == 0
    words = everything[ok]
    dual = Code(spec, m, minimal_generators(spec, words, m))
    dual._words = _unique_rows(words)
    return dual


def _dual_zmod_lattice(code: Code) -> Code:
    """Dual over Z/k via the lifted lattice L = <gens> + kZ^m, whose dual scaled by k lifts C^perp."""
    from . import exactlinear as xl

    k, m = code.spec.k, code.length
    rows = [list(map(int, g)) for g in code.generators]
    rows += [[k if i == j else 0 for j in range(m)] for i in range(m)]
    basis = xl.hnf(xl.IntMatrix(rows))
    inv = xl.inverse(xl.RatMatrix.from_int(basis))
    lifted = (inv.transpose().scale(k)).to_int()
    gens = np.array([[int(x) % k for x in row] for row in lifted.rows], dtype=np.int64)
    gens = gens[gens.any(axis=1)]
    return Code(code.spec, m, gens)


def dual_code(code: Code, hermitian: bool = False, guard: int = BRUTE_FORCE_GUARD) -> Code:
    """Euclidean (or, with ``hermitian``, conjugate-twisted) dual code."""
    spec, m = code.spec, code.length
    if spec.size**m <= guard:
        dual = _dual_brute(code, hermitian)
    elif spec.is_zmod:
        dual = _dual_zmod_lattice(code)
    else:
        raise GuardError(f"{spec.size}^{m} vectors exceed the brute-force guard {guard}")
    try:
        if code.size * dual.size != spec.size**m:
            raise AssertionError(
                f"|C|*|C^perp| = {code.size * dual.size}, expected {spec.size ** m}"
            )
    except GuardError:
        pass
    return dual


def is_self_orthogonal(code: Code, hermitian: bool = False) -> bool:
    """C inside its (Hermitian) dual; checked on generator pairs, which suffices by (sesqui)linearity."""
    g = code.generators
    if len(g) == 0:
        return True
    gram = code.spec.dot(g[:, None, :], g[None, :, :], hermitian=hermitian)
    return not np.asarray(gram).any()


def is_self_dual(code: Code, hermitian: bool = False) -> bool:
    if not is_self_orthogonal(code, hermitian):
        return False
    dual = dual_code(code, hermitian)
    return code.size == dual.size and code.keyset() <= dual.keyset()


def self_duality(code: Code) -> dict:
    return {
        "self_orthogonal_euclidean": is_self_orthogonal(code, False),
        "self_dual_euclidean": is_self_dual(code, False),
        "self_orthogonal_hermitian": is_self_orthogonal(code, True),
        "self_dual_hermitian": is_self_dual(code, True),
    }


# -- weight conditions; each quantifies over every codeword --

def euclidean_weights_divisible(code: Code, modulus: int) -> bool:
    if not code.spec.is_zmod:
        raise RingError("Euclidean weight needs a Z/kZ code")
    return bool((euclidean_weights(code.spec.k, code.codewords()) % modulus == 0).all())


def _weights(code: Code, which: str) -> np.ndarray:
    comp = lee_compositions(code.spec, code.codewords())
    n1, n2 = comp[:, 1], comp[:, 2]
    return {"H": n1 + n2, "L": n1 + 2 * n2, "B": 2 * n1 + n2}[which]


def hamming_weights_even(code: Code) -> bool:
    return bool((_weights(code, "H") % 2 == 0).all())


def lee_weights_divisible_by_4(code: Code) -> bool:
    return bool((_weights(code, "L") % 4 == 0).all())


def bachoc_weights_even(code: Code) -> bool:
    return bool((_weights(code, "B") % 2 == 0).all())


def type_II(code: Code) -> bool:
    """Euclidean self-dual with wt_E in 2kZ (over Z/k) or wt_L in 4Z (order-four rings)."""
    if not is_self_dual(code, hermitian=False):
        return False
    if code.spec.is_zmod:
        return euclidean_weights_divisible(code, 2 * code.spec.k)
    return lee_weights_divisible_by_4(code)


def type_IV(code: Code) -> bool:
    """Even Hamming weights plus Euclidean (F2+uF2) or Hermitian (F2xF2) self-duality."""
    if code.spec.kind == "F2U":
        sd = is_self_dual(code, hermitian=False)
    elif code.spec.kind == "F2xF2":
        sd = is_self_dual(code, hermitian=True)
    else:
        raise RingError(f"Type IV is not defined over {code.spec.name}")
    return sd and hamming_weights_even(code)


# -- weight enumerators --

@dataclass(frozen=True)
class WeightEnumerator:
    """Map from exponent tuples to monomial counts."""

    kind: str
    coefficients: dict

    def evaluate(self, *values):
        total = 0
        for exps, c in self.coefficients.items():
            term = c
            for v, e in zip(values, exps):
                term = term * v**e
            total = total + term
        return total

    def __str__(self):
        names = ("X0", "X1", "X2")
        parts = []
        for exps in sorted(self.coefficients, reverse=True):
            c = self.coefficients[exps]
            mono = "*".join(f"{names[i]}^{e}" if e > 1 else names[i] for i, e in enumerate(exps) if e)
            parts.append(f"{c}*{mono}" if c != 1 and mono else (mono or str(c)))
        return " + ".join(parts)


def weight_enumerator(code: Code, kind: str | None = None) -> WeightEnumerator:
    """Lee-composition enumerator (order-four rings) or the two-variable ternary one."""
    spec = code.spec
    if kind is None:
        kind = "Ternary2" if spec == RingSpec.zmod(3) else "LeeComposition3"
    words = code.codewords()
    if kind == "LeeComposition3":
        if not spec.order_four:
            raise RingError("LeeComposition3 needs an order-four ring")
        rows = lee_compositions(spec, words)
    elif kind == "Ternary2":
        if spec != RingSpec.zmod(3):
            raise RingError("Ternary2 needs Z/3Z")
        zeros = (words == 0).sum(axis=1)
        rows = np.stack([zeros, code.length - zeros], axis=1)
    else:
        raise ValueError(f"unknown enumerator kind {kind!r}")
    counts = Counter(tuple(int(v) for v in r) for r in rows)
    return WeightEnumerator(kind, dict(counts))


def crt_combine(c1: Code, c2: Code) -> Code:
    """Coordinatewise pairing of two binary codes into an F2xF2 code."""
    for c in (c1, c2):
        if c.spec != RingSpec.zmod(2):
            raise RingError("CRT needs binary codes")
    if c1.length != c2.length:
        raise CodeFormatError(f"length mismatch: {c1.length} vs {c2.length}")
    # (a, b) is packed as a + 2b
    gens = [g for g in c1.generators] + [2 * h for h in c2.generators]
    gens = np.array(gens, dtype=np.int64).reshape(-1, c1.length)
    return Code(F2xF2, c1.length, gens)


# -- text format --

def format_code(code: Code) -> str:
    lines = [f"ring {code.spec.name}", f"length {code.length}", "generators"]
    for g in code.generators:
        lines.append(" ".join(code.spec.token(int(x)) for x in g))
    return "\n".join(lines) + "\n"


def parse_code(text: str, name: str = "") -> Code:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if len(lines) < 3:
        raise CodeFormatError("code file needs ring, length and generators lines")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "ring":
        raise CodeFormatError(f"expected 'ring <name>', got {lines[0]!r}")
    try:
        spec = RingSpec.parse(head[1])
    except RingError as exc:
        raise CodeFormatError(str(exc)) from None
    head = lines[1].split()
    if len(head) != 2 or head[0] != "length" or not head[1].isdigit():
        raise CodeFormatError(f"expected 'length <m>', got {lines[1]!r}")
    m = int(head[1])
    if m < 1:
        raise CodeFormatError("code length must be at least 1")
    if lines[2] != "generators":
        raise CodeFormatError(f"expected 'generators', got {lines[2]!r}")
    rows = []
    for ln in lines[3:]:
        toks = ln.split()
        if len(toks) != m:
            raise CodeFormatError(f"row {ln!r} has {len(toks)} entries, expected {m}")
        try:
            rows.append([spec.parse_token(t) for t in toks])
        except RingError as exc:
            raise CodeFormatError(str(exc)) from None
    gens = np.array(rows, dtype=np.int64).reshape(-1, m)
    return Code(spec, m, gens, name)


def read_code(path) -> Code:
    path = Path(path)
    return parse_code(path.read_text(), name=path.stem)


def write_code(code: Code, path) -> None:
    Path(path).write_text(format_code(code))
