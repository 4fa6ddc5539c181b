"""Coefficient rings for codes: Z/kZ and the three rings of order four.

Elements are plain integers (or integer numpy arrays).  For ``Z/kZ`` an
element is its residue in ``[0, k)``.  For the order-four rings an element
is a bit pair ``(a, b)`` packed as ``a + 2*b``:

* ``F2+uF2``: ``a + b*u``         (0, 1, u, 1+u  ->  0, 1, 2, 3)
* ``F4``:     ``a + b*w``, w^2=w+1 (0, 1, w, w2   ->  0, 1, 2, 3)
* ``F2xF2``:  ``(a, b)``          ("00","10","01","11" -> 0, 1, 2, 3)

Addition in all three order-four rings is XOR of the packed bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np


class RingError(ValueError):
    """Bad ring name, element token or element encoding."""


def _table(fn):
    return np.array([[fn(x, y) for y in range(4)] for x in range(4)], dtype=np.int64)


def _bits(x):
    return x & 1, (x >> 1) & 1


def _mul_f2u(x, y):
    a, b = _bits(x)
    c, d = _bits(y)
    # (a + bu)(c + du) = ac + (ad + bc)u
    return (a & c) | (((a & d) ^ (b & c)) << 1)


def _mul_f4(x, y):
    a, b = _bits(x)
    c, d = _bits(y)
    # (a + bw)(c + dw) = ac + bd + (ad + bc + bd)w
    return ((a & c) ^ (b & d)) | (((a & d) ^ (b & c) ^ (b & d)) << 1)


def _mul_f2xf2(x, y):
    return x & y


_MUL = {
    "F2U": _table(_mul_f2u),
    "F4": _table(_mul_f4),
    "F2xF2": _table(_mul_f2xf2),
}
_CONJ = {
    "F2U": np.array([0, 1, 2, 3]),
    "F4": np.array([0, 1, 3, 2]),       # x -> x^2 swaps w and w2
    "F2xF2": np.array([0, 2, 1, 3]),    # (a, b) -> (b, a)
}
_TOKENS = {
    "F2U": ("0", "1", "u", "1+u"),
    "F4": ("0", "1", "w", "w2"),
    "F2xF2": ("00", "10", "01", "11"),
}
_NAMES = {"F2U": "F2u", "F4": "F4", "F2xF2": "F2xF2"}
# element counted by N2 in the Lee composition
_N2_ELEMENT = {"F2U": 2, "F4": 1, "F2xF2": 3}


@dataclass(frozen=True)
class RingSpec:
    """One of the five coefficient ring kinds.

    ``kind`` is ``"Z"`` (with modulus ``k``), ``"F2U"``, ``"F4"`` or ``"F2xF2"``.
    """

    kind: str
    k: int = 4

    def __post_init__(self):
        if self.kind == "Z":
            if self.k < 1:
                raise RingError(f"Z/kZ needs k >= 1, got {self.k}")
        elif self.kind in _MUL:
            if self.k != 4:
                raise RingError(f"{self.kind} has order 4")
        else:
            raise RingError(f"unknown ring kind {self.kind!r}")

    @classmethod
    def zmod(cls, k: int) -> "RingSpec":
        return cls("Z", k)

    @classmethod
    def parse(cls, name: str) -> "RingSpec":
        """Parse ``Z<k>``, ``F2u``, ``F4`` or ``F2xF2``."""
        name = name.strip()
        if name.startswith("Z") and name[1:].isdigit():
            return cls.zmod(int(name[1:]))
        for kind, text in _NAMES.items():
            if name == text:
                return cls(kind)
        raise RingError(f"unknown ring {name!r}")

    @property
    def name(self) -> str:
        return f"Z{self.k}" if self.kind == "Z" else _NAMES[self.kind]

    def __str__(self):
        return self.name

    @property
    def size(self) -> int:
        return self.k

    @property
    def is_zmod(self) -> bool:
        return self.kind == "Z"

    @property
    def order_four(self) -> bool:
        return self.kind != "Z"

    @property
    def elements(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    @property
    def has_conjugation(self) -> bool:
        return self.kind in ("F4", "F2xF2")

    # -- arithmetic; works elementwise on ints and integer arrays --

    def check(self, x):
        arr = np.asarray(x)
        if arr.size and (arr.min() < 0 or arr.max() >= self.size):
            raise RingError(f"invalid encoding for {self.name}: {x!r}")
        return x

    def add(self, x, y):
        if self.kind == "Z":
            return (np.asarray(x) + y) % self.k if np.ndim(x) or np.ndim(y) else (x + y) % self.k
        return np.bitwise_xor(x, y) if np.ndim(x) or np.ndim(y) else x ^ y

    def neg(self, x):
        if self.kind == "Z":
            return (-np.asarray(x)) % self.k if np.ndim(x) else (-x) % self.k
        return x

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if self.kind == "Z":
            return (np.asarray(x) * y) % self.k if np.ndim(x) or np.ndim(y) else (x * y) % self.k
        out = _MUL[self.kind][x, y]
        return out if np.ndim(out) else int(out)

    def conj(self, x):
        """Conjugation: x -> x^2 on F4, swap on F2xF2, identity otherwise."""
        if not self.has_conjugation:
            return x
        out = _CONJ[self.kind][x]
        return out if np.ndim(out) else int(out)

    def dot(self, x, y, hermitian: bool = False):
        """Sum of coordinatewise products along the last axis.

        With ``hermitian`` the second argument is conjugated first.
        """
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if x.shape[-1] != y.shape[-1]:
            raise RingError(f"length mismatch: {x.shape[-1]} vs {y.shape[-1]}")
        if hermitian:
            y = self.conj(y)
        prod = self.mul(x, y)
        if self.kind == "Z":
            out = np.asarray(prod).sum(axis=-1) % self.k
        else:
            out = np.bitwise_xor.reduce(np.asarray(prod), axis=-1)
        return out if np.ndim(out) else int(out)

    # -- text tokens --

    def token(self, x: int) -> str:
        self.check(x)
        if self.kind == "Z":
            return str(int(x))
        return _TOKENS[self.kind][int(x)]

    def parse_token(self, tok: str) -> int:
        if self.kind == "Z":
            if not tok.isdigit():
                raise RingError(f"bad Z{self.k} token {tok!r}")
            v = int(tok)
            if v >= self.k:
                raise RingError(f"token {tok!r} out of range for Z{self.k}")
            return v
        try:
            return _TOKENS[self.kind].index(tok)
        except ValueError:
            raise RingError(f"bad {self.name} token {tok!r}") from None

    @cached_property
    def n2_element(self) -> int:
        if self.kind == "Z":
            raise RingError("Lee composition is only defined for the order-four rings")
        return _N2_ELEMENT[self.kind]


ZMod = RingSpec.zmod
F2U = RingSpec("F2U")
F4 = RingSpec("F4")
F2xF2 = RingSpec("F2xF2")


def ring_ops(spec: RingSpec, x, y) -> dict:
    """Sum, product and negation of ``x`` in one call."""
    spec.check(x)
    spec.check(y)
    return {"add": spec.add(x, y), "mul": spec.mul(x, y), "neg": spec.neg(x)}


def conjugate(spec: RingSpec, x):
    return spec.conj(spec.check(x))


def inner_product(spec: RingSpec, x, y, hermitian: bool = False):
    return spec.dot(x, y, hermitian=hermitian)


def euclidean_weight(k: int, x) -> int:
    """Sum of squared residues, residues taken in ``[0, k)``."""
    x = np.asarray(x, dtype=np.int64) % k
    return int((x * x).sum())


def euclidean_weights(k: int, words: np.ndarray) -> np.ndarray:
    """Row-wise :func:`euclidean_weight` for a 2-d array of words."""
    words = np.asarray(words, dtype=np.int64) % k
    return (words * words).sum(axis=-1)


def lee_composition(spec: RingSpec, x) -> tuple[int, int, int]:
    """(N0, N1, N2): zeros, "unit-like" entries, and the self-paired element.

    N2 counts ``u`` over F2+uF2, ``1`` over F4 and ``(1,1)`` over F2xF2.
    """
    x = np.asarray(x, dtype=np.int64)
    n0 = int((x == 0).sum())
    n2 = int((x == spec.n2_element).sum())
    return n0, x.shape[-1] - n0 - n2, n2


def lee_compositions(spec: RingSpec, words: np.ndarray) -> np.ndarray:
    """Row-wise Lee compositions, shape ``(N, 3)``."""
    words = np.asarray(words, dtype=np.int64)
    n0 = (words == 0).sum(axis=-1)
    n2 = (words == spec.n2_element).sum(axis=-1)
    return np.stack([n0, words.shape[-1] - n0 - n2, n2], axis=-1)


def weights_from_composition(n0: int, n1: int, n2: int) -> dict:
    """Hamming, Lee and Bachoc weights of a Lee composition."""
    return {"wt_H": n1 + n2, "wt_L": n1 + 2 * n2, "wt_B": 2 * n1 + n2}
