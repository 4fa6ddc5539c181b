"""Root lattices A_n, D_n, E_6, E_7, E_8 with the bases (e), (f), (f*) and the reductions rho.

Working coordinates are f*-coordinates: a vector of Lambda* is an integer
vector x meaning sum_j x_j f*_j.  In these coordinates f_j is row j of the
f-Gram matrix, so Lambda is the integer row span of ``gram_f``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from . import exactlinear as xl
from .rings import F2U, F4, F2xF2, RingSpec

_D_EVEN_RINGS = {"F2U": F2U, "F2u": F2U, "F4": F4, "F2xF2": F2xF2}


class RootLatticeError(ValueError):
    pass


@dataclass(frozen=True)
class RootLatticeSpec:
    """Family ("A", "D", "E"), rank n, and the ring choice used for D_n with n even."""

    family: str
    n: int
    ring_choice: str | None = None

    def __post_init__(self):
        fam, n = self.family, self.n
        if fam == "A" and n >= 1:
            pass
        elif fam == "D" and n >= 4:
            if n % 2 == 0:
                if self.ring_choice is None:
                    object.__setattr__(self, "ring_choice", "F2U")
                if self.ring_choice not in _D_EVEN_RINGS:
                    raise RootLatticeError(f"unknown ring choice {self.ring_choice!r} for D_{n}")
                object.__setattr__(self, "ring_choice", _D_EVEN_RINGS[self.ring_choice].kind)
            elif self.ring_choice not in (None, "Z4"):
                raise RootLatticeError(f"D_{n} with n odd uses Z/4Z only")
            else:
                object.__setattr__(self, "ring_choice", None)
        elif fam == "E" and n in (6, 7, 8):
            if self.ring_choice is not None:
                raise RootLatticeError("E-type lattices have a fixed ring")
        else:
            raise RootLatticeError(f"invalid root lattice {fam}_{n}")

    def __str__(self):
        base = f"{self.family}{self.n}"
        if self.family == "D" and self.n % 2 == 0:
            return f"{base}/{RingSpec(self.ring_choice).name}"
        return base

    @property
    def ring(self) -> RingSpec:
        fam, n = self.family, self.n
        if fam == "A":
            return RingSpec.zmod(n + 1)
        if fam == "D":
            return RingSpec.zmod(4) if n % 2 else RingSpec(self.ring_choice)
        return RingSpec.zmod(9 - n)

    @property
    def d_even(self) -> bool:
        return self.family == "D" and self.n % 2 == 0


def gram_e(family: str, n: int) -> xl.IntMatrix:
    """Gram matrix of the simple roots e_1..e_n."""
    RootLatticeSpec(family, n, "F2U" if family == "D" and n % 2 == 0 else None)
    g = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                v = 2
            elif family == "A":
                v = -1 if abs(i - j) == 1 else 0
            else:
                special = n - 2 if family == "D" else n - 3
                pair = {i, j}
                chain = abs(i - j) == 1 and pair != {n - 1, n}
                v = -1 if chain or pair == {special, n} else 0
            g[i - 1][j - 1] = v
    return xl.IntMatrix(g)


# f_j = sum_k e_k M[k][j]; matrices transcribed for E_6 and E_7.
# E_6 entry (6, 2) is 1: without it b(f_i, f_j*) != delta_ij.
_M6 = [
    [0, 0, 1, 0, 0, 0],
    [1, 0, 0, 0, 1, 1],
    [1, 1, 0, 0, 1, 1],
    [0, 0, 0, 1, 1, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 1, 0, 0, 0, 1],
]
_N6 = [
    [4, 1, 1, 2, -1, -1],
    [1, 4, 1, 2, 2, -1],
    [1, 1, 4, 2, 2, 2],
    [2, 2, 2, 4, 1, 1],
    [-1, 2, 2, 1, 4, 1],
    [-1, -1, 2, 1, 1, 4],
]
_M7 = [
    [1, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0],
    [1, 1, 1, 0, 0, 0, 0],
    [1, 1, 1, 1, 0, 0, 0],
    [1, 1, 1, 1, 1, 0, -1],
    [1, 1, 1, 1, 1, 1, -2],
    [0, 0, 0, 0, 0, 0, 1],
]
_N7 = [[3 if i == j else 1 for j in range(6)] + [3] for i in range(6)] + [[3] * 6 + [7]]


def _f_rows(family: str, n: int) -> list[list[int]]:
    """f_i in e-coordinates, one row per i."""
    e = lambda i: [int(k == i) for k in range(1, n + 1)]  # noqa: E731
    add = lambda *vs: [sum(c) for c in zip(*vs)]  # noqa: E731
    if family == "A":
        return [[int(l >= i) for l in range(1, n + 1)] for i in range(1, n + 1)]
    if family == "D" and n % 2:
        rows = []
        for i in range(1, n - 2):
            v = add(e(i), e(n - 1), e(n))
            for l in range(i + 1, n - 1):
                v = add(v, e(l), e(l))
            rows.append(v)
        rows.append(add(e(n - 2), e(n - 1), e(n)))
        rows.append(e(n))
        rows.append(add(e(n), *[e(l) for l in range(1, n - 1)]))
        return rows
    if family == "D":
        rows = [e(i) for i in range(1, n)]
        rows.append(add(e(n), *[e(l) for l in range(1, n - 1)]))
        return rows
    if n == 8:
        return [e(i) for i in range(1, 9)]
    m = _M6 if n == 6 else _M7
    return [[m[k][j] for k in range(n)] for j in range(n)]


def _fstar_formula(family: str, n: int) -> xl.RatMatrix:
    """f*_i in f-coordinates from the closed forms, one row per i."""
    if family == "A":
        rows = [[Fraction(int(i == l)) - Fraction(1, n + 1) for l in range(n)] for i in range(n)]
    elif family == "D" and n % 2:
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for l in range(n):
                rows[i][(i + l) % n] += Fraction((-1) ** l * (n - 2 * l), 4)
    elif family == "D":
        rows = [[Fraction(n - 2 * abs(i - l), 4) for l in range(n)] for i in range(n)]
    elif n == 8:
        # unimodular: f* is the inverse Gram, which is integral
        ge = gram_e("E", 8)
        return xl.inverse(ge)
    else:
        N, d = (_N6, 3) if n == 6 else (_N7, 2)
        # (f*) = (f) N / d, so row i of the f-coordinate matrix is column i of N
        rows = [[Fraction(N[l][i], d) for l in range(n)] for i in range(n)]
    return xl.RatMatrix.from_fractions(rows)


_FSTAR_GRAM_PRINTED = {6: (_N6, 3), 7: (_N7, 2)}


@dataclass(frozen=True)
class AmbientBasis:
    """Exact basis data for one root lattice."""

    spec: RootLatticeSpec
    gram_e: xl.IntMatrix
    F: xl.IntMatrix           # rows: f_i in e-coordinates
    Fstar: xl.RatMatrix       # rows: f*_i in f-coordinates
    gram_f: xl.IntMatrix
    gram_fstar: xl.RatMatrix

    @property
    def n(self) -> int:
        return self.spec.n

    @cached_property
    def gram_f_np(self) -> np.ndarray:
        return np.array(self.gram_f.rows, dtype=np.int64)

    @cached_property
    def gram_fstar_scaled(self) -> tuple[int, np.ndarray]:
        """(d, d * gram_fstar) with the integer part as a numpy array."""
        return self.gram_fstar.den, np.array(self.gram_fstar.num.rows, dtype=object)


@lru_cache(maxsize=None)
def ambient_basis(spec: RootLatticeSpec) -> AmbientBasis:
    fam, n = spec.family, spec.n
    ge = gram_e(fam, n)
    F = xl.IntMatrix(_f_rows(fam, n))
    gf = F @ ge @ F.transpose()
    fstar = _fstar_formula(fam, n)
    # b(f_i, f*_j) = (gram_f Fstar^T)_ij
    pairing = xl.RatMatrix.from_int(gf) @ fstar.transpose()
    if pairing != xl.RatMatrix.identity(n):
        raise AssertionError(f"b(f_i, f*_j) is not the identity for {spec}")
    if abs(xl.det(F)) != 1:
        raise AssertionError(f"f-basis of {spec} is not unimodular in e")
    gfs = fstar @ gf @ fstar.transpose()
    if fam == "E" and n in _FSTAR_GRAM_PRINTED:
        N, d = _FSTAR_GRAM_PRINTED[n]
        if gfs != xl.RatMatrix(xl.IntMatrix(N), d):
            raise AssertionError(f"f*-Gram of {spec} disagrees with the tabulated matrix")
    return AmbientBasis(spec, ge, F, fstar, gf, gfs)


def rho_block(spec: RootLatticeSpec, x) -> int:
    """Reduction of one block of integer f*-coordinates to the code ring."""
    x = [int(v) for v in x]
    if len(x) != spec.n:
        raise RootLatticeError(f"block has {len(x)} coordinates, expected {spec.n}")
    fam, n = spec.family, spec.n
    if fam == "A":
        return sum(x) % (n + 1)
    if fam == "D" and n % 2:
        return sum(x) % 4
    if fam == "D":
        s_odd = sum(x[0::2]) % 2   # indices 1, 3, 5, ...
        s_even = sum(x[1::2]) % 2
        kind = spec.ring_choice
        if kind == "F2U":
            # s_odd * 1 + s_even * (1+u)
            return (s_odd ^ s_even) | (s_even << 1)
        if kind == "F4":
            # s_odd * w + s_even * w2, with w = (0,1) and w2 = (1,1)
            return s_even | ((s_odd ^ s_even) << 1)
        return s_odd | (s_even << 1)
    if n == 6:
        return (sum(x[:3]) - sum(x[3:])) % 3
    if n == 7:
        return sum(x) % 2
    return 0


def rho_block_array(spec: RootLatticeSpec, x: np.ndarray) -> np.ndarray:
    """Vectorized :func:`rho_block` over the last axis."""
    x = np.asarray(x, dtype=np.int64)
    fam, n = spec.family, spec.n
    if fam == "A":
        return x.sum(axis=-1) % (n + 1)
    if fam == "D" and n % 2:
        return x.sum(axis=-1) % 4
    if fam == "D":
        so = x[..., 0::2].sum(axis=-1) % 2
        se = x[..., 1::2].sum(axis=-1) % 2
        kind = spec.ring_choice
        if kind == "F2U":
            return (so ^ se) | (se << 1)
        if kind == "F4":
            return se | ((so ^ se) << 1)
        return so | (se << 1)
    if n == 6:
        return (x[..., :3].sum(axis=-1) - x[..., 3:].sum(axis=-1)) % 3
    if n == 7:
        return x.sum(axis=-1) % 2
    return np.zeros(x.shape[:-1], dtype=np.int64)


def rho(spec: RootLatticeSpec, x) -> list[int]:
    """Blockwise reduction of a vector of length n*m."""
    x = list(x)
    n = spec.n
    if len(x) % n:
        raise RootLatticeError(f"vector length {len(x)} is not a multiple of {n}")
    for v in x:
        if Fraction(v).denominator != 1:
            raise RootLatticeError("rho needs integer f*-coordinates")
    return [rho_block(spec, x[i : i + n]) for i in range(0, len(x), n)]


def lift(spec: RootLatticeSpec, c: int) -> list[int]:
    """A fixed preimage of ``c`` under rho, in f*-coordinates."""
    ring = spec.ring
    ring.check(c)
    v = [0] * spec.n
    if ring.is_zmod:
        if spec.n and ring.k > 1:
            v[0] = int(c)
        return v
    a, b = c & 1, (c >> 1) & 1
    if ring.kind == "F2U":
        alpha, beta = a ^ b, b
    elif ring.kind == "F4":
        alpha, beta = b ^ a, a
    else:
        alpha, beta = a, b
    v[0], v[1] = alpha, beta
    return v


def lift_table(spec: RootLatticeSpec) -> np.ndarray:
    """Row c is lift(c); shape (|R|, n)."""
    return np.array([lift(spec, c) for c in range(spec.ring.size)], dtype=np.int64)


def discriminant_group(spec: RootLatticeSpec) -> tuple[RingSpec, int]:
    """Ring structure on Lambda*/Lambda and its order det(gram_e)."""
    order = xl.det(gram_e(spec.family, spec.n))
    ring = spec.ring
    if order != ring.size:
        raise AssertionError(f"det gram_e = {order} but |R| = {ring.size} for {spec}")
    return ring, int(order)


def all_specs(max_n: int = 12) -> list[RootLatticeSpec]:
    """Every family/rank/ring combination up to rank ``max_n``."""
    out = [RootLatticeSpec("A", n) for n in range(1, max_n + 1)]
    for n in range(4, max_n + 1):
        if n % 2:
            out.append(RootLatticeSpec("D", n))
        else:
            out += [RootLatticeSpec("D", n, r) for r in ("F2U", "F4", "F2xF2")]
    out += [RootLatticeSpec("E", 6), RootLatticeSpec("E", 7)]
    if max_n >= 8:
        out.append(RootLatticeSpec("E", 8))
    return out
