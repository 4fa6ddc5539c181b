"""Short-vector enumeration, theta coefficients and root-system labels.

Enumeration is Fincke-Pohst on an LLL-reduced Gram matrix.  Pruning uses
floating point with a relative safety margin, so it can only over-report
candidates; every candidate is then checked in exact integer arithmetic.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from . import exactlinear as xl

_MARGIN = 1e-9


class EnumerationError(ValueError):
    pass


def _scaled_gram(gram) -> tuple[np.ndarray, int]:
    """Integer numerator (int64) and denominator of a Gram matrix."""
    if hasattr(gram, "gram") and not isinstance(gram, (xl.RatMatrix, xl.IntMatrix)):
        gram = gram.gram
    if isinstance(gram, xl.IntMatrix):
        gram = xl.RatMatrix.from_int(gram)
    elif not isinstance(gram, xl.RatMatrix):
        gram = xl.RatMatrix.from_fractions(np.asarray(gram, dtype=object).tolist())
    num = np.array(gram.num.rows, dtype=object)
    if num.size and max(abs(int(x)) for x in num.flat) >= 2**40:
        raise EnumerationError("Gram entries too large for the int64 enumerator")
    return num.astype(np.int64), gram.den


def _lll(G: np.ndarray, delta: float = 0.99) -> np.ndarray:
    """Unimodular U such that U G U^T is LLL-reduced; G is an exact integer Gram."""
    G = G.astype(np.int64).copy()
    n = len(G)
    U = np.eye(n, dtype=np.int64)

    def chol(M):
        return np.linalg.cholesky(M.astype(float))

    k = 1
    L = chol(G)
    guard = 0
    while k < n:
        guard += 1
        if guard > 100000:
            raise EnumerationError("LLL did not converge")
        for j in range(k - 1, -1, -1):
            mu = L[k, j] / L[j, j]
            q = int(round(mu))
            if q:
                U[k] -= q * U[j]
                G[k, :] -= q * G[j, :]
                G[:, k] -= q * G[:, j]
                L = chol(G)
        bk = L[k, k] ** 2
        bk1 = L[k - 1, k - 1] ** 2
        mu = L[k, k - 1] / L[k - 1, k - 1]
        if bk < (delta - mu * mu) * bk1:
            U[[k, k - 1]] = U[[k - 1, k]]
            G[[k, k - 1]] = G[[k - 1, k]]
            G[:, [k, k - 1]] = G[:, [k - 1, k]]
            L = chol(G)
            k = max(k - 1, 1)
        else:
            k += 1
    return U


def _fincke_pohst(G: np.ndarray, bound: float, center: np.ndarray) -> np.ndarray:
    """Integer z with (z + center) G (z + center)^T <= bound (plus margin), as rows."""
    n = len(G)
    R = np.linalg.cholesky(G).T  # G = R^T R, R upper triangular
    qd = np.diag(R) ** 2
    qu = R / np.diag(R)[:, None]  # qu[i, j] for j > i
    limit = bound * (1 + _MARGIN) + _MARGIN
    out: list[np.ndarray] = []
    x = np.zeros(n)
    z = np.zeros(n, dtype=np.int64)

    def level(i: int, remaining: float):
        # t_i = x_i + sum_{j>i} qu[i, j] x_j, with x = z + center
        s = center[i] + (qu[i, i + 1 :] @ x[i + 1 :] if i + 1 < n else 0.0)
        r = math.sqrt(max(remaining, 0.0) / qd[i]) + _MARGIN
        # x_i = z_i + c_i, so t_i = z_i + s
        lo = math.ceil(-s - r)
        hi = math.floor(-s + r)
        if i == 0:
            if lo <= hi:
                zs = np.arange(lo, hi + 1, dtype=np.int64)
                block = np.tile(z, (len(zs), 1))
                block[:, 0] = zs
                out.append(block)
            return
        for zi in range(lo, hi + 1):
            t = zi + s
            rest = remaining - qd[i] * t * t
            if rest < -_MARGIN * (1 + bound):
                continue
            z[i] = zi
            x[i] = zi + center[i]
            level(i - 1, rest)
        z[i] = 0
        x[i] = 0.0

    level(n - 1, limit)
    if not out:
        return np.zeros((0, n), dtype=np.int64)
    return np.concatenate(out)


@dataclass
class ShortVectorReport:
    """Counts of lattice (or coset) vectors by norm up to ``bound``."""

    bound: Fraction
    counts: dict
    vectors: dict | None = field(default=None, repr=False)

    def count(self, norm) -> int:
        return self.counts.get(Fraction(norm), 0)

    def total(self) -> int:
        return sum(self.counts.values())

    def vectors_by_norm(self, norm) -> np.ndarray:
        if self.vectors is None:
            raise EnumerationError("vectors were not retained; pass keep_vectors=True")
        return self.vectors.get(Fraction(norm), np.zeros((0, 0), dtype=np.int64))


def short_vectors(gram, bound, offset=None, keep_vectors: bool = False) -> ShortVectorReport:
    """All x = z + offset (z integral, coordinates w.r.t. the Gram's basis) with x G x^T <= bound.

    ``gram`` may be a RatMatrix, IntMatrix, nested list, or any object with
    a ``gram`` attribute.  ``offset`` is an optional rational vector.
    Returned vectors are the integer parts z.
    """
    bound = Fraction(bound)
    if bound < 0:
        raise EnumerationError("bound must be nonnegative")
    Gn, den = _scaled_gram(gram)
    n = len(Gn)
    if offset is None:
        off_num, off_den = np.zeros(n, dtype=np.int64), 1
    else:
        fr = [Fraction(v) for v in offset]
        off_den = math.lcm(*(f.denominator for f in fr)) if fr else 1
        off_num = np.array([int(f * off_den) for f in fr], dtype=np.int64)
    U = _lll(Gn) if n > 1 else np.eye(n, dtype=np.int64)
    Gr = U @ Gn @ U.T
    # offset in reduced coordinates: c U^{-1}
    Uinv = np.array(xl.inverse(xl.IntMatrix(U.tolist())).to_int().rows, dtype=np.int64)
    center = (off_num @ Uinv) / off_den
    cand = _fincke_pohst(Gr.astype(float) / den, float(bound), center)
    z = cand @ U  # back to the input basis
    # exact norms: (z*off_den + off_num) G (...)^T / (den * off_den^2)
    y = z * off_den + off_num
    num = np.einsum("ij,jk,ik->i", y, Gn, y)
    scale = den * off_den * off_den
    keep = num <= bound * scale if bound.denominator == 1 else np.array(
        [Fraction(int(v), scale) <= bound for v in num], dtype=bool
    )
    z, num = z[keep], num[keep]
    counts: Counter = Counter()
    for v, c in Counter(num.tolist()).items():
        counts[Fraction(int(v), scale)] += c
    vectors = None
    if keep_vectors:
        vectors = {}
        for v in sorted(set(num.tolist())):
            vectors[Fraction(int(v), scale)] = z[num == v]
    return ShortVectorReport(bound, dict(sorted(counts.items())), vectors)


def brute_force_counts(gram, bound, offset=None) -> dict:
    """Box enumeration with |z_i + c_i| <= sqrt(bound * (G^{-1})_ii); an independent oracle.

    Norms are exact: everything is scaled to integers before evaluation.
    """
    bound = Fraction(bound)
    if isinstance(gram, xl.IntMatrix):
        gram = xl.RatMatrix.from_int(gram)
    elif not isinstance(gram, xl.RatMatrix):
        gram = xl.RatMatrix.from_fractions(gram)
    inv = xl.inverse(gram)
    n = gram.shape[0]
    c = [Fraction(v) for v in offset] if offset is not None else [Fraction(0)] * n
    cden = math.lcm(*(v.denominator for v in c)) if c else 1
    cnum = np.array([int(v * cden) for v in c], dtype=np.int64)
    ranges = []
    for i in range(n):
        r2 = bound * inv[i, i]
        r = math.isqrt(r2.numerator // r2.denominator) + 1
        ranges.append(np.arange(math.floor(-c[i]) - r, math.ceil(-c[i]) + r + 1, dtype=np.int64))
    Gn = np.array(gram.num.rows, dtype=np.int64)
    scale = gram.den * cden * cden
    counts: Counter = Counter()
    # chunk over the first coordinate to bound memory
    rest = np.stack(np.meshgrid(*ranges[1:], indexing="ij"), axis=-1).reshape(-1, n - 1) if n > 1 else None
    for z0 in ranges[0]:
        if rest is None:
            z = np.array([[z0]], dtype=np.int64)
        else:
            z = np.concatenate([np.full((len(rest), 1), z0, dtype=np.int64), rest], axis=1)
        y = z * cden + cnum
        q = np.einsum("ij,jk,ik->i", y, Gn, y)
        for v, k in Counter(q[q * bound.denominator <= bound.numerator * scale].tolist()).items():
            counts[Fraction(int(v), scale)] += k
    return dict(sorted(counts.items()))


def theta_coefficients(lat, qmax) -> list[tuple[Fraction, int]]:
    """(norm, count) pairs for norms up to ``qmax``; norm 0 contributes 1."""
    rep = short_vectors(lat, qmax)
    return [(k, v) for k, v in rep.counts.items()]


def convolve_counts(a: dict, b: dict, bound) -> dict:
    """Theta counts of an orthogonal direct sum, truncated at ``bound``."""
    out: Counter = Counter()
    for ka, va in a.items():
        for kb, vb in b.items():
            if ka + kb <= bound:
                out[ka + kb] += va * vb
    return dict(sorted(out.items()))


# -- root systems --

_FAMILY_ORDER = {"A": 0, "D": 1, "E": 2}


def root_count(family: str, rank: int) -> int:
    if family == "A":
        return rank * (rank + 1)
    if family == "D":
        return 2 * rank * (rank - 1)
    return {6: 72, 7: 126, 8: 240}[rank]


def _classify(rank: int, count: int) -> tuple[str, int]:
    options = []
    if count == rank * (rank + 1):
        options.append(("A", rank))
    if rank >= 4 and count == 2 * rank * (rank - 1):
        options.append(("D", rank))
    if rank in (6, 7, 8) and count == root_count("E", rank):
        options.append(("E", rank))
    if len(options) != 1:
        raise EnumerationError(f"cannot type a component of rank {rank} with {count} roots")
    return options[0]


@dataclass(frozen=True)
class RootSystemLabel:
    """Multiset of irreducible ADE components."""

    components: tuple  # sorted ((family, rank), multiplicity) pairs

    @classmethod
    def from_components(cls, comps: Iterable[tuple[str, int]]) -> "RootSystemLabel":
        fixed = []
        for fam, r in comps:
            # small-rank aliases
            if fam == "D" and r == 3:
                fam = "A"
            if fam == "D" and r == 2:
                fixed += [("A", 1), ("A", 1)]
                continue
            fixed.append((fam, r))
        c = Counter(fixed)
        key = lambda item: (_FAMILY_ORDER[item[0][0]], -item[0][1])  # noqa: E731
        return cls(tuple(sorted(c.items(), key=key)))

    @classmethod
    def parse(cls, text: str) -> "RootSystemLabel":
        """Read table notation such as ``2D12``, ``D10+2E7``, ``D_{16}⊥E_8``."""
        t = text.replace("⊥", "+").replace("⊕", "+").replace("_", "")
        t = t.replace("{", "").replace("}", "").replace(" ", "")
        if t in ("", "0", "empty"):
            return cls(())
        comps = []
        for part in t.split("+"):
            m = re.fullmatch(r"(\d*)([ADE])(\d+)", part)
            if not m:
                raise ValueError(f"bad root system component {part!r}")
            mult = int(m.group(1) or 1)
            comps += [(m.group(2), int(m.group(3)))] * mult
        return cls.from_components(comps)

    def __str__(self):
        if not self.components:
            return "empty"
        return "+".join(
            f"{mult if mult > 1 else ''}{fam}{rank}" for (fam, rank), mult in self.components
        )

    @property
    def rank(self) -> int:
        return sum(r * m for (_, r), m in self.components)

    @property
    def root_count(self) -> int:
        return sum(root_count(f, r) * m for (f, r), m in self.components)


def root_system(lat, max_rank: int = 32, roots: np.ndarray | None = None) -> RootSystemLabel:
    """Type the norm-2 vectors of an even lattice into ADE components."""
    Gn, den = _scaled_gram(lat)
    if den != 1:
        raise EnumerationError("root_system needs an integral Gram matrix")
    if len(Gn) > max_rank:
        raise EnumerationError(f"rank {len(Gn)} exceeds guard {max_rank}")
    if roots is None:
        roots = short_vectors(xl.IntMatrix(Gn.tolist()), 2, keep_vectors=True).vectors_by_norm(2)
    if len(roots) == 0:
        return RootSystemLabel(())
    first = np.array([r[np.nonzero(r)[0][0]] for r in roots])
    pos = roots[first > 0]
    ip = pos @ Gn @ pos.T
    # union-find over nonorthogonal pairs
    parent = list(range(len(pos)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in zip(*np.nonzero(np.triu(ip, 1))):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    groups: dict[int, list[int]] = {}
    for i in range(len(pos)):
        groups.setdefault(find(i), []).append(i)
    comps = []
    for idx in groups.values():
        rank = len(xl.hnf(pos[idx].tolist()).rows)
        comps.append(_classify(rank, 2 * len(idx)))
    return RootSystemLabel.from_components(comps)


def labels_equal(a, b) -> bool:
    if isinstance(a, str):
        a = RootSystemLabel.parse(a)
    if isinstance(b, str):
        b = RootSystemLabel.parse(b)
    return a == b
