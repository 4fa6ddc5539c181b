"""Exact integer and rational matrices: Hermite normal form, determinants, inverses.

Everything here is Python ``int``/``Fraction``; no floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence


class SingularMatrixError(ArithmeticError):
    pass


def _as_rows(rows) -> list[list[int]]:
    if isinstance(rows, IntMatrix):
        return [list(r) for r in rows.rows]
    if hasattr(rows, "tolist"):
        rows = rows.tolist()
    return [[int(x) for x in r] for r in rows]


class IntMatrix:
    """Rectangular matrix of arbitrary-precision integers, stored row-major."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Iterable[Sequence[int]] = (), ncols: int | None = None):
        self.rows = _as_rows(list(rows) if not hasattr(rows, "tolist") else rows)
        if self.rows:
            widths = {len(r) for r in self.rows}
            if len(widths) != 1:
                raise ValueError("ragged matrix")
            self.ncols = widths.pop()
        else:
            self.ncols = ncols or 0

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "IntMatrix":
        return cls([[0] * c for _ in range(r)], ncols=c)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self):
        return f"IntMatrix({self.rows})"

    def transpose(self) -> "IntMatrix":
        return IntMatrix([list(c) for c in zip(*self.rows)], ncols=len(self.rows))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != len(other.rows):
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        return IntMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows],
            ncols=other.ncols,
        )

    def stack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows and other.rows and self.ncols != other.ncols:
            raise ValueError("column mismatch")
        return IntMatrix(self.rows + other.rows, ncols=self.ncols or other.ncols)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)


class RatMatrix:
    """Integer numerator over a positive common denominator, kept in lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num: IntMatrix, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if not isinstance(num, IntMatrix):
            num = IntMatrix(num)
        if den < 0:
            num = IntMatrix([[-x for x in r] for r in num.rows], ncols=num.ncols)
            den = -den
        g = den
        for r in num.rows:
            for x in r:
                g = gcd(g, x)
                if g == 1:
                    break
        if g > 1:
            num = IntMatrix([[x // g for x in r] for r in num.rows], ncols=num.ncols)
            den //= g
        self.num = num
        self.den = den

    @classmethod
    def from_int(cls, m) -> "RatMatrix":
        return cls(m if isinstance(m, IntMatrix) else IntMatrix(m), 1)

    @classmethod
    def from_fractions(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        rows = [[Fraction(x) for x in r] for r in rows]
        d = 1
        for r in rows:
            for x in r:
                d = lcm(d, x.denominator)
        ncols = len(rows[0]) if rows else 0
        return cls(IntMatrix([[int(x * d) for x in r] for r in rows], ncols=ncols), d)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(IntMatrix.identity(n))

    @property
    def shape(self):
        return self.num.shape

    def __getitem__(self, ij) -> Fraction:
        return Fraction(self.num[ij], self.den)

    def to_fractions(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.den) for x in r] for r in self.num.rows]

    def __eq__(self, other):
        if isinstance(other, IntMatrix):
            other = RatMatrix.from_int(other)
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.den == other.den and self.num == other.num

    def __repr__(self):
        return f"RatMatrix({self.num.rows}, den={self.den})"

    def is_integral(self) -> bool:
        return self.den == 1

    def to_int(self) -> IntMatrix:
        if self.den != 1:
            raise ValueError(f"matrix has denominator {self.den}")
        return self.num

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.num.transpose(), self.den)

    def scale(self, c) -> "RatMatrix":
        c = Fraction(c)
        return RatMatrix(
            IntMatrix([[x * c.numerator for x in r] for r in self.num.rows], ncols=self.num.ncols),
            self.den * c.denominator,
        )

    def __matmul__(self, other) -> "RatMatrix":
        if isinstance(other, IntMatrix):
            other = RatMatrix.from_int(other)
        return RatMatrix(self.num @ other.num, self.den * other.den)

    def __rmatmul__(self, other) -> "RatMatrix":
        if isinstance(other, IntMatrix):
            return RatMatrix.from_int(other) @ self
        return NotImplemented

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        d = lcm(self.den, other.den)
        a, b = d // self.den, d // other.den
        return RatMatrix(
            IntMatrix(
                [[a * x + b * y for x, y in zip(r, s)] for r, s in zip(self.num.rows, other.num.rows)],
                ncols=self.num.ncols,
            ),
            d,
        )

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)


def hnf(m) -> IntMatrix:
    """Row Hermite normal form: positive pivots, entries above a pivot reduced into [0, pivot).

    Zero rows are dropped, so the result is a basis of the row lattice.
    """
    a = _as_rows(m)
    ncols = m.ncols if isinstance(m, IntMatrix) else (len(a[0]) if a else 0)
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            piv = a[r]
            clean = True
            for i in range(r + 1, len(a)):
                x = a[i][c]
                if x:
                    q = x // piv[c]
                    if q:
                        row = a[i]
                        a[i] = [u - q * v for u, v in zip(row, piv)]
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if r >= len(a) or a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        piv = a[r]
        for i in range(r):
            q = a[i][c] // piv[c]
            if q:
                a[i] = [u - q * v for u, v in zip(a[i], piv)]
        r += 1
        # drop rows that became zero to keep the working set small
        a = a[:r] + [row for row in a[r:] if any(row)]
    return IntMatrix(a[:r], ncols=ncols)


def _bareiss(a: list[list[int]]) -> int:
    n = len(a)
    a = [row[:] for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1] if n else 1


def det(m) -> Fraction:
    """Exact determinant by fraction-free elimination."""
    if isinstance(m, IntMatrix):
        m = RatMatrix.from_int(m)
    elif not isinstance(m, RatMatrix):
        m = RatMatrix.from_fractions(m)
    r, c = m.shape
    if r != c:
        raise ValueError(f"determinant of non-square {m.shape} matrix")
    return Fraction(_bareiss(m.num.rows), m.den**r)


def inverse(m) -> RatMatrix:
    """Exact inverse by Gauss-Jordan over the integers."""
    if isinstance(m, IntMatrix):
        m = RatMatrix.from_int(m)
    elif not isinstance(m, RatMatrix):
        m = RatMatrix.from_fractions(m)
    n, c = m.shape
    if n != c:
        raise ValueError(f"inverse of non-square {m.shape} matrix")
    a = [row[:] + [int(i == j) for j in range(n)] for i, row in enumerate(m.num.rows)]
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k]), None)
        if p is None:
            raise SingularMatrixError("matrix is singular")
        a[k], a[p] = a[p], a[k]
        piv = a[k]
        for i in range(n):
            if i != k and a[i][k]:
                x, y = a[i][k], piv[k]
                g = gcd(x, y)
                x, y = x // g, y // g
                a[i] = [y * u - x * v for u, v in zip(a[i], piv)]
                h = 0
                for u in a[i]:
                    h = gcd(h, u)
                if h > 1:
                    a[i] = [u // h for u in a[i]]
    # row i now reads d_i * e_i | adj_i, so inv row i = adj_i / d_i
    rows = [[Fraction(x, a[i][i]) for x in a[i][n:]] for i in range(n)]
    inv = RatMatrix.from_fractions(rows)
    # the input denominator moves to the numerator
    return inv.scale(m.den)


def solve_left(basis: RatMatrix, v: Sequence) -> list[Fraction] | None:
    """Coefficients x with x @ basis = v for a square nonsingular basis."""
    inv = inverse(basis)
    vv = RatMatrix.from_fractions([list(v)])
    return (vv @ inv).to_fractions()[0]


def row_lattice_contains(basis, vectors) -> bool:
    """True when every row of ``vectors`` lies in the integer row span of ``basis``."""
    h = hnf(basis)
    return hnf(h.stack(IntMatrix(_as_rows(vectors), ncols=h.ncols))) == h


def same_row_lattice(a, b) -> bool:
    return hnf(a) == hnf(b)


def common_denominator_rows(rows: Sequence[Sequence]) -> tuple[int, IntMatrix]:
    r = RatMatrix.from_fractions(rows)
    return r.den, r.num


def format_lattice(den: int, basis: IntMatrix) -> str:
    out = [f"denominator {den}"]
    out += [" ".join(str(x) for x in r) for r in basis.rows]
    return "\n".join(out) + "\n"


def parse_lattice(text: str) -> tuple[int, IntMatrix]:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2 or lines[0][0] != "denominator":
        raise ValueError("lattice dump must start with 'denominator <d>'")
    den = int(lines[0][1])
    if den < 1:
        raise ValueError("denominator must be positive")
    return den, IntMatrix([[int(x) for x in r] for r in lines[1:]])
