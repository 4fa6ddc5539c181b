"""Cyclotomic models of D_4 in Q(zeta_8) and E_6 in Q(zeta_9), and theta series over K.

K = Q(eta) with eta = zeta + zeta^{-1} is the real subfield.  Elements of
F = Q(zeta) are tuples of Fractions in the power basis 1, zeta, ...;
elements of K are tuples in the basis 1, eta, eta^2, ...  A theta series
is a :class:`KSeries`: a finite map from exponents x.x in K to counts,
truncated by Tr_{K/Q} of the exponent.
"""

from __future__ import annotations

import math
import warnings
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from . import codes as cd
from . import exactlinear as xl
from .construction import build_gamma_c
from .rings import F2U, RingSpec
from .rootlattices import RootLatticeSpec, ambient_basis, gram_e, lift
from .theta import short_vectors

FIELDS = ("zeta8", "zeta9")


class HilbertError(ValueError):
    pass


def _mobius(n: int) -> int:
    res, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    return -res if n > 1 else res


def _totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


class CyclotomicField:
    """Q(zeta_N) with exact arithmetic modulo the N-th cyclotomic polynomial."""

    def __init__(self, N: int):
        self.N = N
        self.phi = _totient(N)
        # cyclotomic polynomial coefficients, low degree first, via x^N - 1 = prod Phi_d
        self.modulus = self._cyclotomic(N)
        self.r = self.phi // 2

    @staticmethod
    def _cyclotomic(N: int) -> list[int]:
        def polydiv(a, b):
            a = a[:]
            q = [0] * (len(a) - len(b) + 1)
            for i in range(len(a) - len(b), -1, -1):
                c = a[i + len(b) - 1] // b[-1]
                q[i] = c
                for j, bj in enumerate(b):
                    a[i + j] -= c * bj
            return q

        poly = [-1] + [0] * (N - 1) + [1]
        for d in range(1, N):
            if N % d == 0:
                poly = polydiv(poly, CyclotomicField._cyclotomic(d))
        return poly

    @property
    def name(self) -> str:
        return f"zeta{self.N}"

    # -- F arithmetic --

    def elem(self, coeffs: Sequence) -> tuple:
        """Reduce an arbitrary-degree polynomial in zeta."""
        c = [Fraction(x) for x in coeffs]
        m, d = self.modulus, self.phi
        for i in range(len(c) - 1, d - 1, -1):
            t = c[i]
            if t:
                for j in range(d + 1):
                    c[i - d + j] -= t * m[j]
        c = c[:d] + [Fraction(0)] * max(0, d - len(c))
        return tuple(c)

    def zeta(self, k: int = 1) -> tuple:
        k %= self.N
        return self.elem([0] * k + [1])

    def const(self, q) -> tuple:
        return self.elem([q])

    def add(self, a, b) -> tuple:
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b) -> tuple:
        return tuple(x - y for x, y in zip(a, b))

    def scale(self, a, q) -> tuple:
        q = Fraction(q)
        return tuple(x * q for x in a)

    def mul(self, a, b) -> tuple:
        prod = [Fraction(0)] * (2 * self.phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self.elem(prod)

    def conj(self, a) -> tuple:
        out = (Fraction(0),) * self.phi
        for k, x in enumerate(a):
            if x:
                out = self.add(out, self.scale(self.zeta(-k), x))
        return out

    def inv(self, a) -> tuple:
        # solve a * y = 1 via the multiplication matrix
        cols = [self.mul(a, self.zeta(k)) for k in range(self.phi)]
        M = xl.RatMatrix.from_fractions(cols)  # row k is a*zeta^k
        y = xl.solve_left(M, self.const(1))
        return tuple(y)

    @cached_property
    def _power_traces(self) -> list[int]:
        # Ramanujan sums: Tr(zeta^k) = mu(N/g) phi(N) / phi(N/g), g = gcd(k, N)
        out = []
        for k in range(self.phi):
            g = math.gcd(k, self.N)
            out.append(_mobius(self.N // g) * self.phi // _totient(self.N // g))
        return out

    def trace(self, a) -> Fraction:
        return sum((x * t for x, t in zip(a, self._power_traces)), Fraction(0))

    # -- K = Q(eta) --

    @cached_property
    def eta(self) -> tuple:
        return self.add(self.zeta(1), self.zeta(-1))

    @cached_property
    def eta_powers(self) -> list[tuple]:
        out = [self.const(1)]
        for _ in range(1, self.r):
            out.append(self.mul(out[-1], self.eta))
        return out

    def to_K(self, a) -> tuple:
        """Coordinates of a real element of F in the basis 1, eta, ..., eta^{r-1}."""
        rows = self.eta_powers
        r, d = self.r, self.phi
        # Gaussian elimination on the system sum_t c_t rows[t] = a
        m = [[rows[t][j] for t in range(r)] + [Fraction(a[j])] for j in range(d)]
        rank = 0
        for col in range(r):
            p = next((i for i in range(rank, d) if m[i][col]), None)
            if p is None:
                raise HilbertError("eta powers are dependent")
            m[rank], m[p] = m[p], m[rank]
            pv = m[rank][col]
            m[rank] = [x / pv for x in m[rank]]
            for i in range(d):
                if i != rank and m[i][col]:
                    f = m[i][col]
                    m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
            rank += 1
        if any(m[i][r] for i in range(rank, d)):
            raise HilbertError("element is not in the real subfield")
        return tuple(m[i][r] for i in range(r))

    def from_K(self, c) -> tuple:
        out = self.const(0)
        for t, x in enumerate(c):
            out = self.add(out, self.scale(self.eta_powers[t], x))
        return out

    @cached_property
    def k_traces(self) -> tuple:
        """Tr_{K/Q}(eta^t) = Tr_{F/Q}(eta^t) / 2."""
        return tuple(self.trace(p) / 2 for p in self.eta_powers)

    def trace_K(self, c) -> Fraction:
        return sum((Fraction(x) * t for x, t in zip(c, self.k_traces)), Fraction(0))

    def mul_K(self, c, d) -> tuple:
        return self.to_K(self.mul(self.from_K(c), self.from_K(d)))


@lru_cache(maxsize=None)
def cyclotomic_field(name: str) -> CyclotomicField:
    if name not in FIELDS:
        raise HilbertError(f"unknown field {name!r}; expected one of {FIELDS}")
    return CyclotomicField(int(name[4:]))


def trace_form(field: str | CyclotomicField, x, y) -> Fraction:
    """Tr_{F/Q}(x conj(y))."""
    F = cyclotomic_field(field) if isinstance(field, str) else field
    return F.trace(F.mul(x, F.conj(y)))


def k_scalar_product(field: str | CyclotomicField, v, w) -> tuple:
    """v.w = v conj(w) + conj(v) w, as K-coordinates."""
    F = cyclotomic_field(field) if isinstance(field, str) else field
    s = F.add(F.mul(v, F.conj(w)), F.mul(F.conj(v), w))
    return F.to_K(s)


# -- lattice models --

@dataclass
class CyclotomicLattice:
    """Lambda inside F with Z-bases (f) and (f*), plus the matching root-lattice spec."""

    field: CyclotomicField
    spec: RootLatticeSpec
    f: list
    fstar: list
    e: list | None = None

    @cached_property
    def pair_forms(self) -> tuple[int, np.ndarray]:
        """(D, P) with P[t, j, k] = D * (t-th K-coordinate of f*_j . f*_k)."""
        F, n = self.field, len(self.fstar)
        vals = [[k_scalar_product(F, self.fstar[j], self.fstar[k]) for k in range(n)] for j in range(n)]
        D = 1
        for row in vals:
            for v in row:
                for x in v:
                    D = math.lcm(D, x.denominator)
        P = np.zeros((F.r, n, n), dtype=np.int64)
        for j in range(n):
            for k in range(n):
                for t in range(F.r):
                    P[t, j, k] = int(vals[j][k][t] * D)
        return D, P

    def exponents(self, y: np.ndarray) -> np.ndarray:
        """D * K-coordinates of x.x for rows y of f*-coordinates (m blocks), shape (N, r)."""
        D, P = self.pair_forms
        n = len(self.fstar)
        y = np.asarray(y, dtype=np.int64).reshape(len(y), -1, n)
        return np.einsum("bmj,tjk,bmk->bt", y, P, y)

    def element(self, y) -> tuple:
        """The F element sum_j y_j f*_j for one block."""
        F = self.field
        out = F.const(0)
        for c, b in zip(y, self.fstar):
            if c:
                out = F.add(out, F.scale(b, c))
        return out


def _gram(F: CyclotomicField, basis) -> xl.RatMatrix:
    return xl.RatMatrix.from_fractions([[trace_form(F, a, b) for b in basis] for a in basis])


@lru_cache(maxsize=None)
def build_cyclotomic_lattice(field: str) -> CyclotomicLattice:
    """Bases of the standard lattice, with the tabulated Gram identities asserted."""
    F = cyclotomic_field(field)
    z = F.zeta
    one = F.const(1)
    if field == "zeta8":
        w = F.scale(F.sub(one, z(1)), Fraction(1, 2))  # (1 - zeta)/2
        e = [
            w,
            F.mul(w, z(1)),
            F.mul(w, z(2)),
            F.mul(w, F.sub(F.sub(z(3), one), z(1))),
        ]
        f = [F.mul(w, z(i)) for i in range(4)]
        c = F.inv(F.scale(F.sub(one, z(-1)), 2))  # 1/(2(1 - zeta^{-1}))
        fstar = [F.mul(c, z(i)) for i in range(4)]
        spec = RootLatticeSpec("D", 4, "F2U")
        if _gram(F, e) != xl.RatMatrix.from_int(gram_e("D", 4)):
            raise AssertionError("Gram(e) in Q(zeta8) is not the D4 matrix")
    else:
        pre = F.scale(F.mul(F.sub(one, z(1)), F.sub(one, z(2))), Fraction(1, 3))
        f = [F.mul(pre, z(i)) for i in range(6)]
        q = F.scale(F.sub(one, z(4)), Fraction(1, 3))
        fstar = [F.mul(q, z(i - 3)) for i in range(1, 4)]
        fstar += [F.mul(q, F.add(z(i - 3), z(i - 6))) for i in range(4, 7)]
        e = None
        spec = RootLatticeSpec("E", 6)
    lat = CyclotomicLattice(F, spec, f, fstar, e)
    n = len(f)
    pairing = xl.RatMatrix.from_fractions([[trace_form(F, a, b) for b in fstar] for a in f])
    if pairing != xl.RatMatrix.identity(n):
        raise AssertionError(f"Tr(f_i conj(f*_j)) is not the identity in {field}")
    # the trace form on f* must be the root-lattice f*-Gram used by the construction
    if _gram(F, fstar) != ambient_basis(spec).gram_fstar:
        raise AssertionError(f"f*-Gram in {field} differs from {spec}")
    if _gram(F, f) != xl.RatMatrix.from_int(ambient_basis(spec).gram_f):
        raise AssertionError(f"f-Gram in {field} differs from {spec}")
    return lat


def field_ring(field: str) -> RingSpec:
    return F2U if field == "zeta8" else RingSpec.zmod(3)


# -- truncated series over K --

@dataclass
class KSeries:
    """Finite map from K-exponents (tuples of Fractions) to integer counts, truncated by trace."""

    field: str
    bound: Fraction
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        self.bound = Fraction(self.bound)
        F = cyclotomic_field(self.field)
        self.coeffs = {
            k: v for k, v in self.coeffs.items() if v and F.trace_K(k) <= self.bound
        }

    @classmethod
    def one(cls, field: str, bound) -> "KSeries":
        r = cyclotomic_field(field).r
        return cls(field, bound, {(Fraction(0),) * r: 1})

    @classmethod
    def zero(cls, field: str, bound) -> "KSeries":
        return cls(field, bound, {})

    def _check(self, other: "KSeries"):
        if self.field != other.field or self.bound != other.bound:
            raise HilbertError("series have different fields or truncation bounds")

    def __add__(self, other: "KSeries") -> "KSeries":
        self._check(other)
        out = Counter(self.coeffs)
        out.update(other.coeffs)
        return KSeries(self.field, self.bound, dict(out))

    def __mul__(self, other) -> "KSeries":
        if isinstance(other, int):
            return KSeries(self.field, self.bound, {k: v * other for k, v in self.coeffs.items()})
        self._check(other)
        F = cyclotomic_field(self.field)
        tr_a = {k: F.trace_K(k) for k in self.coeffs}
        tr_b = {k: F.trace_K(k) for k in other.coeffs}
        out: Counter = Counter()
        for ka, va in self.coeffs.items():
            for kb, vb in other.coeffs.items():
                if tr_a[ka] + tr_b[kb] <= self.bound:
                    out[tuple(x + y for x, y in zip(ka, kb))] += va * vb
        return KSeries(self.field, self.bound, dict(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "KSeries":
        out = KSeries.one(self.field, self.bound)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, KSeries):
            return NotImplemented
        return self.field == other.field and self.bound == other.bound and self.coeffs == other.coeffs

    def constant_term(self) -> int:
        r = cyclotomic_field(self.field).r
        return self.coeffs.get((Fraction(0),) * r, 0)

    def sorted_items(self) -> list:
        F = cyclotomic_field(self.field)
        return sorted(self.coeffs.items(), key=lambda kv: (F.trace_K(kv[0]), kv[0]))

    def by_trace(self) -> dict:
        """Collapse to counts per Tr_{K/Q}(exponent), i.e. the ordinary theta coefficients."""
        F = cyclotomic_field(self.field)
        out: Counter = Counter()
        for k, v in self.coeffs.items():
            out[F.trace_K(k)] += v
        return dict(sorted(out.items()))


def series_arith(s: KSeries, t: KSeries, op: str = "mul") -> KSeries:
    if op == "add":
        return s + t
    if op == "mul":
        return s * t
    raise ValueError(f"unknown op {op!r}")


def _series_from_rows(lat: CyclotomicLattice, field: str, y: np.ndarray, bound) -> KSeries:
    D, _ = lat.pair_forms
    ex = lat.exponents(y) if len(y) else np.zeros((0, lat.field.r), dtype=np.int64)
    counts = Counter(map(tuple, ex.tolist()))
    coeffs = {tuple(Fraction(int(x), D) for x in k): v for k, v in counts.items()}
    return KSeries(field, bound, coeffs)


def theta_coset(field: str, a: int, trace_bound) -> KSeries:
    """Theta series of x_a + Lambda, exponent x.x in K, up to Tr_K(x.x) <= trace_bound."""
    lat = build_cyclotomic_lattice(field)
    ring = field_ring(field)
    try:
        ring.check(a)
    except Exception:
        raise HilbertError(f"{a!r} is not an element of {ring.name}") from None
    ab = ambient_basis(lat.spec)
    ell = lift(lat.spec, a)
    if field == "zeta9" and a == 2:
        ell = [-1, 0, 0, 0, 0, 0]  # x_2 = -f_1*
    # Lambda has basis rows gram_f in f*-coordinates; offset c = ell * gram_fstar
    offset = (xl.RatMatrix.from_fractions([ell]) @ ab.gram_fstar).to_fractions()[0]
    gram_lambda = xl.RatMatrix.from_int(ab.gram_f)
    rep = short_vectors(gram_lambda, trace_bound, offset=offset, keep_vectors=True)
    zs = [v for v in rep.vectors.values() if len(v)]
    z = np.concatenate(zs) if zs else np.zeros((0, lat.spec.n), dtype=np.int64)
    y = z @ ab.gram_f_np + np.array(ell, dtype=np.int64)
    return _series_from_rows(lat, field, y, trace_bound)


def theta_code_lattice(field: str, code: cd.Code, trace_bound) -> KSeries:
    """Theta series of Gamma_C by direct enumeration of the lattice."""
    lat = build_cyclotomic_lattice(field)
    if code.spec != field_ring(field):
        raise HilbertError(f"{field} needs a code over {field_ring(field).name}")
    if not cd.is_self_orthogonal(code):
        warnings.warn("code is not contained in its dual; the identity is not expected to hold")
    gamma = build_gamma_c(lat.spec, code)
    rep = short_vectors(gamma.gram, trace_bound, keep_vectors=True)
    zs = [v for v in rep.vectors.values() if len(v)]
    z = np.concatenate(zs) if zs else np.zeros((0, gamma.rank), dtype=np.int64)
    B = np.array(gamma.basis.num.rows, dtype=np.int64)
    y = z @ B
    return _series_from_rows(lat, field, y, trace_bound)


def substitute_enumerator(field: str, code: cd.Code, trace_bound) -> KSeries:
    """W_C evaluated at the coset series (theta_1 stands for both N1-type symbols)."""
    we = cd.weight_enumerator(code)
    if field == "zeta8":
        thetas = [theta_coset(field, 0, trace_bound), theta_coset(field, 1, trace_bound),
                  theta_coset(field, 2, trace_bound)]
    else:
        thetas = [theta_coset(field, 0, trace_bound), theta_coset(field, 1, trace_bound)]
    total = KSeries.zero(field, trace_bound)
    for exps, c in we.coefficients.items():
        term = KSeries.one(field, trace_bound)
        for th, e in zip(thetas, exps):
            term = term * (th**e)
        total = total + term * c
    return total


@dataclass
class IdentityReport:
    field: str
    bound: Fraction
    lhs: KSeries
    rhs: KSeries
    mismatches: list

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def __str__(self):
        lines = [f"{self.field}, trace bound {self.bound}: "
                 + ("identity holds" if self.passed else f"{len(self.mismatches)} mismatching exponents")]
        for k, l, r in self.mismatches[:10]:
            lines.append(f"  exponent {format_k(k)}: lattice {l}, enumerator {r}")
        return "\n".join(lines)


def format_k(k) -> str:
    return "(" + ", ".join(str(x) for x in k) + ")"


def verify_theta_identity(field: str, code: cd.Code, trace_bound) -> IdentityReport:
    lhs = theta_code_lattice(field, code, trace_bound)
    rhs = substitute_enumerator(field, code, trace_bound)
    F = cyclotomic_field(field)
    keys = sorted(set(lhs.coeffs) | set(rhs.coeffs), key=lambda k: (F.trace_K(k), k))
    bad = [(k, lhs.coeffs.get(k, 0), rhs.coeffs.get(k, 0)) for k in keys
           if lhs.coeffs.get(k, 0) != rhs.coeffs.get(k, 0)]
    return IdentityReport(field, Fraction(trace_bound), lhs, rhs, bad)


# -- level ideal --

def _ideal_basis(F: CyclotomicField, g_K) -> xl.IntMatrix:
    """HNF of the Z-basis g*eta^t of g Z_K, in eta-coordinates."""
    rows = []
    for t in range(F.r):
        c = F.mul_K(g_K, tuple(Fraction(int(s == t)) for s in range(F.r)))
        if any(x.denominator != 1 for x in c):
            raise HilbertError("generator is not integral")
        rows.append([int(x) for x in c])
    return xl.hnf(rows)


def level_ideal(field: str, dual_basis=None) -> xl.IntMatrix:
    """HNF basis (eta-coordinates) of {x in Z_K : Tr_K(x Z_K v.v/2) in Z for all v in Gamma*}.

    ``dual_basis`` gives Gamma* by rows of f*-coordinates (m blocks); the
    default is the standard lattice, whose dual is spanned by the f*_j.
    Z_K = Z[eta] for these two fields.
    """
    lat = build_cyclotomic_lattice(field)
    F = lat.field
    n = len(lat.fstar)
    if dual_basis is None:
        rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    else:
        if isinstance(dual_basis, xl.RatMatrix):
            rows = dual_basis.to_fractions()
        else:
            rows = [[Fraction(x) for x in r] for r in dual_basis]
    D, P = lat.pair_forms
    Pf = [[[Fraction(int(P[t, j, k]), D) for k in range(n)] for j in range(n)] for t in range(F.r)]

    def dot(u, v) -> tuple:
        out = []
        for t in range(F.r):
            s = Fraction(0)
            for b in range(0, len(u), n):
                ub, vb = u[b : b + n], v[b : b + n]
                for j in range(n):
                    if ub[j]:
                        s += ub[j] * sum(Pf[t][j][k] * vb[k] for k in range(n) if vb[k])
            out.append(s)
        return tuple(out)

    # Z-span of v.v/2 over Gamma*: polarization gives v_j.v_j/2 and v_j.v_k
    gens = []
    for j in range(len(rows)):
        gens.append(tuple(x / 2 for x in dot(rows[j], rows[j])))
        for k in range(j + 1, len(rows)):
            gens.append(dot(rows[j], rows[k]))
    # conditions: Tr_K(eta^t * eta^s * g) in Z for all s, t and generators g
    eye = [tuple(Fraction(int(s == t)) for s in range(F.r)) for t in range(F.r)]
    cond = []
    for g in gens:
        for s in range(F.r):
            gs = F.mul_K(g, eye[s])
            cond.append([F.trace_K(F.mul_K(gs, eye[t])) for t in range(F.r)])
    # {a in Z^r : cond a in Z} = (span(cond) + Z^r)^*
    den, num = xl.common_denominator_rows(cond + [list(e) for e in eye])
    M = xl.RatMatrix(xl.hnf(num), den)
    dual = xl.inverse(M).transpose()
    return xl.hnf(dual.to_int())


def expected_level_generator(field: str) -> tuple:
    """The tabulated generator of the level ideal, in eta-coordinates."""
    F = cyclotomic_field(field)
    one = F.const(1)
    a = F.mul(F.sub(one, F.zeta(1)), F.sub(one, F.zeta(-1)))
    if field == "zeta8":
        a = F.mul(F.add(F.zeta(1), F.zeta(-1)), a)
    return F.to_K(a)


def level_matches_expected(field: str) -> bool:
    F = cyclotomic_field(field)
    return level_ideal(field) == _ideal_basis(F, expected_level_generator(field))


def unit_ideal(field: str) -> xl.IntMatrix:
    F = cyclotomic_field(field)
    return xl.IntMatrix.identity(F.r)


def gamma_level_ideal(field: str, code: cd.Code) -> xl.IntMatrix:
    """Level of Gamma_C in the cyclotomic model; Z_K when Gamma_C is even unimodular."""
    from .construction import dual_lattice

    lat = build_cyclotomic_lattice(field)
    return level_ideal(field, dual_lattice(build_gamma_c(lat.spec, code)).basis)
