"""Dense exact matrices over Q(sqrt(d)) and an exact PSD test.

Entries are stored as two integer arrays over one common denominator, so
products stay in Python ints; ``M[i, j] = (ra[i][j] + rb[i][j]*sqrt(d)) / den``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .exactnum import MixedFieldsError, QuadNum, as_quad, quad_sign

__all__ = ["ExactMatrix", "AsymmetricInput", "PsdResult", "ldlt_psd", "MAX_CERT_ORDER"]

MAX_CERT_ORDER = 256


class AsymmetricInput(ValueError):
    pass


def _field_of(values: Iterable[QuadNum]) -> int:
    d = 0
    for x in values:
        if x.d:
            if d and x.d != d:
                raise MixedFieldsError(f"entries from Q(sqrt({d})) and Q(sqrt({x.d}))")
            d = x.d
    return d


class ExactMatrix:
    __slots__ = ("n", "d", "ra", "rb", "den")

    def __init__(self, ra: list[list[int]], rb: list[list[int]] | None, den: int = 1, d: int = 0):
        if den <= 0:
            raise ValueError("denominator must be positive")
        self.n = len(ra)
        self.d = d if rb is not None else 0
        self.ra = ra
        self.rb = rb if self.d else None
        self.den = den
        self._reduce()

    # -- construction ----------------------------------------------------
    @classmethod
    def from_entries(cls, rows: Sequence[Sequence]) -> ExactMatrix:
        q = [[as_quad(x) for x in r] for r in rows]
        n = len(q)
        if any(len(r) != n for r in q):
            raise ValueError("matrix must be square")
        d = _field_of(x for r in q for x in r)
        den = 1
        for r in q:
            for x in r:
                den = math.lcm(den, x.a.denominator, x.b.denominator)
        ra = [[int(x.a * den) for x in r] for r in q]
        rb = [[int(x.b * den) for x in r] for r in q] if d else None
        return cls(ra, rb, den, d)

    @classmethod
    def zeros(cls, n: int) -> ExactMatrix:
        return cls([[0] * n for _ in range(n)], None)

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], None)

    @classmethod
    def pattern(cls, adj: Sequence[int], diag, edge, nonedge) -> ExactMatrix:
        """``diag*I + edge*A + nonedge*(J - I - A)`` for bitset rows ``adj``."""
        n = len(adj)
        codes = [[0 if u == v else (1 if adj[u] >> v & 1 else 2) for v in range(n)] for u in range(n)]
        return cls.from_codes(codes, [diag, edge, nonedge])

    @classmethod
    def from_codes(cls, codes: Sequence[Sequence[int]], values: Sequence) -> ExactMatrix:
        """Matrix with entry ``values[codes[i][j]]``; converts each value once."""
        vals = [as_quad(x) for x in values]
        d = _field_of(vals)
        den = 1
        for x in vals:
            den = math.lcm(den, x.a.denominator, x.b.denominator)
        ia = [int(x.a * den) for x in vals]
        ib = [int(x.b * den) for x in vals]
        ra = [[ia[t] for t in row] for row in codes]
        rb = [[ib[t] for t in row] for row in codes] if d else None
        return cls(ra, rb, den, d)

    def _reduce(self) -> None:
        g = self.den
        for r in self.ra:
            for x in r:
                if x:
                    g = math.gcd(g, x)
                    if g == 1:
                        return
        if self.rb is not None:
            for r in self.rb:
                for x in r:
                    if x:
                        g = math.gcd(g, x)
                        if g == 1:
                            return
        if g > 1:
            self.ra = [[x // g for x in r] for r in self.ra]
            if self.rb is not None:
                self.rb = [[x // g for x in r] for r in self.rb]
            self.den //= g

    # -- access -----------------------------------------------------------
    def __getitem__(self, ij: tuple[int, int]) -> QuadNum:
        i, j = ij
        a = Fraction(self.ra[i][j], self.den)
        if self.rb is None or not self.rb[i][j]:
            return QuadNum(a)
        return QuadNum(a, Fraction(self.rb[i][j], self.den), self.d)

    def entry_is_zero(self, i: int, j: int) -> bool:
        return not self.ra[i][j] and (self.rb is None or not self.rb[i][j])

    def rows(self) -> list[list[QuadNum]]:
        return [[self[i, j] for j in range(self.n)] for i in range(self.n)]

    def _b(self) -> list[list[int]]:
        return self.rb if self.rb is not None else [[0] * self.n for _ in range(self.n)]

    def distinct_entries(self) -> set[QuadNum]:
        return {self[i, j] for i in range(self.n) for j in range(self.n)}

    def first_nonzero(self) -> tuple[int, int, QuadNum] | None:
        for i in range(self.n):
            for j in range(self.n):
                if not self.entry_is_zero(i, j):
                    return i, j, self[i, j]
        return None

    def is_zero(self) -> bool:
        return self.first_nonzero() is None

    def is_symmetric(self) -> bool:
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.ra[i][j] != self.ra[j][i]:
                    return False
                if self.rb is not None and self.rb[i][j] != self.rb[j][i]:
                    return False
        return True

    def to_float(self) -> list[list[float]]:
        r = math.sqrt(self.d)
        b = self._b()
        return [[(self.ra[i][j] + b[i][j] * r) / self.den for j in range(self.n)] for i in range(self.n)]

    # -- algebra ------------------------------------------------------------
    def _check(self, other: ExactMatrix) -> int:
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        if self.d and other.d and self.d != other.d:
            raise MixedFieldsError(f"Q(sqrt({self.d})) vs Q(sqrt({other.d}))")
        return self.d or other.d

    def _combine(self, other: ExactMatrix, sign: int) -> ExactMatrix:
        d = self._check(other)
        den = math.lcm(self.den, other.den)
        s, t = den // self.den, sign * (den // other.den)
        ra = [[s * x + t * y for x, y in zip(r1, r2)] for r1, r2 in zip(self.ra, other.ra)]
        rb = None
        if d:
            rb = [[s * x + t * y for x, y in zip(r1, r2)] for r1, r2 in zip(self._b(), other._b())]
        return ExactMatrix(ra, rb, den, d)

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        return self._combine(other, 1)

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return self._combine(other, -1)

    def __neg__(self) -> ExactMatrix:
        return self.scale(-1)

    def scale(self, c) -> ExactMatrix:
        c = as_quad(c)
        if self.d and c.d and self.d != c.d:
            raise MixedFieldsError(f"Q(sqrt({self.d})) vs Q(sqrt({c.d}))")
        d = self.d or c.d
        r = math.lcm(c.a.denominator, c.b.denominator)
        p, q = int(c.a * r), int(c.b * r)
        b = self._b()
        ra = [[p * x + q * d * y for x, y in zip(r1, r2)] for r1, r2 in zip(self.ra, b)]
        rb = [[p * y + q * x for x, y in zip(r1, r2)] for r1, r2 in zip(self.ra, b)] if d else None
        return ExactMatrix(ra, rb, self.den * r, d)

    @staticmethod
    def _intmul(x: list[list[int]], y: list[list[int]]) -> list[list[int]]:
        n = len(x)
        out = []
        for row in x:
            acc = [0] * n
            for k, a in enumerate(row):
                if a:
                    yk = y[k]
                    for j in range(n):
                        acc[j] += a * yk[j]
            out.append(acc)
        return out

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        d = self._check(other)
        aa = self._intmul(self.ra, other.ra)
        den = self.den * other.den
        if not d:
            return ExactMatrix(aa, None, den)
        sb, ob = self._b(), other._b()
        bb = self._intmul(sb, ob)
        ab = self._intmul(self.ra, ob)
        ba = self._intmul(sb, other.ra)
        n = self.n
        ra = [[aa[i][j] + d * bb[i][j] for j in range(n)] for i in range(n)]
        rb = [[ab[i][j] + ba[i][j] for j in range(n)] for i in range(n)]
        return ExactMatrix(ra, rb, den, d)

    def hadamard(self, other: ExactMatrix) -> ExactMatrix:
        d = self._check(other)
        sb, ob = self._b(), other._b()
        n = self.n
        ra = [[self.ra[i][j] * other.ra[i][j] + d * sb[i][j] * ob[i][j] for j in range(n)] for i in range(n)]
        rb = None
        if d:
            rb = [[self.ra[i][j] * ob[i][j] + sb[i][j] * other.ra[i][j] for j in range(n)] for i in range(n)]
        return ExactMatrix(ra, rb, self.den * other.den, d)

    def transpose(self) -> ExactMatrix:
        ra = [list(c) for c in zip(*self.ra)]
        rb = [list(c) for c in zip(*self.rb)] if self.rb is not None else None
        return ExactMatrix(ra, rb, self.den, self.d)

    def _scalar(self, a: int, b: int) -> QuadNum:
        if not b:
            return QuadNum(Fraction(a, self.den))
        return QuadNum(Fraction(a, self.den), Fraction(b, self.den), self.d)

    def trace(self) -> QuadNum:
        b = self._b()
        return self._scalar(sum(self.ra[i][i] for i in range(self.n)), sum(b[i][i] for i in range(self.n)))

    def total(self) -> QuadNum:
        """Sum of all entries."""
        return self._scalar(sum(map(sum, self.ra)), sum(map(sum, self.rb)) if self.rb is not None else 0)

    def quadform(self, y: Sequence[Fraction | int]) -> QuadNum:
        """``y^T M y`` for a rational vector ``y``."""
        yd = 1
        for t in y:
            yd = math.lcm(yd, Fraction(t).denominator)
        Y = [int(Fraction(t) * yd) for t in y]

        def form(m: list[list[int]]) -> int:
            return sum(Y[i] * sum(m[i][j] * Y[j] for j in range(self.n) if Y[j]) for i in range(self.n) if Y[i])

        a = form(self.ra)
        b = form(self.rb) if self.rb is not None else 0
        den = self.den * yd * yd
        if not b:
            return QuadNum(Fraction(a, den))
        return QuadNum(Fraction(a, den), Fraction(b, den), self.d)

    def pullback(self, phi: Sequence[int]) -> ExactMatrix:
        """Matrix indexed by the domain of ``phi`` with entries ``M[phi(u), phi(v)]``."""
        for x in phi:
            if not 0 <= x < self.n:
                raise IndexError(f"map value {x} outside 0..{self.n - 1}")
        ra = [[self.ra[x][y] for y in phi] for x in phi]
        rb = [[self.rb[x][y] for y in phi] for x in phi] if self.rb is not None else None
        return ExactMatrix(ra, rb, self.den, self.d)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.n == other.n and (self - other).is_zero()

    __hash__ = None

    def __repr__(self) -> str:
        field_ = f"Q(sqrt({self.d}))" if self.d else "Q"
        return f"ExactMatrix(n={self.n}, field={field_})"


# -- PSD via symmetric LDL^T ------------------------------------------------------


@dataclass
class PsdResult:
    is_psd: bool
    pivots: list[QuadNum] = field(default_factory=list)
    witness: list[Fraction] | None = None
    witness_value: QuadNum | None = None

    @property
    def rank(self) -> int:
        return sum(1 for p in self.pivots if quad_sign(p) > 0)

    def __bool__(self) -> bool:
        return self.is_psd


def _solve_spd(a: list[list], b: list) -> list:
    """Solve ``a x = b`` by unpivoted elimination (``a`` positive definite)."""
    m = len(a)
    a = [row[:] for row in a]
    b = b[:]
    for c in range(m):
        piv = a[c][c]
        for r in range(c + 1, m):
            if a[r][c]:
                f = a[r][c] / piv
                for k in range(c, m):
                    a[r][k] = a[r][k] - f * a[c][k]
                b[r] = b[r] - f * b[c]
    x = [None] * m
    for r in range(m - 1, -1, -1):
        s = b[r]
        for k in range(r + 1, m):
            s = s - a[r][k] * x[k]
        x[r] = s / a[r][r]
    return x


def _rationalize(M: ExactMatrix, y: list[QuadNum]) -> tuple[list[Fraction], QuadNum]:
    """Round an irrational witness to a rational one that still certifies."""
    if not any(t.d for t in y):
        ry = [t.a for t in y]
        return ry, M.quadform(ry)
    d = next(t.d for t in y if t.d)
    digits = 8
    while digits < 4096:
        scale = 10**digits
        root = Fraction(math.isqrt(d * scale * scale), scale)
        ry = [t.a + t.b * root for t in y]
        val = M.quadform(ry)
        if quad_sign(val) < 0:
            return ry, val
        digits *= 2
    raise ArithmeticError("could not rationalize PSD witness")


def ldlt_psd(M: ExactMatrix) -> PsdResult:
    """Exact PSD decision by symmetric-pivot elimination over Q(sqrt(d)).

    Pivots are taken from positive diagonal entries of the running Schur
    complement.  A negative diagonal entry, or a zero diagonal entry whose row
    is not zero, yields a rational ``y`` with ``y^T M y < 0``.
    """
    if not M.is_symmetric():
        raise AsymmetricInput("PSD test needs a symmetric matrix")
    n = M.n
    if M.d:
        S = M.rows()
        sign: Callable = quad_sign
    else:
        S = [[Fraction(x, M.den) for x in r] for r in M.ra]
        sign = lambda x: (x > 0) - (x < 0)  # noqa: E731
    orig = [r[:] for r in S]
    active = list(range(n))
    order: list[int] = []
    pivots = []

    def witness(z: dict[int, int]) -> PsdResult:
        # y_R = z, y_P = -M_PP^{-1} M_PR z makes y^T M y equal z^T S z
        if order:
            rhs = [-sum((orig[p][r] * c for r, c in z.items()), start=0 * orig[0][0]) for p in order]
            xp = _solve_spd([[orig[p][q] for q in order] for p in order], rhs)
        else:
            xp = []
        y = [as_quad(0)] * n
        for p, val in zip(order, xp):
            y[p] = as_quad(val)
        for r, c in z.items():
            y[r] = as_quad(c)
        ry, val = _rationalize(M, y)
        assert quad_sign(val) < 0
        return PsdResult(False, pivots, ry, val)

    while active:
        neg = next((i for i in active if sign(S[i][i]) < 0), None)
        if neg is not None:
            pivots.append(as_quad(S[neg][neg]))
            return witness({neg: 1})
        p = next((i for i in active if sign(S[i][i]) > 0), None)
        if p is None:
            for i in active:
                for j in active:
                    if i != j and sign(S[i][j]) != 0:
                        pivots.append(as_quad(0))
                        return witness({i: 1, j: -sign(S[i][j])})
            pivots.extend(as_quad(0) for _ in active)
            return PsdResult(True, pivots)
        piv = S[p][p]
        pivots.append(as_quad(piv))
        order.append(p)
        active.remove(p)
        row_p = S[p]
        for i in active:
            if sign(S[i][p]) == 0:
                continue
            f = S[i][p] / piv
            Si = S[i]
            for j in active:
                if row_p[j]:
                    Si[j] = Si[j] - f * row_p[j]
    return PsdResult(True, pivots)
