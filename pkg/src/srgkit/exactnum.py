"""Exact arithmetic in Q and in real quadratic fields Q(sqrt(d)).

Rationals are plain :class:`fractions.Fraction`.  A :class:`QuadNum` holds
``a + b*sqrt(d)`` with rational ``a, b`` and squarefree ``d``; ``d == 0``
marks a pure rational.  Values with different irrational ``d`` never mix.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

__all__ = [
    "QuadNum",
    "MixedFieldsError",
    "quad_make",
    "quad_sign",
    "quad_arith",
    "quad_parse",
    "squarefree_split",
    "as_quad",
    "format_exact",
]

Rational = Fraction
Number = Union[int, Fraction, "QuadNum"]


class MixedFieldsError(ValueError):
    """Both operands are irrational but live in different fields."""


def squarefree_split(D: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``D == s*s*d`` and ``d`` squarefree."""
    if D < 0:
        raise ValueError(f"negative radicand {D}")
    if D == 0:
        return 0, 0
    s, d = 1, 1
    rest = D
    p = 2
    while p * p <= rest:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    d *= rest
    return s, d


class QuadNum:
    """An element ``a + b*sqrt(d)`` of Q(sqrt(d)), always canonical.

    Build values with :func:`quad_make` (or :func:`as_quad`); the
    constructor assumes its arguments are already canonical.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Fraction, b: Fraction = Fraction(0), d: int = 0):
        self.a = a
        self.b = b
        self.d = d

    # -- predicates -----------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.d == 0

    @property
    def is_integer(self) -> bool:
        return self.d == 0 and self.a.denominator == 1

    def to_fraction(self) -> Fraction:
        if self.d:
            raise ValueError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> QuadNum:
        return QuadNum(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def sign(self) -> int:
        return quad_sign(self)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other: Number) -> QuadNum:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return quad_arith(self, o, "add")

    __radd__ = __add__

    def __sub__(self, other: Number) -> QuadNum:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return quad_arith(self, o, "sub")

    def __rsub__(self, other: Number) -> QuadNum:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return quad_arith(o, self, "sub")

    def __mul__(self, other: Number) -> QuadNum:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return quad_arith(self, o, "mul")

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> QuadNum:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return quad_arith(self, o, "div")

    def __rtruediv__(self, other: Number) -> QuadNum:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return quad_arith(o, self, "div")

    def __neg__(self) -> QuadNum:
        return QuadNum(-self.a, -self.b, self.d)

    def __pos__(self) -> QuadNum:
        return self

    def __abs__(self) -> QuadNum:
        return -self if quad_sign(self) < 0 else self

    # -- comparison -----------------------------------------------------
    def _cmp(self, other: Number) -> int | None:
        o = _coerce(other)
        if o is None:
            return None
        return quad_sign(quad_arith(self, o, "sub"))

    def __eq__(self, other: object) -> bool:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b and (self.d == o.d or self.b == 0)

    def __hash__(self) -> int:
        if self.d == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other: Number) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other: Number) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other: Number) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other: Number) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    # -- conversion -----------------------------------------------------
    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def floor(self) -> int:
        """Exact floor, found by bracketing the float estimate."""
        f = math.floor(float(self))
        while quad_sign(self - f) < 0:
            f -= 1
        while quad_sign(self - (f + 1)) >= 0:
            f += 1
        return f

    def ceil(self) -> int:
        return -((-self).floor())

    def __str__(self) -> str:
        return format_exact(self)

    def __repr__(self) -> str:
        return f"QuadNum({format_exact(self)!r})"


def quad_make(a: Fraction | int, b: Fraction | int, D: int) -> QuadNum:
    """Canonical form of ``a + b*sqrt(D)`` for any integer ``D >= 0``."""
    a = Fraction(a)
    b = Fraction(b)
    s, d = squarefree_split(D)
    if d <= 1 or b == 0:
        return QuadNum(a + b * s * d, Fraction(0), 0)
    return QuadNum(a, b * s, d)


def as_quad(x: Number) -> QuadNum:
    q = _coerce(x)
    if q is None:
        raise TypeError(f"cannot convert {type(x).__name__} to QuadNum")
    return q


def _coerce(x: object) -> QuadNum | None:
    if isinstance(x, QuadNum):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadNum(Fraction(x))
    return None


def _sgn(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def quad_sign(x: QuadNum) -> int:
    """Exact sign of ``a + b*sqrt(d)`` using only rational comparisons."""
    sa = _sgn(x.a)
    sb = _sgn(x.b) if x.d else 0
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: the larger magnitude wins; a^2 == b^2 d is impossible
    lhs = x.a * x.a
    rhs = x.b * x.b * x.d
    return sa if lhs > rhs else sb


def _common_field(x: QuadNum, y: QuadNum) -> int:
    if x.d and y.d and x.d != y.d:
        raise MixedFieldsError(f"Q(sqrt({x.d})) vs Q(sqrt({y.d}))")
    return x.d or y.d


def _make(a: Fraction, b: Fraction, d: int) -> QuadNum:
    if b == 0 or d == 0:
        return QuadNum(a, Fraction(0), 0)
    return QuadNum(a, b, d)


def quad_arith(x: QuadNum, y: QuadNum, op: str) -> QuadNum:
    """Field operation ``op`` in {"add", "sub", "mul", "div"}."""
    if op == "add":
        if not (x.d or y.d):
            return QuadNum(x.a + y.a)
        d = _common_field(x, y)
        return _make(x.a + y.a, x.b + y.b, d)
    if op == "sub":
        if not (x.d or y.d):
            return QuadNum(x.a - y.a)
        d = _common_field(x, y)
        return _make(x.a - y.a, x.b - y.b, d)
    if op == "mul":
        if not (x.d or y.d):
            return QuadNum(x.a * y.a)
        d = _common_field(x, y)
        return _make(x.a * y.a + x.b * y.b * d, x.a * y.b + x.b * y.a, d)
    if op == "div":
        if not y:
            raise ZeroDivisionError("QuadNum division by zero")
        if not (x.d or y.d):
            return QuadNum(x.a / y.a)
        d = _common_field(x, y)
        n = y.a * y.a - y.b * y.b * d
        # (xa + xb r)(ya - yb r) / n
        return _make((x.a * y.a - x.b * y.b * d) / n, (x.b * y.a - x.a * y.b) / n, d)
    raise ValueError(f"unknown op {op!r}")


def format_exact(x: Number) -> str:
    """Render as ``p``, ``p/q`` or ``(p+q√d)/r``."""
    x = as_quad(x)
    if x.d == 0:
        a = x.a
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
    r = math.lcm(x.a.denominator, x.b.denominator)
    p = int(x.a * r)
    q = int(x.b * r)
    mag = "" if abs(q) == 1 else str(abs(q))
    if p == 0:
        body = f"{'-' if q < 0 else ''}{mag}√{x.d}"
    else:
        body = f"{p}{'-' if q < 0 else '+'}{mag}√{x.d}"
    return body if r == 1 else f"({body})/{r}"


_BODY_RE = re.compile(r"^(?:(-?\d+)(?=[+-]))?([+-]?)(\d*)√(\d+)$")
_FRAC_RE = re.compile(r"^-?\d+(?:/\d+)?$")


def quad_parse(text: str) -> QuadNum:
    """Inverse of :func:`format_exact`."""
    text = text.strip()
    if _FRAC_RE.match(text):
        return QuadNum(Fraction(text))
    r = 1
    m = re.match(r"^\((.*)\)/(\d+)$", text)
    if m:
        text, r = m.group(1), int(m.group(2))
    m = _BODY_RE.match(text)
    if not m or r == 0:
        raise ValueError(f"not an exact number: {text!r}")
    p = int(m.group(1) or 0)
    q = int(m.group(3) or 1)
    if m.group(2) == "-":
        q = -q
    return quad_make(Fraction(p, r), Fraction(q, r), int(m.group(4)))
