"""Numeric helpers shared by the geometry modules.

Two numeric modes coexist.  Exact values are ``int``, ``Fraction`` or
:class:`QSqrt2` (elements ``a + b*sqrt(2)`` of the quadratic field); anything
else is treated as a binary float.  The seed parameters of the orthogonal and
mixed chain arrangements contain ``sqrt(2)``, and keeping them in ``QSqrt2``
lets those chains be verified without round-off.
"""

from __future__ import annotations

import math
from fractions import Fraction

_EXACT_BASE = (int, Fraction)


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class QSqrt2:
    """Exact element ``a + b*sqrt(2)`` with rational ``a`` and ``b``.

    Arithmetic with ``int``/``Fraction``/``QSqrt2`` stays exact; results with
    ``b == 0`` collapse back to ``Fraction`` so that rational-only values
    compare and hash like ordinary fractions.  Mixing with ``float`` yields
    ``float``.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = _q(a)
        self.b = _q(b)

    @staticmethod
    def _make(a: Fraction, b: Fraction):
        if b == 0:
            return a
        return QSqrt2(a, b)

    @staticmethod
    def _coerce(other):
        if isinstance(other, QSqrt2):
            return other.a, other.b
        if isinstance(other, _EXACT_BASE):
            return Fraction(other), Fraction(0)
        return None

    def __repr__(self):
        return f"QSqrt2({self.a}, {self.b})"

    def __str__(self):
        if self.a == 0:
            return f"{self.b}*sqrt2"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*sqrt2"

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, float):
                return float(self) + other
            return NotImplemented
        return self._make(self.a + o[0], self.b + o[1])

    __radd__ = __add__

    def __neg__(self):
        return QSqrt2(-self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, float):
                return float(self) - other
            return NotImplemented
        return self._make(self.a - o[0], self.b - o[1])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, float):
                return other - float(self)
            return NotImplemented
        return self._make(o[0] - self.a, o[1] - self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, float):
                return float(self) * other
            return NotImplemented
        a, b = o
        return self._make(self.a * a + 2 * self.b * b, self.a * b + self.b * a)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``a^2 - 2 b^2``."""
        return self.a * self.a - 2 * self.b * self.b

    def conjugate(self):
        return QSqrt2(self.a, -self.b)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, float):
                return float(self) / other
            return NotImplemented
        a, b = o
        den = a * a - 2 * b * b
        if den == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt2)")
        # (x)(a - b r) / (a^2 - 2 b^2)
        na = self.a * a - 2 * self.b * b
        nb = self.b * a - self.a * b
        return self._make(na / den, nb / den)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, float):
                return other / float(self)
            return NotImplemented
        return QSqrt2(*o) / self

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return float(self) ** k
        result = Fraction(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with 2 b^2
        diff = self.a * self.a - 2 * self.b * self.b
        if diff == 0:
            return 0
        return sa if diff > 0 else sb

    def __float__(self):
        fa, fb = float(self.a), float(self.b) * math.sqrt(2.0)
        if (fa >= 0) == (fb >= 0):
            return fa + fb
        # a + b r = (a^2 - 2b^2) / (a - b r), avoids cancellation
        return float(self.norm()) / (fa - fb)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return self.sign() != 0

    def _cmp(self, other):
        if isinstance(other, float):
            return (float(self) > other) - (float(self) < other)
        d = self - other
        if isinstance(d, QSqrt2):
            return d.sign()
        return (d > 0) - (d < 0)

    def __eq__(self, other):
        if isinstance(other, (QSqrt2, int, Fraction)):
            return self._cmp(other) == 0
        if isinstance(other, float):
            return float(self) == other
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def exact_sqrt(self):
        """Square root inside Q(sqrt2), or ``None`` when it is not in the field."""
        if self.sign() < 0:
            return None
        # (x + y r)^2 = x^2 + 2y^2 + 2xy r  =>  x^2 solves t^2 - a t + b^2/2 = 0
        disc = _rational_sqrt(self.a * self.a - 2 * self.b * self.b)
        if disc is None:
            return None
        for t in ((self.a + disc) / 2, (self.a - disc) / 2):
            if t <= 0:
                continue
            x = _rational_sqrt(t)
            if x is None:
                continue
            y = self.b / (2 * x)
            root = self._make(x, y)
            if root * root == self:
                return abs(root)
        return None


SQRT2 = QSqrt2(0, 1)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, QSqrt2))


def all_exact(*xs) -> bool:
    return all(is_exact(x) for x in xs)


def is_zero(x, tol: float = 0.0) -> bool:
    """Exact zero test for exact values, ``|x| <= tol`` otherwise."""
    if is_exact(x):
        return x == 0
    return abs(x) <= tol


def _rational_sqrt(x: Fraction):
    if x < 0:
        return None
    x = Fraction(x)
    p, q = x.numerator, x.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def exact_sqrt(x):
    """Exact square root of an exact value, ``None`` when irrational (or not exact)."""
    if isinstance(x, QSqrt2):
        return x.exact_sqrt()
    if isinstance(x, (int, Fraction)):
        r = _rational_sqrt(Fraction(x))
        if r is not None:
            return r
        # sqrt(q) = s*sqrt2 when q/2 is a rational square
        s = _rational_sqrt(Fraction(x) / 2)
        if s is not None:
            return QSqrt2(0, s)
        return None
    return None


def sqrt(x):
    """Square root that stays exact whenever the root lies in Q(sqrt2)."""
    r = exact_sqrt(x)
    if r is not None:
        return r
    return math.sqrt(float(x))


def to_float(x) -> float:
    return float(x)


def as_exact(x):
    """Turn ints into ``Fraction`` and leave every other value alone."""
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q``, an integer, or a finite decimal into a ``Fraction``."""
    from .errors import ParseError

    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def format_rational(x) -> str:
    return str(Fraction(x)) if isinstance(x, (int, Fraction)) else repr(float(x))


__all__ = [
    "QSqrt2",
    "SQRT2",
    "all_exact",
    "as_exact",
    "exact_sqrt",
    "format_rational",
    "is_exact",
    "is_zero",
    "parse_rational",
    "sqrt",
    "to_float",
]
