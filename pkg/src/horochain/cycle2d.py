"""Cycles (circles and lines) in the plane and their Moebius action.

A cycle is the projective quadruple ``(k, l, n, m)`` with zero set

    k (u^2 + v^2) - 2 l u - 2 n v + m = 0,

so a circle (``k != 0``) has centre ``(l/k, n/k)`` and squared radius
``(l^2 + n^2 - k m) / k^2``.  The matrix of a cycle is

    [[l + i n, -m], [k, -l + i n]]

and a real matrix ``M`` acts by similarity ``M C M^-1``.  Complex entries are
held as a pair of real matrices ``(re, im)`` so that exact arithmetic is
available whenever the coefficients are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ImaginaryCycle, InvalidCycleMatrix
from .numeric import all_exact, exact_sqrt, is_exact, sqrt


class _Infinity:
    """The point at infinity of the Riemann sphere."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()


@dataclass(frozen=True)
class Cycle2:
    k: object
    l: object
    n: object
    m: object

    def __post_init__(self):
        if self.k == 0 and self.l == 0 and self.n == 0 and self.m == 0:
            raise ValueError("the zero quadruple is not a cycle")

    def __iter__(self):
        return iter((self.k, self.l, self.n, self.m))

    @property
    def disc(self):
        """``l^2 + n^2 - k m``; positive for real circles and lines."""
        return self.l * self.l + self.n * self.n - self.k * self.m

    @property
    def is_line(self) -> bool:
        return self.k == 0

    @property
    def is_exact(self) -> bool:
        return all_exact(*self)

    def scaled(self, s) -> "Cycle2":
        return Cycle2(s * self.k, s * self.l, s * self.n, s * self.m)

    def to_float(self) -> "Cycle2":
        return Cycle2(*(float(x) for x in self))

    def evaluate(self, u, v):
        return self.k * (u * u + v * v) - 2 * self.l * u - 2 * self.n * v + self.m

    def reflect(self) -> "Cycle2":
        return reflect(self)

    def __str__(self):
        return " ".join(_fmt_component(x) for x in self)


def _fmt_component(x) -> str:
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    if is_exact(x):
        return str(x)
    return repr(float(x))


def parse_cycle(text: str) -> Cycle2:
    from .numeric import parse_rational

    parts = text.split()
    if len(parts) != 4:
        raise ValueError(f"expected four components, got {text!r}")
    vals = []
    for p in parts:
        try:
            vals.append(parse_rational(p))
        except ValueError:
            vals.append(float(p))
    return Cycle2(*vals)


REAL_AXIS = Cycle2(0, 0, 1, 0)


@dataclass(frozen=True)
class MoebiusMat2:
    a: object
    b: object
    c: object
    d: object

    @classmethod
    def identity(cls) -> "MoebiusMat2":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_mat2q(cls, m) -> "MoebiusMat2":
        return cls(m.a, m.b, m.c, m.d)

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def delta(self):
        return self.det

    def __matmul__(self, o: "MoebiusMat2") -> "MoebiusMat2":
        return MoebiusMat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def normalized(self) -> "MoebiusMat2":
        """Scale to ``|det| = 1``; exact when ``sqrt|det|`` is in Q(sqrt2)."""
        det = self.det
        if det == 0:
            raise ValueError("singular matrix")
        s = sqrt(abs(det))
        return MoebiusMat2(self.a / s, self.b / s, self.c / s, self.d / s)

    def inverse(self) -> "MoebiusMat2":
        det = self.det
        if det == 0:
            raise ValueError("singular matrix")
        if all_exact(det) and isinstance(det, int):
            det = Fraction(det)
        return MoebiusMat2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))


def apply_moebius_point(M: MoebiusMat2, z):
    """Image of ``z`` under ``z -> (a z + b) / (c z + d)`` on the Riemann sphere."""
    if z is INFINITY:
        if M.c == 0:
            return INFINITY
        return _div(M.a, M.c)
    num = M.a * z + M.b
    den = M.c * z + M.d
    if den == 0:
        return INFINITY
    return _div(num, den)


def _div(x, y):
    if isinstance(x, int) and isinstance(y, int):
        return Fraction(x, y)
    return x / y


# --- matrix form -----------------------------------------------------------


def _mm(p, q):
    return (
        (p[0][0] * q[0][0] + p[0][1] * q[1][0], p[0][0] * q[0][1] + p[0][1] * q[1][1]),
        (p[1][0] * q[0][0] + p[1][1] * q[1][0], p[1][0] * q[0][1] + p[1][1] * q[1][1]),
    )


def _mat_scale(tol_scale_src):
    return max((abs(float(x)) for row in tol_scale_src for x in row), default=0.0)


@dataclass(frozen=True)
class CycleMat2:
    """Complex 2x2 matrix ``re + i*im`` with real 2x2 parts."""

    re: tuple
    im: tuple

    def as_complex(self):
        return tuple(
            tuple(complex(float(self.re[i][j]), float(self.im[i][j])) for j in range(2))
            for i in range(2)
        )

    def similar(self, M: MoebiusMat2) -> "CycleMat2":
        R = M.rows()
        Ri = M.inverse().rows()
        return CycleMat2(_mm(_mm(R, self.re), Ri), _mm(_mm(R, self.im), Ri))


def to_matrix(c: Cycle2) -> CycleMat2:
    zero = 0 * c.n
    return CycleMat2(
        re=((c.l, -c.m), (c.k, -c.l)),
        im=((c.n, zero), (zero, c.n)),
    )


def from_matrix(C: CycleMat2, tol: float = 1e-12) -> Cycle2:
    """Read ``(k, l, n, m)`` back from a cycle matrix, validating its shape."""
    (r00, r01), (r10, r11) = C.re
    (i00, i01), (i10, i11) = C.im
    residues = (r00 + r11, i01, i10, i00 - i11)
    exact = all(is_exact(x) for row in C.re + C.im for x in row)
    if exact:
        bad = any(x != 0 for x in residues)
    else:
        scale = max(_mat_scale(C.re), _mat_scale(C.im), 1e-300)
        bad = any(abs(float(x)) > tol * scale for x in residues)
    if bad:
        raise InvalidCycleMatrix("matrix is not of the form [[l+in, -m], [k, -l+in]]")
    if exact:
        return Cycle2(r10, r00, i00, -r01)
    return Cycle2(r10, (r00 - r11) / 2, (i00 + i11) / 2, -r01)


def cycle_image(M: MoebiusMat2, c: Cycle2) -> Cycle2:
    """Image cycle ``M C M^-1``; the projective scale is whatever the similarity gives."""
    return from_matrix(to_matrix(c).similar(M))


# --- invariant products and predicates ---------------------------------------


def inner_product(c1: Cycle2, c2: Cycle2):
    """``Re tr(C1 conj(C2)) = 2 l1 l2 + 2 n1 n2 - k1 m2 - m1 k2``."""
    return 2 * c1.l * c2.l + 2 * c1.n * c2.n - c1.k * c2.m - c1.m * c2.k


def inner_product_trace(c1: Cycle2, c2: Cycle2):
    """The same product computed from the matrices: ``Re tr((A1 + iB1)(A2 - iB2))``."""
    C1, C2 = to_matrix(c1), to_matrix(c2)
    p = _mm(C1.re, C2.re)
    q = _mm(C1.im, C2.im)
    return p[0][0] + p[1][1] + q[0][0] + q[1][1]


def orthogonality_residual(c1: Cycle2, c2: Cycle2) -> float:
    """Cosine of the intersection angle, ``<c1,c2> / sqrt|<c1,c1><c2,c2>|``."""
    ip = inner_product(c1, c2)
    if ip == 0:
        return 0.0
    scale = abs(inner_product(c1, c1) * inner_product(c2, c2))
    if scale == 0:
        return math.inf
    return float(ip) / math.sqrt(float(scale))


def is_orthogonal(c1: Cycle2, c2: Cycle2, tol: float = 1e-12) -> bool:
    if c1.is_exact and c2.is_exact:
        return inner_product(c1, c2) == 0
    return abs(orthogonality_residual(c1, c2)) <= tol


def _oriented(c: Cycle2):
    """Representatives to try for the tangency test.

    Circles are oriented with ``k > 0``.  A line has no inside, so both of its
    orientations are returned.
    """
    if c.k != 0:
        return [c if c.k > 0 else c.scaled(-1)]
    return [c, c.scaled(-1)]


def _normalized(c: Cycle2):
    d = c.disc
    if d <= 0:
        kind = "point-cycle" if d == 0 else "imaginary cycle"
        raise ImaginaryCycle(f"tangency is undefined for a {kind}: {c}")
    s = exact_sqrt(d) if c.is_exact else None
    if s is None:
        c = c.to_float()
        s = math.sqrt(float(d))
    return Cycle2(c.k / s, c.l / s, c.n / s, c.m / s)


def tangency_residual(c1: Cycle2, c2: Cycle2):
    """``(l+l~)^2 + (n+n~)^2 - (m+m~)(k+k~)`` for representatives with ``l^2+n^2-km = 1``.

    For two circles the value is ``((r1+r2)^2 - d^2) / (r1 r2)``, zero exactly at
    external tangency.  Exact whenever both normalisers are exact.
    """
    n1, n2 = _normalized(c1), _normalized(c2)
    best = None
    for a in _oriented(n1):
        for b in _oriented(n2):
            l, n = a.l + b.l, a.n + b.n
            r = l * l + n * n - (a.m + b.m) * (a.k + b.k)
            if best is None or abs(r) < abs(best):
                best = r
    return best


def is_tangent(c1: Cycle2, c2: Cycle2, tol: float = 1e-12) -> bool:
    r = tangency_residual(c1, c2)
    if is_exact(r):
        return r == 0
    return abs(r) <= tol


def reflect(c: Cycle2) -> Cycle2:
    """Mirror image in the real axis, ``(k, l, -n, m)``."""
    return Cycle2(c.k, c.l, -c.n, c.m)


@dataclass(frozen=True)
class Circle:
    center: tuple
    radius: object


@dataclass(frozen=True)
class Line:
    """The line ``normal . (u, v) = offset``."""

    normal: tuple
    offset: object


def center_radius(c: Cycle2) -> Union[Circle, Line]:
    d = c.disc
    if d < 0:
        raise ImaginaryCycle(f"negative squared radius for {c}")
    if c.k == 0:
        return Line((c.l, c.n), _div(c.m, 2))
    k = c.k
    return Circle((_div(c.l, k), _div(c.n, k)), _div(sqrt(d), abs(k)))


def radius_squared(c: Cycle2):
    if c.k == 0:
        raise ValueError("a line has no radius")
    return _div(c.disc, c.k * c.k)


def incidence_residual(c: Cycle2, point) -> float:
    """How far ``point`` is from the zero set of ``c``.

    For circles this is ``(dist^2 - r^2) / (2 r^2)``, approximately the relative
    distance error; for lines it is the signed Euclidean distance.
    """
    u, v = point
    f = c.evaluate(u, v)
    if f == 0:
        return 0.0
    d = c.disc
    if c.k == 0:
        return float(f) / (2 * math.sqrt(float(d)))
    return float(f) * abs(float(c.k)) / (2 * float(d))


def passes_through(c: Cycle2, point, tol: float = 1e-12) -> bool:
    u, v = point
    if c.is_exact and all_exact(u, v):
        return c.evaluate(u, v) == 0
    return abs(incidence_residual(c, point)) <= tol


def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def common_point(c1: Cycle2, c2: Cycle2, c3: Cycle2):
    """The cycle orthogonal to ``c1, c2, c3`` and its normalised self-product.

    A point ``z`` lies on a cycle exactly when the point-cycle of ``z`` is
    orthogonal to it, so three independent cycles share a point iff the
    (one-dimensional) orthogonal complement of their span is a point-cycle,
    i.e. a null vector.  Returns ``(w, residual)`` where ``residual`` is the
    self-product of ``w`` scaled into ``[-1, 1]``; it vanishes iff the cycles
    meet.
    """
    rows = []
    for c in (c1, c2, c3):
        # coefficient vector of x -> <c, x> in (k, l, n, m) order
        rows.append((-c.m, 2 * c.l, 2 * c.n, -c.k))
    w = []
    for j in range(4):
        minor = [[r[i] for i in range(4) if i != j] for r in rows]
        w.append((-1) ** j * _det3(minor))
    wk, wl, wn, wm = w
    self_ip = 2 * wl * wl + 2 * wn * wn - 2 * wk * wm
    if self_ip == 0:
        return tuple(w), 0.0
    norm = 2 * (wl * wl + wn * wn) + 2 * abs(wk * wm)
    if norm == 0:
        return tuple(w), math.inf
    return tuple(w), float(self_ip) / float(norm)


def projective_residual(c1, c2) -> float:
    """Largest 2x2 minor of the stacked coefficient vectors, scaled by their norms."""
    x, y = tuple(c1), tuple(c2)
    worst = 0
    for i in range(len(x)):
        for j in range(i + 1, len(x)):
            minor = x[i] * y[j] - x[j] * y[i]
            if minor != 0:
                worst = max(worst, abs(float(minor)))
    if worst == 0:
        return 0.0
    nx = math.sqrt(sum(float(t) ** 2 for t in x))
    ny = math.sqrt(sum(float(t) ** 2 for t in y))
    return worst / (nx * ny)


def proj_equal(c1, c2, tol: float = 1e-12) -> bool:
    """Equality of projective points; exact when both sides are exact."""
    x, y = tuple(c1), tuple(c2)
    if all_exact(*x, *y):
        return all(
            x[i] * y[j] == x[j] * y[i] for i in range(len(x)) for j in range(i + 1, len(x))
        )
    return projective_residual(c1, c2) <= tol
