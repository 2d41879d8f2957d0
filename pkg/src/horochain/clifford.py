"""Moebius maps of R^{n+1} from 2x2 matrices of Clifford numbers.

Matrix entries live in Cl(n) (generators ``e_1 .. e_n``); points, cycles and
the extra direction ``e_{n+1}`` live in Cl(n+1).  Since blades are indexed by
bitmask, moving an entry from Cl(n) into Cl(n+1) is plain zero padding
(:func:`~horochain.multivector.lift`).

Conventions used throughout:

* ``x*`` is the reversion and ``x-bar`` the Clifford conjugation;
* ``delta = a d* - b c*`` is the pseudodeterminant;
* a cycle ``(k, l, m)`` has matrix ``[[l, m], [k, conj(l)]]`` and equation
  ``k|x|^2 - 2<l, x> + m = 0``; it moves to ``M C M^*``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cycle2d import Cycle2, proj_equal, projective_residual
from .errors import (
    DegenerateHorocycle,
    HorochainError,
    InvalidVersorMatrix,
    ParseError,
    PoleHit,
)
from .multivector import (
    Multivector,
    conjugate,
    dot,
    gp,
    lift,
    norm2,
    reverse,
)
from .numeric import all_exact, is_exact, parse_rational, sqrt

SHAPE_TOL = 1e-10


def _mv(dim: int, x) -> Multivector:
    if isinstance(x, Multivector):
        return lift(x, dim) if x.dim < dim else x
    return Multivector.scalar(dim, x)


def _exact_mv(x: Multivector) -> bool:
    return all_exact(*x.coeffs)


def _abs_tol(tol: float, *xs: Multivector) -> float:
    scale = max((x.max_abs() for x in xs), default=0.0)
    return tol * max(1.0, scale)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VersorMatrix:
    """``[[a, b], [c, d]]`` with entries in Cl(n)."""

    a: Multivector
    b: Multivector
    c: Multivector
    d: Multivector

    def __post_init__(self):
        dims = {e.dim for e in (self.a, self.b, self.c, self.d) if isinstance(e, Multivector)}
        if len(dims) > 1:
            raise InvalidVersorMatrix(f"entries live in different algebras: {sorted(dims)}")
        n = dims.pop() if dims else 0
        for name in "abcd":
            object.__setattr__(self, name, _mv(n, getattr(self, name)))

    @classmethod
    def of(cls, n: int, a, b, c, d) -> "VersorMatrix":
        """Build from entries that may be plain numbers (read as scalars of Cl(n))."""
        return cls(_mv(n, a), _mv(n, b), _mv(n, c), _mv(n, d))

    @classmethod
    def identity(cls, n: int) -> "VersorMatrix":
        return cls.of(n, 1, 0, 0, 1)

    @classmethod
    def factor(cls, b: Multivector) -> "VersorMatrix":
        """``[[0, 1], [1, b]]``, the map ``x -> (x + b)^{-1}``."""
        return cls.of(b.dim, 0, 1, 1, b)

    @classmethod
    def translation(cls, b: Multivector) -> "VersorMatrix":
        """``[[1, b], [0, 1]]``, the map ``x -> x + b``."""
        return cls.of(b.dim, 1, b, 0, 1)

    @property
    def n(self) -> int:
        return self.a.dim

    def entries(self):
        return self.a, self.b, self.c, self.d

    def __matmul__(self, o: "VersorMatrix") -> "VersorMatrix":
        return VersorMatrix(
            gp(self.a, o.a) + gp(self.b, o.c),
            gp(self.a, o.b) + gp(self.b, o.d),
            gp(self.c, o.a) + gp(self.d, o.c),
            gp(self.c, o.b) + gp(self.d, o.d),
        )

    def lift(self, dim: int) -> "VersorMatrix":
        return VersorMatrix(*(lift(e, dim) for e in self.entries()))

    def scaled(self, s) -> "VersorMatrix":
        return VersorMatrix(*(e.scale(s) for e in self.entries()))

    def to_float(self) -> "VersorMatrix":
        return VersorMatrix(*(e.to_float() for e in self.entries()))

    @property
    def is_exact(self) -> bool:
        return all(_exact_mv(e) for e in self.entries())

    def pseudodeterminant(self) -> Multivector:
        return gp(self.a, reverse(self.d)) - gp(self.b, reverse(self.c))

    @property
    def delta(self):
        """The real pseudodeterminant; raises when ``ad* - bc*`` is not a real number."""
        p = self.pseudodeterminant()
        tol = 0.0 if _exact_mv(p) else _abs_tol(SHAPE_TOL, p)
        if not p.is_scalar(tol):
            raise InvalidVersorMatrix(f"pseudodeterminant {p} is not real")
        return p.coeffs[0]

    def bar(self) -> "VersorMatrix":
        """``[[d*, -b*], [-c*, a*]]``."""
        return VersorMatrix(reverse(self.d), -reverse(self.b), -reverse(self.c), reverse(self.a))

    def star(self) -> "VersorMatrix":
        """``[[conj d, conj b], [conj c, conj a]]``."""
        return VersorMatrix(conjugate(self.d), conjugate(self.b), conjugate(self.c), conjugate(self.a))

    @property
    def kappa(self) -> Optional[int]:
        """Sign with ``bar(M) = kappa * star(M)``: +1 if ``d`` is even, -1 if odd."""
        for e, flip in ((self.d, False), (self.a, False), (self.b, True), (self.c, True)):
            p = e.parity()
            if p is not None:
                return (-1 if p else 1) * (-1 if flip else 1)
        return None

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def format_versor_matrix(M: VersorMatrix) -> str:
    return "\n".join(str(e) for e in M.entries())


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)
    delta: object = None

    def add(self, name: str, passed: bool, detail: str = ""):
        self.checks.append((name, bool(passed), detail))

    @property
    def ok(self) -> bool:
        return all(p for _, p, _ in self.checks)

    def failures(self):
        return [c for c in self.checks if not c[1]]

    def to_text(self) -> str:
        return "\n".join(f"{n} {'pass' if p else 'fail'}{' ' + d if d else ''}" for n, p, d in self.checks)


def ahlfors_validate(M: VersorMatrix, tol: float = 0.0) -> ValidationReport:
    """Check the conditions for ``M`` to define a Moebius map of R^n.

    Being a product of vectors is tested through a surrogate: the entry must
    have pure parity and ``e * conj(e)`` must be a nonnegative real.  Zero
    entries are accepted.  With ``tol == 0`` and exact entries every test is
    exact.
    """
    rep = ValidationReport()
    exact = M.is_exact and tol == 0

    def t(*xs):
        return 0.0 if exact else _abs_tol(tol or SHAPE_TOL, *xs)

    for name, e in zip("abcd", M.entries()):
        if e.is_zero():
            rep.add(f"entry-{name}", True, "zero")
            continue
        pure = e.parity() is not None
        n = gp(e, conjugate(e))
        real_pos = n.is_scalar(t(n)) and n.coeffs[0] >= 0
        rep.add(f"entry-{name}", pure and real_pos)

    pairs = {
        "a*rev(b)": gp(M.a, reverse(M.b)),
        "c*rev(d)": gp(M.c, reverse(M.d)),
        "rev(c)*a": gp(reverse(M.c), M.a),
        "rev(d)*b": gp(reverse(M.d), M.b),
    }
    for name, p in pairs.items():
        rep.add(f"vector {name}", p.is_vector(t(p)))

    p = M.pseudodeterminant()
    real = p.is_scalar(t(p))
    nonzero = real and (p.coeffs[0] != 0 if exact else abs(float(p.coeffs[0])) > t(p))
    rep.add("pseudodeterminant-real", real)
    rep.add("pseudodeterminant-nonzero", nonzero)
    if real:
        rep.delta = p.coeffs[0]

    P = M @ M.bar()
    if real:
        dI = VersorMatrix.of(M.n, rep.delta, 0, 0, rep.delta)
        ok = all(
            (x - y).is_zero(t(x, y)) for x, y in zip(P.entries(), dI.entries())
        )
    else:
        ok = False
    rep.add("M*bar(M)=delta*I", ok)
    return rep


# ---------------------------------------------------------------------------
# points
# ---------------------------------------------------------------------------


def reflect_vector(x: Multivector) -> Multivector:
    """Reflection ``R`` in the hyperplane of the last coordinate."""
    c = list(x.coeffs)
    top = 1 << (x.dim - 1)
    c[top] = -c[top]
    return Multivector(x.dim, c)


def mobius_apply_vector(M: VersorMatrix, x: Multivector, tol: float = 1e-12) -> Multivector:
    """``(a x + b)(c x + d)^{-1}`` for a vector ``x`` of Cl(n+1) (or Cl(n))."""
    if not x.is_vector():
        raise HorochainError("mobius_apply_vector needs a grade-1 point")
    dim = max(x.dim, M.n)
    x = lift(x, dim)
    a, b, c, d = (lift(e, dim) for e in M.entries())
    den = gp(c, x) + d
    den_c = conjugate(den)
    nn = gp(den, den_c)
    exact = _exact_mv(nn)
    s = nn.coeffs[0]
    if (s == 0) if exact else abs(float(s)) < tol:
        raise PoleHit(f"|cx + d|^2 = {s} at x = {x}")
    if not nn.is_scalar(0.0 if exact else _abs_tol(SHAPE_TOL, nn)):
        raise InvalidVersorMatrix("c x + d is not invertible as a product of vectors")
    y = gp(gp(a, x) + b, den_c) / s
    if not y.is_vector(0.0 if _exact_mv(y) else _abs_tol(SHAPE_TOL, y)):
        raise InvalidVersorMatrix(f"image {y} is not a vector; matrix is not of Ahlfors type")
    return y.grade(1)


def partial_quotient_nd(M: VersorMatrix) -> Multivector:
    """``b conj(d) / |d|^2``, the image of the origin."""
    if M.d.is_zero():
        raise PoleHit("d = 0: the origin is sent to infinity")
    q = gp(M.b, conjugate(M.d)) / norm2(M.d)
    if not q.is_vector(0.0 if _exact_mv(q) else _abs_tol(SHAPE_TOL, q)):
        raise InvalidVersorMatrix(f"b conj(d) = {q} is not a vector")
    return q.grade(1)


def first_touch_point(M: VersorMatrix) -> Multivector:
    """``a conj(c) / |c|^2``, the image of infinity."""
    if M.c.is_zero():
        raise PoleHit("c = 0: infinity is fixed")
    q = gp(M.a, conjugate(M.c)) / norm2(M.c)
    return q.grade(1)


# ---------------------------------------------------------------------------
# cycles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CycleND:
    """Sphere or hyperplane ``k|x|^2 - 2<l, x> + m = 0`` in R^{dim}."""

    k: object
    l: Multivector
    m: object

    def __post_init__(self):
        if not self.l.is_vector():
            raise HorochainError("the l-part of a cycle must be a vector")
        if self.k == 0 and self.m == 0 and self.l.is_zero():
            raise HorochainError("the zero triple is not a cycle")

    @property
    def dim(self) -> int:
        return self.l.dim

    def __iter__(self):
        yield self.k
        yield from self.l.vector_components()
        yield self.m

    @property
    def is_exact(self) -> bool:
        return all_exact(*tuple(self))

    @property
    def is_hyperplane(self) -> bool:
        return self.k == 0

    def disc(self):
        """``|l|^2 - k m``."""
        return norm2(self.l) - self.k * self.m

    def center(self) -> Multivector:
        if self.k == 0:
            raise HorochainError("a hyperplane has no centre")
        k = Fraction(self.k) if isinstance(self.k, int) else self.k
        return self.l / k

    def radius2(self):
        if self.k == 0:
            raise HorochainError("a hyperplane has no radius")
        return self.disc() / (self.k * self.k)

    def radius(self):
        return sqrt(self.radius2())

    def height(self):
        """Last coordinate of the centre."""
        return self.center().component(self.dim)

    def evaluate(self, x: Multivector):
        x = lift(x, self.dim)
        return self.k * norm2(x) - 2 * dot(self.l, x) + self.m

    def incidence_residual(self, x: Multivector) -> float:
        """Value at ``x`` divided by ``2|k| r^2`` (spheres) or ``2|l|`` (hyperplanes)."""
        f = self.evaluate(x)
        if f == 0:
            return 0.0
        d = float(self.disc())
        if self.k == 0:
            return float(f) / (2 * math.sqrt(d))
        return float(f) * abs(float(self.k)) / (2 * d)

    def reflect(self) -> "CycleND":
        return CycleND(self.k, reflect_vector(self.l), self.m)

    def scaled(self, s) -> "CycleND":
        return CycleND(self.k * s, self.l.scale(s), self.m * s)

    def to_float(self) -> "CycleND":
        return CycleND(float(self.k), self.l.to_float(), float(self.m))

    def lift(self, dim: int) -> "CycleND":
        return CycleND(self.k, lift(self.l, dim), self.m)

    def __str__(self):
        return f"({self.k}; {self.l}; {self.m})"


def cycle_matrix(C: CycleND):
    d = C.dim
    return ((C.l, Multivector.scalar(d, C.m)), (Multivector.scalar(d, C.k), conjugate(C.l)))


def _mat_mul(P, Q):
    return (
        (gp(P[0][0], Q[0][0]) + gp(P[0][1], Q[1][0]), gp(P[0][0], Q[0][1]) + gp(P[0][1], Q[1][1])),
        (gp(P[1][0], Q[0][0]) + gp(P[1][1], Q[1][0]), gp(P[1][0], Q[0][1]) + gp(P[1][1], Q[1][1])),
    )


def cycle_image_nd(M: VersorMatrix, C: CycleND, tol: float = SHAPE_TOL) -> CycleND:
    """Read ``M C M^*`` back as a cycle, checking that it has cycle shape."""
    dim = max(C.dim, M.n + 1)
    C = C.lift(dim)
    Ml = M.lift(dim)
    S = Ml.star()
    Mm = ((Ml.a, Ml.b), (Ml.c, Ml.d))
    Sm = ((S.a, S.b), (S.c, S.d))
    R = _mat_mul(_mat_mul(Mm, cycle_matrix(C)), Sm)
    l, mm, k, lb = R[0][0], R[0][1], R[1][0], R[1][1]
    exact = all(_exact_mv(e) for e in (l, mm, k, lb))
    t = 0.0 if exact else _abs_tol(tol, l, mm, k, lb)
    if not (k.is_scalar(t) and mm.is_scalar(t) and l.is_vector(t) and (lb - conjugate(l)).is_zero(t)):
        raise InvalidVersorMatrix("M C M* does not have the shape of a cycle matrix")
    return CycleND(k.coeffs[0], l.grade(1), mm.coeffs[0])


def nd_inner_product(c1: CycleND, c2: CycleND):
    """Scalar part of ``tr(C1 C2)``, i.e. ``k1 m2 + m1 k2 - 2<l1, l2>``."""
    return c1.k * c2.m + c1.m * c2.k - 2 * dot(c1.l, c2.l)


def nd_inner_product_trace(c1: CycleND, c2: CycleND):
    P = _mat_mul(cycle_matrix(c1), cycle_matrix(c2))
    return (P[0][0] + P[1][1]).coeffs[0]


def nd_orthogonality_residual(c1: CycleND, c2: CycleND) -> float:
    ip = nd_inner_product(c1, c2)
    if ip == 0:
        return 0.0
    scale = float(c1.disc()) * float(c2.disc())
    return float(ip) / (2 * math.sqrt(abs(scale))) if scale else math.inf


def nd_tangency_residual(c1: CycleND, c2: CycleND):
    """External-tangency residual after normalising ``|l|^2 - km = 1`` (spheres with ``k > 0``)."""
    reps = []
    for c in (c1, c2):
        d = c.disc()
        if d <= 0:
            raise HorochainError("tangency needs real, non-point cycles")
        s = sqrt(d)
        if c.k != 0 and c.k < 0:
            s = -s
        reps.append(c.scaled(1 / s if not isinstance(s, int) else Fraction(1, s)))
    a, b = reps
    l = a.l + b.l
    return norm2(l) - (a.k + b.k) * (a.m + b.m)


def cycle2_to_nd(c: Cycle2) -> CycleND:
    """``(k, l, n, m)`` as ``(k, l e1 + n e2, m)`` in Cl(2)."""
    return CycleND(c.k, Multivector.vector(2, (c.l, c.n)), c.m)


def nd_to_cycle2(c: CycleND) -> Cycle2:
    if c.dim != 2:
        raise HorochainError("only cycles of R^2 convert to planar quadruples")
    return Cycle2(c.k, c.l.component(1), c.l.component(2), c.m)


# ---------------------------------------------------------------------------
# closed-form images
# ---------------------------------------------------------------------------


def _top(dim: int) -> Multivector:
    return Multivector.basis(dim, dim)


def lemma4_horocycle(M: VersorMatrix, m) -> CycleND:
    """Image of the hyperplane ``(0, e_{n+1}, m)``: ``(m|c|^2, m a conj(c) + delta e_{n+1}, m|a|^2)``.

    Touches ``x_{n+1} = 0`` at ``a conj(c) / |c|^2`` with radius ``1 / (m |c|^2)``.
    """
    if M.c.is_zero():
        raise DegenerateHorocycle("c = 0: the image is the hyperplane itself")
    D = M.n + 1
    a, c = lift(M.a, D), lift(M.c, D)
    l = gp(a, conjugate(c)).scale(m) + _top(D).scale(M.delta)
    return CycleND(m * norm2(c), l.grade(1), m * norm2(a))


def lemma5_horocycle(M: VersorMatrix, k) -> CycleND:
    """Image of ``(k, e_{n+1}, 0)``: ``(k|d|^2, k b conj(d) + delta e_{n+1}, k|b|^2)``."""
    if M.d.is_zero():
        raise DegenerateHorocycle("d = 0: the image is a hyperplane")
    D = M.n + 1
    b, d = lift(M.b, D), lift(M.d, D)
    l = gp(b, conjugate(d)).scale(k) + _top(D).scale(M.delta)
    return CycleND(k * norm2(d), l.grade(1), k * norm2(b))


def lemma6_connecting(M: VersorMatrix, x: Multivector, r) -> CycleND:
    """Image of the hyperplane ``(0, x + r e_{n+1}, 0)`` through the origin."""
    if x.is_zero():
        raise HorochainError("x must be a nonzero vector of R^n")
    if not x.is_vector():
        raise HorochainError("x must be a vector")
    D = M.n + 1
    x = lift(x, D)
    a, b, c, d = (lift(e, D) for e in M.entries())
    xb = conjugate(x)
    k = gp(gp(c, x), conjugate(d)) + gp(gp(d, xb), conjugate(c))
    l = gp(gp(a, x), conjugate(d)) + gp(gp(b, xb), conjugate(c)) + _top(D).scale(M.delta * r)
    m = gp(gp(a, x), conjugate(b)) + gp(gp(b, xb), conjugate(a))
    return CycleND(k.coeffs[0], l.grade(1), m.coeffs[0])


def lemma6_center(M: VersorMatrix, r) -> Multivector:
    """Centre of the connecting cycle for ``x = conj(c) d``."""
    D = M.n + 1
    c2, d2 = norm2(M.c), norm2(M.d)
    p = lift(first_touch_point(M), D)
    q = lift(partial_quotient_nd(M), D)
    return (p + q) / 2 + _top(D).scale(M.delta * r / (2 * c2 * d2))


def connecting_direction(M: VersorMatrix) -> Multivector:
    """Unit vector along ``conj(c) d`` (``e_1`` when that product vanishes)."""
    x = gp(conjugate(M.c), M.d)
    if x.is_zero():
        return Multivector.basis(M.n, 1)
    if not x.is_vector(0.0 if _exact_mv(x) else _abs_tol(SHAPE_TOL, x)):
        raise InvalidVersorMatrix(f"conj(c) d = {x} is not a vector")
    return x.grade(1) / sqrt(norm2(x))


# ---------------------------------------------------------------------------
# multidimensional continued fractions and chains
# ---------------------------------------------------------------------------


def as_vector(n: int, b) -> Multivector:
    if isinstance(b, Multivector):
        if not b.is_vector():
            raise InvalidVersorMatrix(f"coefficient {b} is not a vector")
        return lift(b, n) if b.dim < n else b
    return Multivector.vector(n, [Fraction(x) if isinstance(x, int) else x for x in b])


def md_cf_matrix(b_list: Sequence, n: Optional[int] = None,
                 prefix: Optional[VersorMatrix] = None) -> VersorMatrix:
    """Product of the factors ``[[0, 1], [1, b_j]]`` (after an optional prefix)."""
    b_list = list(b_list)
    if n is None:
        if b_list and isinstance(b_list[0], Multivector):
            n = b_list[0].dim
        elif b_list:
            n = len(b_list[0])
        elif prefix is not None:
            n = prefix.n
        else:
            n = 1
    M = prefix if prefix is not None else VersorMatrix.identity(n)
    for b in b_list:
        M = M @ VersorMatrix.factor(as_vector(n, b))
    return M


@dataclass(frozen=True)
class NDLink:
    index: int
    matrix: VersorMatrix
    horo_prev: Optional[CycleND]
    horo_curr: CycleND
    connecting: CycleND
    mirror_connecting: Optional[CycleND]
    touch_prev: Optional[Multivector]
    touch_curr: Multivector


@dataclass(frozen=True)
class NDChain:
    n: int
    arrangement: object
    links: tuple

    def __len__(self):
        return len(self.links)

    def __iter__(self):
        return iter(self.links)

    def partial_quotients(self):
        return [lk.touch_curr for lk in self.links]


def build_nd_chain(b_list: Sequence, arrangement, n: Optional[int] = None,
                   prefix: Optional[VersorMatrix] = None, count: Optional[int] = None) -> NDChain:
    """Chain of horocycles and connecting cycles for the running products.

    ``arrangement`` supplies the seeds ``(m0, k0, n0)``; the connecting cycle of
    link j is generated by ``(0, x + n0 e_{n+1}, 0)`` with the unit vector
    ``x`` along ``conj(c) d``, so its centre lies over the line through the two
    touch points.
    """
    b_list = list(b_list)
    if count is not None:
        b_list = b_list[:count]
    if n is None:
        n = md_cf_matrix(b_list[:1], prefix=prefix).n if b_list else (prefix.n if prefix else 1)
    M = prefix if prefix is not None else VersorMatrix.identity(n)
    m0, k0, n0 = arrangement.m0, arrangement.k0, arrangement.n0
    mixed = n0 != 0
    links = []
    for j, b in enumerate(b_list, 1):
        M = M @ VersorMatrix.factor(as_vector(n, b))
        if M.d.is_zero():
            raise PoleHit(f"link {j}: d = 0, the partial quotient is infinite")
        if M.c.is_zero():
            prev, tprev = None, None
        else:
            prev, tprev = lemma4_horocycle(M, m0), first_touch_point(M)
        curr = lemma5_horocycle(M, k0)
        conn = lemma6_connecting(M, connecting_direction(M), n0)
        links.append(NDLink(j, M, prev, curr, conn, conn.reflect() if mixed else None,
                            tprev, partial_quotient_nd(M)))
    return NDChain(n, arrangement, tuple(links))


# ---------------------------------------------------------------------------
# convergence detectors
# ---------------------------------------------------------------------------


class ConvergenceMode(enum.Enum):
    RADIUS_TO_ZERO = "radius"
    HEIGHT_TO_ZERO = "height"


@dataclass
class ConvergenceReport:
    mode: ConvergenceMode
    enclosure: list
    sizes: list
    enclosed: bool
    decreasing: bool

    @property
    def ok(self) -> bool:
        return self.enclosed and self.decreasing

    def to_text(self) -> str:
        lines = [f"mode {self.mode.value}"]
        for j, s in enumerate(self.sizes, 1):
            enc = "-" if j == 1 else ("yes" if self.enclosure[j - 2] else "no")
            lines.append(f"cycle {j} size {float(s):.12g} enclosed-in-previous {enc}")
        lines.append(f"enclosed {'true' if self.enclosed else 'false'}")
        lines.append(f"decreasing {'true' if self.decreasing else 'false'}")
        return "\n".join(lines)


def _strictly_decreasing(xs) -> bool:
    return all(y < x for x, y in zip(xs, xs[1:]))


def convergence_check(connecting: Sequence[CycleND], mode=ConvergenceMode.RADIUS_TO_ZERO,
                      window: Optional[int] = None, tol: float = 1e-12) -> ConvergenceReport:
    """Nesting of consecutive spheres plus a shrinking size measure.

    Enclosure of ``C_j`` in ``C_{j-1}`` is ``|c_j - c_{j-1}| + r_j <= r_{j-1} + tol``.
    Cycles count only up to the mirror reflection in ``x_{n+1} = 0``, so each
    one is first replaced by its representative with centre on or above that
    hyperplane.  The size is the radius, or for the height mode the last
    coordinate of that centre.  Monotonicity is
    tested on the last ``window`` sizes (all of them by default).
    """
    mode = ConvergenceMode(mode)
    cycles = list(connecting)
    for c in cycles:
        if c.k == 0 or c.disc() <= 0:
            raise HorochainError(f"convergence_check needs real spheres, got {c}")
    # compare the representatives lying above x_{n+1} = 0
    cycles = [c.reflect() if c.height() < 0 else c for c in cycles]
    enclosure = []
    for prev, cur in zip(cycles, cycles[1:]):
        gap = math.sqrt(float(norm2(cur.center() - prev.center())))
        enclosure.append(gap + float(cur.radius()) <= float(prev.radius()) + tol)
    if mode is ConvergenceMode.RADIUS_TO_ZERO:
        # r^2 keeps exact comparisons exact
        keys = [c.radius2() for c in cycles]
        sizes = [c.radius() for c in cycles]
    else:
        keys = [abs(c.height()) for c in cycles]
        sizes = keys
    tail = keys if window is None else keys[-window:]
    return ConvergenceReport(mode, enclosure, sizes, all(enclosure), _strictly_decreasing(tail))


# ---------------------------------------------------------------------------
# text input
# ---------------------------------------------------------------------------


def parse_vectors(text: str) -> list[tuple]:
    """One vector per line as whitespace-separated rationals; ``#`` comments."""
    out = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        comps = tuple(parse_rational(t) for t in line.split())
        if width is None:
            width = len(comps)
        elif len(comps) != width:
            raise ParseError(f"line {lineno}: expected {width} components, got {len(comps)}")
        out.append(comps)
    return out


def cycles_equal_projectively(c1: CycleND, c2: CycleND, tol: float = 1e-9) -> bool:
    return proj_equal(tuple(c1), tuple(c2), tol)


def cycles_residual(c1: CycleND, c2: CycleND) -> float:
    return projective_residual(tuple(c1), tuple(c2))
