"""Horocycle chains attached to the convergents of a continued fraction.

For the convergent matrix ``M = [[P_{n-1}, P_n], [Q_{n-1}, Q_n]]`` three
families of cycles have images that depend on the columns in a controlled
way:

* horizontal lines ``(0, 0, 1, m)`` go to horocycles touching at ``P_{n-1}/Q_{n-1}``,
* circles ``(k, 0, 1, 0)`` go to horocycles touching at ``P_n/Q_n``,
* lines ``(0, 1, n, 0)`` through the origin go to cycles through both points.

Fixing the free parameters ``(m, k, n)`` gives the tangent, orthogonal and
mixed arrangements built here.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cf import ContinuedFraction, Mat2Q
from .cycle2d import (
    _div,
    REAL_AXIS,
    Circle,
    Cycle2,
    MoebiusMat2,
    center_radius,
    common_point,
    cycle_image,
    incidence_residual,
    inner_product,
    orthogonality_residual,
    proj_equal,
    projective_residual,
    reflect,
    tangency_residual,
)
from .errors import DegenerateHorocycle, DivergentConvergent
from .numeric import SQRT2, is_exact, sqrt


class ArrangementKind(enum.Enum):
    TANGENT = "tangent"
    ORTHOGONAL = "orthogonal"
    MIXED = "mixed"


@dataclass(frozen=True)
class Arrangement:
    """Which arrangement to build and its seed parameters ``(m0, k0, n0)``."""

    kind: ArrangementKind
    m0: object
    k0: object
    n0: object

    @classmethod
    def of(cls, kind, exact: bool = True) -> "Arrangement":
        kind = ArrangementKind(kind) if not isinstance(kind, ArrangementKind) else kind
        root2 = SQRT2 if exact else math.sqrt(2.0)
        if kind is ArrangementKind.TANGENT:
            return cls(kind, Fraction(2), Fraction(2), Fraction(0))
        if kind is ArrangementKind.ORTHOGONAL:
            return cls(kind, root2, root2, Fraction(0))
        return cls(kind, root2, root2, Fraction(1))

    @property
    def name(self) -> str:
        return self.kind.value


TANGENT = Arrangement.of(ArrangementKind.TANGENT)
ORTHOGONAL = Arrangement.of(ArrangementKind.ORTHOGONAL)
MIXED = Arrangement.of(ArrangementKind.MIXED)


def _as_moebius(M) -> MoebiusMat2:
    if isinstance(M, MoebiusMat2):
        return M
    if isinstance(M, Mat2Q):
        return MoebiusMat2.from_mat2q(M)
    (a, b), (c, d) = M
    return MoebiusMat2(a, b, c, d)


def horocycle_first_column(M, m) -> Cycle2:
    """``(c^2 m, a c m, delta, a^2 m)``: touches at ``a/c`` with radius ``1/(m c^2)``."""
    M = _as_moebius(M)
    if M.c == 0:
        raise DegenerateHorocycle("c = 0: the image of a horizontal line is a line")
    a, c = M.a, M.c
    return Cycle2(c * c * m, a * c * m, M.det, a * a * m)


def horocycle_second_column(M, k) -> Cycle2:
    """``(d^2 k, b d k, delta, b^2 k)``: touches at ``b/d`` with radius ``1/(k d^2)``."""
    M = _as_moebius(M)
    if M.d == 0:
        raise DegenerateHorocycle("d = 0: the image is a horizontal line")
    b, d = M.b, M.d
    return Cycle2(d * d * k, b * d * k, M.det, b * b * k)


def connecting_cycle(M, n) -> Cycle2:
    """Image of the line ``(0, 1, n, 0)``; passes through ``a/c`` and ``b/d``."""
    M = _as_moebius(M)
    a, b, c, d = M.a, M.b, M.c, M.d
    return Cycle2(2 * c * d, a * d + b * c, M.det * n, 2 * a * b)


@dataclass(frozen=True)
class ChainLink:
    index: int
    matrix: MoebiusMat2
    horo_prev: Cycle2
    horo_curr: Cycle2
    connecting: Cycle2
    mirror_connecting: Optional[Cycle2] = None

    @property
    def delta(self):
        return self.matrix.det


def build_chain(
    cf: ContinuedFraction,
    arr: Arrangement,
    count: int,
    skip_divergent: bool = False,
) -> list[ChainLink]:
    """Links 1..count of the chain for ``cf``.

    Link ``n`` uses ``M = [[1, b0], [0, 1]] @ cf_matrix(cf, n)``.  If
    ``Q_{n-1} = 0`` the previous "horocycle" is the image line of the
    horizontal family.  A vanishing ``Q_n`` raises
    :class:`DivergentConvergent` unless ``skip_divergent`` is set, in which
    case that link is left out.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    if count > len(cf.terms):
        raise ValueError(f"count={count} exceeds the {len(cf.terms)} available terms")
    M = MoebiusMat2.identity()
    if cf.integer_part is not None:
        M = MoebiusMat2(1, cf.integer_part, 0, 1)
    links = []
    for n, term in enumerate(cf.terms[:count], 1):
        M = M @ MoebiusMat2(0, term.a, 1, term.b)
        if M.d == 0:
            if skip_divergent:
                continue
            raise DivergentConvergent(n)
        if M.c == 0:
            prev = cycle_image(M, Cycle2(0, 0, 1, arr.m0))
        else:
            prev = horocycle_first_column(M, arr.m0)
        curr = horocycle_second_column(M, arr.k0)
        conn = connecting_cycle(M, arr.n0)
        mirror = reflect(conn) if arr.kind is ArrangementKind.MIXED else None
        links.append(ChainLink(n, M, prev, curr, conn, mirror))
    return links


def _horocycle_parts(prev: Cycle2):
    if prev.k == 0:
        raise DegenerateHorocycle("previous cycle is a line")
    p, n = _div(prev.l, prev.k), _div(prev.n, prev.k)
    if n == 0:
        raise DegenerateHorocycle("previous horocycle has zero radius")
    return p, n


def next_n_orthogonal(prev: Cycle2, p) -> Cycle2:
    """Horocycle ``(1, p, n, p^2)`` orthogonal to ``prev``; the condition is linear in ``n``."""
    q, n_prev = _horocycle_parts(prev)
    if p == q:
        raise DegenerateHorocycle("coincident touch points")
    n = (p - q) ** 2 / (2 * n_prev)
    return Cycle2(1, p, n, p * p)


def next_n_tangent(prev: Cycle2, p) -> Cycle2:
    """Horocycle ``(1, p, n, p^2)`` externally tangent to ``prev``.

    The tangency condition is quadratic in ``n`` (with ``n_prev`` normalised,
    ``4 - (p - p')^2 / (n n')``-type); the external root is ``(p - p')^2 / (4 n')``.
    """
    q, n_prev = _horocycle_parts(prev)
    if p == q:
        raise DegenerateHorocycle("coincident touch points")
    n = (p - q) ** 2 / (4 * n_prev)
    return Cycle2(1, p, n, p * p)


def rebuild_chain(first: Cycle2, points, orthogonal: bool = True) -> list[Cycle2]:
    """Rebuild horocycles at ``points`` starting from ``first``."""
    step = next_n_orthogonal if orthogonal else next_n_tangent
    out = [first]
    for p in points:
        out.append(step(out[-1], p))
    return out


# --- verification --------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    link: int
    name: str
    residual: float
    passed: bool

    def line(self) -> str:
        return f"link {self.link} {self.name} {self.residual:.3e} {'pass' if self.passed else 'fail'}"


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    def add(self, link: int, name: str, residual, passed: bool):
        self.checks.append(Check(link, name, float(residual), bool(passed)))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_text(self) -> str:
        return "".join(c.line() + "\n" for c in self.checks)

    def __len__(self):
        return len(self.checks)

    def __iter__(self):
        return iter(self.checks)


def _zero_check(report, link, name, value, tol):
    """Record ``value``; exact values must vanish exactly, floats within ``tol``."""
    if is_exact(value):
        report.add(link, name, abs(float(value)), value == 0)
    else:
        report.add(link, name, abs(value), abs(value) <= tol)


def _relative_dev(actual, expected):
    diff = actual - expected
    if diff == 0:
        return 0
    if is_exact(diff) and is_exact(expected):
        return abs(diff / expected)
    return abs(float(diff)) / abs(float(expected))


def _touch_point(c: Cycle2):
    return _div(c.l, c.k)


def _expected_radius(param, q):
    return 1 / (param * q * q)


def verify_chain(chain: list[ChainLink], arr: Arrangement, tol: float = 1e-12,
                 angle_tol: float = 1e-9) -> VerificationReport:
    """Check every geometric property the arrangement promises, link by link."""
    report = VerificationReport()
    for link in chain:
        n = link.index
        M = link.matrix
        a, b, c, d = M.a, M.b, M.c, M.d
        prev, curr, conn = link.horo_prev, link.horo_curr, link.connecting

        # Lemma formulas against the similarity action
        report.add(n, "lemma2-formula",
                   projective_residual(curr, cycle_image(M, Cycle2(arr.k0, 0, 1, 0))),
                   _proj_ok(curr, cycle_image(M, Cycle2(arr.k0, 0, 1, 0)), tol))
        report.add(n, "lemma3-formula",
                   projective_residual(conn, cycle_image(M, Cycle2(0, 1, arr.n0, 0))),
                   _proj_ok(conn, cycle_image(M, Cycle2(0, 1, arr.n0, 0)), tol))

        p_curr = Fraction(b) / d if is_exact(b) and is_exact(d) else b / d
        _zero_check(report, n, "touch-curr", _touch_point(curr) - p_curr, tol)
        _zero_check(report, n, "radius-curr",
                    _relative_dev(center_radius(curr).radius, _expected_radius(arr.k0, d)), tol)
        _zero_check(report, n, "incidence-curr", _inc(conn, p_curr), tol)

        if c != 0:
            report.add(n, "lemma1-formula",
                       projective_residual(prev, cycle_image(M, Cycle2(0, 0, 1, arr.m0))),
                       _proj_ok(prev, cycle_image(M, Cycle2(0, 0, 1, arr.m0)), tol))
            p_prev = Fraction(a) / c if is_exact(a) and is_exact(c) else a / c
            _zero_check(report, n, "touch-prev", _touch_point(prev) - p_prev, tol)
            _zero_check(report, n, "radius-prev",
                        _relative_dev(center_radius(prev).radius, _expected_radius(arr.m0, c)), tol)
            _zero_check(report, n, "incidence-prev", _inc(conn, p_prev), tol)
        else:
            # Q_{n-1} = 0: the previous touch point is at infinity
            report.add(n, "prev-is-line", 0.0, prev.k == 0)
            continue

        if arr.kind is ArrangementKind.TANGENT:
            _zero_check(report, n, "tangency", tangency_residual(prev, curr), tol)
        else:
            _zero_check(report, n, "orthogonality", _ortho(prev, curr), tol)

        if arr.kind in (ArrangementKind.TANGENT, ArrangementKind.ORTHOGONAL):
            _zero_check(report, n, "conn-orth-prev", _ortho(conn, prev), tol)
            _zero_check(report, n, "conn-orth-curr", _ortho(conn, curr), tol)
            _zero_check(report, n, "conn-orth-axis", _ortho(conn, REAL_AXIS), tol)
        if arr.kind is ArrangementKind.TANGENT:
            # the connecting cycle also passes the contact point of the horocycles
            _, res = common_point(prev, curr, conn)
            report.add(n, "conn-through-contact", abs(res), abs(res) <= tol)

        if arr.kind is ArrangementKind.MIXED:
            _verify_mixed(report, link, tol, angle_tol)
    return report


def _inc(cycle: Cycle2, u):
    value = cycle.evaluate(u, 0)
    if is_exact(value):
        return value
    return incidence_residual(cycle, (u, 0))


def _ortho(c1: Cycle2, c2: Cycle2):
    ip = inner_product(c1, c2)
    if is_exact(ip):
        return ip
    return orthogonality_residual(c1, c2)


def _proj_ok(c1, c2, tol):
    return proj_equal(c1, c2, tol)


def _verify_mixed(report: VerificationReport, link: ChainLink, tol: float, angle_tol: float):
    n = link.index
    conn, mirror = link.connecting, link.mirror_connecting
    M = link.matrix
    cd = abs(M.c * M.d)
    circ = center_radius(conn)
    assert isinstance(circ, Circle)
    expected = sqrt(Fraction(2)) / 2 / cd
    _zero_check(report, n, "mixed-radius", _relative_dev(circ.radius, expected), tol)
    r_prev = center_radius(link.horo_prev).radius
    r_curr = center_radius(link.horo_curr).radius
    _zero_check(report, n, "mixed-geometric-mean",
                _relative_dev(circ.radius * circ.radius, r_prev * r_curr), tol)
    # angle with the axis: cos(phi) = |height| / radius
    cos2 = (conn.n * conn.n) / conn.disc
    angle = math.acos(math.sqrt(float(cos2)))
    err = abs(angle - math.pi / 4)
    report.add(n, "mixed-angle-45", err, err <= angle_tol)
    # connecting and its mirror each pass one of the two intersection points
    w1, r1 = common_point(link.horo_prev, link.horo_curr, conn)
    w2, r2 = common_point(link.horo_prev, link.horo_curr, mirror)
    report.add(n, "conn-through-intersection", abs(r1), abs(r1) <= tol)
    report.add(n, "mirror-through-intersection", abs(r2), abs(r2) <= tol)
    # the two points differ iff w1, w2 are not proportional (exact when possible)
    report.add(n, "distinct-intersections", projective_residual(w1, w2),
               not proj_equal(w1, w2, tol=0.0))
