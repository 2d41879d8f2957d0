"""Exact continued-fraction arithmetic.

A continued fraction ``b0 + a1/(b1 + a2/(b2 + ...))`` is stored as an optional
integer part ``b0`` plus a tuple of ``(a_j, b_j)`` terms.  Convergents come
from the three-term recurrence; the term matrices ``[[0, a], [1, b]]``
multiply to a matrix whose columns are consecutive numerator/denominator
pairs.  Everything here is exact (``fractions.Fraction``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import (
    DegenerateTerm,
    DivergentConvergent,
    EvaluationZeroDivision,
    ParseError,
    TableExhausted,
)
from .numeric import parse_rational

# [3; 7, 15, 1, 292, 1, 1, 1, 2, 1, 3, 1, 14]
PI_TABLE = (3, 7, 15, 1, 292, 1, 1, 1, 2, 1, 3, 1, 14)


@dataclass(frozen=True)
class CfTerm:
    """One level ``a / (b + ...)`` of a continued fraction."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.a == 0:
            raise DegenerateTerm("partial numerator a must be nonzero")


@dataclass(frozen=True)
class ContinuedFraction:
    integer_part: Fraction | None = None
    terms: tuple[CfTerm, ...] = ()

    def __post_init__(self):
        if self.integer_part is not None:
            object.__setattr__(self, "integer_part", Fraction(self.integer_part))
        object.__setattr__(self, "terms", tuple(self.terms))

    @classmethod
    def simple(cls, b0, partial_denominators: Iterable) -> "ContinuedFraction":
        """``[b0; b1, b2, ...]`` with every partial numerator equal to 1."""
        return cls(b0, tuple(CfTerm(1, b) for b in partial_denominators))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple], b0=None) -> "ContinuedFraction":
        return cls(b0, tuple(CfTerm(a, b) for a, b in pairs))

    def __len__(self):
        return len(self.terms)

    @property
    def offset(self) -> Fraction:
        return self.integer_part if self.integer_part is not None else Fraction(0)

    def truncated(self, n: int) -> "ContinuedFraction":
        return ContinuedFraction(self.integer_part, self.terms[:n])

    def __str__(self):
        head = "" if self.integer_part is None else str(self.integer_part)
        if all(t.a == 1 for t in self.terms):
            body = ", ".join(str(t.b) for t in self.terms)
        else:
            body = ", ".join(f"{t.a}|{t.b}" for t in self.terms)
        return f"[{head}; {body}]"


@dataclass(frozen=True)
class ConvergentState:
    """Two consecutive numerator/denominator pairs and the current index.

    The initial state holds ``(P_-1, Q_-1) = (1, 0)`` and ``(P_0, Q_0) = (0, 1)``,
    i.e. the columns of the identity matrix.
    """

    p_prev: Fraction = Fraction(1)
    p_curr: Fraction = Fraction(0)
    q_prev: Fraction = Fraction(0)
    q_curr: Fraction = Fraction(1)
    index: int = 0

    @property
    def determinant(self) -> Fraction:
        return self.p_prev * self.q_curr - self.p_curr * self.q_prev

    @property
    def value(self) -> Fraction:
        if self.q_curr == 0:
            raise DivergentConvergent(self.index)
        return self.p_curr / self.q_curr


def convergent_step(state: ConvergentState, term: CfTerm) -> ConvergentState:
    if term.a == 0:
        raise DegenerateTerm("partial numerator a must be nonzero")
    return ConvergentState(
        p_prev=state.p_curr,
        p_curr=term.b * state.p_curr + term.a * state.p_prev,
        q_prev=state.q_curr,
        q_curr=term.b * state.q_curr + term.a * state.q_prev,
        index=state.index + 1,
    )


def iter_states(cf: ContinuedFraction) -> Iterator[ConvergentState]:
    """Yield the states after 1, 2, ... terms."""
    state = ConvergentState()
    for term in cf.terms:
        state = convergent_step(state, term)
        yield state


def convergents(cf: ContinuedFraction, count: int) -> list[Fraction]:
    """The first ``count`` convergents ``b0 + P_n/Q_n``, n = 1..count.

    Raises :class:`DivergentConvergent` at the first vanishing ``Q_n``.
    """
    if count > len(cf.terms):
        raise ValueError(f"requested {count} convergents from {len(cf.terms)} terms")
    out = []
    for state in itertools.islice(iter_states(cf), count):
        out.append(cf.offset + state.value)
    return out


def convergents_or_none(cf: ContinuedFraction, count: int) -> list[Fraction | None]:
    """Like :func:`convergents` but with ``None`` in place of infinite convergents."""
    if count > len(cf.terms):
        raise ValueError(f"requested {count} convergents from {len(cf.terms)} terms")
    out = []
    for state in itertools.islice(iter_states(cf), count):
        out.append(None if state.q_curr == 0 else cf.offset + state.p_curr / state.q_curr)
    return out


@dataclass(frozen=True)
class Mat2Q:
    """Exact 2x2 matrix ``[[a, b], [c, d]]``."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    @classmethod
    def identity(cls) -> "Mat2Q":
        return cls(Fraction(1), Fraction(0), Fraction(0), Fraction(1))

    @classmethod
    def term(cls, t: CfTerm) -> "Mat2Q":
        return cls(Fraction(0), t.a, Fraction(1), t.b)

    @classmethod
    def translation(cls, b0) -> "Mat2Q":
        return cls(Fraction(1), Fraction(b0), Fraction(0), Fraction(1))

    def __matmul__(self, o: "Mat2Q") -> "Mat2Q":
        return Mat2Q(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def columns(self):
        return (self.a, self.c), (self.b, self.d)

    def entries(self):
        return self.a, self.b, self.c, self.d


def cf_matrix(cf: ContinuedFraction, n: int, include_integer_part: bool = False) -> Mat2Q:
    """Product of the first ``n`` term matrices ``[[0, a_j], [1, b_j]]``.

    With ``include_integer_part`` the translation ``[[1, b0], [0, 1]]`` is
    multiplied on the left.
    """
    if n > len(cf.terms):
        raise ValueError(f"n={n} exceeds the {len(cf.terms)} available terms")
    m = Mat2Q.identity()
    if include_integer_part and cf.integer_part is not None:
        m = Mat2Q.translation(cf.integer_part)
    for t in cf.terms[:n]:
        m = m @ Mat2Q.term(t)
    return m


def evaluate_oracle(cf: ContinuedFraction, n: int) -> Fraction:
    """Evaluate the truncated fraction from the innermost level outwards.

    Independent of the recurrence; used to cross-check :func:`convergents`.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > len(cf.terms):
        raise ValueError(f"n={n} exceeds the {len(cf.terms)} available terms")
    tail = Fraction(0)
    for t in reversed(cf.terms[:n]):
        den = t.b + tail
        if den == 0:
            raise EvaluationZeroDivision("intermediate denominator vanished")
        tail = t.a / den
    return cf.offset + tail


def expand_real(x) -> ContinuedFraction:
    """Simple continued fraction of a rational number (Euclid's algorithm)."""
    x = Fraction(x)
    p, q = x.numerator, x.denominator
    b0, r = divmod(p, q)
    terms = []
    p, q = q, r
    while q:
        b, r = divmod(p, q)
        terms.append(CfTerm(1, b))
        p, q = q, r
    return ContinuedFraction(Fraction(b0), tuple(terms))


def e_partial_denominators() -> Iterator[int]:
    """1, 2, 1, 1, 4, 1, 1, 6, 1, ... (blocks ``1, 2k, 1``)."""
    for k in itertools.count(1):
        yield 1
        yield 2 * k
        yield 1


def coefficient_source(name: str, count: int) -> ContinuedFraction:
    """The simple continued fraction of ``e`` or ``pi`` truncated to ``count`` terms."""
    key = name.strip().lower()
    if count < 0:
        raise ValueError("count must be nonnegative")
    if key == "e":
        return ContinuedFraction.simple(2, itertools.islice(e_partial_denominators(), count))
    if key == "pi":
        available = len(PI_TABLE) - 1
        if count > available:
            raise TableExhausted(f"only {available} terms of pi are stored, {count} requested")
        return ContinuedFraction.simple(PI_TABLE[0], PI_TABLE[1 : count + 1])
    raise ValueError(f"unknown coefficient source {name!r}")


def parse_cf(text: str) -> ContinuedFraction:
    """Parse the line format: optional ``b0 <rational>``, then ``<a> <b>`` per line."""
    b0 = None
    terms = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "b0":
            if b0 is not None or terms or len(parts) != 2:
                raise ParseError(f"line {lineno}: misplaced or malformed b0 line")
            b0 = parse_rational(parts[1])
            continue
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected '<a> <b>', got {line!r}")
        a, b = (parse_rational(s) for s in parts)
        try:
            terms.append(CfTerm(a, b))
        except DegenerateTerm as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    return ContinuedFraction(b0, tuple(terms))


def format_cf(cf: ContinuedFraction) -> str:
    lines = []
    if cf.integer_part is not None:
        lines.append(f"b0 {cf.integer_part}")
    lines.extend(f"{t.a} {t.b}" for t in cf.terms)
    return "\n".join(lines) + "\n"
