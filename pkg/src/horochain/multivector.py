"""Dense multivectors of the Clifford algebra Cl(dim) with ``e_i^2 = -1``.

Blade ``e_{i1} e_{i2} ... `` (i1 < i2 < ...) is stored at the bitmask index
``sum(1 << (i - 1))``.  Because the index of a blade does not depend on
``dim``, lifting an element into a larger algebra is zero padding.
Coefficients may be any numbers closed under ``+``, ``-`` and ``*``
(``int``, ``Fraction``, :class:`~horochain.numeric.QSqrt2`, ``float``).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

MAX_DIM = 8


def _popcount(x: int) -> int:
    return bin(x).count("1")


@lru_cache(maxsize=None)
def _blade_sign(a: int, b: int) -> int:
    """Sign of ``e_A e_B`` relative to the blade ``e_{A xor B}``."""
    swaps = 0
    t = a >> 1
    while t:
        swaps += _popcount(t & b)
        t >>= 1
    # each shared generator contributes e_i^2 = -1
    swaps += _popcount(a & b)
    return -1 if swaps & 1 else 1


def blade_name(mask: int) -> str:
    if mask == 0:
        return "1"
    return "".join(f"e{i + 1}" for i in range(mask.bit_length()) if mask >> i & 1)


def _blade_key(mask: int):
    # grade first, then lexicographic in the generator indices
    return (_popcount(mask), [i for i in range(mask.bit_length()) if mask >> i & 1])


def _is_zero(x) -> bool:
    return x == 0


class Multivector:
    __slots__ = ("dim", "coeffs")

    def __init__(self, dim: int, coeffs):
        if not 0 <= dim <= MAX_DIM:
            raise ValueError(f"dimension must lie in 0..{MAX_DIM}, got {dim}")
        coeffs = tuple(coeffs)
        if len(coeffs) != 1 << dim:
            raise ValueError(f"Cl({dim}) needs {1 << dim} coefficients, got {len(coeffs)}")
        self.dim = dim
        self.coeffs = coeffs

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, dim: int) -> "Multivector":
        return cls(dim, (0,) * (1 << dim))

    @classmethod
    def scalar(cls, dim: int, value) -> "Multivector":
        c = [0] * (1 << dim)
        c[0] = value
        return cls(dim, c)

    @classmethod
    def blade(cls, dim: int, mask: int, value=1) -> "Multivector":
        if mask >> dim:
            raise ValueError(f"blade {blade_name(mask)} is outside Cl({dim})")
        c = [0] * (1 << dim)
        c[mask] = value
        return cls(dim, c)

    @classmethod
    def basis(cls, dim: int, i: int) -> "Multivector":
        """The generator ``e_i`` (1-based)."""
        if not 1 <= i <= dim:
            raise ValueError(f"e{i} is not a generator of Cl({dim})")
        return cls.blade(dim, 1 << (i - 1))

    @classmethod
    def vector(cls, dim: int, components) -> "Multivector":
        """``sum x_i e_i`` from the list ``components`` (padded with zeros)."""
        components = list(components)
        if len(components) > dim:
            raise ValueError(f"{len(components)} components do not fit in Cl({dim})")
        c = [0] * (1 << dim)
        for i, x in enumerate(components):
            c[1 << i] = x
        return cls(dim, c)

    # inspection ---------------------------------------------------------
    def items(self):
        """Nonzero ``(mask, coeff)`` pairs in canonical blade order."""
        masks = sorted((m for m, x in enumerate(self.coeffs) if not _is_zero(x)), key=_blade_key)
        return [(m, self.coeffs[m]) for m in masks]

    def __getitem__(self, mask: int):
        return self.coeffs[mask]

    def component(self, i: int):
        """Coefficient of the generator ``e_i``."""
        mask = 1 << (i - 1)
        return self.coeffs[mask] if mask < len(self.coeffs) else 0

    def vector_components(self) -> list:
        return [self.coeffs[1 << i] for i in range(self.dim)]

    def grades(self) -> set[int]:
        return {_popcount(m) for m, x in enumerate(self.coeffs) if not _is_zero(x)}

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(_is_zero(x) if tol == 0 else abs(x) <= tol for x in self.coeffs)

    def max_abs(self) -> float:
        return max((abs(float(x)) for x in self.coeffs), default=0.0)

    def off_grade_norm(self, keep) -> float:
        """Largest |coefficient| on blades whose grade is not in ``keep``."""
        keep = set(keep)
        return max(
            (abs(float(x)) for m, x in enumerate(self.coeffs) if _popcount(m) not in keep),
            default=0.0,
        )

    def is_grade(self, g: int, tol: float = 0.0) -> bool:
        """True when every component outside grade ``g`` vanishes (zero counts)."""
        for m, x in enumerate(self.coeffs):
            if _popcount(m) != g and not (_is_zero(x) if tol == 0 else abs(x) <= tol):
                return False
        return True

    def is_scalar(self, tol: float = 0.0) -> bool:
        return self.is_grade(0, tol)

    def is_vector(self, tol: float = 0.0) -> bool:
        return self.is_grade(1, tol)

    def parity(self):
        """0 for even, 1 for odd, ``None`` for mixed parity or zero."""
        ps = {g & 1 for g in self.grades()}
        return ps.pop() if len(ps) == 1 else None

    def uses_generator(self, i: int) -> bool:
        bit = 1 << (i - 1)
        return any(m & bit and not _is_zero(x) for m, x in enumerate(self.coeffs))

    # algebra ------------------------------------------------------------
    def _check(self, other: "Multivector"):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: Cl({self.dim}) vs Cl({other.dim})")

    def __add__(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            return Multivector(self.dim, (x + y for x, y in zip(self.coeffs, other.coeffs)))
        return self + Multivector.scalar(self.dim, other)

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.dim, (-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "Multivector":
        return Multivector(self.dim, (x * s for x in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return gp(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, s):
        if isinstance(s, Multivector):
            raise TypeError("divide by a multivector via an explicit inverse")
        if isinstance(s, int):
            s = Fraction(s)
        return Multivector(self.dim, (x / s for x in self.coeffs))

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.dim == other.dim and all(x == y for x, y in zip(self.coeffs, other.coeffs))
        if isinstance(other, (int, float, Fraction)):
            return self == Multivector.scalar(self.dim, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.dim, self.coeffs))

    def __repr__(self):
        return f"Multivector({self.dim}, {str(self)!r})"

    def __str__(self):
        return format_multivector(self)

    def reverse(self) -> "Multivector":
        return reverse(self)

    def conjugate(self) -> "Multivector":
        return conjugate(self)

    def involute(self) -> "Multivector":
        return involute(self)

    def scalar_part(self):
        return self.coeffs[0]

    def grade(self, g: int) -> "Multivector":
        return grade(self, g)

    def lift(self, dim: int) -> "Multivector":
        return lift(self, dim)

    def norm2(self):
        return norm2(self)

    def to_float(self) -> "Multivector":
        return Multivector(self.dim, (float(x) for x in self.coeffs))


def gp(x: Multivector, y: Multivector) -> Multivector:
    """Geometric product."""
    x._check(y)
    out = [0] * (1 << x.dim)
    ys = [(m, v) for m, v in enumerate(y.coeffs) if not _is_zero(v)]
    for a, xa in enumerate(x.coeffs):
        if _is_zero(xa):
            continue
        for b, yb in ys:
            term = xa * yb
            out[a ^ b] = out[a ^ b] + (term if _blade_sign(a, b) > 0 else -term)
    return Multivector(x.dim, out)


def _grade_map(x: Multivector, negate) -> Multivector:
    return Multivector(
        x.dim, (-c if negate(_popcount(m)) else c for m, c in enumerate(x.coeffs))
    )


def reverse(x: Multivector) -> Multivector:
    """Anti-automorphism fixing vectors: grades 2, 3 (mod 4) change sign."""
    return _grade_map(x, lambda g: g % 4 in (2, 3))


def conjugate(x: Multivector) -> Multivector:
    """Anti-automorphism negating vectors: grades 1, 2 (mod 4) change sign."""
    return _grade_map(x, lambda g: g % 4 in (1, 2))


def involute(x: Multivector) -> Multivector:
    """Grade involution (odd grades change sign)."""
    return _grade_map(x, lambda g: g & 1)


def scalar_part(x: Multivector):
    return x.coeffs[0]


def grade(x: Multivector, g: int) -> Multivector:
    return Multivector(x.dim, (c if _popcount(m) == g else 0 for m, c in enumerate(x.coeffs)))


def lift(x: Multivector, dim: int) -> Multivector:
    """Embed ``x`` into Cl(dim), dim >= x.dim."""
    if dim < x.dim:
        raise ValueError(f"cannot lift Cl({x.dim}) into Cl({dim})")
    return Multivector(dim, x.coeffs + (0,) * ((1 << dim) - len(x.coeffs)))


def norm2(x: Multivector):
    """Sum of squared coefficients; equals ``x * conjugate(x)`` for products of vectors."""
    total = 0
    for c in x.coeffs:
        if not _is_zero(c):
            total = total + c * c
    return total


def dot(x: Multivector, y: Multivector):
    """Euclidean inner product of the vector parts."""
    x._check(y)
    total = 0
    for i in range(x.dim):
        total = total + x.coeffs[1 << i] * y.coeffs[1 << i]
    return total


def vector_inverse(x: Multivector) -> Multivector:
    if not x.is_vector():
        raise ValueError("vector_inverse needs a grade-1 element")
    n = norm2(x)
    if n == 0:
        raise ZeroDivisionError("zero vector has no inverse")
    return conjugate(x) / n


def versor_inverse(x: Multivector, tol: float = 0.0) -> Multivector:
    """Inverse ``conj(x) / (x conj(x))`` of an element whose norm ``x conj(x)`` is scalar."""
    xc = conjugate(x)
    n = gp(x, xc)
    if not n.is_scalar(tol * max(1.0, n.max_abs()) if tol else 0.0):
        raise ValueError("element is not invertible as a versor (x*conj(x) is not scalar)")
    s = n.coeffs[0]
    if s == 0 or (tol and abs(float(s)) <= tol):
        raise ZeroDivisionError("element has zero norm")
    return xc / s


def format_coeff(c) -> str:
    if isinstance(c, float):
        return repr(c)
    return str(c)


def format_multivector(x: Multivector) -> str:
    """``2 + -1/3*e1 + 1*e1e3``; the zero element prints as ``0``."""
    parts = []
    for mask, c in x.items():
        parts.append(format_coeff(c) if mask == 0 else f"{format_coeff(c)}*{blade_name(mask)}")
    return " + ".join(parts) if parts else "0"


def _parse_blade(name: str) -> int:
    import re

    if not re.fullmatch(r"(e\d+)+", name):
        raise ValueError(f"bad blade {name!r}")
    idx = [int(t) for t in re.findall(r"e(\d+)", name)]
    if any(i < 1 for i in idx) or idx != sorted(set(idx)):
        raise ValueError(f"blade {name!r} must list distinct generators in increasing order")
    return sum(1 << (i - 1) for i in idx)


def parse_multivector(text: str, dim: int) -> Multivector:
    """Inverse of :func:`format_multivector` for rational coefficients."""
    from .errors import ParseError
    from .numeric import parse_rational

    c = [0] * (1 << dim)
    text = text.strip()
    if text == "0":
        return Multivector(dim, c)
    for term in text.split(" + "):
        coeff, _, blade = term.strip().partition("*")
        try:
            mask = _parse_blade(blade) if blade else 0
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
        if mask >> dim:
            raise ParseError(f"blade {blade} is outside Cl({dim})")
        c[mask] = c[mask] + parse_rational(coeff)
    return Multivector(dim, c)
