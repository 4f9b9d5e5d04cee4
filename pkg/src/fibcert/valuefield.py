"""Exact arithmetic in the real field Q(sqrt p_1, ..., sqrt p_k).

Character values live in the Q-vector space spanned by 1 and the square
roots of the first k primes (k = 3 by default, basis 1, sqrt 2, sqrt 3,
sqrt 5).  Elements are rational coordinate vectors over that basis.  The
basis is linearly independent over Q, so an element is zero exactly when
all coordinates vanish; the sign of a nonzero element is decided by
interval refinement with exact rational endpoints (integer square roots
at doubling precision).  No floating point is involved anywhere.

Only the operations the valuation calculus needs are provided: addition,
subtraction, rational scaling, and comparison.  Products of two irrational
elements are never formed (sqrt 2 * sqrt 3 would leave the space).

PLUS_INFINITY is the extended value used for valuations of zero; it
absorbs addition and compares above every field element.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

DEFAULT_PRIMES = (2, 3, 5)

_ZERO = Fraction(0)


class Infinity:
    """Positive infinity for extended valuations. Singleton PLUS_INFINITY."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "+inf"

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, Infinity):
            return self
        if _rational_sign(other) <= 0:
            raise ValueError("infinity may only be scaled by positive rationals")
        return self

    __rmul__ = __mul__

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("fibcert-plus-infinity")


PLUS_INFINITY = Infinity()


def _rational_sign(q) -> int:
    if q > 0:
        return 1
    if q < 0:
        return -1
    return 0


def _sqrt_interval(p: int, prec: int) -> tuple[Fraction, Fraction]:
    """Enclosure of sqrt(p) with width 2^-prec and exact rational endpoints."""
    scale = 1 << prec
    lo = isqrt(p * scale * scale)
    return Fraction(lo, scale), Fraction(lo + 1, scale)


@dataclass(frozen=True)
class FieldElement:
    """One element of Q(sqrt p_1, ..., sqrt p_k) as a coordinate vector.

    coords[0] is the rational part; coords[i] multiplies sqrt(primes[i-1]).
    """

    coords: tuple[Fraction, ...]
    primes: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != len(self.primes) + 1:
            raise ValueError("coordinate vector length must be number of primes + 1")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    @property
    def rational_part(self) -> Fraction:
        return self.coords[0]

    def sign(self) -> int:
        """Exact sign in {-1, 0, 1}, decided by interval refinement."""
        if self.is_zero():
            return 0
        if self.is_rational():
            return _rational_sign(self.coords[0])
        prec = 32
        while True:
            lo = hi = self.coords[0]
            for c, p in zip(self.coords[1:], self.primes):
                if c == 0:
                    continue
                slo, shi = _sqrt_interval(p, prec)
                if c > 0:
                    lo += c * slo
                    hi += c * shi
                else:
                    lo += c * shi
                    hi += c * slo
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            # The element is provably nonzero (independent basis), so the
            # enclosure separates from 0 after finitely many refinements.
            prec *= 2

    def __add__(self, other):
        if isinstance(other, Infinity):
            return other
        self._check(other)
        return FieldElement(
            tuple(a + b for a, b in zip(self.coords, other.coords)), self.primes
        )

    def __sub__(self, other):
        self._check(other)
        return FieldElement(
            tuple(a - b for a, b in zip(self.coords, other.coords)), self.primes
        )

    def __neg__(self):
        return FieldElement(tuple(-a for a in self.coords), self.primes)

    def scale(self, q) -> "FieldElement":
        q = Fraction(q)
        return FieldElement(tuple(q * a for a in self.coords), self.primes)

    def __abs__(self):
        return self if self.sign() >= 0 else -self

    def _check(self, other):
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.primes != self.primes:
            raise ValueError("elements belong to different value fields")

    def __lt__(self, other):
        if isinstance(other, Infinity):
            return True
        return (self - other).sign() < 0

    def __le__(self, other):
        if isinstance(other, Infinity):
            return True
        return (self - other).sign() <= 0

    def __gt__(self, other):
        if isinstance(other, Infinity):
            return False
        return (self - other).sign() > 0

    def __ge__(self, other):
        if isinstance(other, Infinity):
            return False
        return (self - other).sign() >= 0

    def __repr__(self):
        parts = []
        if self.coords[0] != 0 or self.is_zero():
            parts.append(str(self.coords[0]))
        for c, p in zip(self.coords[1:], self.primes):
            if c != 0:
                parts.append(f"{c}*sqrt({p})")
        return " + ".join(parts)


class ValueField:
    """The field Q(sqrt p_1, ..., sqrt p_k) with its fixed prime basis.

    Factory for FieldElement values sharing one basis. dimension is the
    Q-dimension of the spanned coordinate space, k + 1.
    """

    def __init__(self, primes: tuple[int, ...] = DEFAULT_PRIMES):
        primes = tuple(int(p) for p in primes)
        if len(set(primes)) != len(primes):
            raise ValueError("basis primes must be distinct")
        self.primes = primes

    @property
    def dimension(self) -> int:
        return len(self.primes) + 1

    def element(self, coords) -> FieldElement:
        return FieldElement(tuple(Fraction(c) for c in coords), self.primes)

    def rational(self, q) -> FieldElement:
        coords = [Fraction(q)] + [_ZERO] * len(self.primes)
        return FieldElement(tuple(coords), self.primes)

    def zero(self) -> FieldElement:
        return self.rational(0)

    def sqrt_basis(self, p: int) -> FieldElement:
        """The basis element sqrt(p) itself."""
        i = self.primes.index(p)
        coords = [_ZERO] * self.dimension
        coords[i + 1] = Fraction(1)
        return FieldElement(tuple(coords), self.primes)

    def __eq__(self, other):
        return isinstance(other, ValueField) and other.primes == self.primes

    def __hash__(self):
        return hash(self.primes)

    def __repr__(self):
        return f"ValueField(primes={self.primes})"


DEFAULT_FIELD = ValueField(DEFAULT_PRIMES)


def value_min(values):
    """Minimum of an iterable of FieldElement / PLUS_INFINITY values.

    Returns PLUS_INFINITY for an empty iterable, matching the convention
    phi(0) = +inf for valuations of the zero element.
    """
    best = PLUS_INFINITY
    for v in values:
        if best is PLUS_INFINITY:
            best = v
        elif v is not PLUS_INFINITY and v < best:
            best = v
    return best
