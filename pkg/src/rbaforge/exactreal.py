"""Exact arithmetic in the ring of rational combinations of square roots.

Every scalar handled by the package is a :class:`RadicalNumber`, a finite sum
``q_1*sqrt(r_1) + ... + q_k*sqrt(r_k)`` with rational ``q_i`` and distinct
square-free positive integers ``r_i``.  Square roots of distinct square-free
integers are linearly independent over the rationals, so the sorted term tuple
is a canonical form and equality is structural.
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from numbers import Rational
from typing import Iterable, Mapping, Union

__all__ = [
    "RadicalNumber",
    "FactorBoundError",
    "Scalar",
    "as_radical",
    "factor_bound",
    "normalize_root",
    "prime_factors",
    "sqrt",
    "squarefree_decompose",
]

DEFAULT_FACTOR_BOUND = 10**6
FACTOR_BOUND_ENV = "RBA_FORGE_FACTOR_BOUND"

Scalar = Union["RadicalNumber", int, Fraction]


class FactorBoundError(ArithmeticError):
    """Trial division hit the configured bound before finishing."""


def factor_bound() -> int:
    raw = os.environ.get(FACTOR_BOUND_ENV)
    return int(raw) if raw else DEFAULT_FACTOR_BOUND


@lru_cache(maxsize=65536)
def _factor(n: int, bound: int) -> tuple[tuple[int, int], ...]:
    out = []
    p = 2
    while p * p <= n:
        if p > bound:
            raise FactorBoundError(f"cannot factor {n}: no factor found below bound {bound}")
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_factors(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of ``n >= 1`` as ``((p, e), ...)``."""
    if n < 1:
        raise ValueError("prime_factors expects a positive integer")
    return _factor(n, factor_bound())


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(s, r)`` with ``n == s*s*r`` and ``r`` square-free."""
    s, r = 1, 1
    for p, e in prime_factors(n):
        s *= p ** (e // 2)
        if e % 2:
            r *= p
    return s, r


def normalize_root(q) -> tuple[Fraction, int]:
    """Write ``sqrt(q)`` as ``coeff * sqrt(radicand)`` with a square-free radicand.

    >>> normalize_root(2700)
    (Fraction(30, 1), 3)
    """
    q = Fraction(q)
    if q < 0:
        raise ValueError(f"square root of negative number {q}")
    if q == 0:
        return Fraction(0), 1
    # sqrt(p/d) = sqrt(p*d)/d
    s, r = squarefree_decompose(q.numerator * q.denominator)
    return Fraction(s, q.denominator), r


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class RadicalNumber:
    """Immutable element of Q[sqrt(2), sqrt(3), sqrt(5), ...].

    Construct from a rational (``RadicalNumber(3)``, ``RadicalNumber(Fraction(1, 2))``)
    or from a mapping ``{radicand: coefficient}`` whose radicands are square-free.
    Use :func:`sqrt` to build square roots of arbitrary non-negative rationals.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, value: Union[int, Fraction, Mapping[int, Fraction], "RadicalNumber"] = 0):
        if isinstance(value, RadicalNumber):
            terms = value._terms
        elif isinstance(value, Mapping):
            items = []
            for rad, coeff in value.items():
                coeff = Fraction(coeff)
                if rad < 1:
                    raise ValueError(f"radicand must be positive, got {rad}")
                if coeff:
                    items.append((int(rad), coeff))
            items.sort()
            for rad, _ in items:
                if rad > 1 and squarefree_decompose(rad)[0] != 1:
                    raise ValueError(f"radicand {rad} is not square-free")
            terms = tuple(items)
        else:
            q = Fraction(value)
            terms = ((1, q),) if q else ()
        self._terms = terms
        self._hash = None

    @classmethod
    def _raw(cls, terms: tuple[tuple[int, Fraction], ...]) -> "RadicalNumber":
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def _from_dict(cls, acc: dict[int, Fraction]) -> "RadicalNumber":
        return cls._raw(tuple(sorted((r, c) for r, c in acc.items() if c)))

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[int, Fraction], ...]:
        """Canonical ``((radicand, coefficient), ...)`` sorted by radicand."""
        return self._terms

    def coefficient(self, radicand: int) -> Fraction:
        for r, c in self._terms:
            if r == radicand:
                return c
        return Fraction(0)

    def radicands(self) -> frozenset[int]:
        return frozenset(r for r, _ in self._terms)

    def is_rational(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 1)

    def is_integer(self) -> bool:
        return self.is_rational() and self.rational_part().denominator == 1

    def rational_part(self) -> Fraction:
        return self.coefficient(1)

    def denominator_lcm(self) -> int:
        out = 1
        for _, c in self._terms:
            out = _lcm(out, c.denominator)
        return out

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.rational_part()

    # -- ring operations ----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for r, c in other._terms:
            acc[r] = acc.get(r, 0) + c
        return RadicalNumber._from_dict(acc)

    __radd__ = __add__

    def __neg__(self):
        return RadicalNumber._raw(tuple((r, -c) for r, c in self._terms))

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(b) == 1 and b[0][0] == 1:
            k = b[0][1]
            return RadicalNumber._raw(tuple((r, c * k) for r, c in a))
        if len(a) == 1 and a[0][0] == 1:
            k = a[0][1]
            return RadicalNumber._raw(tuple((r, c * k) for r, c in b))
        acc: dict[int, Fraction] = {}
        for r1, c1 in a:
            for r2, c2 in b:
                # both square-free: r1*r2 = g^2 * (r1/g)*(r2/g) with the cofactor square-free
                g = gcd(r1, r2)
                r = (r1 // g) * (r2 // g)
                acc[r] = acc.get(r, 0) + c1 * c2 * g
        return RadicalNumber._from_dict(acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, p: int) -> "RadicalNumber":
        """Apply the field automorphism sending ``sqrt(p)`` to ``-sqrt(p)``."""
        return RadicalNumber._raw(tuple((r, -c if r % p == 0 else c) for r, c in self._terms))

    def primes(self) -> list[int]:
        ps: set[int] = set()
        for r, _ in self._terms:
            if r > 1:
                ps.update(p for p, _ in prime_factors(r))
        return sorted(ps)

    def inverse(self) -> "RadicalNumber":
        """Multiplicative inverse, rationalised through Galois conjugates."""
        if not self._terms:
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return RadicalNumber._raw(((1, 1 / self._terms[0][1]),))
        numer = ONE
        denom = self
        for p in self.primes():
            conj = denom.conjugate(p)
            numer = numer * conj
            denom = denom * conj
        # denom is now fixed by every conjugation, hence rational
        assert denom.is_rational(), denom
        return numer * (1 / denom.rational_part())

    # -- order --------------------------------------------------------------

    def enclosure(self, bits: int) -> tuple[Fraction, Fraction]:
        """Rational interval ``[lo, hi]`` containing the value, width ``O(2**-bits)``."""
        lo = hi = Fraction(0)
        scale = 1 << bits
        for r, c in self._terms:
            if r == 1:
                lo += c
                hi += c
                continue
            s = isqrt(r * scale * scale)
            a, b = Fraction(s, scale), Fraction(s + 1, scale)
            if c > 0:
                lo += c * a
                hi += c * b
            else:
                lo += c * b
                hi += c * a
        return lo, hi

    def sign(self) -> int:
        if not self._terms:
            return 0
        if self.is_rational():
            return 1 if self._terms[0][1] > 0 else -1
        if len(self._terms) == 1:
            return 1 if self._terms[0][1] > 0 else -1
        bits = 16
        # terminates: a nonzero canonical form has a nonzero real value
        while True:
            lo, hi = self.enclosure(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).sign() < 0

    def __le__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).sign() <= 0

    def __gt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).sign() > 0

    def __ge__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- identity -----------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.rational_part())
            else:
                self._hash = hash(self._terms)
        return self._hash

    # -- rendering ----------------------------------------------------------

    def __float__(self) -> float:
        lo, hi = self.enclosure(64)
        return float((lo + hi) / 2)

    def to_decimal(self, digits: int = 10) -> str:
        """Correctly rounded decimal string with ``digits`` places after the point."""
        if digits < 1:
            raise ValueError("digits must be >= 1")
        if self.is_rational():
            return _fmt(_round_scaled(self.rational_part(), digits), digits)
        bits = 4 * digits + 16
        # irrational values never sit on a rounding tie, so the bounds eventually agree
        while True:
            lo, hi = self.enclosure(bits)
            a, b = _round_scaled(lo, digits), _round_scaled(hi, digits)
            if a == b:
                return _fmt(a, digits)
            bits *= 2

    def __repr__(self) -> str:
        return f"RadicalNumber({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for r, c in self._terms:
            if r == 1:
                body = str(abs(c))
            elif abs(c) == 1:
                body = f"sqrt({r})"
            else:
                body = f"{abs(c)}*sqrt({r})"
            parts.append(("-" if c < 0 else "+", body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for s, body in parts[1:]:
            out += f" {s} {body}"
        return out

    # -- serialisation ------------------------------------------------------

    def to_json(self) -> list[dict]:
        return [{"num": c.numerator, "den": c.denominator, "rad": r} for r, c in self._terms]

    @classmethod
    def from_json(cls, data) -> "RadicalNumber":
        if isinstance(data, (int, str)):
            return cls(Fraction(data))
        acc: dict[int, Fraction] = {}
        for term in data:
            rad = int(term.get("rad", 1))
            coeff = Fraction(int(term["num"]), int(term.get("den", 1)))
            s, r = squarefree_decompose(rad)
            acc[r] = acc.get(r, 0) + coeff * s
        return cls._from_dict(acc)


def _round_scaled(q: Fraction, digits: int) -> int:
    """``q * 10**digits`` rounded half-to-even."""
    return round(q * 10**digits)


def _fmt(units: int, digits: int) -> str:
    sign = "-" if units < 0 else ""
    whole, frac = divmod(abs(units), 10**digits)
    return f"{sign}{whole}.{str(frac).zfill(digits)}"


ZERO = RadicalNumber._raw(())
ONE = RadicalNumber._raw(((1, Fraction(1)),))


def _coerce(x):
    if isinstance(x, RadicalNumber):
        return x
    if isinstance(x, (int, Fraction, Rational)):
        return RadicalNumber(Fraction(x))
    return NotImplemented


def as_radical(x) -> RadicalNumber:
    """Coerce ints, fractions, strings like ``"3/2"`` and radicals to :class:`RadicalNumber`."""
    if isinstance(x, RadicalNumber):
        return x
    if isinstance(x, str):
        return RadicalNumber(Fraction(x))
    y = _coerce(x)
    if y is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to RadicalNumber")
    return y


def sqrt(q) -> RadicalNumber:
    """Exact square root of a non-negative rational."""
    if isinstance(q, RadicalNumber):
        q = q.to_fraction()
    coeff, rad = normalize_root(q)
    if not coeff:
        return ZERO
    return RadicalNumber._raw(((rad, coeff),))


def radical_sum(values: Iterable[RadicalNumber]) -> RadicalNumber:
    acc: dict[int, Fraction] = {}
    for v in values:
        for r, c in v._terms:
            acc[r] = acc.get(r, 0) + c
    return RadicalNumber._from_dict(acc)
