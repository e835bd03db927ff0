"""Exact rationals and sums of square roots.

Rationals are :class:`fractions.Fraction`.  A :class:`RadicalScalar` is a
finite sum ``q_1*sqrt(d_1) + ... + q_m*sqrt(d_m)`` with rational ``q_i`` and
distinct squarefree positive integers ``d_i``.  Because square roots of
distinct squarefree integers are linearly independent over the rationals, the
term map is a canonical form and equality/zero tests are structural.
"""
from __future__ import annotations

import logging
import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC

log = logging.getLogger(__name__)

FACTOR_BOUND = 10**6
SIGN_START_BITS = 64
SIGN_MAX_ROUNDS = 16


class PrecisionExhausted(ArithmeticError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


@lru_cache(maxsize=8)
def _primes_upto(n: int) -> tuple[int, ...]:
    if n < 2:
        return ()
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _icbrt(n: int) -> int:
    r = round(n ** (1 / 3)) if n < 2**900 else 1 << (n.bit_length() // 3)
    while r**3 > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


@lru_cache(maxsize=65536)
def squarefree_split(m: int, factor_bound: int = FACTOR_BOUND) -> tuple[int, int]:
    """Return ``(s, f)`` with ``m == s*s*f`` and ``f`` squarefree.

    Trial division runs over primes up to ``min(cbrt(m), factor_bound)``.  Once
    every prime below ``cbrt(m)`` is removed the cofactor has at most two
    prime factors, so a perfect-square test settles it.  Beyond the bound the
    cofactor is assumed squarefree and a warning is logged.
    """
    if m <= 0:
        raise ValueError("squarefree_split needs a positive integer")
    s, f = 1, 1
    bound = min(_icbrt(m) + 1, factor_bound)
    for p in _primes_upto(max(bound, 2)):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                f *= p
    if m > 1:
        r = math.isqrt(m)
        if r * r == m:
            s *= r
        else:
            # all remaining prime factors exceed the bound
            if m > bound**3:
                log.warning("cofactor %d not fully factored; assumed squarefree", m)
            f *= m
    return s, f


class RadicalScalar:
    """Immutable exact real number ``sum q_d * sqrt(d)``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean: dict[int, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for d, q in items:
                q = as_fraction(q)
                if q == 0:
                    continue
                if d <= 0:
                    raise ValueError("radicand must be positive")
                s, f = squarefree_split(d)
                clean[f] = clean.get(f, Fraction(0)) + q * s
            clean = {d: q for d, q in clean.items() if q != 0}
        self._terms = tuple(sorted(clean.items()))
        self._hash = None

    @classmethod
    def _raw(cls, items: dict[int, Fraction]) -> RadicalScalar:
        obj = cls.__new__(cls)
        obj._terms = tuple(sorted((d, q) for d, q in items.items() if q != 0))
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, x) -> RadicalScalar:
        if isinstance(x, RadicalScalar):
            return x
        q = as_fraction(x)
        return cls._raw({1: q})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(d == 1 for d, _ in self._terms)

    def rational_part(self) -> Fraction:
        for d, q in self._terms:
            if d == 1:
                return q
        return Fraction(0)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.rational_part()

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        try:
            other = RadicalScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for d, q in other._terms:
            out[d] = out.get(d, Fraction(0)) + q
        return RadicalScalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return RadicalScalar._raw({d: -q for d, q in self._terms})

    def __sub__(self, other):
        try:
            other = RadicalScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return RadicalScalar.coerce(other) - self

    def __mul__(self, other):
        try:
            other = RadicalScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return radical_mul(self, other)

    __rmul__ = __mul__

    def inverse(self) -> RadicalScalar:
        """Field inverse via successive conjugation over each prime."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        primes = sorted({p for d, _ in self._terms for p in _prime_factors(d)})
        cur, acc = self, RadicalScalar.coerce(1)
        for p in primes:
            conj = cur.conjugate(p)
            acc = acc * conj
            cur = cur * conj
        return acc * (1 / cur.to_fraction())

    def conjugate(self, p: int) -> RadicalScalar:
        return RadicalScalar._raw({d: (-q if d % p == 0 else q) for d, q in self._terms})

    def __truediv__(self, other):
        try:
            other = RadicalScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_rational():
            f = other.to_fraction()
            if f == 0:
                raise ZeroDivisionError("division by zero")
            return RadicalScalar._raw({d: q / f for d, q in self._terms})
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RadicalScalar.coerce(other) / self

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        try:
            other = RadicalScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.rational_part())
            else:
                self._hash = hash(self._terms)
        return self._hash

    def sign(self) -> int:
        return radical_sign(self)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return bool(self._terms)

    def __float__(self):
        return float(sum(q * Fraction(math.sqrt(d)) for d, q in self._terms))

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # rendering ------------------------------------------------------------
    def __repr__(self):
        return f"RadicalScalar({self.exact_str()!r})"

    def __str__(self):
        return self.exact_str()

    def exact_str(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for d, q in self._terms:
            if d == 1:
                parts.append(str(q))
            elif abs(q) == 1:
                parts.append(f"{'-' if q < 0 else ''}sqrt({d})")
            else:
                parts.append(f"{q}*sqrt({d})")
        return "+".join(parts).replace("+-", "-")

    def to_decimal(self, digits: int = 12) -> str:
        lo, hi = _enclose(self, max(SIGN_START_BITS, int(digits * 3.33) + 16))
        mid = (lo + hi) / 2
        return f"{float(mid):.{digits}g}" if digits <= 17 else _fraction_decimal(mid, digits)

    @classmethod
    def parse(cls, text: str) -> RadicalScalar:
        """Inverse of :meth:`exact_str`, e.g. ``"1/2-3*sqrt(2)+sqrt(5)"``."""
        text = text.replace(" ", "")
        out: dict[int, Fraction] = {}
        pos = 0
        while pos < len(text):
            m = _TERM.match(text, pos)
            if m is None or m.end() == pos or (pos > 0 and not m.group(1)):
                raise ValueError(f"cannot parse radical scalar {text!r}")
            sign, coef, rad1, rad2 = m.groups()
            q = Fraction(coef) if coef else Fraction(1)
            d = int(rad1 or rad2 or 1)
            out[d] = out.get(d, Fraction(0)) + (-q if sign == "-" else q)
            pos = m.end()
        if not text:
            raise ValueError("empty radical scalar")
        return cls(out)


_TERM = re.compile(r"([+-]?)(?:(\d+(?:/\d+)?)(?:\*sqrt\((\d+)\))?|sqrt\((\d+)\))")


def _fraction_decimal(x: Fraction, digits: int) -> str:
    sign = "-" if x < 0 else ""
    x = abs(x)
    ip = x.numerator // x.denominator
    frac = x - ip
    scaled = frac * 10**digits
    return f"{sign}{ip}.{int(scaled):0{digits}d}"


def _prime_factors(d: int) -> list[int]:
    out, p = [], 2
    while p * p <= d:
        if d % p == 0:
            out.append(p)
            while d % p == 0:
                d //= p
        p += 1
    if d > 1:
        out.append(d)
    return out


def radical_sqrt(r) -> RadicalScalar:
    r = as_fraction(r)
    if r < 0:
        raise ValueError(f"square root of negative number {r}")
    if r == 0:
        return RadicalScalar()
    # sqrt(p/q) = sqrt(p*q)/q
    pq = r.numerator * r.denominator
    s, f = squarefree_split(pq)
    return RadicalScalar._raw({f: Fraction(s, r.denominator)})


def radical_mul(a: RadicalScalar, b: RadicalScalar) -> RadicalScalar:
    out: dict[int, Fraction] = {}
    for d1, q1 in a._terms:
        for d2, q2 in b._terms:
            g = math.gcd(d1, d2)
            d = (d1 // g) * (d2 // g)
            out[d] = out.get(d, Fraction(0)) + q1 * q2 * g
    return RadicalScalar._raw(out)


def _enclose(a: RadicalScalar, bits: int) -> tuple[Fraction, Fraction]:
    lo = hi = Fraction(0)
    scale = 1 << bits
    for d, q in a._terms:
        if d == 1:
            lo += q
            hi += q
            continue
        r = math.isqrt(d * scale * scale)
        s_lo, s_hi = Fraction(r, scale), Fraction(r + 1, scale)
        if q > 0:
            lo += q * s_lo
            hi += q * s_hi
        else:
            lo += q * s_hi
            hi += q * s_lo
    return lo, hi


def radical_sign(a: RadicalScalar) -> int:
    if a.is_zero():
        return 0
    if a.is_rational():
        return 1 if a.rational_part() > 0 else -1
    bits = SIGN_START_BITS
    for _ in range(SIGN_MAX_ROUNDS):
        lo, hi = _enclose(a, bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2
    raise PrecisionExhausted(f"could not sign {a}")


def to_scalar(x) -> RadicalScalar:
    return RadicalScalar.coerce(x)


def fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)
