"""Exact arithmetic: rationals, canonical elements of Z[1/n], and the matrix group G.

G is the group of rational matrices [[1, q], [0, p]] with p != 0.  It splits
as the unipotent part (p = 1) acted on by the diagonal part (q = 0).

Rationals are :class:`fractions.Fraction`; they are already normalized
(gcd(num, den) = 1, den > 0, zero is 0/1), so no separate type is needed.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction


def as_rational(x) -> Fraction:
    if isinstance(x, NAdicRational):
        return x.value
    return Fraction(x)


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    match = _RATIONAL_RE.match(text)
    if not match:
        raise ValueError(f"not a rational: {text!r}")
    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


# -- elementary number theory ------------------------------------------------


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of |n| in ascending order (trial division)."""
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def factorize(n: int) -> dict[int, int]:
    n = abs(n)
    out = {}
    for p in prime_factors(n):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out[p] = e
    return out


def coprime_part(x: int, n: int) -> int:
    """Remove from |x| every prime factor it shares with n."""
    x = abs(x)
    if x == 0:
        return 0
    g = math.gcd(x, n)
    while g > 1:
        x //= g
        g = math.gcd(x, n)
    return x


def totient(s: int) -> int:
    if s < 1:
        raise ValueError("totient needs s >= 1")
    result = s
    for p in prime_factors(s):
        result -= result // p
    return result


def multiplicative_order(n: int, modulus: int) -> int:
    """Least k >= 1 with n^k = 1 (mod modulus); search bounded by the totient."""
    if modulus == 1:
        return 1
    if math.gcd(n, modulus) != 1:
        raise ValueError(f"{n} is not a unit modulo {modulus}")
    bound = totient(modulus)
    x = n % modulus
    for k in range(1, bound + 1):
        if x == 1:
            return k
        x = x * n % modulus
    raise AssertionError("order exceeds totient")  # unreachable by Euler


# -- Z[1/n] ------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class NAdicRational:
    """The value num / base**exp, stored canonically.

    Canonical means exp == 0 or base does not divide num, so two instances
    with the same base are equal exactly when their values are equal.
    Build instances through :func:`nadic_canonicalize` or :meth:`from_value`.
    """

    base: int
    num: int
    exp: int

    @classmethod
    def from_value(cls, x, base: int) -> "NAdicRational | None":
        """Convert a rational; None when it does not lie in Z[1/base]."""
        x = Fraction(x)
        den = x.denominator
        if coprime_part(den, base) != 1:
            return None
        exp, power = 0, 1
        while power % den:
            power *= base
            exp += 1
        return nadic_canonicalize(x.numerator * (power // den), exp, base)

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.base**self.exp)

    def is_zero(self) -> bool:
        return self.num == 0

    def scale(self, k: int) -> "NAdicRational":
        """Multiply by base**k (k may be negative)."""
        return nadic_canonicalize(self.num, self.exp - k, self.base)

    def _check(self, other):
        if not isinstance(other, NAdicRational):
            return NotImplemented
        if other.base != self.base:
            raise ValueError(f"base mismatch: {self.base} vs {other.base}")
        return other

    def __add__(self, other):
        if isinstance(other, int):
            other = NAdicRational(self.base, other, 0)
        other = self._check(other)
        if other is NotImplemented:
            return other
        e = max(self.exp, other.exp)
        num = self.num * self.base ** (e - self.exp) + other.num * self.base ** (e - other.exp)
        return nadic_canonicalize(num, e, self.base)

    __radd__ = __add__

    def __neg__(self):
        return NAdicRational(self.base, -self.num, self.exp)

    def __sub__(self, other):
        if isinstance(other, int):
            other = NAdicRational(self.base, other, 0)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return nadic_canonicalize(self.num * other, self.exp, self.base)
        other = self._check(other)
        if other is NotImplemented:
            return other
        return nadic_canonicalize(self.num * other.num, self.exp + other.exp, self.base)

    __rmul__ = __mul__

    def residue(self, m: int) -> int:
        """Image in Z[1/n] / m Z[1/n] = Z/m (requires gcd(m, n) = 1)."""
        if m == 1:
            return 0
        return self.num * pow(self.base, -self.exp, m) % m

    def __str__(self):
        return format_rational(self.value)


def nadic_canonicalize(num: int, exp: int, base: int) -> NAdicRational:
    if base < 2:
        raise ValueError("base must be >= 2")
    if exp < 0:
        num *= base ** (-exp)
        exp = 0
    if num == 0:
        return NAdicRational(base, 0, 0)
    while exp > 0 and num % base == 0:
        num //= base
        exp -= 1
    return NAdicRational(base, num, exp)


# -- the matrix group G --------------------------------------------------------


@dataclass(frozen=True, slots=True)
class GMatrix:
    """The matrix [[1, q], [0, p]] with p != 0."""

    q: Fraction
    p: Fraction

    def __init__(self, q=0, p=1):
        q, p = as_rational(q), as_rational(p)
        if p == 0:
            raise ValueError("bottom-right entry must be nonzero")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)

    @classmethod
    def identity(cls) -> "GMatrix":
        return cls(0, 1)

    def __mul__(self, other: "GMatrix") -> "GMatrix":
        return gmat_mul(self, other)

    def inverse(self) -> "GMatrix":
        return gmat_inv(self)

    def __pow__(self, e: int) -> "GMatrix":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = GMatrix.identity()
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_identity(self) -> bool:
        return self.q == 0 and self.p == 1

    def is_diagonal(self) -> bool:
        return self.q == 0

    def is_unipotent(self) -> bool:
        return self.p == 1

    def in_hn(self, n: int) -> bool:
        """Whether q lies in Z[1/n] and p is an integer power of n."""
        return NAdicRational.from_value(self.q, n) is not None and power_of(self.p, n) is not None

    def as_rows(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        return ((Fraction(1), self.q), (Fraction(0), self.p))

    def __str__(self):
        return f"[1 {format_rational(self.q)}; 0 {format_rational(self.p)}]"


def gmat_mul(A: GMatrix, B: GMatrix) -> GMatrix:
    return GMatrix(B.q + A.q * B.p, A.p * B.p)


def gmat_inv(A: GMatrix) -> GMatrix:
    return GMatrix(-A.q / A.p, 1 / A.p)


def power_of(x: Fraction, n: int) -> int | None:
    """The integer k with x == n**k, or None."""
    x = Fraction(x)
    if x <= 0:
        return None
    if x.denominator != 1:
        if x.numerator != 1:
            return None
        k = power_of(Fraction(x.denominator), n)
        return None if k is None else -k
    v, k = x.numerator, 0
    while v % n == 0:
        v //= n
        k += 1
    return k if v == 1 else None


_GMAT_RE = re.compile(r"^\s*\[\s*1\s+(\S+?)\s*;\s*0\s+(\S+?)\s*\]\s*$")


def parse_gmatrix(text: str) -> GMatrix:
    """Parse the "[1 q; 0 p]" serialization."""
    match = _GMAT_RE.match(text)
    if not match:
        raise ValueError(f"expected '[1 q; 0 p]', got {text!r}")
    q, p = (parse_rational(s) for s in match.groups())
    if p == 0:
        raise ValueError("bottom-right entry must be nonzero")
    return GMatrix(q, p)
