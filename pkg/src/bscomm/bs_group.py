"""Elements of BS(1, n) = <a, b | a^-1 b a = b^n>.

An element is a pair (u, k) with u in Z[1/n] and k in Z, multiplied as

    (u1, k1) * (u2, k2) = (u2 + u1 * n**k2, k1 + k2),

which is the product of the matrices [[1, u], [0, n**k]].  Under this model
a = (0, 1), b = (1, 0) and a^-j b a^j = (n**j, 0).  Words are only a surface
syntax; the pair is the source of truth, so the word problem is trivial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import ContextMismatch, NotInHn, WordSyntaxError
from .exact_arith import (
    GMatrix,
    NAdicRational,
    factorize,
    format_rational,
    nadic_canonicalize,
    power_of,
    prime_factors,
)


@dataclass(frozen=True)
class GroupContext:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n!r}")

    @cached_property
    def prime_factors(self) -> tuple[int, ...]:
        return tuple(prime_factors(self.n))

    @cached_property
    def factorization(self) -> dict[int, int]:
        return factorize(self.n)

    def element(self, u=0, k: int = 0) -> "GroupElement":
        """Element (u, k); u may be an int, Fraction or NAdicRational."""
        if isinstance(u, NAdicRational):
            if u.base != self.n:
                raise ContextMismatch(f"u has base {u.base}, context n = {self.n}")
            return GroupElement(u, k)
        v = NAdicRational.from_value(u, self.n)
        if v is None:
            raise NotInHn(f"{format_rational(u)} does not lie in Z[1/{self.n}]")
        return GroupElement(v, k)

    @property
    def identity(self) -> "GroupElement":
        return self.element(0, 0)

    @property
    def a(self) -> "GroupElement":
        return self.element(0, 1)

    @property
    def b(self) -> "GroupElement":
        return self.element(1, 0)

    def b_j(self, j: int) -> "GroupElement":
        """The conjugate a^-j b a^j."""
        return GroupElement(nadic_canonicalize(1, -j, self.n), 0)

    def parse(self, text: str) -> "GroupElement":
        return parse_word(text, self)


@dataclass(frozen=True, slots=True)
class GroupElement:
    u: NAdicRational
    k: int

    @property
    def n(self) -> int:
        return self.u.base

    def _same(self, other: "GroupElement"):
        if other.u.base != self.u.base:
            raise ContextMismatch(f"elements of BS(1,{self.n}) and BS(1,{other.n})")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            return NotImplemented
        self._same(other)
        return GroupElement(other.u + self.u.scale(other.k), self.k + other.k)

    def inverse(self) -> "GroupElement":
        return GroupElement(-self.u.scale(-self.k), -self.k)

    def __pow__(self, e: int) -> "GroupElement":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = GroupElement(NAdicRational(self.n, 0, 0), 0)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_identity(self) -> bool:
        return self.k == 0 and self.u.num == 0

    def conj(self, g: "GroupElement") -> "GroupElement":
        """g^-1 * self * g."""
        return g.inverse() * self * g

    def __str__(self):
        return format_word(normal_form(self))

    def __repr__(self):
        return f"GroupElement(u={self.u}, k={self.k}, n={self.n})"


def mul(g: GroupElement, h: GroupElement) -> GroupElement:
    return g * h


def inv(g: GroupElement) -> GroupElement:
    return g.inverse()


def power(g: GroupElement, e: int) -> GroupElement:
    return g**e


def geometric_factor(n: int, k: int, s: int) -> Fraction:
    """(n**(k*s) - 1) / (n**k - 1), the u-multiplier of (l, k)**s; k != 0."""
    return (Fraction(n) ** (k * s) - 1) / (Fraction(n) ** k - 1)


# -- matrix embedding ----------------------------------------------------------


def to_matrix(g: GroupElement) -> GMatrix:
    return GMatrix(g.u.value, Fraction(g.n) ** g.k)


def from_matrix(M: GMatrix, ctx: GroupContext) -> GroupElement:
    u = NAdicRational.from_value(M.q, ctx.n)
    if u is None:
        raise NotInHn(f"top-right entry {format_rational(M.q)} is not in Z[1/{ctx.n}]")
    k = power_of(M.p, ctx.n)
    if k is None:
        raise NotInHn(f"bottom-right entry {format_rational(M.p)} is not a power of {ctx.n}")
    return GroupElement(u, k)


# -- unique roots ----------------------------------------------------------------


def root_extract(g: GroupElement, r: int) -> GroupElement | None:
    """The unique h with h**r == g, or None when there is no such h."""
    if r < 1:
        raise ValueError("root index must be positive")
    n = g.n
    if g.k != 0:
        if g.k % r:
            return None
        j = g.k // r
        v = g.u.value * (Fraction(n) ** j - 1) / (Fraction(n) ** g.k - 1)
    else:
        j = 0
        v = g.u.value / r
    u = NAdicRational.from_value(v, n)
    if u is None:
        return None
    h = GroupElement(u, j)
    return h if h**r == g else None


# -- words -------------------------------------------------------------------------

Word = list[tuple[str, int]]


def tokenize(text: str) -> Word:
    """Split text into (letter, exponent) pairs and fold repeated letters.

    Tokens are ``a`` or ``b`` optionally followed by ``^`` and a signed
    integer, separated by whitespace, ``*`` or nothing.  ``A`` and ``B``
    stand for ``a^-1`` and ``b^-1``.
    """
    word: Word = []
    i, size = 0, len(text)
    while i < size:
        ch = text[i]
        if ch.isspace() or ch == "*":
            i += 1
            continue
        if ch not in "abAB":
            raise WordSyntaxError(f"unexpected character {ch!r}", i)
        letter, sign = ch.lower(), (1 if ch.islower() else -1)
        i += 1
        exp = 1
        if i < size and text[i] == "^":
            j = i + 1
            if j < size and text[j] in "+-":
                j += 1
            start = j
            while j < size and text[j].isdigit():
                j += 1
            if j == start:
                raise WordSyntaxError("expected integer exponent after '^'", i + 1)
            exp = int(text[i + 1 : j])
            i = j
        _push(word, letter, sign * exp)
    return word


def _push(word: Word, letter: str, exp: int):
    if exp == 0:
        return
    if word and word[-1][0] == letter:
        total = word[-1][1] + exp
        word.pop()
        if total:
            word.append((letter, total))
    else:
        word.append((letter, exp))


def evaluate(word: Word, ctx: GroupContext) -> GroupElement:
    g = ctx.identity
    for letter, exp in word:
        g = g * ((ctx.a if letter == "a" else ctx.b) ** exp)
    return g


def parse_word(text: str, ctx: GroupContext) -> GroupElement:
    return evaluate(tokenize(text), ctx)


def format_word(word: Word) -> str:
    return " ".join(letter if e == 1 else f"{letter}^{e}" for letter, e in word)


def normal_form(g: GroupElement) -> Word:
    """The word a^(e+k) b^r a^-e where u = r / n^e is canonical."""
    e, r = g.u.exp, g.u.num
    word: Word = []
    _push(word, "a", e + g.k)
    _push(word, "b", r)
    _push(word, "a", -e)
    return word
