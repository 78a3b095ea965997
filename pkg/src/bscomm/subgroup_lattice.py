"""Finite-index subgroups of BS(1, n) in the canonical form <a^k b^l, b^m>.

Every finite-index subgroup H has a unique triple (k, l, m) with k >= 1,
gcd(m, n) = 1 and 0 <= l < m such that H = <a^k b^l, b^m>.  Its index is
k*m, its intersection with the kernel U of the exponent-sum map is
m Z[1/n], and the elements of H with a-exponent j*k are exactly

    (c_j + m Z[1/n], j*k),    c_j = l * (n^(jk) - 1) / (n^k - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bs_group import GroupContext, GroupElement, geometric_factor
from .errors import ContextMismatch, InfiniteIndex, InternalError
from .exact_arith import NAdicRational, coprime_part


@dataclass(frozen=True)
class CanonicalSubgroup:
    ctx: GroupContext
    k: int
    l: int
    m: int

    def __post_init__(self):
        if self.k < 1 or self.m < 1:
            raise ValueError(f"need k, m >= 1, got k={self.k}, m={self.m}")
        if math.gcd(self.m, self.ctx.n) != 1:
            raise ValueError(f"m={self.m} is not coprime to n={self.ctx.n}")
        if not 0 <= self.l < self.m:
            raise ValueError(f"need 0 <= l < m, got l={self.l}, m={self.m}")

    @classmethod
    def whole(cls, ctx: GroupContext) -> "CanonicalSubgroup":
        return cls(ctx, 1, 0, 1)

    @property
    def x(self) -> GroupElement:
        """The generator a^k b^l."""
        return self.ctx.element(self.l, self.k)

    @property
    def y(self) -> GroupElement:
        """The generator b^m."""
        return self.ctx.element(self.m, 0)

    @property
    def index(self) -> int:
        return self.k * self.m

    def offset(self, level: int) -> NAdicRational:
        """c_j for the a-exponent level = j*k (must be a multiple of k)."""
        v = self.l * geometric_factor(self.ctx.n, self.k, level // self.k)
        return NAdicRational.from_value(v, self.ctx.n)

    def __contains__(self, g: GroupElement) -> bool:
        return contains(self, g)

    def __str__(self):
        return f"<a^{self.k} b^{self.l}, b^{self.m}>"


@dataclass(frozen=True)
class SubgroupPresentation:
    x: GroupElement
    y: GroupElement
    relator_exponent: int

    def __str__(self):
        return f"<x, y | x^-1 y x = y^{self.relator_exponent}>, x = {self.x}, y = {self.y}"


def _check_ctx(*items):
    ns = {h.ctx.n if isinstance(h, CanonicalSubgroup) else h.n for h in items}
    if len(ns) > 1:
        raise ContextMismatch(f"objects live in different groups: n in {sorted(ns)}")


def canonicalize(gens: list[GroupElement]) -> CanonicalSubgroup:
    """Canonical triple of the subgroup generated by gens.

    Raises InfiniteIndex when the generated subgroup has infinite index.
    """
    if not gens:
        raise InfiniteIndex("the trivial subgroup has infinite index")
    _check_ctx(*gens)
    ctx = GroupContext(gens[0].n)
    n = ctx.n

    # Nielsen moves on the a-exponents until one generator carries gcd(k_i).
    stable = [g for g in gens if g.k == 0]
    moving = [g if g.k > 0 else g.inverse() for g in gens if g.k != 0]
    while len(moving) > 1:
        moving.sort(key=lambda g: g.k)
        low = moving[0]
        rest = []
        for g in moving[1:]:
            g = g * low ** (-(g.k // low.k))
            (rest if g.k else stable).append(g)
        moving = [low] + rest
    if not moving:
        raise InfiniteIndex("every generator has a-exponent 0")
    x0 = moving[0]

    # H meets U in the Z[1/n]-module spanned by the remaining U-elements.
    s = 0
    for w in stable:
        s = math.gcd(s, w.u.num)  # n^exp is a unit, so numerators suffice
    if s == 0:
        raise InfiniteIndex("the subgroup meets the kernel of the exponent sum trivially")
    m = coprime_part(s, n)
    l = x0.u.residue(m)
    return CanonicalSubgroup(ctx, x0.k, l, m)


def contains(H: CanonicalSubgroup, g: GroupElement) -> bool:
    _check_ctx(H, g)
    if g.k % H.k:
        return False
    diff = g.u - H.offset(g.k)
    return diff.num % H.m == 0


def index(H: CanonicalSubgroup) -> int:
    return H.index


def transversal(H: CanonicalSubgroup) -> list[GroupElement]:
    """The elements a^i b^j, 0 <= i < k, 0 <= j < m, in row-major order."""
    ctx = H.ctx
    return [ctx.element(j, i) for i in range(H.k) for j in range(H.m)]


def coset_decompose(H: CanonicalSubgroup, g: GroupElement) -> tuple[GroupElement, GroupElement]:
    """Split g = h * t with h in H and t = a^i b^j from :func:`transversal`."""
    _check_ctx(H, g)
    i = g.k % H.k
    level = g.k - i
    # h * t = (j + c n^i, level + i) with c = offset(level) mod m Z[1/n]
    j = (g.u - H.offset(level).scale(i)).residue(H.m)
    t = H.ctx.element(j, i)
    return g * t.inverse(), t


def intersect(H1: CanonicalSubgroup, H2: CanonicalSubgroup) -> CanonicalSubgroup:
    _check_ctx(H1, H2)
    ctx = H1.ctx
    m = math.lcm(H1.m, H2.m)
    K = math.lcm(H1.k, H2.k)
    bound = H1.index * H2.index
    for t in range(1, bound + 1):
        level = t * K
        lam = _crt(H1.offset(level).residue(H1.m), H1.m, H2.offset(level).residue(H2.m), H2.m)
        if lam is not None:
            return CanonicalSubgroup(ctx, level, lam % m, m)
    raise InternalError(f"no common a-exponent found below {bound * K} for {H1} and {H2}")


def _crt(r1: int, m1: int, r2: int, m2: int) -> int | None:
    g = math.gcd(m1, m2)
    if (r1 - r2) % g:
        return None
    l = m1 // g * m2
    if l == 1:
        return 0
    # r1 + m1 * s = r2 (mod m2)
    s = (r2 - r1) // g * pow(m1 // g, -1, m2 // g) if m2 // g > 1 else 0
    return (r1 + m1 * s) % l


def presentation(H: CanonicalSubgroup) -> SubgroupPresentation:
    x, y = H.x, H.y
    rel = H.ctx.n**H.k
    if x.inverse() * y * x != y**rel:
        raise InternalError(f"presentation relation fails for {H}")
    return SubgroupPresentation(x, y, rel)


def abelianization_invariant(H: CanonicalSubgroup) -> tuple[int, int]:
    """(free rank, torsion order) of H / [H, H]."""
    return 1, H.ctx.n**H.k - 1


def isomorphic(H1: CanonicalSubgroup, H2: CanonicalSubgroup) -> bool:
    _check_ctx(H1, H2)
    return H1.k == H2.k
