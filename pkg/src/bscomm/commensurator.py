"""The abstract commensurator of BS(1, n) as the matrix group G.

Every isomorphism phi between finite-index subgroups is conjugation by a
unique matrix M in G:  phi(x) = M^-1 x M, with group elements read as
matrices through the embedding a -> [[1, 0], [0, n]], b -> [[1, 1], [0, 1]].
The class [phi] is determined by M, and classes compose by matrix product
with the first-applied map on the left.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bs_group import GroupContext, GroupElement, format_word, normal_form, to_matrix
from .errors import Inconsistent, InfiniteIndex, InternalError, NotIsomorphic
from .exact_arith import (
    GMatrix,
    NAdicRational,
    coprime_part,
    multiplicative_order,
    totient,
)
from .subgroup_lattice import CanonicalSubgroup, canonicalize, contains, intersect


def conjugate_by(M: GMatrix, g: GroupElement) -> GroupElement | None:
    """M^-1 g M as a group element, or None when it leaves the group."""
    n = g.n
    top = g.u.value * M.p + M.q * (1 - Fraction(n) ** g.k)
    u = NAdicRational.from_value(top, n)
    if u is None:
        return None
    return GroupElement(u, g.k)


def solve_conjugator(x1: GroupElement, y1: GroupElement, x2: GroupElement, y2: GroupElement) -> GMatrix:
    """The unique M with M^-1 x1 M = x2 and M^-1 y1 M = y2.

    x1 must have nonzero a-exponent and y1 must be a nontrivial element of
    the kernel U; then the two conditions are linear in (q, p) and have at
    most one solution.  Raises Inconsistent when there is none.
    """
    if x1.k == 0 or y1.k != 0 or y1.u.is_zero():
        raise ValueError("need x1 outside U and y1 a nontrivial element of U")
    if y2.k != 0 or y2.u.is_zero() or x2.k != x1.k:
        raise Inconsistent(f"images {x2}, {y2} cannot be conjugates of {x1}, {y1}")
    p = y2.u.value / y1.u.value
    q = (x2.u.value - x1.u.value * p) / (1 - Fraction(x1.n) ** x1.k)
    M = GMatrix(q, p)
    if conjugate_by(M, x1) != x2 or conjugate_by(M, y1) != y2:
        raise Inconsistent(f"no matrix conjugates ({x1}, {y1}) to ({x2}, {y2})")
    return M


def express(g: GroupElement, X: GroupElement, Y: GroupElement) -> tuple[int, int, int] | None:
    """Write g = X^i Y^r X^e, or return None when g is not in <X, Y>.

    X must have positive a-exponent and Y must lie in U.  Uses only the
    identity X^i Y X^-i = (v n^(-ik), 0) for Y = (v, 0).
    """
    k = X.k
    if g.k % k:
        return None
    j = g.k // k
    Xj = X**j
    c = (g.u - Xj.u).scale(-g.k)  # g = (c, 0) * X^j
    rho = NAdicRational.from_value(c.value / Y.u.value, g.n)
    if rho is None:
        return None
    i = -(-rho.exp // k)
    r = rho.scale(i * k)
    assert r.exp == 0
    return i, r.num, j - i


@dataclass(frozen=True)
class PartialIsomorphism:
    """Isomorphism domain -> codomain given by the images of domain.x, domain.y.

    Construction checks that the relator of the domain's presentation is
    preserved, that the images generate the codomain, and that a
    conjugating matrix exists.  Invalid instances cannot be built.
    """

    domain: CanonicalSubgroup
    codomain: CanonicalSubgroup
    image_x: GroupElement
    image_y: GroupElement
    _matrix: GMatrix = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        D = self.domain
        X, Y = self.image_x, self.image_y
        if X.inverse() * Y * X != Y ** (D.ctx.n**D.k):
            raise Inconsistent(f"images {X}, {Y} violate x^-1 y x = y^{D.ctx.n ** D.k}")
        try:
            generated = canonicalize([X, Y])
        except InfiniteIndex as exc:
            raise Inconsistent(f"images generate an infinite-index subgroup ({exc.message})") from exc
        if generated != self.codomain:
            raise Inconsistent(f"images generate {generated}, not {self.codomain}")
        object.__setattr__(self, "_matrix", solve_conjugator(D.x, D.y, X, Y))

    @property
    def ctx(self) -> GroupContext:
        return self.domain.ctx

    def __call__(self, g: GroupElement) -> GroupElement:
        """phi(g) computed as M^-1 g M."""
        if not contains(self.domain, g):
            raise ValueError(f"{g} is not in the domain {self.domain}")
        out = conjugate_by(self._matrix, g)
        if out is None:
            raise InternalError(f"conjugate of {g} left the group")
        return out

    def apply_by_generators(self, g: GroupElement) -> GroupElement:
        """phi(g) computed from the generator images alone, without M."""
        word = express(g, self.domain.x, self.domain.y)
        if word is None:
            raise ValueError(f"{g} is not in the domain {self.domain}")
        i, r, e = word
        X, Y = self.image_x, self.image_y
        return X**i * Y**r * X**e

    def inverse(self) -> "PartialIsomorphism":
        X, Y = self.image_x, self.image_y
        x, y = self.domain.x, self.domain.y
        images = []
        for g in (self.codomain.x, self.codomain.y):
            i, r, e = express(g, X, Y)
            images.append(x**i * y**r * x**e)
        return PartialIsomorphism(self.codomain, self.domain, *images)

    def restrict(self, K: CanonicalSubgroup) -> "PartialIsomorphism":
        """phi restricted to a finite-index subgroup K of its domain."""
        if not (contains(self.domain, K.x) and contains(self.domain, K.y)):
            raise ValueError(f"{K} is not contained in {self.domain}")
        images = [self.apply_by_generators(K.x), self.apply_by_generators(K.y)]
        return PartialIsomorphism(K, canonicalize(images), *images)

    def then(self, other: "PartialIsomorphism") -> "PartialIsomorphism":
        """Apply self, then other, on the largest domain where that makes sense."""
        meet = intersect(self.codomain, other.domain)
        back = self.inverse()
        D = canonicalize([back.apply_by_generators(meet.x), back.apply_by_generators(meet.y)])
        images = [other.apply_by_generators(self.apply_by_generators(g)) for g in (D.x, D.y)]
        return PartialIsomorphism(D, canonicalize(images), *images)

    def is_identity_on_generators(self) -> bool:
        return self.image_x == self.domain.x and self.image_y == self.domain.y

    def __str__(self):
        x, y = self.domain.x, self.domain.y
        return (
            f"{{domain: {self.domain}; {x} -> {_w(self.image_x)}; {y} -> {_w(self.image_y)}}}"
        )


def _w(g: GroupElement) -> str:
    return format_word(normal_form(g)) or "1"


def matrix_of(phi: PartialIsomorphism) -> GMatrix:
    return phi._matrix


def iso_between(H1: CanonicalSubgroup, H2: CanonicalSubgroup) -> PartialIsomorphism:
    """The isomorphism x1 -> x2, y1 -> y2 of the standard presentations."""
    if H1.ctx != H2.ctx:
        raise NotIsomorphic("subgroups of different groups")
    if H1.k != H2.k:
        raise NotIsomorphic(
            f"{H1} and {H2} have abelianization torsion {H1.ctx.n**H1.k - 1} != {H2.ctx.n**H2.k - 1}"
        )
    return PartialIsomorphism(H1, H2, H2.x, H2.y)


def inner(g: GroupElement) -> PartialIsomorphism:
    """Conjugation x -> g^-1 x g on the whole group."""
    G = CanonicalSubgroup.whole(GroupContext(g.n))
    return PartialIsomorphism(G, G, G.x.conj(g), G.y.conj(g))


# -- commensurator classes -------------------------------------------------------


@dataclass(frozen=True)
class CommClass:
    matrix: GMatrix

    def __mul__(self, other: "CommClass") -> "CommClass":
        return compose(self, other)

    def inverse(self) -> "CommClass":
        return CommClass(self.matrix.inverse())

    def is_identity(self) -> bool:
        return self.matrix.is_identity()

    def __str__(self):
        return str(self.matrix)


def comm_class(phi: PartialIsomorphism) -> CommClass:
    return CommClass(matrix_of(phi))


def compose(c1: CommClass, c2: CommClass) -> CommClass:
    """The class of "apply c1, then c2"."""
    return CommClass(c1.matrix * c2.matrix)


def realize(c: CommClass | GMatrix, ctx: GroupContext) -> PartialIsomorphism:
    """A partial isomorphism whose conjugating matrix is c.

    With p = P/Q and q = A/B in lowest terms: the domain is <a^k, b^m> where
    m is the part of Q coprime to n and k is the order of n modulo the part
    of B coprime to n.
    """
    M = c.matrix if isinstance(c, CommClass) else c
    n = ctx.n
    m = coprime_part(M.p.denominator, n)
    k = multiplicative_order(n, coprime_part(M.q.denominator, n))
    domain = CanonicalSubgroup(ctx, k, 0, m)
    images = [conjugate_by(M, domain.x), conjugate_by(M, domain.y)]
    if None in images:
        raise InternalError(f"realizing {M}: a generator image left the group")
    return PartialIsomorphism(domain, canonicalize(images), *images)


# -- generators ----------------------------------------------------------------------


def unipotent(q) -> GMatrix:
    return GMatrix(q, 1)


def diagonal(p) -> GMatrix:
    return GMatrix(0, p)


def T(n: int, k: int) -> GMatrix:
    """[[1, 1/(n^k - 1)], [0, 1]]."""
    return GMatrix(Fraction(1, n**k - 1), 1)


def euler_exponents(s: int, n: int) -> tuple[int, int]:
    """(phi(s), t) with n^phi(s) - 1 = s*t, so T(phi(s))^t = [[1, 1/s], [0, 1]]."""
    k = totient(s)
    t, rem = divmod(n**k - 1, s)
    if rem:
        raise ValueError(f"{s} is not coprime to {n}")
    return k, t


@dataclass(frozen=True)
class Factor:
    symbol: str
    base: GMatrix
    exponent: int = 1
    show_exponent: bool = False

    @property
    def matrix(self) -> GMatrix:
        return self.base**self.exponent

    def __str__(self):
        if self.exponent == 1 and not self.show_exponent:
            return self.symbol
        return f"{self.symbol}^{self.exponent}"


def decompose(c: CommClass | GMatrix, ctx: GroupContext) -> list[Factor]:
    """Factor a class into D(-1), D(p_i), D(m1/m2), an inner part and T(k)^t.

    The product of the factors' matrices, left to right, is the input.
    """
    M = c.matrix if isinstance(c, CommClass) else c
    n = ctx.n
    out: list[Factor] = []

    P, Q = M.p.numerator, M.p.denominator
    if P < 0:
        out.append(Factor("D(-1)", diagonal(-1)))
        P = -P
    for prime in ctx.prime_factors:
        e = 0
        while P % prime == 0:
            P //= prime
            e += 1
        while Q % prime == 0:
            Q //= prime
            e -= 1
        if e:
            out.append(Factor(f"D({prime})", diagonal(prime), e))
    if P != 1 or Q != 1:
        out.append(Factor(f"D({P}/{Q})", diagonal(Fraction(P, Q))))

    A, B = M.q.numerator, M.q.denominator
    s = coprime_part(B, n)
    b_n = B // s
    c_s = A * pow(b_n, -1, s) % s if s > 1 else 0
    z = Fraction(A - c_s * b_n, B)  # lies in Z[1/n]
    if z:
        g = ctx.element(z, 0)
        out.append(Factor(f"inner({_w(g)})", to_matrix(g)))
    if c_s:
        k, t = euler_exponents(s, n)
        out.append(Factor(f"T({k})", T(n, k), t * c_s, show_exponent=True))
    return out


def format_decomposition(factors: list[Factor]) -> str:
    return " ".join(str(f) for f in factors)


def product(factors: list[Factor]) -> GMatrix:
    out = GMatrix.identity()
    for f in factors:
        out = out * f.matrix
    return out


# -- Collins generators of Aut ----------------------------------------------------


@dataclass(frozen=True)
class AutGenerator:
    name: str
    action: PartialIsomorphism
    prime: int | None = None

    @property
    def matrix(self) -> GMatrix:
        return matrix_of(self.action)


def aut_generators(ctx: GroupContext) -> list[AutGenerator]:
    """Q_i (b -> b^p_i) for each prime p_i | n, then C (a -> ab) and T (b -> b^-1)."""
    G = CanonicalSubgroup.whole(ctx)
    a, b = ctx.a, ctx.b
    gens = [
        AutGenerator(f"Q_{i}", PartialIsomorphism(G, G, a, b**p), prime=p)
        for i, p in enumerate(ctx.prime_factors, start=1)
    ]
    gens.append(AutGenerator("C", PartialIsomorphism(G, G, a * b, b)))
    gens.append(AutGenerator("T", PartialIsomorphism(G, G, a, b.inverse())))
    return gens


@dataclass(frozen=True)
class RelationCheck:
    relation: str
    lhs: GMatrix
    rhs: GMatrix

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.relation}: {self.lhs} == {self.rhs}"


@dataclass(frozen=True)
class CollinsReport:
    n: int
    checks: tuple[RelationCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def verify_collins_relations(ctx: GroupContext) -> CollinsReport:
    gens = aut_generators(ctx)
    Qs = [g for g in gens if g.prime is not None]
    C = next(g.matrix for g in gens if g.name == "C")
    Tm = next(g.matrix for g in gens if g.name == "T")
    I = GMatrix.identity()
    checks = []
    for Qi in Qs:
        Q = Qi.matrix
        checks.append(RelationCheck(f"{Qi.name}^-1 C {Qi.name} = C^{Qi.prime}", Q.inverse() * C * Q, C**Qi.prime))
    for Qi in Qs:
        for Qj in Qs:
            if Qi.name < Qj.name:
                checks.append(
                    RelationCheck(
                        f"{Qi.name} {Qj.name} = {Qj.name} {Qi.name}",
                        Qi.matrix * Qj.matrix,
                        Qj.matrix * Qi.matrix,
                    )
                )
    checks.append(RelationCheck("T^2 = 1", Tm * Tm, I))
    for Qi in Qs:
        checks.append(RelationCheck(f"T {Qi.name} = {Qi.name} T", Tm * Qi.matrix, Qi.matrix * Tm))
    checks.append(RelationCheck("T^-1 C T = C^-1", Tm.inverse() * C * Tm, C.inverse()))
    return CollinsReport(ctx.n, tuple(checks))
