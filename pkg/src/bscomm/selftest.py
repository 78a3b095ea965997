"""Seeded self-check suites run by ``bscomm selftest``.

Each suite returns a list of :class:`Check`; with a fixed seed the output is
bit-for-bit reproducible.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .bs_group import GroupContext, GroupElement, root_extract
from .commensurator import (
    CommClass,
    aut_generators,
    compose,
    decompose,
    euler_exponents,
    iso_between,
    matrix_of,
    product,
    realize,
    solve_conjugator,
    T,
    verify_collins_relations,
)
from .coset_enum import enumerate_cosets
from .exact_arith import GMatrix
from .quasi_isometry import displacement_profile, estimate_qi_constants, qi_map, sup_distance
from .subgroup_lattice import CanonicalSubgroup, canonicalize, presentation, transversal


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def __str__(self):
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}" + (f" ({self.detail})" if self.detail else "")


def random_element(ctx: GroupContext, rng: random.Random, num: int = 30, exp: int = 3, k: int = 4) -> GroupElement:
    u = Fraction(rng.randint(-num, num), ctx.n ** rng.randint(0, exp))
    return ctx.element(u, rng.randint(-k, k))


def random_subgroup(ctx: GroupContext, rng: random.Random, kmax: int = 4, mmax: int = 12) -> CanonicalSubgroup:
    k = rng.randint(1, kmax)
    m = rng.choice([m for m in range(1, mmax + 1) if math.gcd(m, ctx.n) == 1])
    return CanonicalSubgroup(ctx, k, rng.randrange(m), m)


def random_matrix(rng: random.Random, bound: int = 50) -> GMatrix:
    q = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    p = Fraction(rng.choice([-1, 1]) * rng.randint(1, bound), rng.randint(1, bound))
    return GMatrix(q, p)


def suite_coset_shift(seed: int) -> list[Check]:
    """<a^k b_q^r, b_p^s> does not depend on the level p of the second generator."""
    rng = random.Random(seed)
    checks = []
    for n in (2, 3, 6):
        ctx = GroupContext(n)
        ok = True
        for _ in range(40):
            k, r, s = rng.randint(1, 4), rng.randint(-9, 9), rng.randint(1, 12)
            x = ctx.element(0, k) * ctx.b_j(rng.randint(-3, 3)) ** r
            base = canonicalize([x, ctx.b_j(rng.randint(-3, 3)) ** s])
            ok &= all(canonicalize([x, ctx.b_j(i) ** s]) == base for i in range(-4, 5))
        checks.append(Check(f"level independence n={n}", ok))
    return checks


def suite_canonical_form(seed: int) -> list[Check]:
    rng = random.Random(seed)
    checks = []
    for n in (2, 3, 6):
        ctx = GroupContext(n)
        ok = True
        for _ in range(30):
            gens = [random_element(ctx, rng) for _ in range(rng.randint(2, 3))]
            gens.append(ctx.element(rng.randint(1, 20), 0))
            gens.append(ctx.element(rng.randint(-5, 5), rng.randint(1, 3)))
            H = canonicalize(gens)
            if H.index > 200:
                continue
            table = enumerate_cosets(n, gens)
            cosets = {table.coset_of(t.inverse()) for t in transversal(H)}
            ok &= table.index == H.index == len(cosets)
            presentation(H)
        checks.append(Check(f"index and transversal n={n}", ok))
    ctx = GroupContext(2)
    regress = canonicalize([ctx.parse("a b^2"), ctx.parse("b^4")])
    checks.append(Check("<ab^2, b^4> is the whole group", regress == CanonicalSubgroup.whole(ctx), str(regress)))
    return checks


def suite_conjugating_matrix(seed: int) -> list[Check]:
    rng = random.Random(seed)
    checks = []
    for n in (2, 3, 6):
        ctx = GroupContext(n)
        ok = True
        for _ in range(40):
            H1 = random_subgroup(ctx, rng)
            H2 = random_subgroup(ctx, rng)
            H2 = CanonicalSubgroup(ctx, H1.k, H2.l, H2.m)
            M = matrix_of(iso_between(H1, H2))
            N = n**H1.k - 1
            ok &= M == GMatrix(Fraction(H1.l * H2.m - H2.l * H1.m, H1.m * N), Fraction(H2.m, H1.m))
            x, y = H1.x, H1.y
            ok &= solve_conjugator(x, y, x * y, y) == GMatrix(Fraction(-H1.m, N), 1)
            ok &= solve_conjugator(x, y, x, y.inverse()) == GMatrix(Fraction(-2 * H1.l, N), -1)
        checks.append(Check(f"closed forms n={n}", ok))
    return checks


def suite_commensurator_iso(seed: int) -> list[Check]:
    rng = random.Random(seed)
    checks = []
    for n in (2, 3, 10):
        ctx = GroupContext(n)
        hom = surj = inj = dec = True
        for _ in range(20):
            M1, M2 = random_matrix(rng, 12), random_matrix(rng, 12)
            phi1, phi2 = realize(M1, ctx), realize(M2, ctx)
            surj &= matrix_of(phi1) == M1
            inj &= M1.is_identity() or not phi1.is_identity_on_generators()
            hom &= matrix_of(phi1.then(phi2)) == compose(CommClass(M1), CommClass(M2)).matrix
            dec &= product(decompose(M1, ctx)) == M1
        checks += [
            Check(f"homomorphism n={n}", hom),
            Check(f"surjectivity n={n}", surj),
            Check(f"injectivity n={n}", inj),
            Check(f"decomposition n={n}", dec),
        ]
        ok = True
        for s in range(1, 51):
            if math.gcd(s, n) == 1:
                k, t = euler_exponents(s, n)
                ok &= T(n, k) ** t == GMatrix(Fraction(1, s), 1)
        checks.append(Check(f"totient construction n={n}", ok))
    ctx = GroupContext(2)
    ok = True
    for _ in range(50):
        g = random_element(ctx, rng)
        r = rng.randint(1, 6)
        ok &= root_extract(g**r, r) == g
    checks.append(Check("unique roots n=2", ok))
    return checks


def suite_collins(seed: int) -> list[Check]:
    checks = []
    for n in (2, 3, 4, 6, 10, 12):
        report = verify_collins_relations(GroupContext(n))
        checks.append(Check(f"relations n={n}", report.all_passed, f"{len(report.checks)} identities"))
    ctx = GroupContext(2)
    expected = {"Q_1": GMatrix(0, 2), "C": GMatrix(-1, 1), "T": GMatrix(0, -1)}
    got = {g.name: g.matrix for g in aut_generators(ctx)}
    checks.append(Check("generator matrices n=2", got == expected))
    return checks


def suite_qi(seed: int) -> list[Check]:
    ctx = GroupContext(2)
    G = CanonicalSubgroup.whole(ctx)
    Q = next(g.action for g in aut_generators(ctx) if g.prime == 2)
    phi = realize(GMatrix(0, Fraction(1, 3)), ctx)
    back = qi_map(realize(matrix_of(phi).inverse(), ctx))
    f = qi_map(phi)
    est = estimate_qi_constants(f, ctx, 4, seed=seed)
    sup = sup_distance(lambda x: back(f(x)), lambda x: x, ctx, 4)
    prof = displacement_profile(Q, ctx.b, 4)
    ident = estimate_qi_constants(qi_map(iso_between(G, G)), ctx, 4, seed=seed)
    return [
        Check("identity map is an isometry", ident.K == 1 and ident.C == 0, str(ident)),
        Check("coarse inverse", sup <= 2 * est.C, f"sup={sup}, {est}"),
        Check("Q displacement grows", all(a < b for a, b in zip(prof[1:], prof[2:])), str(prof)),
    ]


SUITES = {
    "coset-shift": suite_coset_shift,
    "canonical-form": suite_canonical_form,
    "conjugating-matrix": suite_conjugating_matrix,
    "commensurator-iso": suite_commensurator_iso,
    "collins": suite_collins,
    "qi": suite_qi,
}


def run(names: list[str] | None = None, seed: int = 0) -> list[tuple[str, Check]]:
    out = []
    for name in names or list(SUITES):
        out.extend((name, check) for check in SUITES[name](seed))
    return out

