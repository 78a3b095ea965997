"""Word metric on BS(1, n) for the generating set {a, b}, and QI harness.

Two routes to |g| are provided and checked against each other in the tests:

* :func:`word_length` / :func:`ball` -- breadth-first search of the Cayley
  graph, capped at radius 14;
* :func:`geodesic_length` -- an exact closed form.  Reading a word left to
  right, each b^{+-1} contributes +-n^t to u where t is the a-exponent still
  to come.  So a word is an a-walk from level k down to level 0 covering
  some interval [L, U], plus integer digits c_t with sum c_t n^t = u; the
  cost is the walk length plus sum |c_t|.  L is forced to min(0, k, -exp)
  and the digit problem is a two-state carry recursion.
"""

from __future__ import annotations

import csv
import math
import random
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator

from .bs_group import GroupContext, GroupElement
from .commensurator import PartialIsomorphism
from .exact_arith import NAdicRational
from .subgroup_lattice import coset_decompose

MAX_BFS_RADIUS = 14
MAX_QI_RADIUS = 10

Key = tuple[int, int, int]  # (num, exp, k) of a canonical element


def _key(g: GroupElement) -> Key:
    return g.u.num, g.u.exp, g.k


def _element(n: int, key: Key) -> GroupElement:
    num, exp, k = key
    return GroupElement(NAdicRational(n, num, exp), k)


def _neighbours(key: Key, n: int) -> Iterator[Key]:
    num, exp, k = key
    # right multiplication by a
    yield (num, exp - 1, k + 1) if exp else (num * n, 0, k + 1)
    # by a^-1
    if num == 0:
        yield (0, 0, k - 1)
    elif exp == 0 and num % n == 0:
        yield (num // n, 0, k - 1)
    else:
        yield (num, exp + 1, k - 1)
    # by b and b^-1
    step = n**exp
    yield (num + step, exp, k)
    yield (num - step, exp, k)


class MetricBall:
    """All elements of word length <= radius with their lengths."""

    def __init__(self, ctx: GroupContext, radius: int, distances: dict[Key, int]):
        self.ctx = ctx
        self.radius = radius
        self._dist = distances

    def __getitem__(self, g: GroupElement) -> int:
        return self._dist[_key(g)]

    def get(self, g: GroupElement, default=None):
        return self._dist.get(_key(g), default)

    def __contains__(self, g: GroupElement) -> bool:
        return _key(g) in self._dist

    def __len__(self) -> int:
        return len(self._dist)

    def __iter__(self) -> Iterator[GroupElement]:
        n = self.ctx.n
        return (_element(n, key) for key in self._dist)

    def items(self) -> Iterator[tuple[GroupElement, int]]:
        n = self.ctx.n
        return ((_element(n, key), d) for key, d in self._dist.items())

    def sphere_sizes(self) -> list[int]:
        counts = Counter(self._dist.values())
        return [counts[r] for r in range(self.radius + 1)]


@lru_cache(maxsize=16)
def ball(ctx: GroupContext, radius: int) -> MetricBall:
    if radius > MAX_BFS_RADIUS:
        raise ValueError(f"radius {radius} exceeds the BFS limit {MAX_BFS_RADIUS}")
    n = ctx.n
    start = (0, 0, 0)
    dist = {start: 0}
    frontier = deque([start])
    while frontier:
        key = frontier.popleft()
        d = dist[key]
        if d == radius:
            continue
        for nxt in _neighbours(key, n):
            if nxt not in dist:
                dist[nxt] = d + 1
                frontier.append(nxt)
    return MetricBall(ctx, radius, dist)


def word_length(g: GroupElement, R: int) -> int | None:
    """|g| by breadth-first search, or None if |g| > R."""
    return ball(GroupContext(g.n), R).get(g)


# -- closed form ------------------------------------------------------------------------


def _digit_cost(N: int, n: int, positions: int) -> int:
    """min sum |c_t| over integers c_0..c_{positions-1} with sum c_t n^t = N."""
    states = {N: 0}
    for _ in range(positions - 1):
        nxt: dict[int, int] = {}
        for v, cost in states.items():
            d = v % n
            for digit in (d, d - n) if d else (0,):
                w = (v - digit) // n
                c = cost + abs(digit)
                if c < nxt.get(w, c + 1):
                    nxt[w] = c
        states = nxt
    return min(cost + abs(v) for v, cost in states.items())


@lru_cache(maxsize=1 << 20)
def _geodesic(n: int, num: int, exp: int, k: int) -> int:
    low = min(0, k, -exp)
    high0 = max(0, k)
    N = num * n ** (-exp - low)
    span = 1
    while n**span <= abs(N):
        span += 1
    best = None
    for high in range(high0, max(high0, low + span + 2) + 1):
        walk = 2 * (high - low) - abs(k)
        if best is not None and walk >= best:
            break
        total = walk + _digit_cost(N, n, high - low + 1)
        if best is None or total < best:
            best = total
    return best


def geodesic_length(g: GroupElement) -> int:
    """Exact |g| with respect to {a, b}, with no radius limit."""
    return _geodesic(g.n, g.u.num, g.u.exp, g.k)


def distance(x: GroupElement, y: GroupElement) -> int:
    """d(x, y) = |x^-1 y|."""
    return geodesic_length(x.inverse() * y)


# -- maps induced by partial isomorphisms ---------------------------------------------------


def qi_map(phi: PartialIsomorphism) -> Callable[[GroupElement], GroupElement]:
    """f(h t) = phi(h) for h in the domain and t in its canonical transversal."""
    domain = phi.domain

    def f(g: GroupElement) -> GroupElement:
        h, _ = coset_decompose(domain, g)
        return phi(h)

    f.phi = phi
    return f


def identity_map(g: GroupElement) -> GroupElement:
    return g


@dataclass(frozen=True)
class QiEstimate:
    K: Fraction
    C: Fraction
    C0: int
    sample_radius: int
    pairs: int

    def __str__(self):
        return f"K={_fmt(self.K)} C={_fmt(self.C)} C0={self.C0} radius={self.sample_radius} pairs={self.pairs}"


def _fmt(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _k_grid(kmax: Fraction, max_den: int) -> list[Fraction]:
    top = max(1, math.ceil(kmax))
    grid = {Fraction(p, q) for q in range(1, max_den + 1) for p in range(q, top * q + 1)}
    return sorted(grid)


def _additive_constant(K: Fraction, profile: Counter) -> Fraction:
    worst = Fraction(0)
    for (dx, dy) in profile:
        worst = max(worst, dy - K * dx, dx / K - dy)
    return worst


def fit_constants(profile: Counter, max_den: int = 8, rule: str = "least-k") -> tuple[Fraction, Fraction]:
    """Choose (K, C) for a (d_x, d_fx) profile.

    ``least-k``: the least grid K (always K = 1 on a finite sample) with its
    minimal C.  ``min-c``: the grid K whose minimal C is smallest, ties to
    the smaller K.  The grid is the rationals >= 1 with denominator <= max_den.
    """
    if rule == "least-k":
        K = Fraction(1)
        return K, _additive_constant(K, profile)
    if rule != "min-c":
        raise ValueError(f"unknown fit rule {rule!r}")
    ratios = [Fraction(max(dx, dy), min(dx, dy)) for dx, dy in profile if dx and dy]
    kmax = max(ratios, default=Fraction(1))
    best = None
    for K in _k_grid(kmax, max_den):
        C = _additive_constant(K, profile)
        if best is None or C < best[1]:
            best = (K, C)
    return best


def estimate_qi_constants(
    f: Callable[[GroupElement], GroupElement],
    ctx: GroupContext,
    R: int,
    *,
    max_pairs: int = 250_000,
    seed: int = 0,
    max_den: int = 8,
    rule: str = "least-k",
    csv_path: str | None = None,
) -> QiEstimate:
    """Fit K^-1 d(x,y) - C <= d(fx,fy) <= K d(x,y) + C on the radius-R ball.

    Uses every unordered pair unless there are more than max_pairs, in which
    case a seeded uniform sample of max_pairs pairs is taken.  C0 is the
    largest distance from a ball element to the image of the ball.
    """
    if R > MAX_QI_RADIUS:
        raise ValueError(f"radius {R} exceeds the QI limit {MAX_QI_RADIUS}")
    elems = list(ball(ctx, R))
    images = [f(x) for x in elems]
    size = len(elems)
    total = size * (size - 1) // 2
    if total <= max_pairs:
        pairs: Iterator[tuple[int, int]] = ((i, j) for i in range(size) for j in range(i + 1, size))
        count = total
    else:
        rng = random.Random(seed)
        chosen = set()
        while len(chosen) < max_pairs:
            i, j = sorted(rng.sample(range(size), 2))
            chosen.add((i, j))
        pairs = iter(sorted(chosen))
        count = max_pairs

    profile: Counter = Counter()
    writer = None
    handle = None
    if csv_path is not None:
        handle = open(csv_path, "w", newline="")
        writer = csv.writer(handle)
        writer.writerow(["d_x", "d_fx"])
    try:
        for i, j in pairs:
            dx = distance(elems[i], elems[j])
            dy = distance(images[i], images[j])
            profile[dx, dy] += 1
            if writer is not None:
                writer.writerow([dx, dy])
    finally:
        if handle is not None:
            handle.close()
    profile[0, 0] += size  # diagonal pairs

    K, C = fit_constants(profile, max_den, rule)
    image_set = set(images)
    C0 = max(min(distance(x, y) for y in image_set) for x in elems)
    return QiEstimate(K, C, C0, R, count)


def check_qi_bounds(
    f: Callable[[GroupElement], GroupElement], ctx: GroupContext, R: int, K: Fraction, C: Fraction
) -> int:
    """Number of pairs in the radius-R ball violating the two-sided bound."""
    elems = list(ball(ctx, R))
    images = [f(x) for x in elems]
    bad = 0
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            dx = distance(elems[i], elems[j])
            dy = distance(images[i], images[j])
            if not dx / K - C <= dy <= K * dx + C:
                bad += 1
    return bad


def sup_distance(
    f: Callable[[GroupElement], GroupElement],
    g: Callable[[GroupElement], GroupElement],
    ctx: GroupContext,
    R: int,
) -> int:
    """max d(f(x), g(x)) over the radius-R ball."""
    return max(distance(f(x), g(x)) for x in ball(ctx, R))


def displacement(phi: PartialIsomorphism, h: GroupElement, N: int, R: int) -> int | None:
    """max over |i| <= N of |h^-i phi(h^i)| by BFS; None when some value exceeds R."""
    worst = 0
    for i in range(-N, N + 1):
        d = word_length(h ** (-i) * phi(h**i), R)
        if d is None:
            return None
        worst = max(worst, d)
    return worst


def displacement_profile(phi: PartialIsomorphism, h: GroupElement, N: int) -> list[int]:
    """[|h^-i phi(h^i)| for i = 0..N] via the closed-form length."""
    return [geodesic_length(h ** (-i) * phi(h**i)) for i in range(N + 1)]
