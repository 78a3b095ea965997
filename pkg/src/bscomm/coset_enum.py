"""Todd-Coxeter coset enumeration (HLT strategy) for BS(1, n).

Works from the presentation <a, b | a^-1 b a b^-n> and subgroup generator
words alone, so it serves as an independent oracle for the index and the
transversal computed in :mod:`bscomm.subgroup_lattice`.  Cosets are right
cosets H g; tracing a word from coset 0 gives the coset H w.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bs_group import GroupElement, Word, normal_form

# column order: a, a^-1, b, b^-1; the inverse column of x is x ^ 1
A, A_INV, B, B_INV = range(4)
_LETTER = {("a", 1): A, ("a", -1): A_INV, ("b", 1): B, ("b", -1): B_INV}


def word_to_columns(word: Word) -> list[int]:
    out = []
    for letter, exp in word:
        col = _LETTER[letter, 1 if exp > 0 else -1]
        out.extend([col] * abs(exp))
    return out


def element_columns(g: GroupElement) -> list[int]:
    return word_to_columns(normal_form(g))


class CosetLimitExceeded(RuntimeError):
    pass


@dataclass
class CosetTable:
    table: list[list[int]]

    @property
    def index(self) -> int:
        return len(self.table)

    def trace(self, columns: list[int], start: int = 0) -> int:
        c = start
        for x in columns:
            c = self.table[c][x]
        return c

    def coset_of(self, g: GroupElement) -> int:
        """Number of the right coset H g."""
        return self.trace(element_columns(g))


def enumerate_cosets(n: int, subgroup_gens: list[GroupElement], max_cosets: int = 2_000_000) -> CosetTable:
    relator = [A_INV, B, A] + [B_INV] * n
    gens_cols = [element_columns(g) for g in subgroup_gens]

    table: list[list[int | None]] = [[None] * 4]
    parent = [0]

    def rep(c):
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(c, x):
        if len(table) >= max_cosets:
            raise CosetLimitExceeded(f"more than {max_cosets} cosets defined")
        d = len(table)
        table.append([None] * 4)
        parent.append(d)
        table[c][x] = d
        table[d][x ^ 1] = c

    def coincidence(c1, c2):
        queue = []

        def merge(k, l):
            k, l = rep(k), rep(l)
            if k != l:
                lo, hi = min(k, l), max(k, l)
                parent[hi] = lo
                queue.append(hi)

        merge(c1, c2)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(4):
                d = table[g][x]
                if d is None:
                    continue
                table[d][x ^ 1] = None
                mu, nu = rep(g), rep(d)
                if table[mu][x] is not None:
                    merge(nu, table[mu][x])
                elif table[nu][x ^ 1] is not None:
                    merge(mu, table[nu][x ^ 1])
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    def scan_and_fill(c, w):
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] is not None:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][w[j] ^ 1] is not None:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            define(f, w[i])

    for w in gens_cols:
        if w:
            scan_and_fill(0, w)
    alpha = 0
    while alpha < len(table):
        if parent[alpha] == alpha:
            scan_and_fill(alpha, relator)
            if parent[alpha] == alpha:
                for x in range(4):
                    if table[alpha][x] is None:
                        define(alpha, x)
        alpha += 1

    live = [c for c in range(len(table)) if parent[c] == c]
    number = {c: i for i, c in enumerate(live)}
    compact = [[number[rep(table[c][x])] for x in range(4)] for c in live]
    return CosetTable(compact)
