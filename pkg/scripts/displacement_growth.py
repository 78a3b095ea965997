"""Displacement |h^-i phi(h^i)| for the automorphism generators, against the
bounded displacement of inner automorphisms on their centralizers.

    python3 scripts/displacement_growth.py --n 2 3 --steps 12
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from bscomm import GroupContext, aut_generators
from bscomm.commensurator import inner
from bscomm.quasi_isometry import displacement_profile


@dataclass
class Config:
    ns: list[int] = field(default_factory=lambda: [2, 3, 6])
    steps: int = 10


def run(cfg: Config) -> dict:
    table = {}
    for n in cfg.ns:
        ctx = GroupContext(n)
        for gen in aut_generators(ctx):
            for label, h in (("b", ctx.b), ("a", ctx.a), ("ab", ctx.a * ctx.b)):
                table[n, gen.name, label] = displacement_profile(gen.action, h, cfg.steps)
        g = ctx.a * ctx.b
        table[n, "inner(ab)", "ab"] = displacement_profile(inner(g), g, cfg.steps)
    return table


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, nargs="+", default=[2, 3, 6])
    parser.add_argument("--steps", type=int, default=10)
    args = parser.parse_args()
    for (n, name, h), profile in run(Config(args.n, args.steps)).items():
        print(f"n={n:<3} {name:<10} h={h:<3} {' '.join(map(str, profile))}")


if __name__ == "__main__":
    main()
