"""Sphere sizes of BS(1, n) in the generators {a, b}, with the closed-form
length checked against breadth-first search on every element of the ball.

    python3 scripts/ball_growth.py --n 2 3 6 --radius 10
"""

from __future__ import annotations

import argparse
import math
import time
from dataclasses import dataclass, field

from bscomm import GroupContext, geodesic_length
from bscomm.quasi_isometry import MAX_BFS_RADIUS, ball


@dataclass
class Config:
    ns: list[int] = field(default_factory=lambda: [2, 3, 4, 6])
    radius: int = 10


def run(cfg: Config) -> list[dict]:
    out = []
    for n in cfg.ns:
        start = time.perf_counter()
        B = ball(GroupContext(n), cfg.radius)
        bfs_time = time.perf_counter() - start
        mismatches = sum(geodesic_length(g) != d for g, d in B.items())
        spheres = B.sphere_sizes()
        ratio = spheres[-1] / spheres[-2] if len(spheres) > 1 and spheres[-2] else math.nan
        out.append({"n": n, "spheres": spheres, "ball": len(B), "ratio": ratio, "mismatches": mismatches, "bfs_s": bfs_time})
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, nargs="+", default=[2, 3, 4, 6])
    parser.add_argument("--radius", type=int, default=10, choices=range(MAX_BFS_RADIUS + 1), metavar="R")
    args = parser.parse_args()
    for row in run(Config(args.n, args.radius)):
        print(
            f"n={row['n']:<3} |B|={row['ball']:<8} last ratio={row['ratio']:.3f}  "
            f"closed-form mismatches={row['mismatches']}  bfs {row['bfs_s']:.2f}s"
        )
        print("      spheres:", " ".join(map(str, row["spheres"])))


if __name__ == "__main__":
    main()
