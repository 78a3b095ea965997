"""Fit quasi-isometry constants for the maps f_phi of a few commensurator classes.

    python3 scripts/qi_baselines.py --radius 6 --out results/qi

writes one CSV of (d_x, d_fx) pairs per map and prints a summary table.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from bscomm import GMatrix, GroupContext, estimate_qi_constants, matrix_of, qi_map, realize
from bscomm.exact_arith import parse_gmatrix
from bscomm.quasi_isometry import sup_distance

DEFAULT_CLASSES = ("[1 0; 0 1]", "[1 0; 0 2]", "[1 0; 0 1/3]", "[1 1/3; 0 1]", "[1 -1; 0 1]", "[1 0; 0 -1]")


@dataclass
class Config:
    n: int = 2
    radius: int = 6
    classes: list[str] = field(default_factory=lambda: list(DEFAULT_CLASSES))
    max_pairs: int = 250_000
    seed: int = 0
    out: Path | None = None


def run(cfg: Config) -> list[dict]:
    ctx = GroupContext(cfg.n)
    rows = []
    if cfg.out:
        cfg.out.mkdir(parents=True, exist_ok=True)
    for i, text in enumerate(cfg.classes):
        M = parse_gmatrix(text)
        phi = realize(M, ctx)
        f = qi_map(phi)
        back = qi_map(realize(matrix_of(phi).inverse(), ctx))
        start = time.perf_counter()
        row = {"class": text, "domain": str(phi.domain)}
        for rule in ("least-k", "min-c"):
            csv_path = str(cfg.out / f"pairs_{i}.csv") if cfg.out and rule == "least-k" else None
            est = estimate_qi_constants(
                f, ctx, cfg.radius, max_pairs=cfg.max_pairs, seed=cfg.seed, rule=rule, csv_path=csv_path
            )
            row[rule] = est
        row["coarse_inverse"] = sup_distance(lambda x: back(f(x)), lambda x: x, ctx, cfg.radius)
        row["seconds"] = time.perf_counter() - start
        rows.append(row)
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--radius", type=int, default=6)
    parser.add_argument("--class", dest="classes", action="append", help="matrix '[1 q; 0 p]' (repeatable)")
    parser.add_argument("--max-pairs", type=int, default=250_000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", type=Path)
    args = parser.parse_args()
    cfg = Config(args.n, args.radius, args.classes or list(DEFAULT_CLASSES), args.max_pairs, args.seed, args.out)
    for row in run(cfg):
        lk, mc = row["least-k"], row["min-c"]
        print(
            f"{row['class']:>16}  domain {row['domain']:<18} least-k: K={lk.K} C={lk.C}  "
            f"min-c: K={mc.K} C={mc.C}  C0={lk.C0}  sup|f'f - id|={row['coarse_inverse']}  "
            f"pairs={lk.pairs}  {row['seconds']:.1f}s"
        )


if __name__ == "__main__":
    main()
