"""Command-line front end: ``bscomm --n N <group> <command> ...``.

Words use the grammar ``a``, ``b``, ``A`` (= a^-1), ``B`` (= b^-1), each
optionally followed by ``^`` and a signed integer, separated by spaces,
``*`` or nothing; ``1`` or the empty string is the identity.  Subgroup
generator lists are ``;``-separated words.  Matrices are ``"[1 q; 0 p]"``.
Composition ``comm compose M1 M2`` means "apply M1's map, then M2's".

Exit status: 0 success, 1 domain error, 2 usage error.  With
``--format structured`` every command prints one JSON object carrying
``"schema": 1``.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import redirect_stderr, redirect_stdout
from dataclasses import dataclass

from . import selftest
from .bs_group import GroupContext, GroupElement, format_word, from_matrix, normal_form, parse_word, root_extract, to_matrix
from .commensurator import (
    CommClass,
    PartialIsomorphism,
    aut_generators,
    compose,
    decompose,
    format_decomposition,
    iso_between,
    matrix_of,
    realize,
    verify_collins_relations,
)
from .errors import BSCommError
from .exact_arith import GMatrix, format_rational, parse_gmatrix
from .quasi_isometry import (
    MAX_BFS_RADIUS,
    MAX_QI_RADIUS,
    displacement,
    estimate_qi_constants,
    geodesic_length,
    qi_map,
    word_length,
)
from .subgroup_lattice import (
    CanonicalSubgroup,
    abelianization_invariant,
    canonicalize,
    contains,
    intersect,
    presentation,
    transversal,
)

SCHEMA = 1


@dataclass(frozen=True)
class CliConfig:
    n: int
    output_mode: str = "human"
    seed: int = 0

    @property
    def ctx(self) -> GroupContext:
        return GroupContext(self.n)


@dataclass
class Result:
    """Lines for human output plus the same content as a JSON-able dict."""

    lines: list[str]
    data: dict
    ok: bool = True


def word(g: GroupElement) -> str:
    return format_word(normal_form(g)) or "1"


def elem(text: str, ctx: GroupContext) -> GroupElement:
    return ctx.identity if text.strip() == "1" else parse_word(text, ctx)


def subgroup(text: str, ctx: GroupContext) -> CanonicalSubgroup:
    return canonicalize([elem(w, ctx) for w in text.split(";") if w.strip()])


def _elem_data(g: GroupElement) -> dict:
    return {"word": word(g), "u": format_rational(g.u.value), "k": g.k}


def _sub_data(H: CanonicalSubgroup) -> dict:
    return {"subgroup": str(H), "k": H.k, "l": H.l, "m": H.m}


def _iso_lines(phi: PartialIsomorphism) -> list[str]:
    D = phi.domain
    return [
        f"domain {D}",
        f"codomain {phi.codomain}",
        f"{word(D.x)} -> {word(phi.image_x)}",
        f"{word(D.y)} -> {word(phi.image_y)}",
        f"matrix {matrix_of(phi)}",
    ]


def _iso_data(phi: PartialIsomorphism) -> dict:
    D = phi.domain
    return {
        "domain": str(D),
        "codomain": str(phi.codomain),
        "images": {word(D.x): word(phi.image_x), word(D.y): word(phi.image_y)},
        "matrix": str(matrix_of(phi)),
        "map": str(phi),
    }


# -- handlers --------------------------------------------------------------------------


def cmd_elem(args, cfg: CliConfig) -> Result:
    ctx = cfg.ctx
    if args.op == "from-matrix":
        g = from_matrix(args.matrix, ctx)
        return Result([word(g)], _elem_data(g))
    g = elem(args.word, ctx)
    if args.op == "normalize":
        out = g
    elif args.op == "mul":
        out = g * elem(args.other, ctx)
    elif args.op == "pow":
        out = g**args.exponent
    elif args.op == "root":
        h = root_extract(g, args.r)
        if h is None:
            return Result(["none"], {"root": None})
        return Result([word(h)], {"root": word(h), **_elem_data(h)})
    else:  # matrix
        M = to_matrix(g)
        return Result([str(M)], {"matrix": str(M)})
    return Result([word(out)], _elem_data(out))


def cmd_subgroup(args, cfg: CliConfig) -> Result:
    ctx = cfg.ctx
    H = subgroup(args.gens, ctx)
    op = args.op
    if op == "canon":
        return Result([str(H)], _sub_data(H))
    if op == "index":
        return Result([str(H.index)], {"index": H.index, **_sub_data(H)})
    if op == "contains":
        inside = contains(H, elem(args.word, ctx))
        return Result([str(inside).lower()], {"contains": inside, **_sub_data(H)})
    if op == "transversal":
        ts = [word(t) for t in transversal(H)]
        return Result(ts, {"transversal": ts, **_sub_data(H)})
    if op == "intersect":
        K = intersect(H, subgroup(args.other, ctx))
        return Result([str(K)], _sub_data(K))
    if op == "presentation":
        P = presentation(H)
        lines = [f"x = {word(P.x)}", f"y = {word(P.y)}", f"x^-1 y x = y^{P.relator_exponent}"]
        return Result(lines, {"x": word(P.x), "y": word(P.y), "relator_exponent": P.relator_exponent})
    # iso
    K = subgroup(args.other, ctx)
    same = H.k == K.k
    t1, t2 = abelianization_invariant(H)[1], abelianization_invariant(K)[1]
    return Result(
        [str(same).lower(), f"torsion {t1} {t2}"],
        {"isomorphic": same, "torsion": [t1, t2]},
    )


def cmd_comm(args, cfg: CliConfig) -> Result:
    ctx = cfg.ctx
    op = args.op
    if op == "of-iso":
        D = subgroup(args.gens, ctx)
        X, Y = elem(args.x, ctx), elem(args.y, ctx)
        phi = PartialIsomorphism(D, canonicalize([X, Y]), X, Y)
        return Result(_iso_lines(phi), _iso_data(phi))
    if op == "between":
        phi = iso_between(subgroup(args.gens, ctx), subgroup(args.other, ctx))
        return Result(_iso_lines(phi), _iso_data(phi))
    if op == "compose":
        c = compose(CommClass(args.m1), CommClass(args.m2))
        return Result([str(c)], {"matrix": str(c)})
    if op == "realize":
        phi = realize(args.matrix, ctx)
        return Result(_iso_lines(phi), _iso_data(phi))
    if op == "decompose":
        factors = decompose(args.matrix, ctx)
        text = format_decomposition(factors)
        return Result([text or "1"], {"factors": [str(f) for f in factors], "word": text})
    if op == "aut-gens":
        lines, data = [], []
        for g in aut_generators(ctx):
            phi = g.action
            lines.append(f"{g.name}: a -> {word(phi.image_x)}; b -> {word(phi.image_y)}; matrix {g.matrix}")
            data.append({"name": g.name, "prime": g.prime, "a": word(phi.image_x), "b": word(phi.image_y), "matrix": str(g.matrix)})
        return Result(lines, {"generators": data})
    # verify-collins
    report = verify_collins_relations(ctx)
    return Result(
        [str(c) for c in report.checks],
        {"relations": [{"relation": c.relation, "passed": c.passed} for c in report.checks]},
        ok=report.all_passed,
    )


def cmd_qi(args, cfg: CliConfig) -> Result:
    ctx = cfg.ctx
    if args.op == "length":
        g = elem(args.word, ctx)
        d = geodesic_length(g) if args.exact else word_length(g, args.radius)
        return Result([str(d) if d is not None else "none"], {"length": d})
    phi = realize(args.matrix, ctx)
    if args.op == "estimate":
        est = estimate_qi_constants(
            qi_map(phi), ctx, args.radius, max_pairs=args.max_pairs, seed=cfg.seed, rule=args.fit, csv_path=args.csv
        )
        data = {
            "K": format_rational(est.K),
            "C": format_rational(est.C),
            "C0": est.C0,
            "radius": est.sample_radius,
            "pairs": est.pairs,
        }
        return Result([str(est)], data)
    h = elem(args.word, ctx)
    d = displacement(phi, h, args.count, args.radius)
    return Result([str(d) if d is not None else "unbounded"], {"displacement": d, "unbounded": d is None})


def cmd_selftest(args, cfg: CliConfig) -> Result:
    names = [args.suite] if args.suite else None
    results = selftest.run(names, cfg.seed)
    lines = [f"{name}: {check}" for name, check in results]
    data = {"seed": cfg.seed, "checks": [{"suite": s, "name": c.name, "passed": c.passed} for s, c in results]}
    return Result(lines, data, ok=all(c.passed for _, c in results))


# -- parser ---------------------------------------------------------------------------------


def _matrix(text: str) -> GMatrix:
    try:
        return parse_gmatrix(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bscomm",
        description="Exact computation in BS(1,n) = <a, b | a^-1 b a = b^n> and its commensurator.",
        epilog=__doc__.split("\n\n", 1)[1],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--n", type=int, default=2, help="the parameter n >= 2 (default 2)")
    parser.add_argument("--format", choices=["human", "structured"], default="human", dest="output_mode")
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    groups = parser.add_subparsers(dest="group", required=True)

    p = groups.add_parser("elem", help="element operations")
    ops = p.add_subparsers(dest="op", required=True)
    ops.add_parser("normalize").add_argument("word")
    q = ops.add_parser("mul")
    q.add_argument("word")
    q.add_argument("other")
    q = ops.add_parser("pow")
    q.add_argument("word")
    q.add_argument("exponent", type=int)
    q = ops.add_parser("root")
    q.add_argument("word")
    q.add_argument("r", type=int)
    ops.add_parser("matrix").add_argument("word")
    ops.add_parser("from-matrix").add_argument("matrix", type=_matrix)
    p.set_defaults(handler=cmd_elem)

    p = groups.add_parser("subgroup", help="finite-index subgroups")
    ops = p.add_subparsers(dest="op", required=True)
    for name in ("canon", "index", "transversal", "presentation"):
        ops.add_parser(name).add_argument("gens")
    q = ops.add_parser("contains")
    q.add_argument("gens")
    q.add_argument("word")
    for name in ("intersect", "iso"):
        q = ops.add_parser(name)
        q.add_argument("gens")
        q.add_argument("other")
    p.set_defaults(handler=cmd_subgroup)

    p = groups.add_parser("comm", help="commensurator classes")
    ops = p.add_subparsers(dest="op", required=True)
    q = ops.add_parser("of-iso", help="domain generators, then images of its x and y")
    q.add_argument("gens")
    q.add_argument("x")
    q.add_argument("y")
    q = ops.add_parser("between")
    q.add_argument("gens")
    q.add_argument("other")
    q = ops.add_parser("compose")
    q.add_argument("m1", type=_matrix)
    q.add_argument("m2", type=_matrix)
    for name in ("realize", "decompose"):
        ops.add_parser(name).add_argument("matrix", type=_matrix)
    ops.add_parser("aut-gens")
    ops.add_parser("verify-collins")
    p.set_defaults(handler=cmd_comm)

    p = groups.add_parser("qi", help="word metric and quasi-isometry estimates")
    ops = p.add_subparsers(dest="op", required=True)
    q = ops.add_parser("length")
    q.add_argument("word")
    q.add_argument("--radius", type=int, default=MAX_BFS_RADIUS)
    q.add_argument("--exact", action="store_true", help="closed-form length, no radius cap")
    q = ops.add_parser("estimate", help="fit QI constants for the map of a realized class")
    q.add_argument("matrix", type=_matrix)
    q.add_argument("--radius", type=int, default=4)
    q.add_argument("--max-pairs", type=int, default=250_000)
    q.add_argument("--fit", choices=["least-k", "min-c"], default="least-k")
    q.add_argument("--csv", help="write (d_x, d_fx) pairs to this file")
    q = ops.add_parser("displacement")
    q.add_argument("matrix", type=_matrix)
    q.add_argument("word")
    q.add_argument("--count", type=int, default=4)
    q.add_argument("--radius", type=int, default=10)
    p.set_defaults(handler=cmd_qi)

    p = groups.add_parser("selftest", help="run seeded self-check suites")
    p.add_argument("suite", nargs="?", choices=list(selftest.SUITES))
    p.set_defaults(handler=cmd_selftest)
    return parser


def _check_limits(parser, args):
    radius = getattr(args, "radius", None)
    if radius is None:
        return
    limit = MAX_QI_RADIUS if getattr(args, "op", None) == "estimate" else MAX_BFS_RADIUS
    if not 0 <= radius <= limit:
        parser.error(f"--radius must be between 0 and {limit}")


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with redirect_stdout(out), redirect_stderr(err):
            args = parser.parse_args(argv)
            if args.n < 2:
                parser.error("--n must be at least 2")
            _check_limits(parser, args)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = CliConfig(args.n, args.output_mode, args.seed)
    try:
        result = args.handler(args, cfg)
    except (BSCommError, ValueError) as exc:
        kind = exc.kind if isinstance(exc, BSCommError) else type(exc).__name__
        message = exc.message if isinstance(exc, BSCommError) else str(exc)
        if cfg.output_mode == "structured":
            print(json.dumps({"schema": SCHEMA, "error": kind, "message": message}), file=out)
        print(f"error: {kind}: {message}", file=err)
        return 1
    if cfg.output_mode == "structured":
        payload = {"schema": SCHEMA, "n": cfg.n, "command": f"{args.group} {getattr(args, 'op', '')}".strip()}
        payload.update(result.data)
        payload["ok"] = result.ok
        print(json.dumps(payload), file=out)
    else:
        for line in result.lines:
            print(line, file=out)
    return 0 if result.ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
