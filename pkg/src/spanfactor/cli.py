"""Command-line entry point: ``spanfactor compute | verify | generate``.

Exit status: 0 all checks pass, 1 a theorem violation was found, 2 usage or
parse error, 3 a resource cap was exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .bounds import bound_values
from .campaign import FAMILY_THEOREMS, THEOREMS, CampaignConfig, run_campaign
from .coloring import chromatic_index
from .errors import GraphInputError, ParseError, PreconditionError, ResourceCapError
from .families import regular_with_perfect_matching
from .graph import (
    Multigraph,
    complete,
    cycle,
    max_multiplicity,
    parse,
    path,
    prop21_tree,
    serialize,
    star,
    tightness_graph,
)
from .matching import maximum_matching
from .sp import TheoremViolation, certify_sp

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_compute(args: argparse.Namespace) -> int:
    try:
        G = parse(Path(args.path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.path}: {exc.strerror}") from None
    res = certify_sp(G)
    nu = len(maximum_matching(G))
    chi = chromatic_index(G)[0] if G.m else 0
    lines = [
        f"n={G.n}",
        f"m={G.m}",
        f"sp={res.sp_value}",
        f"nu={nu}",
        f"chi_prime={chi}",
        f"max_degree={G.max_degree}",
        f"min_degree={G.min_degree}",
        f"mu={max_multiplicity(G)}",
    ]
    for r in bound_values(G, res.sp_value).records:
        lines.append(f"bound name={r.name} value={r.value} holds={str(r.holds).lower()} tight={str(r.tight).lower()}")
    if args.witnesses:
        F = res.witness_factor
        lines.append(f"factor a={F.a} b={F.b} edges={','.join(map(str, F.subgraph.sorted_edges())) or '-'}")
        S = res.witness_spanning_max
        colored = ",".join(f"{e}:{S.color_of[e]}" for e in sorted(S.color_of))
        lines.append(f"spanning_max k={S.k} size={len(S.host)} edges={colored}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    theorems: tuple[str, ...] = ()
    if args.theorems and args.theorems != "all":
        theorems = tuple(t.strip() for t in args.theorems.split(","))
        unknown = [t for t in theorems if t not in THEOREMS]
        if unknown:
            raise UsageError(f"unknown theorem(s): {', '.join(unknown)}; choose from {', '.join(THEOREMS)}")
    if args.family == "exhaustive" and args.max_n > 7:
        raise UsageError("exhaustive family supports --max-n up to 7")
    if args.family == "random" and 2 * args.max_edges < args.max_n:
        raise UsageError("--max-edges too small to cover --max-n vertices")
    cfg = CampaignConfig(
        family=args.family,
        max_n=args.max_n,
        max_edges=args.max_edges,
        max_mult=args.max_mult,
        seed=args.seed,
        count=args.count,
        theorems=theorems,
    )
    jobs = args.jobs if args.jobs else (os.cpu_count() or 1)
    result = run_campaign(cfg, jobs=jobs)
    _emit(result.text, args.output)
    if result.failed:
        return EXIT_VIOLATION
    if result.capped:
        return EXIT_CAP
    return EXIT_OK


def _named_graph(name: str) -> Multigraph:
    """``K_n``, ``K_a,b``, ``C_n`` or ``P_n``."""
    try:
        kind, _, size = name.partition("_")
        if kind == "K" and "," in size:
            a, b = map(int, size.split(","))
            return Multigraph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))
        makers = {"K": complete, "C": cycle, "P": path}
        return makers[kind](int(size))
    except (KeyError, ValueError):
        raise UsageError(f"unknown base graph {name!r}") from None


def _params(items: list[str]) -> dict[str, str]:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"parameter {item!r} is not key=value")
        out[key] = value
    return out


def _int(params: dict[str, str], key: str, default: int | None = None) -> int:
    if key not in params:
        if default is None:
            raise UsageError(f"missing parameter {key}")
        return default
    try:
        return int(params[key])
    except ValueError:
        raise UsageError(f"parameter {key} must be an integer") from None


def cmd_generate(args: argparse.Namespace) -> int:
    p = _params(args.params)
    fam = args.family
    if fam == "prop21":
        a, b, n = _int(p, "a"), _int(p, "b"), _int(p, "n")
        G = prop21_tree(a, b, n)
        spec = f"prop21 a={a} b={b} n={n}"
    elif fam == "tightness":
        r = _int(p, "r")
        H = _named_graph(p["base"]) if "base" in p else regular_with_perfect_matching(r)
        if not H.is_regular() or H.max_degree != r:
            raise UsageError(f"base graph is not {r}-regular")
        f = maximum_matching(H).sorted_edges()[0]
        G = tightness_graph(H, f)
        spec = f"tightness r={r} base={p.get('base', 'default')} edge={f}"
    elif fam in ("star", "path", "cycle"):
        key = "p" if fam == "star" else "n"
        size = _int(p, key)
        G = {"star": star, "path": path, "cycle": cycle}[fam](size)
        spec = f"{fam} {key}={size}"
    else:
        raise UsageError(f"unknown family {fam!r}")
    _emit(serialize(G, [f"generator: {spec}"]), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spanfactor", description="Spanning k-edge-colorable subgraphs and [1,k]-factors.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="sp, ν, χ′ and bounds for a graph file")
    c.add_argument("path")
    c.add_argument("--witnesses", action="store_true", help="print a [1,sp]-factor and a spanning maximum sp-ECS")
    c.add_argument("--output", metavar="PATH")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="run a verification campaign")
    v.add_argument("family", choices=sorted(FAMILY_THEOREMS))
    v.add_argument("--max-n", type=int, default=6, help="largest vertex count (random: exact count)")
    v.add_argument("--max-edges", type=int, default=10, help="edge limit (random: exact count)")
    v.add_argument("--max-mult", type=int, default=1, help="largest edge multiplicity")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--count", type=int, default=100, help="instances for random and cubic families")
    v.add_argument("--theorems", default="all", help=f"comma list from: {', '.join(THEOREMS)}")
    v.add_argument("--jobs", type=int, default=0, help="worker processes (default: all CPUs)")
    v.add_argument("--output", metavar="PATH")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("generate", help="write a generated graph file")
    g.add_argument("family", choices=["prop21", "tightness", "star", "path", "cycle"])
    g.add_argument("params", nargs="*", metavar="KEY=VALUE")
    g.add_argument("--output", metavar="PATH")
    g.set_defaults(func=cmd_generate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, GraphInputError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except TheoremViolation as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
