"""Command line front end.

Verbs: tau, nu, fano, chi, ratio on a matroid file; certify-cographic on
a graph file; construct for the named families; campaign for the
verification sweeps.  Exit code 0 means every checked predicate held,
2 means violations were found, 3 means some instance went unsolved
(violations win when both occur).
"""

from __future__ import annotations

import argparse
import json
import sys

from .campaigns import (
    cographic_campaign,
    enumerate_rank4_campaign,
    ratio_check,
    sample_rank5_campaign,
)
from .certifier import CertificationError, certify
from .constructions import (
    build_bose_burton,
    build_partial_spread,
    build_pg,
    build_spread,
)
from .graphs import parse_graph
from .matroid import (
    UnsupportedDimension,
    contains_fano,
    critical_number,
    parse_matroid,
    write_matroid,
)
from .solver import nu, tau


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(obj: dict, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_solve(args: argparse.Namespace) -> int:
    mw = parse_matroid(_read_text(args.input))
    solve = tau if args.verb == "tau" else nu
    report = solve(mw, triangle_cap=args.triangle_cap)
    _emit(report.to_json(), args.out)
    return 0 if report.status == "optimal" else 3


def _cmd_fano(args: argparse.Namespace) -> int:
    emb = contains_fano(parse_matroid(_read_text(args.input)).matroid)
    _emit(
        {"fano": emb is not None, "map_images": list(emb.phi.images) if emb else None},
        args.out,
    )
    return 0


def _cmd_chi(args: argparse.Namespace) -> int:
    _emit({"chi": critical_number(parse_matroid(_read_text(args.input)).matroid)}, args.out)
    return 0


def _cmd_ratio(args: argparse.Namespace) -> int:
    rec = ratio_check(parse_matroid(_read_text(args.input)).matroid)
    _emit(rec, args.out)
    if rec["violations"]:
        return 2
    return 3 if rec["status"] == "unsolved" else 0


def _cmd_certify(args: argparse.Namespace) -> int:
    g, weights = parse_graph(_read_text(args.graph))
    try:
        cert = certify(g, weights)
    except CertificationError as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return 2
    _emit(cert.to_json(), args.out)
    return 0


def _cmd_construct(args: argparse.Namespace) -> int:
    n, k, d = args.n, args.k, args.d
    if args.family == "pg":
        m = build_pg(n)
        manifest = {"construction": "pg", "n": n, "points": m.size}
    elif args.family == "bb":
        b = build_bose_burton(n, k)
        m = b.matroid
        manifest = {
            "construction": "bose-burton",
            "n": n,
            "k": k,
            "hole_rank": n - k,
            "points": m.size,
        }
    elif args.family == "spread":
        s = build_spread(n, d)
        m = build_pg(n)
        manifest = {
            "construction": "spread",
            "n": n,
            "d": d,
            "members": [sorted(f.points()) for f in s.members],
        }
    else:
        ps = build_partial_spread(n)
        m = build_pg(n)
        manifest = {
            "construction": "partial-spread",
            "n": n,
            "triangles": [list(t) for t in ps.triangles],
            "leftover": list(ps.leftover),
        }
    sys.stdout.write(write_matroid(m))
    if args.out:
        _emit(manifest, args.out)
    else:
        print(json.dumps(manifest, sort_keys=True), file=sys.stderr)
    return 0


def _cmd_campaign(args: argparse.Namespace) -> int:
    if args.kind == "rank4":
        report = enumerate_rank4_campaign(jobs=args.jobs)
    elif args.kind == "rank5":
        report = sample_rank5_campaign(1000 if args.count is None else args.count, args.seed)
    else:
        report = cographic_campaign(
            max_vertices=args.max_vertices if args.max_vertices > 0 else None,
            random_count=args.count or 0,
            seed=args.seed,
        )
    _emit(report.to_json(), args.out)
    print(report.summary(), file=sys.stderr)
    if report.violations:
        return 2
    return 3 if report.unsolved else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tuza",
        description="Exact triangle packing and hitting on simple binary matroids.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    for verb, blurb in (
        ("tau", "minimum-weight triangle hitting set"),
        ("nu", "maximum triangle packing"),
    ):
        p = sub.add_parser(verb, help=blurb)
        p.add_argument("--input", required=True, help="matroid file, or - for stdin")
        p.add_argument("--triangle-cap", type=int, default=512)
        p.add_argument("--out", help="write JSON here instead of stdout")
        p.set_defaults(func=_cmd_solve)

    for verb, fn, blurb in (
        ("fano", _cmd_fano, "test for a Fano restriction"),
        ("chi", _cmd_chi, "critical number"),
        ("ratio", _cmd_ratio, "solve and check the ratio predicates"),
    ):
        p = sub.add_parser(verb, help=blurb)
        p.add_argument("--input", required=True, help="matroid file, or - for stdin")
        p.add_argument("--out", help="write JSON here instead of stdout")
        p.set_defaults(func=fn)

    p = sub.add_parser("certify-cographic", help="2-approximation certificate for a graph")
    p.add_argument("graph", help="graph file, or - for stdin")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("construct", help="emit a named family instance")
    p.add_argument("family", choices=("pg", "bb", "spread", "partial-spread"))
    p.add_argument("--n", type=int, required=True, help="ambient dimension")
    p.add_argument("--k", type=int, default=2, help="hole codimension (bb)")
    p.add_argument("--d", type=int, default=2, help="member rank (spread)")
    p.add_argument("--out", help="write the JSON manifest here")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("campaign", help="run a verification sweep")
    p.add_argument("kind", choices=("rank4", "rank5", "cographic"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, help="samples (rank5, default 1000) / random graphs (cographic, default 0)")
    p.add_argument("--max-vertices", type=int, default=6, help="0 skips the exhaustive part")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write the report here instead of stdout")
    p.set_defaults(func=_cmd_campaign)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, UnsupportedDimension, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
