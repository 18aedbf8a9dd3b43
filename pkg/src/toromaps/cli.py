"""
Command-line interface.

Tables go to standard output as TSV, logs to standard error. Exit status
is 0 on success, 1 when an input map fails a class predicate, 2 on usage
errors (including sizes above the enumeration cap).

Usage:
    toromaps series --family Te --order 9
    toromaps enum --edges 4 --class T --group-by vf
    toromaps psi --in U.tmap --out H.tmap --trace
    toromaps phi --in H.tmap --out U.tmap
    toromaps check --class H --in H.tmap
    toromaps decompose --in Q.tmap --edge 3 --out-dir parts/
    toromaps sample --leaves 5 --seed 7
    toromaps export --in H.tmap --format dot
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import pandas as pd

from toromaps.bijection import close_all, open_map
from toromaps.config import settings
from toromaps.core.logging import logger, setup_logging
from toromaps.decomposition import MarkedQuadrangulation, split
from toromaps.errors import CapExceeded, MapError, NotBalanced
from toromaps.maps.predicates import check_in_D, check_in_H, check_in_Q, check_in_T, check_in_T3
from toromaps.maps.tmap import dumps, read_tmap, to_dot, to_json, write_tmap
from toromaps.oracle import EnumSpec, coefficient_table, cross_check_bijections, enumerate_rooted, summary_frame
from toromaps.series import FAMILIES, BivariateSeries
from toromaps.unicellular import classify, is_balanced, sample_Ubal


def _emit(frame: pd.DataFrame, index: bool = False) -> None:
    sys.stdout.write(frame.to_csv(sep="\t", index=index, lineterminator="\n"))


def _check_Ubal(m) -> None:
    u = classify(m)
    if not is_balanced(u):
        raise NotBalanced("kernel cycles have unequal gamma-scores")


CHECKS = {
    "T": check_in_T,
    "Q": check_in_Q,
    "H": check_in_H,
    "T3": check_in_T3,
    "D": check_in_D,
    "Ubal": _check_Ubal,
}


# ===== SUBCOMMANDS =====


def cmd_series(args) -> int:
    series = FAMILIES[args.family](args.order)
    _emit(series.to_frame(), index=isinstance(series, BivariateSeries))
    return 0


def cmd_enum(args) -> int:
    spec = EnumSpec(
        edges=args.edges,
        cls=args.cls,
        jobs=args.jobs,
        genus=args.genus,
        bipartite=args.bipartite,
        rooted=not args.unrooted,
    )
    if args.emit:
        out_dir = Path(args.emit)
        maps = enumerate_rooted(spec)
        for k, m in enumerate(maps, start=1):
            write_tmap(out_dir / f"{args.cls}_{args.edges}_{k:05d}.tmap", m)
        logger.info(f"wrote {len(maps)} maps to {out_dir}")
    if args.group_by == "vf":
        _emit(coefficient_table(spec), index=True)
    else:
        _emit(summary_frame(spec))
    return 0


def cmd_psi(args) -> int:
    doc = read_tmap(args.input)
    result = close_all(doc.map, seed=args.seed)
    write_tmap(args.output, result.h, result.x.out)
    logger.info(f"closed {len(result.trace)} leaves, wrote {args.output}")
    if args.trace:
        _emit(pd.DataFrame(result.trace.steps, columns=["leaf_dart", "target_dart"]))
    return 0


def cmd_phi(args) -> int:
    doc = read_tmap(args.input)
    u = open_map(doc.map, seed=args.seed)
    write_tmap(args.output, u.carrier)
    logger.info(f"opened into {u.n_leaves} leaves, wrote {args.output}")
    return 0


def cmd_check(args) -> int:
    doc = read_tmap(args.input)
    CHECKS[args.cls](doc.map)
    print(f"{args.cls}\tok")
    return 0


def cmd_decompose(args) -> int:
    doc = read_tmap(args.input)
    q = doc.map
    if not 0 <= args.edge < q.n_edges:
        raise MapError(f"edge index {args.edge} outside 0..{q.n_edges - 1}")
    marked = q.edges[args.edge][0]
    parts = split(MarkedQuadrangulation(q.with_root(marked), marked))
    out_dir = Path(args.out_dir)
    write_tmap(out_dir / "h_prime.tmap", parts.h_prime)
    write_tmap(out_dir / "d_prime.tmap", parts.d_prime)
    manifest = {
        "source": str(args.input),
        "marked_edge": args.edge,
        "h_prime_root_corner": parts.h_prime.root,
        "d_prime_root_edge": parts.d_prime.root,
    }
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    logger.info(f"wrote decomposition to {out_dir}")
    return 0


def cmd_sample(args) -> int:
    u = sample_Ubal(args.leaves, seed=args.seed)
    text = dumps(u.carrier)
    if args.output:
        write_tmap(args.output, u.carrier)
    else:
        sys.stdout.write(text)
    return 0


def cmd_export(args) -> int:
    doc = read_tmap(args.input)
    render = to_dot if args.format == "dot" else to_json
    sys.stdout.write(render(doc.map, doc.out))
    return 0


def cmd_verify(args) -> int:
    report = cross_check_bijections(max_leaves=args.leaves, max_t_edges=args.edges)
    _emit(report.drop(columns=["witness"]))
    return 0 if int(report["failures"].sum()) == 0 else 1


# ===== PARSER =====


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toromaps",
        description="Bijections, decompositions and counting for toroidal maps",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--log-level", default=None, help="Override TOROMAPS_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", help="Print a truncated generating function as TSV")
    p.add_argument("--family", choices=sorted(FAMILIES), required=True)
    p.add_argument("--order", type=int, default=settings.SERIES_ORDER)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("enum", help="Enumerate rooted maps of a class")
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--class", dest="cls", choices=["all", "T", "Q", "H", "Ubal", "T3", "D"], default="all")
    p.add_argument("--group-by", choices=["vf"], default=None)
    p.add_argument("--emit", default=None, help="Directory for one .tmap file per map")
    p.add_argument("--jobs", type=int, default=settings.ENUM_JOBS)
    p.add_argument("--genus", type=int, default=None)
    p.add_argument("--bipartite", action="store_true")
    p.add_argument("--unrooted", action="store_true", help="Count isomorphism classes instead of rooted maps")
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("psi", help="Close a balanced unicellular map")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--trace", action="store_true", help="Print the closure steps as TSV")
    p.add_argument("--seed", type=int, default=None, help="Random closure order")
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("phi", help="Open a 6-quadrangular toroidal map")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--seed", type=int, default=None, help="Shuffle the starting orientation")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("check", help="Test class membership, printing the violated condition")
    p.add_argument("--class", dest="cls", choices=sorted(CHECKS), required=True)
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose", help="Split a marked quadrangulation at its maximal hexagon")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--edge", type=int, required=True, help="Edge index in alpha order")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser(
        "sample",
        help="Random balanced unicellular map (by rejection; the distribution is NOT uniform)",
    )
    p.add_argument("--leaves", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", dest="output", default=None)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("export", help="Export a map as Graphviz or JSON")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("verify", help="Run the bijection and decomposition round-trips")
    p.add_argument("--leaves", type=int, default=3)
    p.add_argument("--edges", type=int, default=4)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.log_level:
        setup_logging(args.log_level)
    try:
        return args.func(args)
    except (CapExceeded, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except MapError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
