"""Command-line entry point: ``bistellar {build,validate,certify,explore,flips,restrict}``.

Exit codes: 0 success / PASS, 1 a geometric check failed, 2 usage or input error.
Every command is deterministic; ``--threads`` never changes any output.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import __version__
from .certify import (
    CertificateReport,
    certify_A26,
    certify_A50,
    certify_files,
    certify_local_product,
    certify_perturbed,
)
from .constructions import CONSTRUCTION_IDS, Construction, build, build_repaired_A26
from .exactgeom import GeometryError, PointConfiguration
from .explore import all_triangulations_bruteforce, enumerate_flip_graph, export_graph
from .flips import apply_flip, find_flips, format_flip
from .io import (
    format_config,
    format_orientation,
    format_simplices,
    parse_complex,
    parse_config,
    parse_orientation,
    parse_triangulation,
    read_text,
    write_files,
)
from .orientation import check_restriction_preconditions, reversible_edges, triangulation_to_orientation
from .triangulation import prism_config, pulling_triangulation, staircase, validate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SMALL_IDS = ("HEXAGON", "SQUARE_CENTER", "PRISM1", "PRISM2", "PRISM3", "PRISM4")
CERTIFY_IDS = ("A50", "A26", "A26_REPAIRED", "A50_PERTURBED", "A26_PERTURBED",
               "A26_REPAIRED_PERTURBED", "A50_LOCAL")


class UsageError(Exception):
    pass


def _small(cid: str) -> Construction:
    if cid == "HEXAGON":
        cfg = PointConfiguration(2, ((2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)))
        return Construction(cid, cfg, triangulation=pulling_triangulation(cfg))
    if cid == "SQUARE_CENTER":
        cfg = PointConfiguration(2, ((0, 0), (2, 0), (0, 2), (2, 2), (1, 1)))
        return Construction(cid, cfg, triangulation=pulling_triangulation(cfg))
    d = int(cid[len("PRISM"):])
    return Construction(cid, prism_config(d), triangulation=staircase(d, list(range(d + 1))))


def _build(cid: str) -> Construction:
    if cid in SMALL_IDS:
        return _small(cid)
    try:
        return build(cid)
    except KeyError:
        raise UsageError(f"unknown construction {cid!r}; choose from "
                         f"{', '.join(CONSTRUCTION_IDS + SMALL_IDS)}") from None


def _levels_meta(c: Construction) -> Optional[dict]:
    if c.bottom is None:
        return None
    return {"bottom": {str(k): v for k, v in sorted(c.bottom.items())},
            "top": {str(k): v for k, v in sorted(c.top.items())}}


# ---------------------------------------------------------------------------
# build
# ---------------------------------------------------------------------------

def cmd_build(args) -> int:
    c = _build(args.id)
    files = {"config.txt": format_config(c.config)}
    if c.complex is not None:
        files["complex.txt"] = format_simplices(c.complex.top_faces)
    if c.orientation is not None:
        files["orientation.txt"] = format_orientation(c.orientation)
    if c.triangulation is not None:
        files["triangulation.txt"] = format_simplices(c.triangulation.simplices)
    if args.id in ("M50", "M26"):
        files["vectors.txt"] = format_simplices(c.vectors.vectors)
    meta = {"id": c.id, "version": __version__}
    lv = _levels_meta(c)
    if lv:
        meta["levels"] = lv
    path = write_files(Path(args.out), files, meta)
    print(f"{c.id}: wrote {', '.join(sorted(files))} and {path.name} to {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# file-based inputs
# ---------------------------------------------------------------------------

def _load_config(args) -> PointConfiguration:
    return parse_config(read_text(args.config))


def _load_levels(path: Optional[str]):
    if path is None:
        return None, None
    data = json.loads(read_text(path))
    lv = data.get("levels", data)
    return ({int(k): v for k, v in lv["bottom"].items()}, {int(k): v for k, v in lv["top"].items()})


def cmd_validate(args) -> int:
    config = _load_config(args)
    tri = parse_triangulation(read_text(args.triangulation), config)
    r = validate(tri)
    if r.ok:
        print(f"valid: {len(tri)} simplices, {r.pairs_checked} pairs checked")
        return EXIT_OK
    print(f"INVALID ({r.check}): {r.message}")
    if r.witness is not None:
        print(f"witness: {r.witness}")
    return EXIT_FAIL


def cmd_flips(args) -> int:
    config = _load_config(args)
    tri = parse_triangulation(read_text(args.triangulation), config)
    flips = find_flips(tri)
    for f in flips:
        print(format_flip(f))
    print(f"# {len(flips)} flips", file=sys.stderr)
    if args.apply is not None:
        if not 0 <= args.apply < len(flips):
            raise UsageError(f"--apply index must be in [0, {len(flips)})")
        t2 = apply_flip(tri, flips[args.apply])
        Path(args.out).write_text(format_simplices(t2.simplices))
    return EXIT_OK


def cmd_restrict(args) -> int:
    config = _load_config(args)
    tri = parse_triangulation(read_text(args.triangulation), config)
    cx = parse_complex(read_text(args.complex))
    bottom, top = _load_levels(args.levels)
    pre = check_restriction_preconditions(config, cx, bottom, top)
    if not pre.ok:
        f, why, extra = pre.failures[0]
        print(f"restriction undefined: prism over {f}: {why} {extra or ''}".rstrip())
        return EXIT_FAIL
    o = triangulation_to_orientation(tri, cx, bottom, top)
    sys.stdout.write(format_orientation(o))
    print(f"# reversible edges: {reversible_edges(o).count}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# certify
# ---------------------------------------------------------------------------

def _certify_files(args, log) -> CertificateReport:
    config = _load_config(args)
    cx = parse_complex(read_text(args.complex), config)
    o = parse_orientation(read_text(args.orientation), cx)
    tri = parse_triangulation(read_text(args.triangulation), config)
    bottom, top = _load_levels(args.levels)
    return certify_files(config, cx, o, tri, bottom, top, log=log)


def cmd_certify(args) -> int:
    log = (lambda m: print(m, file=sys.stderr)) if args.verbose else None
    if args.id is None:
        missing = [k for k in ("config", "complex", "orientation", "triangulation") if getattr(args, k) is None]
        if missing:
            raise UsageError("certify needs an ID or all of --config --complex --orientation --triangulation")
        rep = _certify_files(args, log)
    else:
        cid = args.id
        if cid not in CERTIFY_IDS:
            raise UsageError(f"no certificate for {cid!r}; choose from {', '.join(CERTIFY_IDS)}")
        if cid == "A50":
            rep = certify_A50(log=log)
        elif cid == "A26":
            rep = certify_A26(log=log)
        elif cid == "A26_REPAIRED":
            rep = certify_A26(build_repaired_A26(), log=log)
        elif cid == "A50_LOCAL":
            rep = certify_local_product(log=log)
        else:
            rep = certify_perturbed(cid[: -len("_PERTURBED")], args.alpha, args.beta, log=log)
    text = rep.to_json() if args.json else rep.to_text()
    if args.report:
        Path(args.report).write_text(text)
    sys.stdout.write(text)
    return EXIT_OK if rep.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# explore
# ---------------------------------------------------------------------------

def cmd_explore(args) -> int:
    config = _load_config(args)
    seed = (parse_triangulation(read_text(args.seed), config) if args.seed
            else pulling_triangulation(config))
    g = enumerate_flip_graph(seed, node_limit=args.node_limit, time_limit=args.time_limit,
                             threads=args.threads)
    summary = {"nodes": len(g.nodes), "edges": len(g.edges), "components": len(g.components()),
               "status": "complete" if g.complete else "partial", "reason": g.reason}
    if args.bruteforce:
        brute = all_triangulations_bruteforce(config)
        summary["bruteforce_nodes"] = len(brute)
        summary["bruteforce_agrees"] = brute == set(g.nodes)
    if args.out:
        adj, names = export_graph(g)
        write_files(Path(args.out), {"graph.txt": adj, "nodes.txt": names,
                                     "summary.json": json.dumps(summary, indent=2, sort_keys=True) + "\n"})
    print(g.summary())
    if args.bruteforce:
        print(f"brute force: {summary['bruteforce_nodes']} triangulations, "
              f"{'agrees' if summary['bruteforce_agrees'] else 'DISAGREES'} with the flip graph")
        if not summary["bruteforce_agrees"]:
            return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bistellar",
        description="Exact triangulations, bistellar flips and certificates of disconnected flip graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--threads", type=int, default=1, help="worker threads (outputs never depend on it)")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="worker threads (outputs never depend on it)")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="write a named construction to files",
                       description="Write configuration, complex, orientation and triangulation files "
                                   "plus a manifest with SHA-256 digests.  IDs: "
                                   + ", ".join(CONSTRUCTION_IDS + SMALL_IDS))
    b.add_argument("id")
    b.add_argument("--out", required=True, help="output directory")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("validate", parents=[common], help="check that a simplex list triangulates a configuration",
                       description="Exact validity: full-dimensional simplices, volume sum equal to the "
                                   "hull volume, and proper pairwise intersection.")
    v.add_argument("--config", required=True)
    v.add_argument("--triangulation", required=True)
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("certify", parents=[common], help="run a disconnection certificate",
                       description="Certify that a triangulation is isolated from the regular component: "
                                   "its orientation of K has no reversible edge, no flip changes its "
                                   "restriction to K x I, and a pulling triangulation restricts differently. "
                                   "A50 proves at least 13 components of the flip graph of the 24-cell "
                                   "prism configuration; A26 claims at least 17 for the 26-point "
                                   "configuration (the literal coordinates fail the prism-face check; "
                                   "A26_REPAIRED uses c points at 2/5 and passes).  A50_LOCAL checks the "
                                   "product structure giving components of size at least 3^48.")
    c.add_argument("id", nargs="?", help=", ".join(CERTIFY_IDS))
    c.add_argument("--config")
    c.add_argument("--complex")
    c.add_argument("--orientation")
    c.add_argument("--triangulation")
    c.add_argument("--levels", help="manifest.json from build, giving (v,0) and (v,1) indices")
    c.add_argument("--alpha", help="height of the lower moved point (perturbed variants)")
    c.add_argument("--beta", help="height of the upper moved point (perturbed variants)")
    c.add_argument("--report", help="also write the report to this file")
    c.add_argument("--json", action="store_true", help="JSON report instead of text")
    c.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    c.set_defaults(func=cmd_certify)

    e = sub.add_parser("explore", parents=[common], help="enumerate the flip graph from a seed by BFS",
                       description="Breadth-first flip-graph enumeration with exact canonical forms. "
                                   "Hitting a limit yields a result marked partial (exit 0).")
    e.add_argument("--config", required=True)
    e.add_argument("--seed", help="seed triangulation (default: a pulling triangulation)")
    e.add_argument("--node-limit", type=int)
    e.add_argument("--time-limit", type=float)
    e.add_argument("--bruteforce", action="store_true",
                   help="cross-check the node set against exhaustive enumeration (small inputs)")
    e.add_argument("--out", help="directory for graph.txt, nodes.txt, summary.json")
    e.set_defaults(func=cmd_explore)

    f = sub.add_parser("flips", parents=[common], help="list all flips of a triangulation",
                       description="One line per applicable flip: 'Z+ | Z- | direction'; the flip "
                                   "removes the simplices containing Z-.")
    f.add_argument("--config", required=True)
    f.add_argument("--triangulation", required=True)
    f.add_argument("--apply", type=int, help="index of a flip to apply")
    f.add_argument("--out", help="where to write the flipped triangulation")
    f.set_defaults(func=cmd_flips)

    r = sub.add_parser("restrict", parents=[common], help="read the orientation induced on K x I",
                       description="Restrict a triangulation to K x I and print the orientation of K "
                                   "read from the square diagonals; checks that each F x I is a face.")
    r.add_argument("--config", required=True)
    r.add_argument("--triangulation", required=True)
    r.add_argument("--complex", required=True)
    r.add_argument("--levels", help="manifest.json from build, giving (v,0) and (v,1) indices")
    r.set_defaults(func=cmd_restrict)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be positive")
    if args.command == "flips" and args.apply is not None and not args.out:
        parser.error("--apply needs --out")
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except GeometryError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
