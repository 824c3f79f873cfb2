"""Command-line entry point: batch subcommands over the library.

Exit codes are partitioned by failure class: 2 parse, 3 axiom violation,
4 precondition (caps, inconsistent or non-submodular families, internal
guarantee failures), 5 canonicity violation.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from . import io as formats
from .errors import (EXIT_CANONICITY, EXIT_OK, ParseError, PreconditionError,
                     TangleForgeError)
from .graphs import DEFAULT_VERTEX_CAP, build_sk
from .iso import apply_iso, random_relabeling
from .orientations import (CONSISTENT_ENUM_CAP, PROFILE_ENUM_CAP,
                           OrientationFamily, enumerate_consistent,
                           enumerate_profiles, is_p_submodular)
from .tree import canonical_tree_set

CAP_ENV = "TANGLE_FORGE_CAP"


def _cap(default: int) -> Optional[int]:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return default
    value = int(raw)
    return None if value <= 0 else value


def _add_graph_args(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--graph", required=required, help="edge-list graph file")
    p.add_argument("-k", type=int, required=required,
                   help="keep separations of order below k")
    p.add_argument("--max-vertices", type=int, default=DEFAULT_VERTEX_CAP,
                   help="vertex cap for separation enumeration "
                        f"(default {DEFAULT_VERTEX_CAP})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tangle-forge",
        description="Separation systems, profiles, and canonical "
                    "distinguishing tree sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sk", help="build the order-k separation system of a graph")
    _add_graph_args(p, required=True)
    p.add_argument("--out", required=True, help="output system JSON")
    p.set_defaults(func=cmd_sk)

    p = sub.add_parser("profiles",
                       help="enumerate consistent orientations, flag profiles")
    p.add_argument("--system", help="system JSON (consistency flags only)")
    _add_graph_args(p, required=False)
    p.add_argument("--only-profiles", action="store_true",
                   help="write only the orientations satisfying the profile "
                        "property (requires --graph)")
    p.add_argument("--out", required=True, help="output orientations JSON")
    p.set_defaults(func=cmd_profiles)

    p = sub.add_parser("tree-set",
                       help="compute the canonical nested distinguishing set")
    p.add_argument("--system", help="system JSON")
    p.add_argument("--family", required=True,
                   help="family JSON, or the literal 'profiles' with --graph")
    _add_graph_args(p, required=False)
    p.add_argument("--out", required=True, help="output JSON")
    p.add_argument("--dot", help="also write a DOT rendering")
    p.add_argument("--fig", help="also render a figure (png/svg/pdf)")
    p.add_argument("--trace", action="store_true",
                   help="include the per-round trace in the output JSON")
    p.add_argument("--unchecked", action="store_true",
                   help="skip the upfront and per-round submodularity scans")
    p.set_defaults(func=cmd_tree_set)

    p = sub.add_parser("check", help="validate a system and optionally a family")
    p.add_argument("--system", help="system JSON")
    _add_graph_args(p, required=False)
    p.add_argument("--family", help="family JSON to check against the system")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("canon-test",
                       help="probe invariance of the tree set under relabelings")
    p.add_argument("--system", required=True, help="system JSON")
    p.add_argument("--family", required=True, help="family JSON")
    p.add_argument("--seeds", type=int, default=20,
                   help="number of relabeling seeds to try (default 20)")
    p.set_defaults(func=cmd_canon_test)

    return parser


def _load_system_or_graph(args) -> tuple:
    """Resolve the (system, graph-system-or-None) pair a subcommand works on."""
    if args.graph is not None:
        if args.k is None:
            raise ParseError("--graph requires -k")
        gs = build_sk(formats.parse_graph(args.graph), args.k, args.max_vertices)
        return gs.system, gs
    if args.system is None:
        raise ParseError("either --system or --graph with -k is required")
    return formats.load_system(args.system), None


def cmd_sk(args) -> int:
    gs = build_sk(formats.parse_graph(args.graph), args.k, args.max_vertices)
    formats.save_system(gs.system, args.out)
    print(f"wrote {args.out}: {gs.system.m} separations of order below {args.k}")
    return EXIT_OK


def cmd_profiles(args) -> int:
    system, gs = _load_system_or_graph(args)
    if args.only_profiles:
        if gs is None:
            raise ParseError(
                "--only-profiles needs the ambient lattice; pass --graph and -k")
        orientations = enumerate_profiles(gs, cap=_cap(PROFILE_ENUM_CAP))
    else:
        orientations = enumerate_consistent(system, cap=_cap(CONSISTENT_ENUM_CAP))
    formats.save_orientations(system, orientations, args.out, gs=gs)
    kind = "profiles" if args.only_profiles else "consistent orientations"
    print(f"wrote {args.out}: {len(orientations)} {kind}")
    return EXIT_OK


def cmd_tree_set(args) -> int:
    system, gs = _load_system_or_graph(args)
    if args.family == "profiles":
        if gs is None:
            raise ParseError(
                "--family profiles needs the ambient lattice; pass --graph and -k")
        fam = OrientationFamily(system, enumerate_profiles(gs, cap=_cap(PROFILE_ENUM_CAP)))
    else:
        fam = formats.load_family(args.family, system)
    result = canonical_tree_set(fam, check=not args.unchecked)
    formats.save_nested_set(result, args.out, trace=args.trace)
    if args.dot:
        formats.save_dot(result, args.dot)
    if args.fig:
        from .figures import render_tree_figure
        render_tree_figure(result, args.fig)
    print(f"wrote {args.out}: {len(result.separations)} separations "
          f"distinguishing {len(fam)} members")
    return EXIT_OK


def cmd_check(args) -> int:
    system, gs = _load_system_or_graph(args)
    print(f"system: ok ({system.m} separations, all axioms hold)")
    if args.family:
        fam = formats.load_family(args.family, system)
        print(f"family: ok ({len(fam)} distinct consistent members)")
        ok, witness = is_p_submodular(fam)
        if not ok:
            raise PreconditionError(
                f"family is not jointly submodular: crossing pair {witness} "
                "has neither a family-respecting join nor meet",
                invariant="family-submodular", witness=witness)
        print("family: jointly submodular")
    return EXIT_OK


def cmd_canon_test(args) -> int:
    system = formats.load_system(args.system)
    fam = formats.load_family(args.family, system)
    base = canonical_tree_set(fam)
    for seed in range(args.seeds):
        target, phi = random_relabeling(system, seed)
        image_fam = apply_iso(phi, fam)
        relabeled = canonical_tree_set(image_fam, check=False)
        expected = phi.image_unoriented(base.separations)
        if expected != relabeled.separations:
            print(f"canonicity violated: reproduce with seed {seed}",
                  file=sys.stderr)
            print(f"  image of base result: {list(expected)}", file=sys.stderr)
            print(f"  relabeled-run result: {list(relabeled.separations)}",
                  file=sys.stderr)
            return EXIT_CANONICITY
    print(f"canonical under {args.seeds} relabeling seeds")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TangleForgeError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
