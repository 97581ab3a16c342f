"""Command-line front end.

Exit codes: 0 success, 1 mathematical failure (axiom violation, invalid
profile), 2 I/O, format or size-cap error.
"""
import argparse
import csv
import sys

import numpy as np

from . import config
from .diversity import (
    CapExceeded,
    DiversityError,
    check_axioms_exhaustive,
    check_axioms_reduced,
    symmetric_diversity,
)
from .embedding import build_symmetric_embedding, coordinates_from_weights, embed_diversity
from .generators import (
    diameter_diversity,
    l1_box_diversity,
    phi_profile,
    random_points,
    random_subadditive_profile,
    steiner_diversity,
    truncation_diversity,
    tsp_diversity,
)
from .io import (
    FormatError,
    fmt,
    read_json,
    weights_to_json,
    write_coords_csv,
    write_json,
    write_tables,
)
from .lp import optimal_split_distortion
from .profiles import ProfileError, SymmetricProfile

EXIT_OK, EXIT_FAIL, EXIT_IO = 0, 1, 2

FAMILIES = ("truncation", "random-subadditive", "phi-rows", "diameter", "l1", "tsp", "steiner")
SYMMETRIC_FAMILIES = FAMILIES[:3]
FAMILY_CAPS = {"diameter": 16, "l1": 16, "tsp": config.TSP_CAP, "steiner": config.STEINER_CAP}


class UsageError(Exception):
    pass


def cmd_check(args):
    div = read_json(args.input, "diversity")
    verdict = check_axioms_exhaustive(div) if args.exhaustive else check_axioms_reduced(div)
    print(verdict.describe())
    return EXIT_OK if verdict else EXIT_FAIL


def cmd_embed(args):
    profile = SymmetricProfile(read_json(args.input, "profile"))
    built = build_symmetric_embedding(profile, materialize=True, exact_if_embeddable=True)
    write_json(args.weights, weights_to_json(built.weights))
    coords = coordinates_from_weights(built.weights)
    write_coords_csv(args.coords, coords)
    rep = built.report
    print(f"n: {profile.n}")
    print(f"method: {built.method}")
    print(f"splits: {len(built.weights)}")
    print(f"c1: {fmt(rep.c1)}")
    print(f"c2: {fmt(rep.c2)}")
    print(f"distortion: {fmt(rep.distortion)}")
    print(f"certified_bound: {config.CERTIFIED_BOUND}")
    return EXIT_OK if rep.certified else EXIT_FAIL


def cmd_optimal(args):
    div = read_json(args.input, "diversity")
    if div.n > config.LP_CAP:
        raise CapExceeded(f"optimal LP supports n <= {config.LP_CAP}, got {div.n}")
    c, witness, sol = optimal_split_distortion(div)
    write_json(args.witness, weights_to_json(witness))
    print(f"optimal_distortion: {fmt(c)}")
    print(f"pivots: {sol.iterations}")
    return EXIT_OK


def cmd_tables(args):
    if not 2 <= args.n <= 64:
        raise UsageError("tables needs 2 <= n <= 64")
    psi_path = write_tables(args.out, args.n)
    print(f"wrote {args.out} and {psi_path}")
    return EXIT_OK


def _subseed(*parts):
    return int(np.random.SeedSequence(list(parts)).generate_state(1)[0])


def sweep_instances(family, n, seed, count):
    """Yield ``(label, diversity_or_profile)`` for one ground-set size."""
    if family == "truncation":
        for i in range(1, n):
            yield f"i={i}", truncation_diversity(n, i)
    elif family == "phi-rows":
        for ell in range(1, n):
            yield f"ell={ell}", phi_profile(n, ell)
    elif family == "random-subadditive":
        for j in range(count):
            yield f"seed={j}", random_subadditive_profile(n, _subseed(seed, n, j))
    else:
        build = {
            "diameter": diameter_diversity,
            "l1": l1_box_diversity,
            "tsp": tsp_diversity,
            "steiner": steiner_diversity,
        }[family]
        for j in range(count):
            yield f"points={j}", build(random_points(n, 2, _subseed(seed, n, j)))


def sweep_rows(nmax, family, seed, lp=False, count=5):
    if family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}")
    limit = 12 if lp else 30
    limit = min(limit, FAMILY_CAPS.get(family, limit))
    if not 2 <= nmax <= limit:
        raise UsageError(f"sweep of {family!r} needs 2 <= nmax <= {limit}")
    for n in range(2, nmax + 1):
        for label, obj in sweep_instances(family, n, seed, count):
            if isinstance(obj, SymmetricProfile):
                rep = build_symmetric_embedding(obj, materialize=False, exact_if_embeddable=True).report
                gamma = 1.0
                div = symmetric_diversity(obj) if lp and n <= config.LP_CAP else None
            else:
                _, rep, gamma = embed_diversity(obj)
                div = obj
            opt = ""
            if lp and n <= config.LP_CAP:
                opt = fmt(optimal_split_distortion(div)[0])
            yield [n, family, label, fmt(gamma), fmt(rep.distortion), opt, fmt(rep.certified_bound)]


def cmd_sweep(args):
    with open(args.out, "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["n", "family", "instance", "skewness", "measured", "lp", "certified"])
        for row in sweep_rows(args.nmax, args.family, args.seed, args.lp, args.count):
            out.writerow(row)
    print(f"wrote {args.out}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="symdiv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="verify the diversity axioms")
    p.add_argument("--input", required=True)
    p.add_argument("--exhaustive", action="store_true", help="test every (A, B, C) triple")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("embed", help="embed a symmetric profile into L1")
    p.add_argument("--input", required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--coords", required=True)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("optimal", help="optimal split-embedding distortion by LP")
    p.add_argument("--input", required=True)
    p.add_argument("--witness", required=True)
    p.set_defaults(func=cmd_optimal)

    p = sub.add_parser("tables", help="phi / psi / capped-psi tables as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("sweep", help="distortion sweep over a family")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lp", action="store_true", help="also solve the optimal LP (n <= 8)")
    p.add_argument("--count", type=int, default=5, help="instances per n for random families")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DiversityError, ProfileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (FormatError, OSError, CapExceeded, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
