"""Command-line driver tying the library together.

Subcommands
===========

``classify FILE [--d D]``
    Print the pair-classification matrix (letters A/B/C/D) for every
    ordered pair of simplices in the file.  The file may contain
    overlapping simplices — that is the interesting case here.

``extend FILE [--strategy greedy|constructive] [--budget N] [--output P]``
    Extend the family in FILE to a full triangulation, write it as a
    triangulation file, and report the audit log of choices.

``certify FILE [--method search|gale] [--budget N] [--output P]``
    Decide whether the family extends to a triangulation and write a
    certificate file.

``poset --n N --d D [--check lattice|meet-intersection] [--export P]``
    Enumerate all triangulations of the cyclic polytope, build the
    height-order poset, optionally run a structural check and export
    the covering relations as a DOT graph.

``generate --family rambau|lift-n|lift-d|random [...]``
    Write an instance file: the canonical three-simplex obstruction,
    one of the two lifting constructions applied to a base file, or a
    seeded random non-overlapping family.

Every run prints a single JSON report to stdout (command, input
digests, outputs, statistics, timing) and finishes with a stable exit
code:

====  =======================================================
0     success / family is extendable
2     invalid input or failed validation
3     budget exhausted or otherwise indeterminate (e.g. greedy
      got stuck at d >= 5)
4     family is certified non-extendable
====  =======================================================

Runs are deterministic given the inputs, flags, and seed (the timing
field aside).  The ``MOMENTCURVE_WORKERS`` environment variable is
recorded in the report as the worker cap; the current implementation
is sequential.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import os
import random
import sys
import time
from pathlib import Path
from typing import Optional

from .core import classify_pair, overlaps_unchecked
from .errors import (
    ExtensionStuck,
    InternalConsistencyError,
    InvalidInputError,
    InvalidSimplexError,
    ResourceBudgetError,
    UnsupportedError,
)
from .extension import Complex, _is_face_of, constructive_extend, greedy_extend
from .files import (
    dumps,
    encode_value,
    instance_to_dict,
    load_instance,
    load_raw_family,
    save_certificate,
    save_instance,
    save_triangulation,
)
from .obstructions import (
    gale_dual_check,
    lift_d,
    lift_n,
    rambau_example,
    verify_nonextendable,
)
from .triangulations import hst_poset, submersion_set, validate

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INDETERMINATE = 3
EXIT_NONEXTENDABLE = 4

DEFAULT_SEARCH_BUDGET = 10_000_000


# -------------------------------------------------------------- utilities


def _digest(path: str) -> str:
    h = hashlib.sha256(Path(path).read_bytes()).hexdigest()
    return f"sha256:{h}"


def _workers() -> int:
    raw = os.environ.get("MOMENTCURVE_WORKERS")
    if raw is not None:
        try:
            value = int(raw)
            if value >= 1:
                return value
        except ValueError:
            pass
    return os.cpu_count() or 1


def _default_output(input_path: str, tag: str) -> str:
    p = Path(input_path)
    stem = p.name[: -len(".json")] if p.name.endswith(".json") else p.name
    return str(p.with_name(f"{stem}.{tag}.json"))


def _record_input(report: dict, path: str) -> None:
    report["inputs"][str(path)] = _digest(path)


# ------------------------------------------------------------- subcommands


def _cmd_classify(args: argparse.Namespace, report: dict) -> int:
    d, n, sims = load_raw_family(args.file, args.d)
    _record_input(report, args.file)
    matrix = [
        "".join(classify_pair(a, b, d).value for b in sims) for a in sims
    ]
    report["result"] = {
        "d": d,
        "n": n,
        "simplices": [list(s) for s in sims],
        "matrix": matrix,
    }
    return EXIT_OK


def _cmd_extend(args: argparse.Namespace, report: dict) -> int:
    f = load_instance(args.file)
    _record_input(report, args.file)
    if args.strategy == "greedy":
        result = greedy_extend(f)
    else:
        result = constructive_extend(f, budget=args.budget)
    t = result.triangulation
    vr = validate(t)
    missing = [s for s in f.simplices if not _is_face_of(s, t)]
    if not vr.ok or missing:
        report["error"] = "extension failed validation"
        report["result"] = {
            "validation_failures": vr.failures,
            "members_not_faces": missing,
        }
        return EXIT_INVALID
    out = args.output or _default_output(args.file, "extended")
    save_triangulation(out, t)
    report["outputs"]["triangulation"] = out
    report["result"] = {
        "strategy": result.strategy,
        "d": t.d,
        "n": t.n,
        "facets": len(t.facets),
        "validated": True,
    }
    report["stats"] = dict(result.stats)
    report["audit"] = list(result.steps)
    return EXIT_OK


def _cmd_certify(args: argparse.Namespace, report: dict) -> int:
    f = load_instance(args.file)
    _record_input(report, args.file)
    if args.method == "search":
        budget = args.budget if args.budget is not None else DEFAULT_SEARCH_BUDGET
        cert = verify_nonextendable(f, budget=budget)
    else:
        cert = gale_dual_check(f)
    out = args.output or _default_output(args.file, "certificate")
    save_certificate(out, cert)
    report["outputs"]["certificate"] = out
    report["result"] = {
        "verdict": cert.verdict,
        "method": cert.method,
        "witness_facets": len(cert.witness.facets) if cert.witness else None,
    }
    report["stats"] = dict(cert.stats)
    return EXIT_OK if cert.verdict == "extendable" else EXIT_NONEXTENDABLE


def _poset_glb(leq, i: int, j: int) -> Optional[int]:
    lower = [k for k in range(len(leq)) if leq[k][i] and leq[k][j]]
    tops = [k for k in lower if all(leq[m][k] for m in lower)]
    return tops[0] if len(tops) == 1 else None


def _poset_lub(leq, i: int, j: int) -> Optional[int]:
    upper = [k for k in range(len(leq)) if leq[i][k] and leq[j][k]]
    bots = [k for k in upper if all(leq[k][m] for m in upper)]
    return bots[0] if len(bots) == 1 else None


def _check_lattice(poset) -> tuple[bool, Optional[dict]]:
    k = len(poset.elements)
    for i in range(k):
        for j in range(i + 1, k):
            glb = _poset_glb(poset.leq, i, j)
            lub = _poset_lub(poset.leq, i, j)
            if glb is None or lub is None:
                return False, {
                    "pair": [
                        [list(f) for f in poset.elements[i].facets],
                        [list(f) for f in poset.elements[j].facets],
                    ],
                    "missing": "meet" if glb is None else "join",
                }
    return True, None


def _check_meet_intersection(poset) -> tuple[bool, Optional[dict]]:
    """Does every pair have a greatest lower bound whose weakly-below
    middle-simplex set is exactly the intersection of the pair's?"""
    subs = [submersion_set(t) for t in poset.elements]
    k = len(poset.elements)
    for i in range(k):
        for j in range(i + 1, k):
            glb = _poset_glb(poset.leq, i, j)
            if glb is None or subs[glb] != (subs[i] & subs[j]):
                return False, {
                    "pair": [
                        [list(f) for f in poset.elements[i].facets],
                        [list(f) for f in poset.elements[j].facets],
                    ],
                    "reason": (
                        "no greatest lower bound"
                        if glb is None
                        else "meet loses or gains weakly-below simplices"
                    ),
                }
    return True, None


def _export_dot(path: str, poset, n: int, d: int) -> None:
    lines = [f"digraph hst_n{n}_d{d} {{"]
    for idx, t in enumerate(poset.elements):
        label = " | ".join("-".join(str(v) for v in f) for f in t.facets)
        lines.append(f'  t{idx} [label="{label}"];')
    for lo, hi in poset.covers:
        lines.append(f"  t{lo} -> t{hi};")
    lines.append("}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _cmd_poset(args: argparse.Namespace, report: dict) -> int:
    poset = hst_poset(args.n, args.d, budget=args.budget)
    report["result"] = {
        "n": args.n,
        "d": args.d,
        "count": len(poset.elements),
        "covers": len(poset.covers),
    }
    if args.check == "lattice":
        ok, witness = _check_lattice(poset)
        report["result"]["check"] = "lattice"
        report["result"]["holds"] = ok
        if witness:
            report["result"]["witness"] = witness
    elif args.check == "meet-intersection":
        ok, witness = _check_meet_intersection(poset)
        report["result"]["check"] = "meet-intersection"
        report["result"]["holds"] = ok
        if witness:
            report["result"]["witness"] = witness
    if args.export:
        _export_dot(args.export, poset, args.n, args.d)
        report["outputs"]["graph"] = args.export
    return EXIT_OK


def _random_family(rng: random.Random, d: int, n: int, size: Optional[int]) -> Complex:
    """Seeded rejection sampling: shuffle all full-dimensional simplices
    and insert greedily while pairwise non-overlapping."""
    pool = list(itertools.combinations(range(1, n + 1), d + 1))
    rng.shuffle(pool)
    picked: list[tuple[int, ...]] = []
    for cand in pool:
        if size is not None and len(picked) >= size:
            break
        if all(not overlaps_unchecked(cand, p, d) for p in picked):
            picked.append(cand)
    return Complex.make(picked, d, n)


def _cmd_generate(args: argparse.Namespace, report: dict) -> int:
    if args.family == "rambau":
        f = rambau_example()
        default_name = "rambau.json"
    elif args.family in ("lift-n", "lift-d"):
        if args.base:
            base = load_instance(args.base)
            _record_input(report, args.base)
        else:
            base = rambau_example()
        f = lift_n(base) if args.family == "lift-n" else lift_d(base)
        default_name = f"{args.family}.json"
    else:  # random
        if args.d is None or args.n is None:
            raise InvalidInputError("--family random requires --d and --n")
        rng = random.Random(args.seed)
        f = _random_family(rng, args.d, args.n, args.size)
        default_name = f"random-d{args.d}-n{args.n}-seed{args.seed}.json"
    out = args.output or default_name
    save_instance(out, f)
    report["outputs"]["instance"] = out
    report["result"] = {
        "family": args.family,
        "d": f.d,
        "n": f.n,
        "members": len(f.simplices),
        "document": instance_to_dict(f),
    }
    if args.family == "random":
        report["result"]["seed"] = args.seed
    return EXIT_OK


# ------------------------------------------------------------------ driver


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="momentcurve",
        description=(
            "Simplex families on the moment curve: classify pairs, "
            "extend to triangulations, certify non-extendability, "
            "explore height-order posets, generate instances."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "classify", help="pair-classification matrix for an instance file"
    )
    p.add_argument("file", help="instance file (JSON: d, n, simplices)")
    p.add_argument(
        "--d", type=int, default=None, help="override the ambient dimension"
    )
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("extend", help="extend a family to a triangulation")
    p.add_argument("file", help="instance file (JSON: d, n, simplices)")
    p.add_argument(
        "--strategy",
        choices=("greedy", "constructive"),
        default="greedy",
        help="ridge-covering greedy (default) or layered construction",
    )
    p.add_argument(
        "--budget",
        type=int,
        default=None,
        help="node budget for the constructive strategy",
    )
    p.add_argument("--output", default=None, help="triangulation file path")
    p.set_defaults(handler=_cmd_extend)

    p = sub.add_parser(
        "certify", help="decide extendability and write a certificate"
    )
    p.add_argument("file", help="instance file (JSON: d, n, simplices)")
    p.add_argument(
        "--method",
        choices=("search", "gale"),
        default="search",
        help="exhaustive search (default) or planar dual-cone criterion",
    )
    p.add_argument(
        "--budget",
        type=int,
        default=None,
        help=f"search node budget (default {DEFAULT_SEARCH_BUDGET})",
    )
    p.add_argument("--output", default=None, help="certificate file path")
    p.set_defaults(handler=_cmd_certify)

    p = sub.add_parser(
        "poset", help="build the height-order poset of all triangulations"
    )
    p.add_argument("--n", type=int, required=True, help="number of vertices")
    p.add_argument("--d", type=int, required=True, help="polytope dimension")
    p.add_argument(
        "--check",
        choices=("lattice", "meet-intersection"),
        default=None,
        help="structural property to verify exhaustively",
    )
    p.add_argument(
        "--export", default=None, help="write covering relations as DOT"
    )
    p.add_argument(
        "--budget", type=int, default=None, help="enumeration node budget"
    )
    p.set_defaults(handler=_cmd_poset)

    p = sub.add_parser("generate", help="write an instance file")
    p.add_argument(
        "--family",
        choices=("rambau", "lift-n", "lift-d", "random"),
        required=True,
    )
    p.add_argument(
        "--base",
        default=None,
        help="base instance file for the lifting families "
        "(default: the canonical three-simplex obstruction)",
    )
    p.add_argument("--d", type=int, default=None, help="dimension (random)")
    p.add_argument("--n", type=int, default=None, help="vertices (random)")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (random)")
    p.add_argument(
        "--size", type=int, default=None, help="stop after this many members"
    )
    p.add_argument("--output", default=None, help="instance file path")
    p.set_defaults(handler=_cmd_generate)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    start = time.perf_counter()
    report: dict = {
        "command": args.command,
        "workers": _workers(),
        "inputs": {},
        "outputs": {},
    }
    try:
        code = args.handler(args, report)
    except FileNotFoundError as exc:
        report["error"] = str(exc)
        code = EXIT_INVALID
    except (InvalidInputError, InvalidSimplexError, UnsupportedError) as exc:
        report["error"] = str(exc)
        code = EXIT_INVALID
    except ExtensionStuck as exc:
        report["error"] = str(exc)
        report["stuck"] = {
            "placed_facets": [list(f) for f in exc.facets],
            "active_ridges": [list(r) for r in exc.active_ridges],
            "audit": list(exc.log),
        }
        code = EXIT_INDETERMINATE
    except ResourceBudgetError as exc:
        report["error"] = str(exc)
        report["explored"] = exc.explored
        code = EXIT_INDETERMINATE
    except InternalConsistencyError as exc:  # pragma: no cover - bug path
        report["error"] = f"internal consistency failure: {exc}"
        report["state"] = repr(exc.state)
        code = 1
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    report["exit_code"] = code
    print(dumps(encode_value(report)))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
