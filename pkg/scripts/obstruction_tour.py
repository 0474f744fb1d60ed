#!/usr/bin/env python3
"""A guided tour of non-extendability.

Starts from the canonical family of three pairwise non-overlapping
5-simplices on eight vertices, shows that nothing can be added and that
greedy extension runs aground, certifies non-extendability twice (by
exhaustive search and by the planar dual-cone criterion), and then
pushes the obstruction up through both lifting constructions, verifying
each lifted family along the way.

Usage:
    python3 scripts/obstruction_tour.py
    python3 scripts/obstruction_tour.py --max-dim 8 --max-vertices 12
"""

from __future__ import annotations

import argparse
import itertools
import sys
from dataclasses import dataclass

from momentcurve.core import classify_pair
from momentcurve.errors import ExtensionStuck
from momentcurve.extension import greedy_extend
from momentcurve.obstructions import (
    gale_configuration,
    gale_dual_check,
    lift_d,
    lift_n,
    maximal_nonoverlap_check,
    rambau_example,
    verify_nonextendable,
)


@dataclass
class TourConfig:
    budget: int = 10_000_000
    max_dim: int = 7
    max_vertices: int = 11


def show_family(f) -> None:
    print(f"  dimension D={f.d}, vertices [1..{f.n}], members:")
    for s in f.simplices:
        print(f"    {s}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--budget", type=int, default=10_000_000)
    parser.add_argument("--max-dim", type=int, default=7)
    parser.add_argument("--max-vertices", type=int, default=11)
    args = parser.parse_args(argv)
    config = TourConfig(args.budget, args.max_dim, args.max_vertices)

    f = rambau_example()
    print("The canonical non-extendable family:")
    show_family(f)

    print("\nPairwise classification (A = hulls meet only in shared faces):")
    for a, b in itertools.combinations(f.simplices, 2):
        print(f"  {a} vs {b}: {classify_pair(a, b, f.d).value}")

    addable = maximal_nonoverlap_check(f)
    total = len(list(itertools.combinations(range(1, f.n + 1), f.d + 1)))
    print(
        f"\nSaturation: {len(addable)} of the {total} candidate "
        f"{f.d}-simplices can join the family."
    )

    print("\nGreedy extension attempt:")
    try:
        greedy_extend(f)
        print("  unexpectedly completed!")
    except ExtensionStuck as exc:
        print(
            f"  stuck after placing {len(exc.facets)} facets with "
            f"{len(exc.active_ridges)} ridges still uncovered"
        )

    cert = verify_nonextendable(f, budget=config.budget)
    print(
        f"\nExhaustive search: {cert.verdict} "
        f"({cert.stats['nodes']} nodes, "
        f"{cert.stats['candidate_trials']} candidate trials)"
    )

    cfg = gale_configuration(f)
    gale = gale_dual_check(f)
    print(f"Planar dual-cone criterion: {gale.verdict}")
    print(f"  dual cones spanned by complement pairs: {cfg.dual_cones}")

    print("\nLifting the obstruction:")
    frontier = [f]
    seen = {(f.d, f.n)}
    while frontier:
        g = frontier.pop(0)
        for name, lifted in (("vertex", lift_n(g)), ("dimension", lift_d(g))):
            key = (lifted.d, lifted.n)
            if key in seen or lifted.d > config.max_dim or lifted.n > config.max_vertices:
                continue
            seen.add(key)
            cert = verify_nonextendable(lifted, budget=config.budget)
            print(
                f"  +{name}: D={lifted.d}, n={lifted.n}, "
                f"{len(lifted.simplices)} members -> {cert.verdict} "
                f"({cert.stats['nodes']} nodes)"
            )
            frontier.append(lifted)
    return 0


if __name__ == "__main__":
    sys.exit(main())
