#!/usr/bin/env python3
"""Census of triangulation posets of cyclic polytopes.

Enumerates all triangulations of C(n,d) over a grid of (n,d), reports
the counts, and checks two order-theoretic properties pair by pair:
whether the height order forms a lattice, and whether greatest lower
bounds commute with intersecting the weakly-below encodings.  The
interesting boundary is visible in the output: both properties hold
throughout d <= 3 at desk scale, and the encoding property first
breaks at d=4 with three extra vertices.

Usage:
    python3 scripts/poset_census.py
    python3 scripts/poset_census.py --max-n 8 --dims 2 3 --budget 200000
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass

from momentcurve.errors import ResourceBudgetError
from momentcurve.triangulations import hst_poset, submersion_set


@dataclass
class CensusConfig:
    max_n: int = 7
    dims: tuple[int, ...] = (2, 3, 4)
    budget: int | None = 500_000


def glb_index(leq, i: int, j: int):
    lower = [k for k in range(len(leq)) if leq[k][i] and leq[k][j]]
    tops = [k for k in lower if all(leq[m][k] for m in lower)]
    return tops[0] if len(tops) == 1 else None


def lub_index(leq, i: int, j: int):
    upper = [k for k in range(len(leq)) if leq[i][k] and leq[j][k]]
    bots = [k for k in upper if all(leq[k][m] for m in upper)]
    return bots[0] if len(bots) == 1 else None


def census_row(n: int, d: int, budget):
    t0 = time.perf_counter()
    poset = hst_poset(n, d, budget=budget)
    k = len(poset.elements)
    subs = [submersion_set(t) for t in poset.elements]
    lattice = True
    meets_intersect = True
    for i in range(k):
        for j in range(i + 1, k):
            g = glb_index(poset.leq, i, j)
            if g is None or lub_index(poset.leq, i, j) is None:
                lattice = False
            if g is None or subs[g] != (subs[i] & subs[j]):
                meets_intersect = False
    return {
        "n": n,
        "d": d,
        "count": k,
        "covers": len(poset.covers),
        "lattice": lattice,
        "meets_intersect": meets_intersect,
        "seconds": time.perf_counter() - t0,
    }


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=7)
    parser.add_argument("--dims", type=int, nargs="+", default=(2, 3, 4))
    parser.add_argument("--budget", type=int, default=500_000)
    args = parser.parse_args(argv)
    config = CensusConfig(args.max_n, tuple(args.dims), args.budget)

    print(f"{'n':>3} {'d':>3} {'|S(n,d)|':>9} {'covers':>7} "
          f"{'lattice':>8} {'meets=∩':>8} {'sec':>7}")
    for d in config.dims:
        for n in range(d + 2, config.max_n + 1):
            try:
                row = census_row(n, d, config.budget)
            except ResourceBudgetError:
                print(f"{n:>3} {d:>3} {'(budget)':>9}")
                continue
            print(
                f"{row['n']:>3} {row['d']:>3} {row['count']:>9} "
                f"{row['covers']:>7} {str(row['lattice']):>8} "
                f"{str(row['meets_intersect']):>8} {row['seconds']:>7.2f}"
            )
    return 0


if __name__ == "__main__":
    sys.exit(main())
