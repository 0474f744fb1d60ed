#!/usr/bin/env python3
"""Benchmark how much work greedy extension does as the vertex count
grows.

For each n on a grid, extend the empty family on [n] at dimension d and
record the number of pair-compatibility checks (the algorithm's unit of
work).  A least-squares constant c is fitted to count ~ c * n^5 and the
worst deviation from the fit is reported, so a regression that changes
the growth order shows up as a large slack factor.

Usage:
    python3 scripts/greedy_complexity.py
    python3 scripts/greedy_complexity.py --d 4 --grid 8 16 24 40 --json out.json
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from momentcurve.extension import Complex, greedy_extend
from momentcurve.triangulations import validate


@dataclass
class BenchmarkConfig:
    d: int = 4
    exponent: int = 5
    grid: tuple[int, ...] = (8, 12, 16, 20, 24, 28, 34, 40)
    json_path: str | None = None


@dataclass
class GridPoint:
    n: int
    facets: int
    pair_checks: int
    seconds: float
    ratio: float = field(init=False)

    def __post_init__(self):
        self.ratio = self.pair_checks / self.n**5


def run(config: BenchmarkConfig) -> list[GridPoint]:
    points = []
    for n in config.grid:
        t0 = time.perf_counter()
        result = greedy_extend(Complex.make([], config.d, n))
        dt = time.perf_counter() - t0
        assert validate(result.triangulation).ok
        points.append(
            GridPoint(
                n=n,
                facets=len(result.triangulation.facets),
                pair_checks=result.stats["pair_checks"],
                seconds=dt,
            )
        )
    return points


def fitted_constant(points: list[GridPoint], exponent: int) -> float:
    num = sum(p.pair_checks * p.n**exponent for p in points)
    den = sum(p.n ** (2 * exponent) for p in points)
    return num / den


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--d", type=int, default=4)
    parser.add_argument("--exponent", type=int, default=5)
    parser.add_argument("--grid", type=int, nargs="+", default=None)
    parser.add_argument("--json", dest="json_path", default=None)
    args = parser.parse_args(argv)
    config = BenchmarkConfig(
        d=args.d,
        exponent=args.exponent,
        grid=tuple(args.grid) if args.grid else BenchmarkConfig.grid,
        json_path=args.json_path,
    )

    points = run(config)
    c = fitted_constant(points, config.exponent)
    print(f"greedy extension work at d={config.d} (fit: count ~ c*n^{config.exponent})")
    print(f"{'n':>4} {'facets':>7} {'pair checks':>12} {'sec':>7} "
          f"{'count/n^'+str(config.exponent):>12} {'vs fit':>7}")
    worst = 0.0
    for p in points:
        slack = p.pair_checks / (c * p.n**config.exponent)
        worst = max(worst, slack)
        print(
            f"{p.n:>4} {p.facets:>7} {p.pair_checks:>12} {p.seconds:>7.2f} "
            f"{p.ratio:>12.5f} {slack:>6.2f}x"
        )
    print(f"fitted c = {c:.5f}; worst point sits at {worst:.2f}x the fit")

    if config.json_path:
        doc = {
            "d": config.d,
            "exponent": config.exponent,
            "fitted_constant": c,
            "points": [
                {
                    "n": p.n,
                    "facets": p.facets,
                    "pair_checks": p.pair_checks,
                    "seconds": round(p.seconds, 4),
                }
                for p in points
            ],
        }
        with open(config.json_path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
        print(f"wrote {config.json_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
