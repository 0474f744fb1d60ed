"""Exact rational geometry on the moment curve.

Independent ground truth for the combinatorial predicates in
:mod:`momentcurve.core`: coordinates, volumes, and hull-intersection /
height-comparison queries, all decided by exact integer linear
feasibility (Fourier–Motzkin), never floating point.

Vertices double as curve parameters, so a vertex ``v`` sits at
``(v, v^2, ..., v^d)`` and its lifting adds the coordinate ``v^(d+1)``.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Optional, Sequence

from .core import PairClass, Simplex, as_simplex, check_simplex_dim
from .errors import InternalConsistencyError, InvalidInputError

# A linear row is an integer tuple (a_1, ..., a_m, c) standing for
# a·x + c  (= 0 | >= 0 | > 0 depending on context).
Row = tuple[int, ...]


def moment_point(t: int, d: int) -> tuple[int, ...]:
    """The moment-curve point (t, t^2, ..., t^d)."""
    if d < 1:
        raise InvalidInputError(f"dimension must be >= 1, got {d}")
    return tuple(t**k for k in range(1, d + 1))


def simplex_volume(sigma: Sequence[int], d: int) -> Fraction:
    """Euclidean volume of the full-dimensional simplex on the given
    curve parameters: the Vandermonde product over d!."""
    s = as_simplex(sigma)
    if len(s) != d + 1:
        raise InvalidInputError(
            f"volume needs exactly d+1={d + 1} vertices, got {len(s)}"
        )
    prod = 1
    for a, b in itertools.combinations(s, 2):
        prod *= b - a
    return Fraction(prod, math.factorial(d))


def orientation(points: Sequence[Sequence]) -> int:
    """Orientation (-1, 0, +1) of d+1 points in R^d: the sign of the
    determinant of the matrix with rows (1, p)."""
    n = len(points)
    m = [[Fraction(1)] + [Fraction(x) for x in p] for p in points]
    if any(len(row) != n for row in m):
        raise InvalidInputError("orientation needs d+1 points in R^d")
    sign = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        if m[col][col] < 0:
            sign = -sign
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return sign


# --------------------------------------------------------------------------
# Exact linear feasibility: integer Gaussian elimination on equalities,
# then Fourier–Motzkin on inequalities with strictness flags.
# --------------------------------------------------------------------------


def _normalized(row: Row) -> Row:
    g = 0
    for x in row:
        g = gcd(g, x)
    if g > 1:
        return tuple(x // g for x in row)
    return row


def _substitute(row: Row, pivot_row: Row, var: int, keep_direction: bool) -> Row:
    """Eliminate `var` from `row` using `pivot_row` (whose coefficient on
    `var` is nonzero).  When keep_direction is set the combination uses a
    strictly positive multiplier on `row`, preserving inequality sense."""
    p = pivot_row[var]
    r = row[var]
    if r == 0:
        return row
    if keep_direction:
        mult_row, mult_piv = abs(p), -r if p > 0 else r
    else:
        mult_row, mult_piv = p, -r
    return _normalized(
        tuple(mult_row * a + mult_piv * b for a, b in zip(row, pivot_row))
    )


class _Infeasible(Exception):
    pass


def _check_constant(row: Row, strict: bool) -> bool:
    """For a row with all-zero coefficients decide it; True means the row
    is vacuous and can be dropped."""
    c = row[-1]
    if c < 0 or (c == 0 and strict):
        raise _Infeasible
    return True


def _solve(
    equalities: list[Row],
    inequalities: list[tuple[Row, bool]],
    nvars: int,
) -> Optional[tuple[Fraction, ...]]:
    """Feasibility of {a·x + c = 0} ∧ {a·x + c >= 0 or > 0}.

    Returns a satisfying rational point, or None when infeasible.  Point
    construction walks the Fourier–Motzkin stages backwards, so the
    extra cost over a bare yes/no is negligible at these sizes.
    """
    try:
        return _solve_inner(equalities, inequalities, nvars)
    except _Infeasible:
        return None


def _solve_inner(
    equalities: list[Row],
    inequalities: list[tuple[Row, bool]],
    nvars: int,
) -> tuple[Fraction, ...]:
    eqs = [_normalized(e) for e in equalities]
    ineqs = {}
    for row, strict in inequalities:
        row = _normalized(row)
        ineqs[row] = ineqs.get(row, False) or strict

    # -- equality pivots ---------------------------------------------------
    pivots: list[tuple[int, Row]] = []  # (var, pivot row) in pivot order
    pending = list(eqs)
    while pending:
        e = pending.pop(0)
        var = next((v for v in range(nvars) if e[v] != 0), None)
        if var is None:
            if e[-1] != 0:
                raise _Infeasible
            continue
        pivots.append((var, e))
        pending = [_substitute(r, e, var, keep_direction=False) for r in pending]
        new_ineqs: dict[Row, bool] = {}
        for row, strict in ineqs.items():
            row = _substitute(row, e, var, keep_direction=True)
            if all(a == 0 for a in row[:-1]):
                _check_constant(row, strict)
                continue
            new_ineqs[row] = new_ineqs.get(row, False) or strict
        ineqs = new_ineqs

    pivoted = {v for v, _ in pivots}
    free_vars = [v for v in range(nvars) if v not in pivoted]

    # -- Fourier–Motzkin stages -------------------------------------------
    stages: list[tuple[int, dict[Row, bool]]] = []
    for var in free_vars:
        stages.append((var, ineqs))
        pos = [(r, s) for r, s in ineqs.items() if r[var] > 0]
        neg = [(r, s) for r, s in ineqs.items() if r[var] < 0]
        nxt: dict[Row, bool] = {
            r: s for r, s in ineqs.items() if r[var] == 0
        }
        for (lo, ls), (hi, hs) in itertools.product(pos, neg):
            comb = _normalized(
                tuple(-hi[var] * a + lo[var] * b for a, b in zip(lo, hi))
            )
            strict = ls or hs
            if all(a == 0 for a in comb[:-1]):
                _check_constant(comb, strict)
                continue
            nxt[comb] = nxt.get(comb, False) or strict
        ineqs = nxt
    for row, strict in ineqs.items():
        # only constant rows can remain
        _check_constant(row, strict)

    # -- back-substitution: free variables, last stage first ---------------
    value: dict[int, Fraction] = {}
    for var, rows in reversed(stages):
        lo: Optional[tuple[Fraction, bool]] = None
        hi: Optional[tuple[Fraction, bool]] = None
        for row, strict in rows.items():
            a = row[var]
            if a == 0:
                continue
            rest = row[-1] + sum(
                row[v] * value[v] for v in range(nvars) if v != var and row[v]
            )
            bound = Fraction(-rest, a)
            if a > 0:  # var >= bound
                if lo is None or bound > lo[0] or (bound == lo[0] and strict):
                    lo = (bound, strict)
            else:  # var <= bound
                if hi is None or bound < hi[0] or (bound == hi[0] and strict):
                    hi = (bound, strict)
        if lo is None and hi is None:
            value[var] = Fraction(0)
        elif hi is None:
            value[var] = lo[0] + (1 if lo[1] else 0)
        elif lo is None:
            value[var] = hi[0] - (1 if hi[1] else 0)
        elif lo[0] == hi[0]:
            if lo[1] or hi[1]:
                raise InternalConsistencyError(
                    "elimination produced an empty interval on a feasible system",
                    state={"var": var, "lo": lo, "hi": hi},
                )
            value[var] = lo[0]
        else:
            value[var] = (lo[0] + hi[0]) / 2

    # -- back-substitution: equality pivots, last pivot first ---------------
    for var, row in reversed(pivots):
        rest = row[-1] + sum(
            row[v] * value[v] for v in range(nvars) if v != var and row[v]
        )
        value[var] = Fraction(-rest, row[var])

    return tuple(value[v] for v in range(nvars))


# --------------------------------------------------------------------------
# Hull intersection and height comparison.
# --------------------------------------------------------------------------


class HeightWitness(NamedTuple):
    """A point of conv(sigma) ∩ conv(tau) beyond the common face, with
    the heights of both liftings above it."""

    point: tuple[Fraction, ...]
    h_sigma: Fraction
    h_tau: Fraction


def _pair_system(
    s: Simplex, t: Simplex, d: int
) -> tuple[list[Row], list[tuple[Row, bool]], int]:
    """Barycentric feasibility system for a common point beyond the
    common face.

    Variables: weights over sigma's vertices then tau's.  A common point
    lies outside conv(sigma ∩ tau) iff its (unique) weight on sigma puts
    positive mass outside the shared vertices; by uniqueness on the tau
    side too, so one one-sided strict row suffices.
    """
    ns, nt = len(s), len(t)
    nvars = ns + nt
    eqs: list[Row] = []
    for k in range(1, d + 1):
        eqs.append(
            tuple(v**k for v in s) + tuple(-(w**k) for w in t) + (0,)
        )
    eqs.append((1,) * ns + (0,) * nt + (-1,))
    eqs.append((0,) * ns + (1,) * nt + (-1,))
    ineqs: list[tuple[Row, bool]] = []
    for i in range(nvars):
        unit = tuple(1 if j == i else 0 for j in range(nvars)) + (0,)
        ineqs.append((unit, False))
    shared = set(s) & set(t)
    beyond = tuple(1 if v not in shared else 0 for v in s) + (0,) * nt + (0,)
    ineqs.append((beyond, True))
    return eqs, ineqs, nvars


def geometric_overlap(sigma, tau, d: int) -> bool:
    """True iff conv(sigma) ∩ conv(tau) strictly exceeds the hull of the
    shared vertices — decided by exact linear feasibility."""
    s = as_simplex(sigma)
    t = as_simplex(tau)
    check_simplex_dim(s, d)
    check_simplex_dim(t, d)
    eqs, ineqs, nvars = _pair_system(s, t, d)
    return _solve(eqs, ineqs, nvars) is not None


def _witness_from(
    s: Simplex, t: Simplex, d: int, weights: tuple[Fraction, ...]
) -> HeightWitness:
    ns = len(s)
    lam, mu = weights[:ns], weights[ns:]
    point = tuple(
        sum(l * v**k for l, v in zip(lam, s)) for k in range(1, d + 1)
    )
    h_sig = sum(l * v ** (d + 1) for l, v in zip(lam, s))
    h_tau = sum(m * w ** (d + 1) for m, w in zip(mu, t))
    return HeightWitness(point, Fraction(h_sig), Fraction(h_tau))


def classify_with_witness(
    sigma, tau, d: int
) -> tuple[PairClass, Optional[HeightWitness]]:
    """Classify a pair geometrically and, unless disjoint, produce a
    witness point: below/above classes come with a point whose lifted
    heights are strictly ordered, the crossing class with a point where
    the liftings meet."""
    s = as_simplex(sigma)
    t = as_simplex(tau)
    check_simplex_dim(s, d)
    check_simplex_dim(t, d)
    eqs, ineqs, nvars = _pair_system(s, t, d)
    if _solve(eqs, ineqs, nvars) is None:
        return PairClass.A, None
    hrow = tuple(v ** (d + 1) for v in s) + tuple(-(w ** (d + 1)) for w in t) + (0,)
    neg_hrow = tuple(-a for a in hrow)

    below = _solve(eqs, ineqs + [(neg_hrow, True)], nvars)  # h_sigma < h_tau
    above = _solve(eqs, ineqs + [(hrow, True)], nvars)  # h_sigma > h_tau
    if below is not None and above is not None:
        crossing = _solve(eqs + [hrow], ineqs, nvars)
        if crossing is None:
            raise InternalConsistencyError(
                "strict height witnesses on a convex region but no crossing",
                state={"sigma": s, "tau": t, "d": d},
            )
        return PairClass.D, _witness_from(s, t, d, crossing)
    if below is not None:
        return PairClass.B, _witness_from(s, t, d, below)
    if above is not None:
        return PairClass.C, _witness_from(s, t, d, above)
    raise InternalConsistencyError(
        "hulls overlap but neither lifting is ever strictly lower",
        state={"sigma": s, "tau": t, "d": d},
    )


def geometric_classify(sigma, tau, d: int) -> PairClass:
    """Four-way pair classification by exact geometry alone."""
    return classify_with_witness(sigma, tau, d)[0]
