"""Combinatorial predicates for simplices on the moment curve.

A simplex is identified with its strictly increasing tuple of vertex
indices; everything in this module depends only on the ordering of the
indices, never on coordinates.  The central primitive is the maximum
length of an alternating ("interlacing") subsequence of the merged
vertex list, from which overlap, the height order and the four-way pair
classification all follow.
"""

from __future__ import annotations

import enum
import itertools
from typing import Iterable, NamedTuple, Sequence

from .errors import InternalConsistencyError, InvalidInputError, InvalidSimplexError

Simplex = tuple[int, ...]


def as_simplex(vertices: Iterable[int]) -> Simplex:
    """Validate and normalize a vertex list into a Simplex tuple.

    The list must be nonempty and strictly increasing (callers that hold
    unsorted vertex *sets* should sort first; silent sorting would hide
    data errors in files).
    """
    s = tuple(vertices)
    if not s:
        raise InvalidSimplexError("empty simplex")
    for a, b in zip(s, s[1:]):
        if a >= b:
            raise InvalidSimplexError(f"vertices not strictly increasing: {s}")
    if s[0] < 1:
        raise InvalidSimplexError(f"vertex indices must be >= 1: {s}")
    return s


def check_simplex_dim(s: Simplex, d: int) -> None:
    if d < 1:
        raise InvalidInputError(f"dimension must be >= 1, got {d}")
    if len(s) > d + 1:
        raise InvalidSimplexError(f"simplex {s} has {len(s)} vertices, too large for d={d}")


class PairClass(enum.Enum):
    """The four mutually exclusive relations of an ordered simplex pair."""

    A = "A"  # no overlap
    B = "B"  # sigma below tau in the height order
    C = "C"  # sigma above tau
    D = "D"  # the liftings themselves overlap

    def __str__(self) -> str:  # compact in reports
        return self.value


class InterlaceReport(NamedTuple):
    max_len_sigma_start: int
    max_len_tau_start: int


def _alternating_lengths(sigma: Simplex, tau: Simplex) -> tuple[int, int]:
    """Longest alternating subsequence lengths over the merged vertex
    sequence, for both starting roles.

    A vertex shared by both simplices may serve either role, so the scan
    keeps four running maxima indexed by (starting role, ending role);
    updates read the pre-vertex values for both roles so one vertex is
    never used twice inside a single subsequence.
    """
    # ss = starts sigma-role ends sigma-role, st = starts sigma ends tau, ...
    ss = st = tt = ts = 0
    i = j = 0
    ls, lt = len(sigma), len(tau)
    while i < ls or j < lt:
        if j >= lt or (i < ls and sigma[i] < tau[j]):
            in_s, in_t = True, False
            i += 1
        elif i >= ls or tau[j] < sigma[i]:
            in_s, in_t = False, True
            j += 1
        else:  # shared vertex
            in_s = in_t = True
            i += 1
            j += 1
        ss0, st0, tt0, ts0 = ss, st, tt, ts
        if in_s:
            # start a new sequence here (1), or append to one ending tau-role
            ss = max(ss, 1, st0 + 1)
            if tt0 > 0:
                ts = max(ts, tt0 + 1)
        if in_t:
            tt = max(tt, 1, ts0 + 1)
            if ss0 > 0:
                st = max(st, ss0 + 1)
    return max(ss, st), max(tt, ts)


def interlace_report(sigma: Iterable[int], tau: Iterable[int]) -> InterlaceReport:
    """Maximum alternating-subsequence lengths for both starting roles."""
    s = as_simplex(sigma)
    t = as_simplex(tau)
    a, b = _alternating_lengths(s, t)
    return InterlaceReport(a, b)


def overlaps(sigma: Iterable[int], tau: Iterable[int], d: int) -> bool:
    """True iff conv(sigma) and conv(tau) intersect beyond their common
    face on the moment curve in R^d — equivalently, iff the pair is
    (d+2)-interlacing."""
    s = as_simplex(sigma)
    t = as_simplex(tau)
    check_simplex_dim(s, d)
    check_simplex_dim(t, d)
    a, b = _alternating_lengths(s, t)
    return max(a, b) >= d + 2


def overlaps_unchecked(sigma: Simplex, tau: Simplex, d: int) -> bool:
    """`overlaps` without input validation, for hot loops on tuples that
    are already known to be well-formed simplices."""
    a, b = _alternating_lengths(sigma, tau)
    return (a if a >= b else b) >= d + 2


def height_less(sigma: Iterable[int], tau: Iterable[int], d: int) -> bool:
    """The strict height order: sigma's lifting lies below tau's over the
    overlap region.  Decided by which starting role attains a
    (d+2)-alternating sequence; the required role flips with the parity
    of d."""
    return classify_pair(sigma, tau, d) is PairClass.B


def classify_pair(sigma: Iterable[int], tau: Iterable[int], d: int) -> PairClass:
    s = as_simplex(sigma)
    t = as_simplex(tau)
    check_simplex_dim(s, d)
    check_simplex_dim(t, d)
    return _classify(s, t, d)


def _classify(s: Simplex, t: Simplex, d: int) -> PairClass:
    """Core four-way classification; assumes validated inputs."""
    a, b = _alternating_lengths(s, t)
    m = a if a >= b else b
    if m < d + 2:
        return PairClass.A
    if m >= d + 3:
        return PairClass.D
    # m == d + 2 exactly: with |s|,|t| <= d+1 exactly one role attains it
    # (if both did, the shared-prefix argument would force |s ∩ t| >= d+2).
    sigma_start = a == m
    tau_start = b == m
    if sigma_start and tau_start:
        raise InternalConsistencyError(
            f"both roles attain a (d+2)-alternating sequence for {s} vs {t} at d={d}",
            state={"sigma": s, "tau": t, "d": d, "lengths": (a, b)},
        )
    if d % 2 == 0:
        return PairClass.B if sigma_start else PairClass.C
    return PairClass.B if tau_start else PairClass.C


def order_simplices(simplices: Sequence[Iterable[int]], d: int) -> list[Simplex]:
    """A linear extension of the (reflexive-transitive closure of the)
    height order restricted to the input, ties broken lexicographically.

    Cycle detection is defensive: the height order is a partial order,
    so a cycle means a bug, not bad input.
    """
    items = [as_simplex(s) for s in simplices]
    for s in items:
        check_simplex_dim(s, d)
    n = len(items)
    succs: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            c = _classify(items[i], items[j], d)
            if c is PairClass.B:
                succs[i].append(j)
                indeg[j] += 1
            elif c is PairClass.C:
                succs[j].append(i)
                indeg[i] += 1
    out: list[Simplex] = []
    ready = sorted((i for i in range(n) if indeg[i] == 0), key=lambda i: items[i])
    while ready:
        ready.sort(key=lambda i: items[i])
        i = ready.pop(0)
        out.append(items[i])
        for j in succs[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    if len(out) != n:
        raise InternalConsistencyError(
            "antisymmetry violated: height order digraph has a cycle",
            state={"simplices": items, "d": d},
        )
    return out


class GaleFacets(NamedTuple):
    upper: tuple[Simplex, ...]
    lower: tuple[Simplex, ...]


def adjacent_pair_blocks(k: int, lo: int, hi: int) -> list[tuple[int, ...]]:
    """All ways to choose k pairwise-disjoint adjacent pairs {i, i+1}
    inside the integer interval [lo, hi], flattened and sorted."""
    if k == 0:
        return [()]
    out: list[tuple[int, ...]] = []

    def rec(start: int, left: int, acc: tuple[int, ...]) -> None:
        if left == 0:
            out.append(acc)
            return
        # next pair must start late enough to leave room for the rest
        for p in range(start, hi - 2 * left + 2):
            rec(p + 2, left - 1, acc + (p, p + 1))

    rec(lo, k, ())
    return out


def gale_facets(n: int, d: int) -> GaleFacets:
    """Facets of the cyclic polytope on [n] in R^d, split into upper and
    lower envelope, via the evenness pattern of adjacent vertex pairs."""
    if d < 1:
        raise InvalidInputError(f"dimension must be >= 1, got {d}")
    if n <= d:
        raise InvalidInputError(f"need n >= d+1 vertices, got n={n}, d={d}")
    if d % 2 == 1:
        k = (d - 1) // 2
        upper = [blk + (n,) for blk in adjacent_pair_blocks(k, 1, n - 1)]
        lower = [(1,) + blk for blk in adjacent_pair_blocks(k, 2, n)]
    else:
        k = d // 2
        upper = [(1,) + blk + (n,) for blk in adjacent_pair_blocks(k - 1, 2, n - 1)]
        lower = list(adjacent_pair_blocks(k, 1, n))
    return GaleFacets(tuple(sorted(upper)), tuple(sorted(lower)))


def gale_facets_on(vertices: Sequence[int], d: int) -> GaleFacets:
    """Gale facets of the cyclic polytope on an arbitrary increasing
    vertex set (facet structure depends only on the ordering)."""
    v = as_simplex(vertices)
    raw = gale_facets(len(v), d)
    relabel = lambda f: tuple(v[i - 1] for i in f)
    return GaleFacets(
        tuple(sorted(map(relabel, raw.upper))),
        tuple(sorted(map(relabel, raw.lower))),
    )


def all_simplices(n: int, size: int) -> list[Simplex]:
    """All strictly increasing `size`-tuples over [n], in lex order."""
    return [tuple(c) for c in itertools.combinations(range(1, n + 1), size)]
