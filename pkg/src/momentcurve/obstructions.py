"""Non-extendable families and their certification.

From dimension 5 upward there are pairwise non-overlapping families of
simplices on the moment curve that no triangulation of the cyclic
polytope contains.  This module provides the classical three-member
example on eight vertices, two lifting constructions that grow such
examples to more vertices (`lift_n`) or higher dimension (`lift_d`), a
complete budgeted backtracking search that certifies extendability
either way (`verify_nonextendable`), a maximality scan
(`maximal_nonoverlap_check`), and the planar Gale-dual criterion for
the boundary case n = D+3 (`gale_dual_check`)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .core import Simplex, gale_facets, overlaps_unchecked
from .errors import (
    InternalConsistencyError,
    InvalidInputError,
    ResourceBudgetError,
    UnsupportedError,
)
from .extension import Complex, _is_face_of
from .geometry import moment_point, orientation
from .triangulations import Triangulation, _require_valid, boundary_ridges

# ------------------------------------------------------------ domain types


@dataclass
class Certificate:
    """Verdict on whether a family extends to a triangulation, along
    with how it was decided.  `witness` carries the extending
    triangulation when the search found one; `stats` carries the
    exploration counts for exhaustive verdicts, or the dual-cone data
    for the planar criterion."""

    verdict: str  # "extendable" | "non-extendable"
    method: str  # "search" | "gale"
    witness: Optional[Triangulation] = None
    stats: dict = field(default_factory=dict)


@dataclass(frozen=True)
class GaleConfiguration:
    """The n planar vectors of an exact-rational kernel basis of the
    (D+1) x n moment matrix on [n] (n = D+3), plus, per input simplex,
    the two vector indices of its complement spanning the dual cone."""

    vectors: tuple[tuple[Fraction, Fraction], ...]
    dual_cones: tuple[tuple[int, int], ...]


# ------------------------------------------------------------- generators


def rambau_example() -> Complex:
    """Rambau's family: three 5-simplices on eight vertices that are
    pairwise non-overlapping yet admit no further non-overlapping
    5-simplex, hence no extension to a triangulation."""
    return Complex.make(
        [
            (1, 2, 3, 4, 5, 6),
            (3, 4, 5, 6, 7, 8),
            (1, 2, 3, 6, 7, 8),
        ],
        5,
        8,
    )


def _polytope_centroid(n: int, d: int) -> tuple[Fraction, ...]:
    pts = [moment_point(t, d) for t in range(1, n + 1)]
    return tuple(
        Fraction(sum(p[i] for p in pts), n) for i in range(d)
    )


def _visible_boundary_facets(n: int, d: int, q: int) -> list[Simplex]:
    """Boundary facets of the cyclic polytope on [n] whose supporting
    hyperplane strictly separates the curve point q from the polytope's
    interior."""
    inner = _polytope_centroid(n, d)
    q_pt = moment_point(q, d)
    out = []
    facets = gale_facets(n, d)
    for s in sorted(set(facets.upper) | set(facets.lower)):
        pts = [moment_point(v, d) for v in s]
        side_q = orientation(pts + [q_pt])
        side_in = orientation(pts + [list(inner)])
        if side_q == 0 or side_in == 0:
            raise InternalConsistencyError(
                "a boundary facet's hyperplane contains a point it "
                "must not contain",
                state={"facet": s, "q": q},
            )
        if side_q != side_in:
            out.append(s)
    return out


def lift_n(f: Complex) -> Complex:
    """Grow a family by one vertex, keeping non-extendability: cone
    every boundary facet visible from the new last curve vertex onto
    that vertex.  Any triangulation containing the result would restrict
    to a triangulation on the old vertices containing the old family."""
    n, d = f.n, f.d
    new = n + 1
    added = [
        tuple(sorted(s + (new,)))
        for s in _visible_boundary_facets(n, d, new)
    ]
    return Complex.make(list(f.simplices) + added, d, new)


def lift_d(f: Complex) -> Complex:
    """Raise a family one dimension, keeping non-extendability: every
    member gains the new last vertex.  Interlacing patterns cannot grow
    by appending one shared vertex, so the members stay pairwise
    non-overlapping; the vertex link of any extension would extend the
    original family."""
    new = f.n + 1
    sims = [tuple(sorted(s + (new,))) for s in f.simplices]
    return Complex.make(sims, f.d + 1, new)


# ------------------------------------------------------------- maximality


def maximal_nonoverlap_check(f: Complex) -> list[Simplex]:
    """All full-dimensional simplices on the family's vertices that
    could still be added without overlap.  Empty means the family is
    maximal."""
    out = []
    members = set(f.simplices)
    for cand in itertools.combinations(range(1, f.n + 1), f.d + 1):
        if cand in members:
            continue
        if all(
            not overlaps_unchecked(cand, s, f.d) for s in f.simplices
        ):
            out.append(cand)
    return out


# ------------------------------------------------------- exhaustive search


def verify_nonextendable(f: Complex, budget: int) -> Certificate:
    """Decide extendability by complete backtracking over ridge-covering
    choices.

    States hold a partial set of facets (on top of the family and the
    polytope boundary); each step picks the lexicographically smallest
    ridge still needing a cover and branches over every candidate facet
    that overlaps nothing placed so far.  A state with no uncovered
    ridges is a triangulation (returned as witness); exhausting the
    whole tree proves non-extendability.  The node budget is mandatory —
    exceeding it raises a resource error rather than ever guessing.
    """
    if budget is None or budget < 1:
        raise InvalidInputError(
            "an explicit positive node budget is required"
        )
    n, d = f.n, f.d
    if n < d + 1:
        raise InvalidInputError(f"need n >= d+1 = {d + 1}, got n={n}")
    verts = tuple(range(1, n + 1))
    boundary = sorted(boundary_ridges(verts, d))
    base: list[Simplex] = list(f.simplices) + boundary
    counters = {"nodes": 0, "candidate_trials": 0}
    witness: list[Triangulation] = []

    def explore(
        chosen: list[Simplex], chosen_set: set[Simplex], active: set[Simplex]
    ) -> bool:
        counters["nodes"] += 1
        if counters["nodes"] > budget:
            raise ResourceBudgetError(
                f"extension search exceeded its budget of {budget} nodes",
                explored=counters["nodes"],
            )
        if not active:
            t = _require_valid(
                Triangulation.make(chosen, d, verts),
                "exhaustive extension search",
            )
            witness.append(t)
            return True
        ridge = min(active)
        for v in verts:
            if v in ridge:
                continue
            cand = tuple(sorted(ridge + (v,)))
            if cand in chosen_set:
                continue
            counters["candidate_trials"] += 1
            if any(
                overlaps_unchecked(cand, s, d)
                for s in itertools.chain(chosen, base)
            ):
                continue
            cand_ridges = set(itertools.combinations(cand, d))
            chosen.append(cand)
            chosen_set.add(cand)
            if explore(chosen, chosen_set, active ^ cand_ridges):
                return True
            chosen.pop()
            chosen_set.remove(cand)
        return False

    if explore([], set(), set(boundary)):
        t = witness[0]
        missing = [s for s in f.simplices if not _is_face_of(s, t)]
        if missing:
            raise InternalConsistencyError(
                "search witness does not contain the family",
                state={"missing": missing, "facets": t.facets},
            )
        return Certificate(
            "extendable", "search", witness=t, stats=dict(counters)
        )
    counters["exhausted"] = True
    return Certificate("non-extendable", "search", stats=dict(counters))


# ------------------------------------------------------ planar Gale checks


def _moment_kernel_basis(n: int, d: int) -> list[list[Fraction]]:
    """Two exact-rational vectors spanning the kernel of the (d+1) x n
    matrix with rows t^0 .. t^d evaluated at t = 1..n (requires
    n = d+3)."""
    rows = [
        [Fraction(t) ** k for t in range(1, n + 1)] for k in range(d + 1)
    ]
    m = [row[:] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next(
            (i for i in range(r, len(m)) if m[i][c] != 0), None
        )
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                fac = m[i][c]
                m[i] = [a - fac * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 2 or r != d + 1:
        raise InternalConsistencyError(
            "the moment matrix does not have the expected rank",
            state={"pivots": pivots, "free": free},
        )
    basis = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fc]
        basis.append(vec)
    for vec in basis:
        if any(
            sum(row[j] * vec[j] for j in range(n)) != 0 for row in rows
        ):
            raise InternalConsistencyError(
                "kernel basis fails the defining equations"
            )
    return basis


def gale_configuration(f: Complex) -> GaleConfiguration:
    """The planar Gale vectors for a family on n = D+3 vertices and the
    complement index pair spanning each member's dual cone."""
    n, d = f.n, f.d
    if n != d + 3:
        raise UnsupportedError(
            f"the planar dual-cone criterion needs n = D+3, "
            f"got n={n}, D={d}"
        )
    for s in f.simplices:
        if len(s) != d + 1:
            raise InvalidInputError(
                f"dual cones are defined for full-dimensional members; "
                f"{s} has {len(s)} vertices"
            )
    b1, b2 = _moment_kernel_basis(n, d)
    vectors = tuple((b1[i], b2[i]) for i in range(n))
    for i, v in enumerate(vectors):
        if v == (0, 0):
            raise InternalConsistencyError(
                f"Gale vector {i + 1} vanishes; the moment matrix "
                "columns are not in general position"
            )
    for (i, u), (j, w) in itertools.combinations(enumerate(vectors), 2):
        if u[0] * w[1] - u[1] * w[0] == 0:
            raise InternalConsistencyError(
                f"Gale vectors {i + 1} and {j + 1} are collinear; the "
                "moment matrix columns are not in general position"
            )
    cones = []
    full = set(range(1, n + 1))
    for s in f.simplices:
        comp = tuple(sorted(full - set(s)))
        cones.append(comp)
    return GaleConfiguration(vectors, tuple(cones))


def _cross(u, w) -> Fraction:
    return u[0] * w[1] - u[1] * w[0]


def _in_cone(v, u, w) -> bool:
    """Membership of v in the positive span of independent u, w."""
    det = _cross(u, w)
    alpha = _cross(v, w) / det
    beta = _cross(u, v) / det
    return alpha >= 0 and beta >= 0


def gale_dual_check(f: Complex) -> Certificate:
    """Decide extendability at n = D+3 through the plane: the family
    extends to a (regular, hence any) triangulation iff the dual cones
    of its members — each the positive span of the two Gale vectors of
    its complement — intersect with nonempty interior.

    The interior is nonempty iff two linearly independent candidate rays
    (generators of the individual cones) lie in every cone; their sum is
    then an interior direction.
    """
    cfg = gale_configuration(f)
    if not f.simplices:
        return Certificate(
            "extendable",
            "gale",
            stats={"dual_cones": (), "note": "no constraints"},
        )
    cone_gens = [
        (cfg.vectors[i - 1], cfg.vectors[j - 1]) for i, j in cfg.dual_cones
    ]
    rays = [g for pair in cone_gens for g in pair]
    common = [
        r
        for r in rays
        if all(_in_cone(r, u, w) for u, w in cone_gens)
    ]
    pair = next(
        (
            (r1, r2)
            for r1, r2 in itertools.combinations(common, 2)
            if _cross(r1, r2) != 0
        ),
        None,
    )
    stats = {
        "dual_cones": cfg.dual_cones,
        "common_rays": tuple(common),
    }
    if pair is None:
        return Certificate("non-extendable", "gale", stats=stats)
    direction = (pair[0][0] + pair[1][0], pair[0][1] + pair[1][1])
    if not all(
        _in_cone(direction, u, w) for u, w in cone_gens
    ):
        raise InternalConsistencyError(
            "the combined ray left the dual cones",
            state={"direction": direction},
        )
    stats["interior_direction"] = direction
    return Certificate("extendable", "gale", stats=stats)
