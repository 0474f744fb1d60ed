"""Triangulations of cyclic polytopes.

Validity checking, the height order between simplices and
triangulations, minimum/maximum (envelope) triangulations, coning,
vertex links, exhaustive enumeration, the poset of all triangulations
with its lattice meet in low dimension, and the lifting of maximal
chains one dimension up.

A triangulation may live on any increasing vertex set V, not just
1..n; everything depends only on the ordering of the labels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .core import (
    PairClass,
    Simplex,
    _classify,
    as_simplex,
    check_simplex_dim,
    gale_facets_on,
    overlaps_unchecked,
)
from .errors import (
    InternalConsistencyError,
    InvalidInputError,
    ResourceBudgetError,
    UnsupportedError,
)
from .geometry import moment_point, orientation, simplex_volume


@dataclass(frozen=True)
class Triangulation:
    """A set of (d+1)-vertex simplices on an increasing vertex tuple.

    Construct through :meth:`make`, which canonicalizes; the raw
    constructor trusts its arguments.
    """

    d: int
    vertices: tuple[int, ...]
    facets: tuple[Simplex, ...]

    @classmethod
    def make(
        cls,
        facets: Iterable[Iterable[int]],
        d: int,
        vertices: Optional[Iterable[int]] = None,
    ) -> "Triangulation":
        fs = sorted({as_simplex(f) for f in facets})
        for f in fs:
            if len(f) != d + 1:
                raise InvalidInputError(
                    f"facet {f} has {len(f)} vertices, expected d+1={d + 1}"
                )
        if vertices is None:
            verts = sorted({v for f in fs for v in f})
        else:
            verts = list(as_simplex(vertices))
            used = {v for f in fs for v in f}
            if not used <= set(verts):
                raise InvalidInputError(
                    f"facets use vertices outside the declared set: "
                    f"{sorted(used - set(verts))}"
                )
        if len(verts) < d + 1:
            raise InvalidInputError(
                f"need at least d+1={d + 1} vertices, got {len(verts)}"
            )
        return cls(d, tuple(verts), tuple(fs))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def faces(self, size: int) -> frozenset[Simplex]:
        """All `size`-vertex faces of the facets."""
        out = set()
        for f in self.facets:
            out.update(itertools.combinations(f, size))
        return frozenset(out)


@dataclass
class ValidityReport:
    ok: bool
    failures: list[tuple[str, object]] = field(default_factory=list)


def boundary_ridges(vertices: Sequence[int], d: int) -> frozenset[Simplex]:
    """All boundary (d-1)-faces of the cyclic d-polytope on `vertices`."""
    up, lo = gale_facets_on(vertices, d)
    return frozenset(up) | frozenset(lo)


def _envelope_facets(vertices: Sequence[int], d: int, side: str) -> list[Simplex]:
    """Facets of the minimum ("lower") or maximum ("upper")
    triangulation: project the matching envelope of the cyclic polytope
    one dimension up."""
    v = tuple(vertices)
    if side not in ("lower", "upper"):
        raise InvalidInputError(f"side must be 'lower' or 'upper', got {side!r}")
    if len(v) == d + 1:
        return [v]
    up, lo = gale_facets_on(v, d + 1)
    return list(lo if side == "lower" else up)


def polytope_volume(vertices: Sequence[int], d: int) -> Fraction:
    """Exact volume of the cyclic polytope on the given curve
    parameters, via its minimum triangulation."""
    return sum(
        (simplex_volume(f, d) for f in _envelope_facets(vertices, d, "lower")),
        Fraction(0),
    )


def validate(t: Triangulation) -> ValidityReport:
    """Four independent checks: pairwise non-overlap, boundary ridges
    covered once, interior ridges covered twice, and the exact volume
    identity against the minimum triangulation."""
    d = t.d
    for f in t.facets:
        if len(f) != d + 1 or not set(f) <= set(t.vertices):
            raise InvalidInputError(f"malformed facet {f}")
    failures: list[tuple[str, object]] = []

    for a, b in itertools.combinations(t.facets, 2):
        if overlaps_unchecked(a, b, d):
            failures.append(("overlap-pair", (a, b)))

    counts: dict[Simplex, int] = {}
    for f in t.facets:
        for r in itertools.combinations(f, d):
            counts[r] = counts.get(r, 0) + 1
    boundary = boundary_ridges(t.vertices, d)
    for r in sorted(boundary):
        c = counts.get(r, 0)
        if c == 0:
            failures.append(("missing-boundary-ridge", r))
        elif c != 1:
            failures.append(("bad-ridge-multiplicity", (r, c)))
    for r in sorted(counts):
        if r not in boundary and counts[r] != 2:
            failures.append(("bad-ridge-multiplicity", (r, counts[r])))

    total = sum((simplex_volume(f, d) for f in t.facets), Fraction(0))
    reference = polytope_volume(t.vertices, d)
    if total != reference:
        failures.append(("volume-mismatch", (total, reference)))

    return ValidityReport(not failures, failures)


def _require_valid(t: Triangulation, context: str) -> Triangulation:
    report = validate(t)
    if not report.ok:
        raise InternalConsistencyError(
            f"{context} produced an invalid triangulation",
            state={"failures": report.failures, "facets": t.facets},
        )
    return t


# ------------------------------------------------------------ height order


def simplex_below(sigma: Iterable[int], t: Triangulation) -> bool:
    """True iff sigma's lifting is nowhere above t's: every facet
    classifies as disjoint-hulls or sigma-below."""
    s = as_simplex(sigma)
    check_simplex_dim(s, t.d)
    return all(
        _classify(s, f, t.d) in (PairClass.A, PairClass.B) for f in t.facets
    )


def simplex_above(sigma: Iterable[int], t: Triangulation) -> bool:
    s = as_simplex(sigma)
    check_simplex_dim(s, t.d)
    return all(
        _classify(s, f, t.d) in (PairClass.A, PairClass.C) for f in t.facets
    )


def triangulation_leq(t1: Triangulation, t2: Triangulation) -> bool:
    """The second height order on triangulations: t1's facets all lie
    below t2 (pointwise height comparison, since t1 tiles the
    polytope)."""
    if (t1.d, t1.vertices) != (t2.d, t2.vertices):
        raise InvalidInputError(
            "cannot compare triangulations on different vertex sets or dims"
        )
    return all(simplex_below(f, t2) for f in t1.facets)


def submersion_set(t: Triangulation) -> frozenset[Simplex]:
    """All middle-dimensional simplices over the vertex set lying below
    the triangulation (cardinality ceil(d/2)+1 each); this set
    determines the triangulation for d <= 3."""
    size = -(-t.d // 2) + 1
    return frozenset(
        s
        for s in itertools.combinations(t.vertices, size)
        if simplex_below(s, t)
    )


def face_membership(tau: Iterable[int], t: Triangulation) -> bool:
    """Whether tau is a face of t, decided order-theoretically: tau must
    lie below t and no submersion-set member may lie strictly above
    it."""
    s = as_simplex(tau)
    if not simplex_below(s, t):
        raise InvalidInputError(f"{s} is not below the triangulation")
    return not any(
        _classify(s, m, t.d) is PairClass.B for m in submersion_set(t)
    )


# ------------------------------------------------- envelopes, cones, links


def envelope_triangulation(
    vertices: Sequence[int], d: int, side: str
) -> Triangulation:
    """The minimum ("lower") or maximum ("upper") triangulation of the
    cyclic polytope on the given vertices."""
    v = as_simplex(vertices)
    if len(v) <= d:
        raise InvalidInputError(f"need at least d+1 vertices, got {len(v)}")
    return Triangulation.make(_envelope_facets(v, d, side), d, v)


def cone(t: Triangulation, q: int) -> Triangulation:
    """Extend a triangulation by a new curve vertex: add q joined to
    every boundary facet of the current hull visible from the moment
    point of q (exact orientation tests against an interior point)."""
    if q in t.vertices:
        raise InvalidInputError(f"vertex {q} already present")
    if q < 1:
        raise InvalidInputError(f"vertex indices must be >= 1, got {q}")
    d = t.d
    pts = {v: moment_point(v, d) for v in t.vertices}
    k = len(t.vertices)
    centroid = tuple(
        Fraction(sum(p[i] for p in pts.values()), k) for i in range(d)
    )
    qpt = moment_point(q, d)
    new_facets = list(t.facets)
    for ridge in boundary_ridges(t.vertices, d):
        base = [pts[v] for v in ridge]
        inner = orientation(base + [centroid])
        outer = orientation(base + [qpt])
        if inner * outer < 0:  # q strictly beyond this boundary facet
            new_facets.append(tuple(sorted(ridge + (q,))))
    out = Triangulation.make(new_facets, d, sorted(t.vertices + (q,)))
    return _require_valid(out, f"cone over {q}")


def link_at_max(t: Triangulation) -> Triangulation:
    """The link of the largest vertex: drop it from every facet that
    contains it, giving a triangulation one dimension and one vertex
    down."""
    m = t.vertices[-1]
    link = [tuple(v for v in f if v != m) for f in t.facets if m in f]
    if not link:
        raise InvalidInputError(f"no facet contains the maximum vertex {m}")
    out = Triangulation.make(link, t.d - 1, t.vertices[:-1])
    return _require_valid(out, "link at the maximum vertex")


# -------------------------------------------------------------- enumeration


def enumerate_triangulations(
    n: int, d: int, budget: Optional[int] = None
) -> list[Triangulation]:
    """Every triangulation of C(n,d), by ridge-driven backtracking.

    Each search node picks the lexicographically smallest ridge still
    needing a facet and branches over all compatible facets containing
    it; the deterministic ridge choice makes every triangulation
    reachable along exactly one path, so the output is duplicate-free
    by construction.
    """
    if n <= d:
        raise InvalidInputError(f"need n >= d+1, got n={n}, d={d}")
    return enumerate_on(tuple(range(1, n + 1)), d, budget)


def enumerate_on(
    vertices: Sequence[int], d: int, budget: Optional[int] = None
) -> list[Triangulation]:
    verts = as_simplex(vertices)
    boundary = boundary_ridges(verts, d)
    out: list[Triangulation] = []
    counts: dict[Simplex, int] = {}
    chosen: list[Simplex] = []
    nodes = 0

    def active_ridge() -> Optional[Simplex]:
        best: Optional[Simplex] = None
        for r in boundary:
            if counts.get(r, 0) == 0 and (best is None or r < best):
                best = r
        for r, c in counts.items():
            if r not in boundary and c == 1 and (best is None or r < best):
                best = r
        return best

    def candidates(r: Simplex) -> list[Simplex]:
        rset = set(r)
        cands = []
        for v in verts:
            if v in rset:
                continue
            f = tuple(sorted(r + (v,)))
            if f in chosen_set:
                continue
            if any(overlaps_unchecked(f, g, d) for g in chosen):
                continue
            ok = True
            for s in itertools.combinations(f, d):
                cap = 1 if s in boundary else 2
                if counts.get(s, 0) + 1 > cap:
                    ok = False
                    break
            if ok:
                cands.append(f)
        return cands

    chosen_set: set[Simplex] = set()

    def place(f: Simplex) -> None:
        chosen.append(f)
        chosen_set.add(f)
        for s in itertools.combinations(f, d):
            counts[s] = counts.get(s, 0) + 1

    def unplace(f: Simplex) -> None:
        chosen.pop()
        chosen_set.discard(f)
        for s in itertools.combinations(f, d):
            counts[s] -= 1
            if counts[s] == 0:
                del counts[s]

    def search() -> None:
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise ResourceBudgetError(
                f"enumeration exceeded {budget} nodes", explored=nodes
            )
        r = active_ridge()
        if r is None:
            t = Triangulation.make(chosen, d, verts)
            if validate(t).ok:
                out.append(t)
            return
        for f in candidates(r):
            place(f)
            search()
            unplace(f)

    search()
    result = sorted(out, key=lambda t: t.facets)
    if len({t.facets for t in result}) != len(result):
        raise InternalConsistencyError("enumeration produced duplicates")
    return result


# -------------------------------------------------------------------- poset


@dataclass(frozen=True)
class HSTPoset:
    """All triangulations of one cyclic polytope under the height
    order, with the full relation and its transitive reduction."""

    elements: tuple[Triangulation, ...]
    leq: tuple[tuple[bool, ...], ...]
    covers: tuple[tuple[int, int], ...]
    minimum: int
    maximum: int

    def index_of(self, t: Triangulation) -> int:
        try:
            return self.elements.index(t)
        except ValueError:
            raise InvalidInputError(
                "triangulation is not an element of this poset"
            ) from None

    def maximal_chains(self) -> list[list[int]]:
        """All maximal chains, as index lists from minimum to maximum."""
        succ: dict[int, list[int]] = {}
        for a, b in self.covers:
            succ.setdefault(a, []).append(b)
        chains: list[list[int]] = []

        def walk(path: list[int]) -> None:
            here = path[-1]
            if here == self.maximum:
                chains.append(list(path))
                return
            for nxt in sorted(succ.get(here, ())):
                walk(path + [nxt])

        walk([self.minimum])
        return chains


def hst_poset(n: int, d: int, budget: Optional[int] = None) -> HSTPoset:
    """The poset of all triangulations of C(n,d) under the height
    order."""
    elements = enumerate_triangulations(n, d, budget)
    return poset_of(elements)


def poset_of(elements: Sequence[Triangulation]) -> HSTPoset:
    k = len(elements)
    leq = tuple(
        tuple(
            i == j or triangulation_leq(elements[i], elements[j])
            for j in range(k)
        )
        for i in range(k)
    )
    for i in range(k):
        for j in range(k):
            if i != j and leq[i][j] and leq[j][i]:
                raise InternalConsistencyError(
                    "height order on triangulations is not antisymmetric",
                    state={"i": i, "j": j},
                )
    covers = []
    for i in range(k):
        for j in range(k):
            if i == j or not leq[i][j]:
                continue
            if not any(
                leq[i][m] and leq[m][j] for m in range(k) if m not in (i, j)
            ):
                covers.append((i, j))
    minima = [i for i in range(k) if all(leq[i][j] for j in range(k))]
    maxima = [j for j in range(k) if all(leq[i][j] for i in range(k))]
    if len(minima) != 1 or len(maxima) != 1:
        raise InternalConsistencyError(
            "poset lacks a unique minimum or maximum",
            state={"minima": minima, "maxima": maxima},
        )
    return HSTPoset(tuple(elements), leq, tuple(covers), minima[0], maxima[0])


# --------------------------------------------------------------------- meet


def meet(t1: Triangulation, t2: Triangulation) -> Triangulation:
    """Greatest lower bound of two triangulations (d = 2 or 3 only):
    intersect the submersion sets, keep the maximal members, and
    reassemble facets from full middle-dimensional cliques."""
    if (t1.d, t1.vertices) != (t2.d, t2.vertices):
        raise InvalidInputError(
            "cannot meet triangulations on different vertex sets or dims"
        )
    d = t1.d
    if d not in (2, 3):
        raise UnsupportedError(f"meet is implemented for d in {{2,3}}, got {d}")
    shared = submersion_set(t1) & submersion_set(t2)
    mid = {
        s
        for s in shared
        if not any(
            _classify(s, other, d) is PairClass.B for other in shared
        )
    }
    midsize = -(-d // 2) + 1
    facets = [
        f
        for f in itertools.combinations(t1.vertices, d + 1)
        if all(c in mid for c in itertools.combinations(f, midsize))
    ]
    out = Triangulation.make(facets, d, t1.vertices)
    _require_valid(out, "meet")
    if submersion_set(out) != shared:
        raise InternalConsistencyError(
            "meet does not realize the intersected submersion set",
            state={"got": sorted(submersion_set(out)), "want": sorted(shared)},
        )
    return out


# ---------------------------------------------------------- chain lifting


def psi_chain(
    chain: Sequence[Triangulation], poset: Optional[HSTPoset] = None
) -> Triangulation:
    """Lift a maximal chain of triangulations to a single triangulation
    one dimension up, whose d-skeleton is exactly the union of the
    chain members' faces."""
    if not chain:
        raise InvalidInputError("empty chain")
    d = chain[0].d
    verts = chain[0].vertices
    for t in chain:
        if (t.d, t.vertices) != (d, verts):
            raise InvalidInputError("chain members disagree on ambient data")
    if len(verts) < d + 2:
        raise InvalidInputError(
            f"lifting needs at least d+2={d + 2} vertices, got {len(verts)}"
        )
    if poset is None:
        poset = poset_of(enumerate_on(verts, d))
    idx = [poset.index_of(t) for t in chain]
    if idx[0] != poset.minimum or idx[-1] != poset.maximum:
        raise InvalidInputError("chain does not run from minimum to maximum")
    cover_set = set(poset.covers)
    for a, b in zip(idx, idx[1:]):
        if (a, b) not in cover_set:
            raise InvalidInputError(
                f"consecutive chain members {a}->{b} are not a covering pair"
            )

    skeleton: set[Simplex] = set()
    for t in chain:
        for f in t.facets:
            for size in range(1, len(f) + 1):
                skeleton.update(itertools.combinations(f, size))

    test_size = -(-(d + 1) // 2) + 1
    facets = [
        f
        for f in itertools.combinations(verts, d + 2)
        if all(
            c in skeleton for c in itertools.combinations(f, test_size)
        )
    ]
    out = Triangulation.make(facets, d + 1, verts)
    _require_valid(out, "chain lifting")
    lifted_skeleton = {
        s
        for f in out.facets
        for size in range(1, d + 2)
        for s in itertools.combinations(f, size)
    }
    if lifted_skeleton != skeleton:
        raise InternalConsistencyError(
            "lifted triangulation's skeleton differs from the chain union",
            state={
                "extra": sorted(lifted_skeleton - skeleton),
                "missing": sorted(skeleton - lifted_skeleton),
            },
        )
    return out
