"""Extension procedures: growing a pairwise non-overlapping family of
simplices on the moment curve into a full triangulation of the cyclic
polytope.

Two independent routes are implemented for ambient dimension 3 and 4:

* a greedy ridge-covering algorithm (`greedy_extend`), and
* a constructive pipeline (`constructive_extend`) that builds one
  triangulation per input simplex a dimension down, combines them with
  lattice meets, and lifts a maximal chain.

The constructive route is assembled from 2-dimensional building blocks
(`t_of_sigma_d2`, `separating_triangulation`, `lmr_triangulate`) and the
3-dimensional `level_triangulation_d3`.  Small instances (`extend_small`)
and a single full-dimensional simplex (`extend_single`) have direct
constructions valid in every dimension.
"""

from __future__ import annotations

import bisect
import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .core import (
    PairClass,
    Simplex,
    _classify,
    as_simplex,
    check_simplex_dim,
    order_simplices,
    overlaps_unchecked,
)
from .errors import (
    ExtensionStuck,
    InternalConsistencyError,
    InvalidInputError,
    UnsupportedError,
)
from .triangulations import (
    HSTPoset,
    Triangulation,
    _require_valid,
    boundary_ridges,
    cone,
    envelope_triangulation,
    hst_poset,
    meet,
    psi_chain,
    simplex_above,
    simplex_below,
)

# ------------------------------------------------------------ domain types


@dataclass(frozen=True)
class Complex:
    """A pairwise non-overlapping family of simplices on the first n
    curve vertices, stored by its maximal members (subsets are implicit
    faces)."""

    n: int
    d: int
    simplices: tuple[Simplex, ...]

    @classmethod
    def make(
        cls,
        simplices: Iterable[Iterable[int]],
        d: int,
        n: Optional[int] = None,
    ) -> "Complex":
        if d < 1:
            raise InvalidInputError(f"dimension must be >= 1, got {d}")
        sims = sorted({as_simplex(s) for s in simplices})
        for s in sims:
            check_simplex_dim(s, d)
        if n is None:
            if not sims:
                raise InvalidInputError(
                    "an empty family needs an explicit vertex count"
                )
            n = max(s[-1] for s in sims)
        if n < 1:
            raise InvalidInputError(f"vertex count must be >= 1, got {n}")
        for s in sims:
            if s[-1] > n:
                raise InvalidInputError(
                    f"simplex {s} uses vertices beyond n={n}"
                )
        maximal = [
            s for s in sims if not any(set(s) < set(t) for t in sims)
        ]
        for a, b in itertools.combinations(maximal, 2):
            if overlaps_unchecked(a, b, d):
                raise InvalidInputError(
                    f"simplices {a} and {b} overlap in dimension {d} "
                    f"(they are {d + 2}-interlacing)"
                )
        return cls(n, d, tuple(maximal))


@dataclass
class ExtensionResult:
    """Outcome of one extension run: the triangulation, which strategy
    produced it, an audit trail of the choices made, and counters."""

    triangulation: Triangulation
    strategy: str
    steps: tuple
    stats: dict


# ----------------------------------------------------------- shared checks


def _is_face_of(s: Simplex, t: Triangulation) -> bool:
    """A simplex on the triangulation's vertices is one of its faces iff
    it overlaps none of the facets (tiling argument: any covering facet
    either contains it or crosses it)."""
    if not set(s) <= set(t.vertices):
        return False
    return all(not overlaps_unchecked(s, f, t.d) for f in t.facets)


def _require_faces(
    result: Triangulation, wanted: Iterable[Simplex], context: str
) -> None:
    missing = [s for s in wanted if not _is_face_of(s, result)]
    if missing:
        raise InternalConsistencyError(
            f"{context}: input simplices are not faces of the output",
            state={"missing": missing, "facets": result.facets},
        )


# ------------------------------------------------------- skeleton reduction


def skeleton_reduce(f: Complex) -> Complex:
    """Replace full-dimensional members by enough of their skeleton to
    force them back into any extension, and drop faces that every
    triangulation contains anyway.

    d=2: triangles become their three edges; single vertices are
    dropped.  d=3: 4-vertex simplices become their four triangles;
    triangles and edges are kept; single vertices are dropped (every
    vertex is a face of every triangulation).  d=4: members on >= 4
    vertices become their triangles; triangles are kept; edges and
    vertices are dropped (the 4-dimensional cyclic polytope carries
    every edge on its boundary).
    """
    if f.d not in (2, 3, 4):
        raise UnsupportedError(
            f"skeleton reduction applies to d in {{2, 3, 4}}, got {f.d}"
        )
    out: set[Simplex] = set()
    for s in f.simplices:
        if f.d == 2:
            if len(s) == 3:
                out.update(itertools.combinations(s, 2))
            elif len(s) == 2:
                out.add(s)
        elif f.d == 3:
            if len(s) == 4:
                out.update(itertools.combinations(s, 3))
            elif len(s) >= 2:
                out.add(s)
        else:
            if len(s) >= 4:
                out.update(itertools.combinations(s, 3))
            elif len(s) == 3:
                out.add(s)
    return Complex.make(out, f.d, f.n)


# ---------------------------------------------------------------- greedy


def greedy_extend(f: Complex) -> ExtensionResult:
    """Extend a family into a triangulation by repeatedly covering an
    uncovered ridge with the first admissible facet.

    Maintains the set of ridges still needing a cover (boundary ridges
    need one facet, interior ridges two); at each step the
    lexicographically smallest active ridge is covered by the
    lexicographically first candidate facet that overlaps no face placed
    so far.  For d in {2, 3, 4} this always terminates in a valid
    triangulation containing every input simplex as a face.  For d >= 5
    there is no such guarantee: the run either completes (and then every
    input simplex is a face, because no chosen facet overlaps it) or
    raises ExtensionStuck carrying the partial state for inspection.
    """
    if f.d < 2:
        raise UnsupportedError(
            f"greedy extension applies to d >= 2, got {f.d}"
        )
    d, n = f.d, f.n
    if n < d + 1:
        raise InvalidInputError(f"need n >= d+1 = {d + 1}, got n={n}")
    reduced = skeleton_reduce(f) if d <= 4 else f
    verts = tuple(range(1, n + 1))
    boundary = sorted(boundary_ridges(verts, d))
    # Faces a candidate must not overlap: everything placed so far.  The
    # boundary facets sit at the end — they can never reject a candidate
    # inside the polytope, so real conflicts surface first.
    filter_faces: list[Simplex] = list(reduced.simplices) + list(boundary)
    chosen: list[Simplex] = []
    chosen_set: set[Simplex] = set()
    active: set[Simplex] = set(boundary)
    steps: list[tuple] = []
    pair_checks = 0
    while active:
        ridge = min(active)
        tried = 0
        placed: Optional[Simplex] = None
        for v in verts:
            if v in ridge:
                continue
            cand = tuple(sorted(ridge + (v,)))
            if cand in chosen_set:
                continue
            tried += 1
            ok = True
            for face in filter_faces:
                pair_checks += 1
                if overlaps_unchecked(cand, face, d):
                    ok = False
                    break
            if ok:
                placed = cand
                break
        if placed is None:
            raise ExtensionStuck(
                "no candidate facet can cover the active ridge",
                facets=tuple(chosen),
                active_ridges=tuple(sorted(active)),
                log=tuple(steps),
            )
        chosen.append(placed)
        chosen_set.add(placed)
        filter_faces.insert(len(chosen) - 1, placed)
        active ^= set(itertools.combinations(placed, d))
        steps.append(("cover", ridge, placed, tried))
    out = _require_valid(
        Triangulation.make(chosen, d, verts), "greedy extension"
    )
    _require_faces(out, reduced.simplices + f.simplices, "greedy extension")
    return ExtensionResult(
        out,
        "greedy",
        tuple(steps),
        {"pair_checks": pair_checks, "facets": len(chosen)},
    )


# ---------------------------------------------------------- small instances


def extend_small(f: Complex) -> ExtensionResult:
    """Extend a family on n = d+1 or n = d+2 vertices directly.

    n = d+1: the polytope is a single simplex.  n = d+2: the vertex set
    splits into its two alternating halves (odd and even positions),
    which are the only pair of faces crossing each other; whichever half
    appears in no input member can be "broken": joining its boundary to
    the other half tiles the polytope, and every input member survives
    inside one of those facets.
    """
    d, n = f.d, f.n
    everything = tuple(range(1, n + 1))
    if n == d + 1:
        t = _require_valid(
            Triangulation.make([everything], d, everything),
            "small-instance extension",
        )
        steps: tuple = (("full-simplex", everything),)
    elif n == d + 2:
        odds = tuple(range(1, n + 1, 2))
        evens = tuple(range(2, n + 1, 2))
        sigma = None
        for part in (odds, evens):
            if not any(set(part) <= set(s) for s in f.simplices):
                sigma = part
                break
        if sigma is None:
            raise InternalConsistencyError(
                "both alternating halves appear inside input members, "
                "but the halves cross each other and members never overlap",
                state={"simplices": f.simplices},
            )
        tau = evens if sigma == odds else odds
        facets = [
            tuple(sorted((set(sigma) - {v}) | set(tau))) for v in sigma
        ]
        t = _require_valid(
            Triangulation.make(facets, d, everything),
            "small-instance extension",
        )
        steps = (("alternating-split", sigma, tau),)
    else:
        raise InvalidInputError(
            f"small-instance extension needs n in {{d+1, d+2}}, "
            f"got n={n} with d={d}"
        )
    _require_faces(t, f.simplices, "small-instance extension")
    return ExtensionResult(t, "small-n", steps, {})


def extend_single(
    sigma: Iterable[int], vertices: Iterable[int], d: Optional[int] = None
) -> Triangulation:
    """Extend one full-dimensional simplex to a triangulation of the
    polytope on `vertices` by coning the remaining vertices in ascending
    order.  The input simplex stays a facet throughout."""
    s = as_simplex(sigma)
    v = as_simplex(vertices)
    if d is None:
        d = len(s) - 1
    if len(s) != d + 1:
        raise InvalidInputError(
            f"simplex {s} is not full-dimensional for d={d}"
        )
    if not set(s) <= set(v):
        raise InvalidInputError(f"simplex {s} is not contained in {v}")
    t = Triangulation.make([s], d, s)
    for q in sorted(set(v) - set(s)):
        t = cone(t, q)
    return t


# ------------------------------------------------- 2-dimensional fan tiling


def t_of_sigma_d2(sigma: Iterable[int], n: int) -> Triangulation:
    """Tile the polygon on [n] through a chosen edge or triangle.

    The chosen simplex cuts the polygon into arcs; each arc polygon is
    fanned from its largest vertex.  The resulting triangulation
    contains the chosen simplex, and every edge or triangle that either
    avoids it or passes below it stays below the result.
    """
    s = as_simplex(sigma)
    if len(s) not in (2, 3):
        raise InvalidInputError(
            f"need an edge or a triangle, got {len(s)} vertices"
        )
    if n < 3:
        raise InvalidInputError(f"need n >= 3, got {n}")
    if s[-1] > n:
        raise InvalidInputError(f"simplex {s} uses vertices beyond n={n}")
    regions: list[list[int]] = []
    facets: list[Simplex] = []
    if len(s) == 2:
        v1, v2 = s
        regions.append(list(range(v1, v2 + 1)))
        regions.append(list(range(v2, n + 1)) + list(range(1, v1 + 1)))
    else:
        v1, v2, v3 = s
        facets.append(s)
        regions.append(list(range(v1, v2 + 1)))
        regions.append(list(range(v2, v3 + 1)))
        regions.append(list(range(v3, n + 1)) + list(range(1, v1 + 1)))
    for cycle in regions:
        if len(cycle) < 3:
            continue
        m = max(cycle)
        i = cycle.index(m)
        path = cycle[i + 1 :] + cycle[:i]
        facets.extend(
            tuple(sorted((m, a, b))) for a, b in zip(path, path[1:])
        )
    out = Triangulation.make(facets, 2, range(1, n + 1))
    return _require_valid(out, "fan tiling through one simplex")


# -------------------------------------------------- separating triangulation


def _edges_set(edges: Iterable[Iterable[int]], n: int, name: str):
    out = set()
    for e in edges:
        s = as_simplex(e)
        if len(s) != 2:
            raise InvalidInputError(f"{name} must contain edges, got {s}")
        if s[-1] > n:
            raise InvalidInputError(f"edge {s} uses vertices beyond n={n}")
        out.add(s)
    return out


def separating_triangulation(
    below_edges: Iterable[Iterable[int]],
    member_edges: Iterable[Iterable[int]],
    above_edges: Iterable[Iterable[int]],
    n: int,
    order: Optional[Sequence[Iterable[int]]] = None,
) -> Triangulation:
    """Build a triangulation of the polygon on [n] that keeps one edge
    set weakly below it, contains a second edge set, and stays weakly
    below a third.

    The three sets must be disjoint and admit a linear order with the
    below-set first, then the members, then the above-set, in which any
    two crossing edges appear lower-first, and the member edges are
    mutually non-crossing.  If `order` is omitted, one is built from the
    height order inside each block.  The triangulation is the lattice
    meet of the single-edge fan tilings from the first member edge
    onward (from the first above-edge when there are no members; the
    empty meet is the maximum triangulation).
    """
    if n < 3:
        raise InvalidInputError(f"need n >= 3, got {n}")
    e1 = _edges_set(below_edges, n, "below_edges")
    e2 = _edges_set(member_edges, n, "member_edges")
    e3 = _edges_set(above_edges, n, "above_edges")
    if e1 & e2 or e2 & e3 or e1 & e3:
        raise InvalidInputError(
            "the three edge sets must be disjoint; shared: "
            f"{sorted((e1 & e2) | (e2 & e3) | (e1 & e3))}"
        )
    if order is None:
        ordered = (
            order_simplices(sorted(e1), 2)
            + order_simplices(sorted(e2), 2)
            + order_simplices(sorted(e3), 2)
        )
    else:
        ordered = [as_simplex(e) for e in order]
        if sorted(ordered) != sorted(e1 | e2 | e3) or len(ordered) != len(
            e1 | e2 | e3
        ):
            raise InvalidInputError(
                "the order must list each edge of the three sets exactly once"
            )
        block = [1 if e in e1 else 2 if e in e2 else 3 for e in ordered]
        if block != sorted(block):
            raise InvalidInputError(
                "the order must keep the below-edges first, "
                "then members, then above-edges"
            )
    for i, a in enumerate(ordered):
        for b in ordered[i + 1 :]:
            c = _classify(a, b, 2)
            if c is not PairClass.A and c is not PairClass.B:
                raise InvalidInputError(
                    f"edges {a} (earlier) and {b} (later) cross the wrong "
                    f"way round for this order (classified {c})"
                )
    for a, b in itertools.combinations(sorted(e2), 2):
        if _classify(a, b, 2) is not PairClass.A:
            raise InvalidInputError(f"member edges {a} and {b} cross")

    start = next(
        (i for i, e in enumerate(ordered) if e in e2),
        next((i for i, e in enumerate(ordered) if e in e3), len(ordered)),
    )
    tail = ordered[start:]
    if not tail:
        t = envelope_triangulation(range(1, n + 1), 2, "upper")
    else:
        t = t_of_sigma_d2(tail[0], n)
        for e in tail[1:]:
            t = meet(t, t_of_sigma_d2(e, n))

    bad = [e for e in sorted(e1) if not simplex_below(e, t)]
    bad += [e for e in sorted(e2) if not _is_face_of(e, t)]
    bad += [e for e in sorted(e3) if not simplex_above(e, t)]
    if bad:
        raise InternalConsistencyError(
            "separating triangulation misses its guarantees",
            state={"bad_edges": bad, "facets": t.facets},
        )
    return t


# ------------------------------------- interlacing-avoiding polygon tilings


def _interlace4_first(a: Simplex, b: Simplex) -> bool:
    """Edges a={a1<a2}, b={b1<b2} cross with a starting: a1<b1<a2<b2."""
    return a[0] < b[0] < a[1] < b[1]


def _interlace5(t: Simplex, e: Simplex) -> bool:
    """Triangle t={w1<w2<w3} and edge e={v1<v2} alternate fully:
    w1<v1<w2<v2<w3."""
    return t[0] < e[0] < t[1] < e[1] < t[2]


def _polygon_edges(v: Sequence[int]) -> frozenset[Simplex]:
    edges = {(a, b) for a, b in zip(v, v[1:])}
    edges.add((v[0], v[-1]))
    return frozenset(edges)


def _edge_violation(
    e: Simplex,
    left: Iterable[Simplex],
    middle: Iterable[Simplex],
    right: Iterable[Simplex],
):
    """First reason the edge is forbidden, or None: a left edge it
    crosses from below, a right edge crossing it from below, or a middle
    triangle it alternates with."""
    for l in sorted(left):
        if _interlace4_first(e, l):
            return ("left", l)
    for r in sorted(right):
        if _interlace4_first(r, e):
            return ("right", r)
    for t in sorted(middle):
        if _interlace5(t, e):
            return ("middle", t)
    return None


def _separating_polygon_edge(w: int, v: Sequence[int]) -> Simplex:
    """The polygon edge cutting the outside curve vertex w off from the
    polygon's vertices."""
    if w < v[0] or w > v[-1]:
        return (v[0], v[-1])
    i = bisect.bisect_left(v, w)
    return (v[i - 1], v[i])


def _weakly_outside(edge: Simplex, x: int, v: Sequence[int]) -> bool:
    """Whether x lies weakly on the non-polygon side of a polygon edge."""
    a, b = edge
    if (a, b) == (v[0], v[-1]):
        return x <= a or x >= b
    return a <= x <= b


def _same_side(
    w1: int, w2: int, v: Sequence[int], poly: frozenset[Simplex]
) -> bool:
    """Two curve vertices hug the same stretch of the polygon boundary:
    equal, joined by a polygon edge, or cut off together by the
    separating edge of one of them."""
    if w1 == w2:
        return True
    if tuple(sorted((w1, w2))) in poly:
        return True
    vset = set(v)
    if w1 not in vset and _weakly_outside(
        _separating_polygon_edge(w1, v), w2, v
    ):
        return True
    if w2 not in vset and _weakly_outside(
        _separating_polygon_edge(w2, v), w1, v
    ):
        return True
    return False


@dataclass(frozen=True)
class LMRInstance:
    """A polygon vertex set plus three families of forbidden patterns:
    `left_edges` may not be crossed from below, `right_edges` may not
    cross from below, and `middle_triangles` may not fully alternate
    with any edge of the tiling.

    Valid instances also promise that no left/right pair crosses
    right-edge-first, no left/right edge alternates with a middle
    triangle, no two middle triangles alternate fully, and that every
    edge of the polygon itself is already allowed.
    """

    n: int
    vertices: tuple[int, ...]
    left_edges: frozenset[Simplex]
    right_edges: frozenset[Simplex]
    middle_triangles: frozenset[Simplex]

    @classmethod
    def make(
        cls,
        vertices: Iterable[int],
        left_edges: Iterable[Iterable[int]] = (),
        right_edges: Iterable[Iterable[int]] = (),
        middle_triangles: Iterable[Iterable[int]] = (),
        n: Optional[int] = None,
    ) -> "LMRInstance":
        v = as_simplex(vertices)
        if len(v) < 3:
            raise InvalidInputError(
                f"need at least 3 polygon vertices, got {len(v)}"
            )
        left = frozenset(as_simplex(e) for e in left_edges)
        right = frozenset(as_simplex(e) for e in right_edges)
        middle = frozenset(as_simplex(t) for t in middle_triangles)
        for e in sorted(left | right):
            if len(e) != 2:
                raise InvalidInputError(f"expected an edge, got {e}")
        for t in sorted(middle):
            if len(t) != 3:
                raise InvalidInputError(f"expected a triangle, got {t}")
        hi = max(
            [v[-1]]
            + [e[-1] for e in left | right]
            + [t[-1] for t in middle]
        )
        if n is None:
            n = hi
        if hi > n:
            raise InvalidInputError(
                f"vertices reach {hi}, beyond the declared n={n}"
            )
        for l in sorted(left):
            for r in sorted(right):
                if _interlace4_first(r, l):
                    raise InvalidInputError(
                        f"left edge {l} and right edge {r} cross "
                        "right-edge-first"
                    )
        for e in sorted(left | right):
            for t in sorted(middle):
                if _interlace5(t, e):
                    raise InvalidInputError(
                        f"edge {e} fully alternates with middle triangle {t}"
                    )
        for a, b in itertools.combinations(sorted(middle), 2):
            if overlaps_unchecked(a, b, 4):
                raise InvalidInputError(
                    f"middle triangles {a} and {b} fully alternate"
                )
        for e in sorted(_polygon_edges(v)):
            why = _edge_violation(e, left, middle, right)
            if why is not None:
                raise InvalidInputError(
                    f"polygon edge {e} is already forbidden by {why[0]} "
                    f"element {why[1]}"
                )
        return cls(n, v, left, right, middle)


def _reflect(s: Simplex, n: int) -> Simplex:
    return tuple(sorted(n + 1 - x for x in s))


def _descend_right(
    v: Sequence[int],
    left: set[Simplex],
    right: set[Simplex],
    middle: set[Simplex],
    t: Simplex,
    log: list,
) -> Simplex:
    """Find a diagonal from the chosen triangle's middle vertex to a
    polygon vertex at or beyond its right end, walking the endpoint
    leftward past each blocking middle triangle."""
    w1, w2, w3 = t
    vset = set(v)
    q = v[-1]
    e = (w2, q)
    m0 = {tr for tr in middle if _interlace5(tr, e)}
    r0 = {r for r in right if _interlace4_first(r, e)}
    if m0 or r0:
        q_new = min({tr[1] for tr in m0} | {r[1] for r in r0})
        if not (w3 <= q_new < q and q_new in vset):
            raise InternalConsistencyError(
                "the first descent step left the admissible range",
                state={"triangle": t, "from": q, "to": q_new, "v": v},
            )
        q = q_new
        log.append(("descend", t, q))
        while True:
            e = (w2, q)
            mi = {tr for tr in middle if _interlace5(tr, e)}
            if not mi:
                break
            q_new = min(tr[1] for tr in mi)
            if not (w3 <= q_new < q and q_new in vset):
                raise InternalConsistencyError(
                    "a descent step left the admissible range",
                    state={"triangle": t, "from": q, "to": q_new, "v": v},
                )
            q = q_new
            log.append(("descend", t, q))
    return (w2, q)


def _lmr_solve(
    n: int,
    v: Sequence[int],
    left: set[Simplex],
    right: set[Simplex],
    middle: set[Simplex],
    log: list,
) -> set[Simplex]:
    v = tuple(sorted(v))
    if len(v) == 3:
        return {v}
    poly = _polygon_edges(v)
    vset = set(v)

    # Polygon edges cannot be crossed, so their presence in the edge
    # families is irrelevant (and would break the base-case bookkeeping).
    left = {e for e in left if e not in poly}
    right = {e for e in right if e not in poly}

    # Prune middle triangles whose middle vertex hugs one of its flanks:
    # no polygon diagonal can alternate with them.
    kept_middle: set[Simplex] = set()
    for t in sorted(middle):
        if _same_side(t[1], t[0], v, poly) or _same_side(t[1], t[2], v, poly):
            log.append(("drop-middle", t, v))
        else:
            kept_middle.add(t)
    middle = kept_middle
    for t in sorted(middle):
        if t[1] not in vset:
            raise InternalConsistencyError(
                "a surviving middle triangle has its middle vertex "
                "outside the polygon",
                state={"triangle": t, "v": v},
            )

    # Prune left edges whose lower endpoint left the polygon: by then no
    # remaining diagonal can cross them from below.
    kept_left: set[Simplex] = set()
    for e in sorted(left):
        if e[0] in vset:
            kept_left.add(e)
        elif v[0] >= e[0] or not any(e[0] < x < e[1] for x in v):
            log.append(("drop-left", e, v))
        else:
            raise InternalConsistencyError(
                "a left edge with its lower endpoint outside the polygon "
                "can still block diagonals",
                state={"edge": e, "v": v},
            )
    left = kept_left
    kept_right: set[Simplex] = set()
    for e in sorted(right):
        if e[1] in vset:
            kept_right.add(e)
        elif v[-1] <= e[1] or not any(e[0] < x < e[1] for x in v):
            log.append(("drop-right", e, v))
        else:
            raise InternalConsistencyError(
                "a right edge with its upper endpoint outside the polygon "
                "can still block diagonals",
                state={"edge": e, "v": v},
            )
    right = kept_right

    if not middle:
        return _lmr_base(n, v, left, right, log)

    # Choose a middle triangle with inclusion-maximal vertex span.
    ts = sorted(middle)
    maximal = [
        t
        for t in ts
        if not any(
            (u[0] <= t[0] and t[2] <= u[2] and (u[0], u[2]) != (t[0], t[2]))
            for u in ts
        )
    ]
    t = min(maximal)
    right_clear = not any(r[0] < t[1] < r[1] < t[2] for r in sorted(right))
    left_clear = not any(t[0] < l[0] < t[1] < l[1] for l in sorted(left))
    if right_clear and v[-1] >= t[2]:
        diag = _descend_right(v, left, right, middle, t, log)
    elif left_clear and v[0] <= t[0]:
        rv = tuple(sorted(n + 1 - x for x in v))
        rdiag = _descend_right(
            rv,
            {_reflect(r, n) for r in right},
            {_reflect(l, n) for l in left},
            {_reflect(tr, n) for tr in middle},
            _reflect(t, n),
            log,
        )
        diag = _reflect(rdiag, n)
    else:
        raise InternalConsistencyError(
            "neither side of the chosen middle triangle admits a "
            "diagonal search",
            state={
                "v": v,
                "left": sorted(left),
                "right": sorted(right),
                "middle": sorted(middle),
                "triangle": t,
            },
        )
    why = _edge_violation(diag, left, middle, right)
    if (
        why is not None
        or diag in poly
        or diag[0] not in vset
        or diag[1] not in vset
    ):
        raise InternalConsistencyError(
            "the diagonal search returned an inadmissible edge",
            state={
                "diagonal": diag,
                "violation": why,
                "v": v,
                "left": sorted(left),
                "right": sorted(right),
                "middle": sorted(middle),
                "triangle": t,
            },
        )
    log.append(("split", diag, v))
    a, b = diag
    v_in = [x for x in v if a <= x <= b]
    v_out = [x for x in v if x <= a or x >= b]
    return _lmr_solve(n, v_in, left, right, middle, log) | _lmr_solve(
        n, v_out, left, right, middle, log
    )


def _lmr_base(
    n: int,
    v: Sequence[int],
    left: set[Simplex],
    right: set[Simplex],
    log: list,
) -> set[Simplex]:
    """No middle triangles left: tile the whole curve polygon with the
    left edges kept below, the polygon edges and two-sided edges kept as
    members, and the right edges kept above — then cut out the part
    inside this polygon."""
    e1 = left - right
    e2 = set(_polygon_edges(v)) | (left & right)
    e3 = right - left
    log.append(("base", tuple(v), tuple(sorted(e1)), tuple(sorted(e3))))
    t = separating_triangulation(e1, e2, e3, n)
    inside = [
        f for f in t.facets if _triangle_inside_polygon(f, v)
    ]
    if len(inside) != len(v) - 2:
        raise InternalConsistencyError(
            "restriction to the polygon has the wrong facet count",
            state={"v": v, "inside": inside, "facets": t.facets},
        )
    return set(inside)


def _triangle_inside_polygon(f: Simplex, v: Sequence[int]) -> bool:
    """Whether the triangle's centroid lies strictly inside the polygon
    on the curve vertices `v` (exact arithmetic on the curve)."""
    px = Fraction(sum(f), 3)
    py = Fraction(sum(x * x for x in f), 3)
    lo, hi = v[0], v[-1]
    if not py - (lo + hi) * px + lo * hi < 0:
        return False
    return all(
        py - (a + b) * px + a * b > 0 for a, b in zip(v, v[1:])
    )


def lmr_triangulate(
    inst: LMRInstance, log: Optional[list] = None
) -> Triangulation:
    """Tile the instance's polygon so that no tiling edge is crossed
    from below by a left edge, crossed from above by a right edge, or
    fully alternates with a middle triangle.

    Recursive strategy: prune elements that can no longer interfere,
    then either hand the middle-free remainder to
    `separating_triangulation`, or pick a widest middle triangle, search
    a safe diagonal out of its middle vertex (walking past blockers),
    split the polygon there, and recurse on both parts.
    """
    if log is None:
        log = []
    facets = _lmr_solve(
        inst.n,
        inst.vertices,
        set(inst.left_edges),
        set(inst.right_edges),
        set(inst.middle_triangles),
        log,
    )
    out = _require_valid(
        Triangulation.make(facets, 2, inst.vertices),
        "interlacing-avoiding polygon tiling",
    )
    for e in sorted(out.faces(2)):
        why = _edge_violation(
            e, inst.left_edges, inst.middle_triangles, inst.right_edges
        )
        if why is not None:
            raise InternalConsistencyError(
                f"output edge {e} is forbidden by {why[0]} element {why[1]}",
                state={"facets": out.facets, "log": log},
            )
    return out


# ------------------------------------------------ 3-dimensional level step


def _stacking_order(t2: Triangulation, root_edge: Simplex) -> list[int]:
    """Order the interior vertices of a polygon tiling so that stacking
    them one by one (each new vertex completing one triangle) rebuilds
    the tiling outward from the triangle on `root_edge`.  Ties pick the
    smallest vertex."""
    tris = list(t2.facets)
    by_edge: dict[Simplex, list[Simplex]] = {}
    for tri in tris:
        for e in itertools.combinations(tri, 2):
            by_edge.setdefault(e, []).append(tri)
    roots = by_edge.get(root_edge, [])
    if len(roots) != 1:
        raise InternalConsistencyError(
            f"expected exactly one triangle on the edge {root_edge}",
            state={"candidates": roots, "facets": tris},
        )
    root = roots[0]
    new_vertex: dict[Simplex, int] = {
        root: next(x for x in root if x not in root_edge)
    }
    children: dict[int, list[int]] = {}
    indegree: dict[int, int] = {}
    seen = {root}
    queue = [root]
    while queue:
        tri = queue.pop()
        for e in itertools.combinations(tri, 2):
            for other in by_edge[e]:
                if other in seen:
                    continue
                seen.add(other)
                nv = next(x for x in other if x not in e)
                new_vertex[other] = nv
                children.setdefault(new_vertex[tri], []).append(nv)
                indegree[nv] = indegree.get(nv, 0) + 1
                queue.append(other)
    if len(seen) != len(tris):
        raise InternalConsistencyError(
            "the tiling's adjacency graph is not connected",
            state={"facets": tris, "reached": sorted(seen)},
        )
    order: list[int] = []
    ready = [
        nv for nv in new_vertex.values() if indegree.get(nv, 0) == 0
    ]
    heapq.heapify(ready)
    while ready:
        nv = heapq.heappop(ready)
        order.append(nv)
        for child in children.get(nv, ()):
            indegree[child] -= 1
            if indegree[child] == 0:
                heapq.heappush(ready, child)
    if len(order) != len(tris):
        raise InternalConsistencyError(
            "stacking order does not cover every triangle",
            state={"order": order, "facets": tris},
        )
    return order


def level_triangulation_d3(
    sigma: Iterable[int], taus: Iterable[Iterable[int]], n: int
) -> Triangulation:
    """Build a triangulation of the 3-dimensional cyclic polytope on [n]
    that contains the anchor triangle as a face and keeps every other
    given triangle weakly below it (one dimension up).

    Requirements: all inputs are distinct triangles whose liftings are
    pairwise non-overlapping (no two fully alternate on six vertices),
    and the anchor attains the least minimum — with the largest maximum
    among those sharing that minimum.
    """
    s = as_simplex(sigma)
    ts = [as_simplex(t) for t in taus]
    if len(s) != 3 or any(len(t) != 3 for t in ts):
        raise InvalidInputError("all inputs must be triangles")
    if n < 4:
        raise InvalidInputError(f"need n >= 4, got {n}")
    for t in [s] + ts:
        if t[-1] > n:
            raise InvalidInputError(f"{t} uses vertices beyond n={n}")
    if len({s, *ts}) != len(ts) + 1:
        raise InvalidInputError("the triangles must be distinct")
    for a, b in itertools.combinations([s] + ts, 2):
        if overlaps_unchecked(a, b, 4):
            raise InvalidInputError(
                f"triangles {a} and {b} fully alternate, so their "
                "liftings overlap"
            )
    for t in ts:
        if not s[0] <= t[0]:
            raise InvalidInputError(
                f"the anchor {s} must attain the least minimum, "
                f"but {t} starts earlier"
            )
        if s[0] == t[0] and not s[2] >= t[2]:
            raise InvalidInputError(
                f"{t} shares the anchor's minimum but reaches further right"
            )

    v1, v2, v3 = s
    window = list(range(v1, n + 1))
    if len(window) == 3:
        # Too few vertices to tile on their own; absorb one vertex from
        # the left before coning the rest downward.
        t3 = Triangulation.make(
            [tuple(sorted([v1 - 1] + window))], 3
        )
        down_from = v1 - 2
    else:
        t3 = _level_core(s, ts, window, n)
        down_from = v1 - 1
    for q in range(down_from, 0, -1):
        t3 = cone(t3, q)

    if not _is_face_of(s, t3):
        raise InternalConsistencyError(
            "the anchor triangle is not a face of the result",
            state={"anchor": s, "facets": t3.facets},
        )
    for t in ts:
        if not simplex_below(t, t3):
            raise InternalConsistencyError(
                f"triangle {t} is not kept below the result",
                state={"facets": t3.facets},
            )
    for e in sorted(t3.faces(2)):
        for t in ts:
            if _interlace5(t, e):
                raise InternalConsistencyError(
                    f"edge {e} of the result fully alternates with {t}",
                    state={"facets": t3.facets},
                )
    return t3


def _level_core(
    s: Simplex, ts: list[Simplex], window: list[int], n: int
) -> Triangulation:
    """The window contains the anchor's minimum as its first vertex;
    build a triangulation of the polytope on the window."""
    v1, v2, v3 = s
    inner = [x for x in window if v2 < x < v3]
    v0 = [x for x in window if not (v2 < x < v3)]
    if tuple(v0) == s:
        return envelope_triangulation(window, 3, "upper")
    t3 = envelope_triangulation(v0, 3, "upper")
    if not inner:
        return t3
    jm = list(range(v2, v3 + 1))
    left: set[Simplex] = set()
    right: set[Simplex] = set()
    middle: set[Simplex] = set()
    for t in ts:
        in_jm = tuple(x for x in t if v2 <= x <= v3)
        if len(in_jm) <= 1:
            continue
        if len(in_jm) == 3:
            middle.add(t)
        elif t[0] < v2:
            left.add(in_jm)
        else:
            right.add(in_jm)
    inst = LMRInstance.make(jm, left, right, middle, n=n)
    t2 = lmr_triangulate(inst)
    for q in _stacking_order(t2, (v2, v3)):
        t3 = cone(t3, q)
    got = {e for e in t3.faces(2) if v2 <= e[0] and e[1] <= v3}
    if got != set(t2.faces(2)):
        raise InternalConsistencyError(
            "stacking did not reproduce the planned polygon tiling",
            state={
                "planned": sorted(t2.faces(2)),
                "got": sorted(got),
            },
        )
    return t3


# ------------------------------------------------- constructive pipeline


def _complete_chain(
    poset: HSTPoset, elems: Sequence[Triangulation]
) -> list[int]:
    """Thread the given weakly increasing triangulations into a maximal
    chain of the poset, walking lexicographically smallest covering
    steps between them."""
    succ: dict[int, list[int]] = {}
    for a, b in poset.covers:
        succ.setdefault(a, []).append(b)
    path = [poset.minimum]
    for t in list(elems) + [poset.elements[poset.maximum]]:
        target = poset.index_of(t)
        while path[-1] != target:
            here = path[-1]
            nxts = [
                x for x in succ.get(here, ()) if poset.leq[x][target]
            ]
            if not nxts:
                raise InternalConsistencyError(
                    "no covering step leads toward the next chain member",
                    state={"at": here, "target": target, "path": path},
                )
            path.append(
                min(nxts, key=lambda i: poset.elements[i].facets)
            )
    return path


def constructive_extend(
    f: Complex, budget: Optional[int] = None
) -> ExtensionResult:
    """Extend a family by the layered construction: reduce to
    triangle/edge skeletons, drop one dimension, build one triangulation
    per member that keeps all earlier members below it, intersect the
    running tails with lattice meets, complete the resulting chain to a
    maximal one, and lift it back up one dimension.

    Exhaustive poset enumeration limits this to small vertex counts; the
    optional budget caps the enumeration.
    """
    if f.d not in (3, 4):
        raise UnsupportedError(
            f"constructive extension applies to d in {{3, 4}}, got {f.d}"
        )
    big_d, n = f.d, f.n
    if n < big_d + 1:
        raise InvalidInputError(f"need n >= d+1 = {big_d + 1}, got n={n}")
    reduced = skeleton_reduce(f)
    d = big_d - 1
    members = list(reduced.simplices)
    if big_d == 3:
        ordered = order_simplices(members, 2)
    else:
        ordered = sorted(members, key=lambda t: (-t[0], t[-1], t))
    steps: list[tuple] = [("order", tuple(ordered))]
    per_member: list[Triangulation] = []
    for i, sig in enumerate(ordered):
        if big_d == 3:
            per_member.append(t_of_sigma_d2(sig, n))
        else:
            per_member.append(level_triangulation_d3(sig, ordered[:i], n))
    tails: list[Triangulation] = []
    if per_member:
        acc = per_member[-1]
        tails.append(acc)
        for t in reversed(per_member[:-1]):
            acc = meet(t, acc)
            tails.append(acc)
        tails.reverse()
    chain_members: list[Triangulation] = []
    for t in tails:
        if not chain_members or t.facets != chain_members[-1].facets:
            chain_members.append(t)
    steps.append(("chain", tuple(t.facets for t in chain_members)))
    poset = hst_poset(n, d, budget)
    path = _complete_chain(poset, chain_members)
    lifted = psi_chain([poset.elements[i] for i in path], poset)
    _require_faces(
        lifted, reduced.simplices + f.simplices, "constructive extension"
    )
    return ExtensionResult(
        lifted,
        "constructive",
        tuple(steps),
        {
            "poset_size": len(poset.elements),
            "chain_length": len(path),
        },
    )
