"""The acceptance gate: twelve exact, desk-scale checks of the
package's central claims, one test per criterion.

Each test prints a single ``CRITERION k PASS`` line on success, and
``pytest -v`` adds its own PASSED/FAILED verdict per criterion.  All
checks are exact — combinatorial predicates against the rational
geometric oracle, exhaustive enumerations against frozen counts, and
searches with explicit node budgets.  Nothing here is statistical.
"""

import itertools
import random

from momentcurve.core import classify_pair, height_less, overlaps, overlaps_unchecked
from momentcurve.extension import (
    Complex,
    _is_face_of,
    extend_small,
    greedy_extend,
    lmr_triangulate,
    level_triangulation_d3,
    t_of_sigma_d2,
)
from momentcurve.geometry import geometric_classify
from momentcurve.obstructions import (
    gale_configuration,
    gale_dual_check,
    lift_d,
    lift_n,
    maximal_nonoverlap_check,
    rambau_example,
    verify_nonextendable,
)
from momentcurve.triangulations import (
    enumerate_triangulations,
    hst_poset,
    link_at_max,
    meet,
    psi_chain,
    simplex_below,
    submersion_set,
    validate,
)

from oracles import polygon_triangulations
from test_extension import admissible_edge, random_complex, random_lmr_instance
from test_obstructions import random_maximal_family

SEARCH_BUDGET = 10_000_000


def _announce(k: int, text: str) -> None:
    print(f"CRITERION {k:>2} PASS: {text}")


def _all_simplices(n: int, max_size: int):
    return [
        s
        for size in range(1, max_size + 1)
        for s in itertools.combinations(range(1, n + 1), size)
    ]


def _poset_glb_index(leq, i, j):
    lower = [k for k in range(len(leq)) if leq[k][i] and leq[k][j]]
    tops = [k for k in lower if all(leq[m][k] for m in lower)]
    return tops[0] if len(tops) == 1 else None


def test_criterion_01_pair_classification_matches_exact_geometry():
    """The combinatorial four-way classifier agrees with the rational
    geometric oracle on every ordered simplex pair, for every ambient
    dimension up to 4.  Pairs are drawn from the largest vertex range
    (n = 8); neither classifier reads the ambient vertex count, so this
    covers every n <= 8."""
    pairs = 0
    for d in (1, 2, 3, 4):
        sims = _all_simplices(8, d + 1)
        for a in sims:
            for b in sims:
                assert classify_pair(a, b, d) == geometric_classify(a, b, d)
                pairs += 1
    _announce(1, f"combinatorial = geometric on {pairs} ordered pairs, d <= 4")


def test_criterion_02_canonical_family_certified_and_saturated():
    """The three 5-simplices on eight vertices are certified
    non-extendable by exhaustive search, and none of the 28 candidate
    5-simplices can be added while staying pairwise non-overlapping."""
    f = rambau_example()
    cert = verify_nonextendable(f, budget=SEARCH_BUDGET)
    assert cert.verdict == "non-extendable"
    assert maximal_nonoverlap_check(f) == []
    candidates = list(itertools.combinations(range(1, 9), 6))
    assert len(candidates) == 28
    for cand in candidates:
        assert cand in f.simplices or any(
            overlaps_unchecked(cand, s, 5) for s in f.simplices
        )
    _announce(
        2,
        f"search verdict non-extendable ({cert.stats['nodes']} nodes); "
        "all 28 candidate 5-simplices blocked",
    )


def test_criterion_03_lifted_families_stay_nonextendable():
    """Both lifting constructions preserve non-extendability: every
    composition reaching D in {5,6,7} and n from D+3 up to
    min(D+5, 11) is certified non-extendable within the node budget."""
    checked = []
    for big_d in (5, 6, 7):
        for n in range(big_d + 3, min(big_d + 5, 11) + 1):
            f = rambau_example()
            for _ in range(big_d - 5):
                f = lift_d(f)
            for _ in range(n - (big_d + 3)):
                f = lift_n(f)
            assert (f.d, f.n) == (big_d, n)
            cert = verify_nonextendable(f, budget=SEARCH_BUDGET)
            assert cert.verdict == "non-extendable"
            checked.append((big_d, n, cert.stats["nodes"]))
    _announce(3, f"lift compositions non-extendable at {checked}")


def test_criterion_04_planar_dual_cones_agree_with_search():
    """At D=5, n=8 the planar dual-cone criterion and the exhaustive
    search give the same verdict: on the canonical family (whose dual
    cones are spanned by the complement pairs {7,8}, {1,2}, {4,5}) and
    on 50 seeded random maximal families."""
    f = rambau_example()
    cfg = gale_configuration(f)
    assert set(cfg.dual_cones) == {(7, 8), (1, 2), (4, 5)}
    assert gale_dual_check(f).verdict == "non-extendable"
    assert verify_nonextendable(f, budget=SEARCH_BUDGET).verdict == "non-extendable"
    rng = random.Random(2024)
    agreements = 0
    for _ in range(50):
        g = random_maximal_family(rng, 8, 5)
        by_cones = gale_dual_check(g).verdict
        by_search = verify_nonextendable(g, budget=SEARCH_BUDGET).verdict
        assert by_cones == by_search
        agreements += 1
    _announce(4, f"dual-cone = search on canonical family + {agreements} random ones")


def test_criterion_05_greedy_always_extends_at_low_dimension():
    """200 seeded random non-overlapping families (100 each at d=3 and
    d=4, n up to 12) all extend greedily to triangulations that pass
    the full validator and contain every member as a face."""
    rng = random.Random(515)
    runs = 0
    for d in (3, 4):
        for _ in range(100):
            n = rng.randint(d + 1, 12)
            c = random_complex(rng, d, n)
            r = greedy_extend(c)
            assert validate(r.triangulation).ok
            for s in c.simplices:
                assert _is_face_of(s, r.triangulation)
            runs += 1
    _announce(5, f"greedy extension succeeded and validated on {runs}/200 families")


def test_criterion_06_polygon_triangulation_counts_are_catalan():
    """Exhaustive enumeration at d=2 reproduces the Catalan numbers."""
    counts = [len(enumerate_triangulations(n, 2)) for n in (4, 5, 6, 7)]
    assert counts == [2, 5, 14, 42]
    _announce(6, f"|S(n,2)| for n=4..7 is {counts}")


def test_criterion_07_meets_are_lattice_meets_at_low_dimension():
    """For d in {2,3} and n <= 7: the weakly-below encoding is
    injective, the intersection-based meet equals the poset greatest
    lower bound, and the encoding turns meets into intersections."""
    pairs = 0
    for d in (2, 3):
        for n in range(d + 2, 8):
            poset = hst_poset(n, d)
            subs = [submersion_set(t) for t in poset.elements]
            assert len(set(subs)) == len(subs)  # injective
            k = len(poset.elements)
            for i in range(k):
                for j in range(i + 1, k):
                    m = meet(poset.elements[i], poset.elements[j])
                    g = _poset_glb_index(poset.leq, i, j)
                    assert g is not None
                    assert poset.elements[g] == m
                    assert submersion_set(m) == subs[i] & subs[j]
                    pairs += 1
    _announce(7, f"meet = GLB and encoding intersects on {pairs} pairs")


def test_criterion_08_meet_intersection_fails_first_at_three_extra_vertices():
    """At d=4 the meet-intersection property fails on n = d+3 = 7 (an
    explicit violating pair exists) but holds for every pair when
    n = d+2, for both d=4 and d=5."""
    poset = hst_poset(7, 4)
    subs = [submersion_set(t) for t in poset.elements]
    k = len(poset.elements)
    violation = None
    for i in range(k):
        for j in range(i + 1, k):
            g = _poset_glb_index(poset.leq, i, j)
            if g is None or subs[g] != (subs[i] & subs[j]):
                violation = (i, j)
                break
        if violation:
            break
    assert violation is not None
    for d in (4, 5):
        small = hst_poset(d + 2, d)
        ssubs = [submersion_set(t) for t in small.elements]
        for i in range(len(small.elements)):
            for j in range(i + 1, len(small.elements)):
                g = _poset_glb_index(small.leq, i, j)
                assert g is not None
                assert ssubs[g] == (ssubs[i] & ssubs[j])
    _announce(
        8,
        f"violating pair {violation} found at (d=4, n=7); "
        "property holds at n = d+2 for d = 4, 5",
    )


def test_criterion_09_every_maximal_family_on_two_extra_vertices_extends():
    """For D <= 6 and n = D+2, exhaustively: the only overlapping pairs
    are (odd-half superset, even-half superset), so exactly two maximal
    non-overlapping families exist; both extend via the small-n routine
    to validated triangulations containing every member."""
    for big_d in (1, 2, 3, 4, 5, 6):
        n = big_d + 2
        odds = tuple(range(1, n + 1, 2))
        evens = tuple(range(2, n + 1, 2))
        sims = _all_simplices(n, big_d + 1)
        sup_odd = [s for s in sims if set(odds) <= set(s)]
        sup_even = [s for s in sims if set(evens) <= set(s)]
        neutral = [
            s
            for s in sims
            if not set(odds) <= set(s) and not set(evens) <= set(s)
        ]
        # exhaustive overlap structure: a pair overlaps exactly when one
        # member contains the odd half and the other the even half
        for a, b in itertools.combinations(sims, 2):
            expected = (
                set(odds) <= set(a)
                and set(evens) <= set(b)
                or set(evens) <= set(a)
                and set(odds) <= set(b)
            )
            assert overlaps_unchecked(a, b, big_d) == expected
        # hence the maximal families are exactly these two
        families = [neutral + sup_odd, neutral + sup_even]
        outsiders = [sup_even, sup_odd]
        seen = set()
        for fam, out in zip(families, outsiders):
            c = Complex.make(fam, big_d, n)
            seen.add(c.simplices)
            # maximality: every simplex outside overlaps some member
            for s in out:
                assert any(
                    overlaps_unchecked(s, m, big_d) for m in c.simplices
                )
            r = extend_small(c)
            assert validate(r.triangulation).ok
            for s in fam:
                assert _is_face_of(s, r.triangulation)
        assert len(seen) == 2
    _announce(9, "both maximal families extend and validate for D = 1..6")


def test_criterion_10_construction_postconditions():
    """(a) The fan tiling around a chosen edge/triangle keeps every
    non-overlapping or lower simplex weakly below it — exhaustively for
    n <= 8.  (b) The edge-avoidance triangulation satisfies all its
    avoidance constraints on 500 seeded instances (up to 10 polygon
    vertices), and brute force confirms an admissible tiling exists.
    (c) The level triangulation puts its anchor on the surface and all
    companions weakly below, on seeded instances with n <= 9."""
    # (a) fan tiling, exhaustive
    fan_checks = 0
    for n in range(3, 9):
        sims = [
            s
            for size in (2, 3)
            for s in itertools.combinations(range(1, n + 1), size)
        ]
        for sigma in sims:
            t = t_of_sigma_d2(sigma, n)
            assert validate(t).ok
            assert _is_face_of(sigma, t)
            for tau in sims:
                if tau == sigma:
                    continue
                if not overlaps(tau, sigma, 2) or height_less(tau, sigma, 2):
                    assert simplex_below(tau, t)
                    fan_checks += 1

    # (b) edge-avoidance triangulations, seeded + brute-force existence
    rng = random.Random(1010)
    nonvacuous = 0
    for _ in range(500):
        inst = random_lmr_instance(rng, max_n=10, max_k=10)
        t = lmr_triangulate(inst)
        assert validate(t).ok
        assert len(t.facets) == len(inst.vertices) - 2
        for e in t.faces(2):
            assert admissible_edge(e, inst)
        assert any(
            all(
                admissible_edge(e, inst)
                for tri in tiling
                for e in itertools.combinations(tri, 2)
            )
            for tiling in polygon_triangulations(inst.vertices)
        )
        if inst.left_edges or inst.right_edges or inst.middle_triangles:
            nonvacuous += 1
    assert nonvacuous >= 200

    # (c) level triangulations, seeded
    rng = random.Random(97)
    built = 0
    while built < 100:
        n = rng.randint(5, 9)
        sigma = tuple(sorted(rng.sample(range(1, n + 1), 3)))
        taus = []
        for _ in range(rng.randint(0, 6)):
            cand = tuple(sorted(rng.sample(range(1, n + 1), 3)))
            family = [sigma] + taus + [cand]
            if len(set(family)) != len(family):
                continue
            if any(
                overlaps_unchecked(a, b, 4)
                for a, b in itertools.combinations(family, 2)
            ):
                continue
            if cand[0] < sigma[0]:
                continue
            if cand[0] == sigma[0] and cand[2] > sigma[2]:
                continue
            taus.append(cand)
        out = level_triangulation_d3(sigma, taus, n)
        assert validate(out).ok
        assert _is_face_of(sigma, out)
        for tau in taus:
            assert simplex_below(tau, out)
        built += 1
    _announce(
        10,
        f"fan tiling ({fan_checks} below-checks), avoidance tiling "
        f"(500 instances, {nonvacuous} nonvacuous), level tiling (100 instances)",
    )


def test_criterion_11_chain_lifting_and_links():
    """Every maximal chain of the height-order poset at d=2 (n <= 6)
    lifts to a validated d=3 triangulation, and the link at the largest
    vertex maps every enumerated triangulation one dimension down
    (d in {2,3}, n <= 7 — the library's floor is dimension 1)."""
    chains_lifted = 0
    for n in (4, 5, 6):
        poset = hst_poset(n, 2)
        succ: dict[int, list[int]] = {}
        for lo, hi in poset.covers:
            succ.setdefault(lo, []).append(hi)
        stack = [[poset.minimum]]
        while stack:
            chain = stack.pop()
            if chain[-1] == poset.maximum:
                lifted = psi_chain([poset.elements[i] for i in chain])
                assert lifted.d == 3
                assert lifted.vertices == tuple(range(1, n + 1))
                assert validate(lifted).ok
                chains_lifted += 1
                continue
            for j in succ.get(chain[-1], ()):
                stack.append(chain + [j])
    linked = 0
    for d in (2, 3):
        for n in range(d + 2, 8):
            for t in enumerate_triangulations(n, d):
                down = link_at_max(t)
                assert down.d == d - 1
                assert down.vertices == tuple(range(1, n))
                assert validate(down).ok
                linked += 1
    _announce(
        11,
        f"{chains_lifted} maximal chains lifted; {linked} links verified",
    )


def test_criterion_12_greedy_work_grows_like_n_to_the_fifth():
    """Pair-compatibility checks performed by greedy extension at d=4
    (its work counter) stay within a factor of 4 of c * n^5 across
    n = 8..40, for a least-squares fitted c — a trend check, not a
    proof."""
    grid = (8, 12, 16, 20, 24, 28, 34, 40)
    counts = []
    for n in grid:
        r = greedy_extend(Complex.make([], 4, n))
        assert validate(r.triangulation).ok
        counts.append(r.stats["pair_checks"])
    assert counts == sorted(counts)  # monotone growth
    c = sum(cnt * n**5 for cnt, n in zip(counts, grid)) / sum(
        n**10 for n in grid
    )
    for cnt, n in zip(counts, grid):
        assert cnt <= 4 * c * n**5, (n, cnt, c)
    _announce(
        12,
        f"pair checks {counts} on n={list(grid)} fit c*n^5 with c={c:.4f} "
        "(factor-4 slack)",
    )
