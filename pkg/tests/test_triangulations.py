"""Triangulation machinery: validity, orders, envelopes, poset, lifting."""

import itertools

import pytest

from momentcurve.geometry import simplex_volume
from momentcurve.errors import (
    InternalConsistencyError,
    InvalidInputError,
    ResourceBudgetError,
    UnsupportedError,
)
from momentcurve.triangulations import (
    Triangulation,
    boundary_ridges,
    cone,
    enumerate_triangulations,
    envelope_triangulation,
    face_membership,
    hst_poset,
    link_at_max,
    meet,
    polytope_volume,
    poset_of,
    psi_chain,
    simplex_above,
    simplex_below,
    submersion_set,
    triangulation_leq,
    validate,
)

T = Triangulation.make


def mins(n, d=2):
    return envelope_triangulation(range(1, n + 1), d, "lower")


def maxs(n, d=2):
    return envelope_triangulation(range(1, n + 1), d, "upper")


# ---------------------------------------------------------------- validity


def test_validate_good_square():
    assert validate(T([(1, 2, 3), (1, 3, 4)], 2)).ok


def test_validate_crossing_diagonals():
    rep = validate(T([(1, 2, 3), (2, 3, 4)], 2))
    assert not rep.ok
    assert ("overlap-pair", ((1, 2, 3), (2, 3, 4))) in rep.failures


def test_validate_uncovered_boundary():
    rep = validate(T([(1, 2, 3)], 2, vertices=(1, 2, 3, 4)))
    assert not rep.ok
    kinds = {k for k, _ in rep.failures}
    assert "missing-boundary-ridge" in kinds
    assert any(
        k == "missing-boundary-ridge" and w == (1, 4) for k, w in rep.failures
    )


def test_validate_volume_catches_holes():
    # cover all of the hexagon boundary but miss the middle triangle
    rep = validate(
        T([(1, 2, 6), (2, 3, 4), (4, 5, 6)], 2, vertices=range(1, 7))
    )
    assert not rep.ok
    kinds = {k for k, _ in rep.failures}
    assert "volume-mismatch" in kinds or "bad-ridge-multiplicity" in kinds


def test_make_rejects_malformed():
    with pytest.raises(InvalidInputError):
        T([(1, 2)], 2)
    with pytest.raises(InvalidInputError):
        T([(1, 2, 5)], 2, vertices=(1, 2, 3))


# ------------------------------------------------------------ height order


def test_simplex_below_examples():
    assert simplex_below((1, 3), maxs(4))
    assert not simplex_below((2, 4), mins(4))
    for f in mins(4).facets:
        assert simplex_below(f, mins(4))
        assert simplex_above(f, mins(4))


def test_triangulation_leq_examples():
    assert triangulation_leq(mins(4), maxs(4))
    assert triangulation_leq(mins(4), mins(4))
    assert not triangulation_leq(maxs(4), mins(4))


def test_leq_requires_same_ambient():
    with pytest.raises(InvalidInputError):
        triangulation_leq(mins(4), mins(5))


# --------------------------------------------------------- submersion sets


def test_submersion_min_square():
    assert submersion_set(mins(4)) == frozenset(
        {(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)}
    )


def test_submersion_max_square():
    assert submersion_set(maxs(4)) == frozenset(
        itertools.combinations(range(1, 5), 2)
    )


def test_submersion_triangle():
    assert submersion_set(T([(1, 2, 3)], 2)) == frozenset(
        {(1, 2), (2, 3), (1, 3)}
    )


def test_face_membership_examples():
    assert face_membership((1, 3), mins(4))
    assert not face_membership((1, 3), maxs(4))
    assert face_membership((1, 2, 3), mins(4))
    with pytest.raises(InvalidInputError):
        face_membership((2, 4), mins(4))  # not below


# ---------------------------------------------------------------- envelopes


def test_envelope_square():
    assert mins(4).facets == ((1, 2, 3), (1, 3, 4))
    assert maxs(4).facets == ((1, 2, 4), (2, 3, 4))


def test_envelope_on_sparse_vertex_set():
    up = envelope_triangulation((1, 2, 5, 6, 7), 3, "upper")
    assert up.facets == ((1, 2, 5, 7), (1, 5, 6, 7))
    assert validate(up).ok
    lo = envelope_triangulation((1, 2, 5, 6, 7), 3, "lower")
    assert validate(lo).ok


@pytest.mark.parametrize("n,d", [(5, 2), (6, 2), (6, 3), (7, 3), (7, 4)])
def test_envelopes_are_extremes(n, d):
    lo, up = mins(n, d), maxs(n, d)
    assert validate(lo).ok and validate(up).ok
    assert triangulation_leq(lo, up)
    assert not triangulation_leq(up, lo)


def test_envelope_bad_side():
    with pytest.raises(InvalidInputError):
        envelope_triangulation(range(1, 5), 2, "sideways")


# -------------------------------------------------------------------- cones


def test_cone_triangle():
    out = cone(T([(1, 2, 3)], 2), 4)
    assert out.facets == ((1, 2, 3), (1, 3, 4))


def test_cone_segment_path():
    out = cone(T([(1, 2), (2, 3)], 1), 4)
    assert out.facets == ((1, 2), (2, 3), (3, 4))


def test_cone_min_square():
    out = cone(mins(4), 5)
    assert out.facets == ((1, 2, 3), (1, 3, 4), (1, 4, 5))


def test_cone_interior_parameter():
    # q between existing parameters still lies outside the hull
    out = cone(T([(1, 2, 7)], 2), 4)
    assert out.facets == ((1, 2, 7), (2, 4, 7))
    assert validate(out).ok


def test_cone_duplicate_vertex():
    with pytest.raises(InvalidInputError):
        cone(mins(4), 2)


# -------------------------------------------------------------------- links


def test_link_examples():
    assert link_at_max(mins(4)).facets == ((1, 3),)
    assert link_at_max(maxs(4)).facets == ((1, 2), (2, 3))
    assert link_at_max(T([(1, 2, 3)], 2)).facets == ((1, 2),)


@pytest.mark.parametrize("n,d", [(5, 2), (6, 2), (6, 3)])
def test_link_maps_into_lower_poset(n, d):
    smaller = {t.facets for t in enumerate_triangulations(n - 1, d - 1)}
    for t in enumerate_triangulations(n, d):
        link = link_at_max(t)
        assert validate(link).ok
        if link.vertices == tuple(range(1, n)):
            assert link.facets in smaller


# -------------------------------------------------------------- enumeration


@pytest.mark.parametrize("n,want", [(4, 2), (5, 5), (6, 14)])
def test_enumeration_catalan_counts(n, want):
    got = enumerate_triangulations(n, 2)
    assert len(got) == want
    for t in got:
        assert validate(t).ok


def test_enumeration_single_simplex():
    for d in (1, 2, 3, 4):
        assert len(enumerate_triangulations(d + 1, d)) == 1


def test_enumeration_volume_additivity():
    ref = polytope_volume(range(1, 7), 2)
    for t in enumerate_triangulations(6, 2):
        assert sum(simplex_volume(f, 2) for f in t.facets) == ref


def test_enumeration_budget():
    with pytest.raises(ResourceBudgetError):
        enumerate_triangulations(7, 2, budget=3)


# -------------------------------------------------------------------- poset


def test_poset_square_is_chain():
    p = hst_poset(4, 2)
    assert len(p.elements) == 2
    assert p.covers == ((p.minimum, p.maximum),)


def test_poset_pentagon():
    p = hst_poset(5, 2)
    assert len(p.elements) == 5
    assert p.elements[p.minimum] == mins(5)
    assert p.elements[p.maximum] == maxs(5)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_poset_radon_pair(d):
    p = hst_poset(d + 2, d)
    assert len(p.elements) == 2


def test_poset_envelopes_are_extremes():
    for n, d in [(6, 2), (6, 3), (7, 3)]:
        p = hst_poset(n, d)
        assert p.elements[p.minimum] == mins(n, d)
        assert p.elements[p.maximum] == maxs(n, d)


# --------------------------------------------------------------------- meet


def test_meet_square():
    assert meet(maxs(4), mins(4)) == mins(4)
    assert meet(mins(4), mins(4)) == mins(4)


def test_meet_with_maximum_is_identity():
    for t in enumerate_triangulations(5, 2):
        assert meet(t, maxs(5)) == t


def test_meet_unsupported_dim():
    with pytest.raises(UnsupportedError):
        meet(mins(6, 4), mins(6, 4))


@pytest.mark.parametrize("n,d", [(5, 2), (6, 2), (6, 3)])
def test_meet_is_poset_glb_and_sub_injective(n, d):
    p = hst_poset(n, d)
    subs = [submersion_set(t) for t in p.elements]
    assert len(set(subs)) == len(subs)  # injective
    k = len(p.elements)
    for i in range(k):
        for j in range(i, k):
            m = meet(p.elements[i], p.elements[j])
            mi = p.index_of(m)
            assert p.leq[mi][i] and p.leq[mi][j]
            for g in range(k):  # greatest among lower bounds
                if p.leq[g][i] and p.leq[g][j]:
                    assert p.leq[g][mi]
            assert submersion_set(m) == subs[i] & subs[j]


# ------------------------------------------------------------ chain lifting


def test_psi_square_chain():
    out = psi_chain([mins(4), maxs(4)])
    assert out.facets == ((1, 2, 3, 4),)
    assert out.d == 3


def test_psi_rejects_small_ambient():
    single = T([(1, 2, 3)], 2)
    with pytest.raises(InvalidInputError):
        psi_chain([single])


def test_psi_rejects_non_maximal_chain():
    p = hst_poset(5, 2)
    with pytest.raises(InvalidInputError):
        psi_chain([p.elements[p.minimum], p.elements[p.maximum]], p)


def test_psi_pentagon_chains():
    p = hst_poset(5, 2)
    lifted = set()
    for chain in p.maximal_chains():
        out = psi_chain([p.elements[i] for i in chain], p)
        assert out.d == 3
        assert validate(out).ok
        lifted.add(out.facets)
    # the pentagon's chains lift onto all of S(5,3)
    assert lifted == {t.facets for t in enumerate_triangulations(5, 3)}


# ------------------------------------------------------------ odds and ends


def test_boundary_ridges_square():
    assert boundary_ridges((1, 2, 3, 4), 2) == frozenset(
        {(1, 2), (2, 3), (3, 4), (1, 4)}
    )


def test_polytope_volume_matches_interval():
    # d=1: the polytope is the segment [1, n]
    assert polytope_volume(range(1, 6), 1) == 4
