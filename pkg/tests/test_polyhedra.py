import random

import pytest

from helpers import ex1, ints, random_hrep
from polyset.exact import DimensionError
from polyset.polyhedra import (
    Cone, EmptyPolyhedronWarning, HRep, PreconditionError, VRep, c_minimal_in_family,
    contains, equal, h_to_v, lineality_space, minkowski_and_hulls, project,
    project_via_generators, recession_cone, reduce_vrep, remove_redundant,
    set_dominates, v_to_h,
)

P5 = HRep(((1, 2), (1, 0)), (0, 0), 2)
ORTHANT = HRep(((1, 0), (0, 1)), (0, 0), 2)

A1 = VRep(((0, 0),), (), (), 2)
A2 = VRep(((0, 0), (0, 2)), (), (), 2)
A3 = VRep(((-1, 1),), (), (), 2)
FAMILY = [A1, A2, A3]
C1 = Cone(((1, 0), (1, 1)), 2)
C2 = Cone.orthant(2)
C3 = Cone(((1, 0), (-1, 1)), 2)


def rows_set(H):
    return set(H.rows())


# -- conversions -------------------------------------------------------------

def test_ex5_upper_image_generators():
    V = h_to_v(P5)
    assert V.points == ((0, 0),)
    assert V.lines == ()
    assert set(V.rays) == {(0, 1), (2, -1)}
    for r in V.rays:
        vals = [a[0] * r[0] + a[1] * r[1] for a in P5.M]
        assert min(vals) == 0 and all(v >= 0 for v in vals)
    assert equal(v_to_h(V), P5)


def test_orthant_generators():
    V = h_to_v(ORTHANT)
    assert V.points == ((0, 0),)
    assert set(V.rays) == {(1, 0), (0, 1)}


def test_infeasible_has_no_points():
    assert h_to_v(HRep(((1,), (-1,)), (1, 0), 1)).points == ()


def test_orthant_back_to_inequalities():
    H = v_to_h(VRep(((0, 0),), ((1, 0), (0, 1)), (), 2))
    assert rows_set(H) == rows_set(ORTHANT)


def test_dominated_point_is_absorbed():
    H = v_to_h(VRep(((0, 0), (0, 2)), ((1, 0), (0, 1)), (), 2))
    assert rows_set(H) == rows_set(ORTHANT)
    assert H.contains_point((0, 2)) and not H.contains_point((0, -1))


def test_single_point_gives_equality_pairs():
    H = v_to_h(VRep(((3, -1),), (), (), 2))
    assert rows_set(H) == {((1, 0), 3), ((-1, 0), -3), ((0, 1), -1), ((0, -1), 1)}


def test_lines_are_their_own_class():
    V = h_to_v(HRep(((1, 0),), (0,), 2))
    assert V.lines == ((0, 1),)
    assert V.rays == ((1, 0),)


def test_whole_space_and_empty():
    V = h_to_v(HRep.universe(2))
    assert len(V.lines) == 2 and V.points == ((0, 0),)
    assert v_to_h(VRep.empty(2)).is_empty()


@pytest.mark.parametrize("seed", range(5))
def test_round_trip_random(seed):
    rng = random.Random(seed)
    for _ in range(20):
        P = random_hrep(rng)
        V = h_to_v(P)
        Q = v_to_h(V)
        assert equal(P, Q)
        assert V.is_empty == P.is_empty()
        if not V.is_empty:
            assert reduce_vrep(V) == V  # output generators are already minimal


# -- projection --------------------------------------------------------------

def test_project_ex1_graph():
    G = ex1().graph()
    H = project(G, [1, 2])
    assert rows_set(H) == {((0, 1), 0), ((1, 1), 0)}
    for y in [(-1, 1), (1, 0), (0, 0)]:
        assert H.contains_point(y)
    assert not H.contains_point((0, -1))


def test_project_keep_all_only_removes_redundancy():
    P = HRep(((1, 0), (0, 1), (1, 1)), (0, 0, 0), 2)
    assert rows_set(project(P, [0, 1])) == rows_set(remove_redundant(P)) == rows_set(ORTHANT)


def test_project_diagonal_segment():
    # y = x, 0 <= x <= 1 over (x, y)
    P = HRep(((1, -1), (-1, 1), (1, 0), (-1, 0)), (0, 0, 0, -1), 2)
    assert rows_set(project(P, [1])) == {((1,), 0), ((-1,), -1)}


def test_project_empty():
    P = HRep(((1, 0), (-1, 0)), (1, 0), 2)
    assert project(P, [1]).is_empty()


@pytest.mark.parametrize("seed", range(5))
def test_projection_routes_agree(seed):
    rng = random.Random(100 + seed)
    for _ in range(10):
        d = rng.randint(2, 4)
        P = random_hrep(rng, d, rng.randint(1, 6))
        keep = sorted(rng.sample(range(d), rng.randint(1, d - 1)))
        assert equal(project(P, keep), project_via_generators(P, keep))


def test_project_bad_index():
    with pytest.raises(DimensionError):
        project(P5, [2])


# -- cones and subspaces ---------------------------------------------------------

def test_recession_cone_examples():
    assert equal(recession_cone(P5), P5)
    box = HRep(((1, 0), (-1, 0), (0, 1), (0, -1)), (0, -1, 0, -1), 2)
    rc = h_to_v(recession_cone(box))
    assert rc.rays == () and rc.lines == ()
    H = HRep(((0, 1), (1, 1)), (0, 0), 2)
    assert rows_set(recession_cone(H)) == rows_set(H)


def test_recession_cone_of_empty_warns():
    with pytest.warns(EmptyPolyhedronWarning):
        rc = recession_cone(HRep(((1,), (-1,)), (1, 0), 1))
    assert h_to_v(rc).rays == ()


@pytest.mark.parametrize("seed", range(3))
def test_recession_cone_matches_generators(seed):
    rng = random.Random(200 + seed)
    for _ in range(15):
        P = random_hrep(rng)
        if P.is_empty():
            continue
        V = h_to_v(P)
        cone_part = VRep((tuple(0 for _ in range(P.dim)),), V.rays, V.lines, P.dim)
        assert equal(recession_cone(P), cone_part)


def test_lineality_examples():
    assert lineality_space(ORTHANT) == []
    assert lineality_space(HRep(((1, 0),), (0,), 2)) == [(0, 1)]
    assert lineality_space(P5) == []
    with pytest.raises(PreconditionError):
        lineality_space(HRep(((1,), (-1,)), (1, 0), 1))


# -- containment, hulls, set relations --------------------------------------------

def test_containment_examples():
    assert contains(ORTHANT, VRep(((1, 2),), (), (), 2))
    assert not contains(HRep(((1, 0),), (0,), 2), VRep(((0, 0),), ((-1, 0),), (), 2))
    assert contains(P5, VRep(((0, 0),), ((2, -1),), (), 2))


def test_containment_dimension_mismatch():
    with pytest.raises(DimensionError):
        contains(ORTHANT, VRep(((1,),), (), (), 1))


def test_minkowski_examples():
    V = minkowski_and_hulls([A1], [(1, 0), (0, 1)])
    assert equal(V, ORTHANT)
    W = minkowski_and_hulls([A1, VRep(((0, 2),), (), (), 2)], C2.generators)
    assert set(W.points) == {(0, 0), (0, 2)}
    assert equal(W, ORTHANT)
    assert reduce_vrep(W).points == ((0, 0),)
    segment = minkowski_and_hulls([A1, VRep(((0, 2),), (), (), 2)], [])
    assert equal(segment, VRep(((0, 0), (0, 2)), (), (), 2))


def test_minkowski_needs_a_nonempty_part():
    with pytest.raises(PreconditionError):
        minkowski_and_hulls([VRep.empty(2)], [(1, 0)])


def test_set_dominates_examples():
    assert set_dominates(A1, VRep(((1, 1),), (), (), 2), C2)
    assert not set_dominates(VRep(((1, 0),), (), (), 2), A1, C2)
    assert set_dominates(A1, A3, C3)
    assert not set_dominates(A3, A1, C3)


def test_set_dominates_is_a_preorder():
    rng = random.Random(5)
    for _ in range(20):
        C = Cone(tuple(ints(rng, 2, -2, 2) for _ in range(2)), 2)
        sets = [VRep(tuple(ints(rng, 2) for _ in range(rng.randint(1, 2))), (), (), 2) for _ in range(3)]
        for X in sets:
            assert set_dominates(X, X, C)
        X, Y, Z = sets
        if set_dominates(X, Y, C) and set_dominates(Y, Z, C):
            assert set_dominates(X, Z, C)


def test_ex4_minimality_outcomes():
    assert [c_minimal_in_family(FAMILY, C2, i) for i in range(3)] == [True, True, True]
    assert not c_minimal_in_family(FAMILY, C3, 2)
    assert not c_minimal_in_family(FAMILY, C1, 0)


def test_ex4_cones_are_nested():
    # C1 strictly inside C2 strictly inside C3
    for small, big in [(C1, C2), (C2, C3)]:
        assert contains(big.hrep, small.as_vrep())
        assert not contains(small.hrep, big.as_vrep())


def test_family_index_out_of_range():
    with pytest.raises(IndexError):
        c_minimal_in_family(FAMILY, C2, 3)


def test_cone_basics():
    assert Cone.zero(2).contains((0, 0)) and not Cone.zero(2).contains((1, 0))
    assert Cone.whole(2).contains((-5, 3))
    assert C3.contains((-1, 1)) and not C3.contains((0, -1))
